#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "ebound/certificate.hpp"
#include "ebound/cli.hpp"

using namespace ebound;

namespace {
struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kData = EBOUND_TEST_DATA;
}  // namespace

TEST_CASE("bound command") {
  const auto r = run({"bound", "-n", "5", "-M", "11", "-s", "auto-ez"});
  CHECK(r.code == 0);
  CHECK(r.out.find("41.902") != std::string::npos);
  CHECK(r.out.find("argmax i=1") != std::string::npos);
}

TEST_CASE("json certificate round trip") {
  const auto a = run({"bound", "-n", "4", "-M", "24", "-s", "0.5", "--format", "json"});
  const auto b = run({"bound", "-n", "4", "-M", "24", "-s", "0.5", "--format", "json"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto doc = nlohmann::json::parse(a.out);
  for (const char* key : {"meta", "inputs", "quadrature", "interpolant", "lambda", "coefficients", "feasibility", "bounds"})
    CHECK(doc.contains(key));
  CHECK(doc["quadrature"]["m"] == 5);
  CHECK(std::floor(doc["bounds"]["uub"].get<double>()) == 344);

  const auto path = std::filesystem::temp_directory_path() / "ebound_cert_test.json";
  std::ofstream(path) << a.out;
  CHECK(run({"recheck", "--cert", path.string()}).code == 0);

  auto tampered = doc;
  tampered["coefficients"]["f"][1] = 5.0;
  std::ofstream(path) << tampered.dump();
  CHECK(run({"recheck", "--cert", path.string()}).code == 3);

  std::ofstream(path) << "{ not json";
  CHECK(run({"recheck", "--cert", path.string()}).code == 4);
  std::filesystem::remove(path);
}

TEST_CASE("strip command") {
  const auto r = run({"strip", "-n", "3", "-M", "4", "-s", "-0.3333333333333333", "-h", "riesz:1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("sharp        yes") != std::string::npos);
  const auto j = run({"strip", "-n", "5", "-M", "11", "-s", "auto-ez", "--format", "json"});
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["meta"]["kind"] == "energy-strip");
  CHECK(std::abs(doc["bounds"]["ulb"].get<double>() - 37.484) < 0.01);
}

TEST_CASE("verify command") {
  const auto r = run({"verify", "--code", kData + "/icosahedron.csv"});
  CHECK(r.code == 0);
  CHECK(r.out.find("inside") != std::string::npos);
  CHECK(run({"verify", "--generate", "simplex:4", "-h", "gauss:1"}).code == 0);
  CHECK(run({"verify", "--code", kData + "/ragged.csv"}).code == 4);
  CHECK(run({"verify"}).code == 4);
}

TEST_CASE("table command") {
  const auto r = run({"table", "--jobs", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("17721.5") != std::string::npos);
  CHECK(r.out.find("6|7") != std::string::npos);
  const auto seq = run({"table"});
  CHECK(seq.out == r.out);
  const auto one = run({"table", "--row", "4:24,27", "--format", "json"});
  const auto doc = nlohmann::json::parse(one.out);
  CHECK(doc["rows"][0]["cells"][1]["error"] == "infeasible");
  CHECK(run({"table", "--row", "4-24"}).code == 4);
}

TEST_CASE("testfn command") {
  const auto r = run({"testfn", "-n", "5", "-s", "auto-ez", "--jmax", "10"});
  CHECK(r.code == 0);
  CHECK(r.out.find("optimal in class") != std::string::npos);
  CHECK(run({"testfn", "-n", "5", "-s", "0.1", "--jmax", "0"}).code == 4);
}

TEST_CASE("exit codes") {
  CHECK(run({"bound", "-n", "4", "-M", "27", "-s", "0.5"}).code == 2);
  CHECK(run({"bound", "-n", "4", "-M", "24", "-s", "1.5"}).code == 4);
  CHECK(run({"bound", "-n", "4", "-M", "24", "-s", "abc"}).code == 4);
  CHECK(run({"bound", "-n", "4", "-M", "24", "-s", "0.5", "-h", "coulomb"}).code == 4);
  CHECK(run({"bound", "-n", "4", "-s", "0.5"}).code == 4);
  CHECK(run({"frobnicate"}).code == 4);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"bound", "-n", "4", "-M", "24", "-s", "0.5", "--tol-domination", "-1"}).code == 3);
}
