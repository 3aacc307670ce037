#include <random>
#include <sstream>

#include "doctest.h"
#include "ebound/codes.hpp"
#include "ebound/error.hpp"
#include "oracles.hpp"

using namespace ebound;

namespace {
const std::string kData = EBOUND_TEST_DATA;

Eigen::MatrixXd random_rotation(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> G;
  Eigen::MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = G(rng);
  return Eigen::HouseholderQR<Eigen::MatrixXd>(A).householderQ();
}
}  // namespace

TEST_CASE("code files") {
  const auto ico = load_code(kData + "/icosahedron.csv");
  CHECK(ico.size() == 12);
  CHECK(ico.dim() == 3);
  CHECK_THROWS_AS(load_code(kData + "/non_unit.txt"), ParseError);
  CHECK_THROWS_AS(load_code(kData + "/ragged.csv"), ParseError);
  CHECK_THROWS_AS(load_code(kData + "/missing.csv"), ParseError);
  CHECK_THROWS_AS(load_code(kData + "/hexagon_rough.txt"), ParseError);
  const auto hex = load_code(kData + "/hexagon_rough.txt", 2, true, 1e-3);
  CHECK(hex.size() == 6);
  CHECK(std::abs(separation(hex) - 0.5) < 1e-3);
  std::istringstream in("# two points\n1 0\n-1, 0\n");
  const auto pair = parse_code(in);
  CHECK(energy(pair, Potential::riesz(1.0)) == doctest::Approx(2 * Potential::riesz(1.0)(-1.0)));
  std::istringstream bad("1 0 0\n");
  CHECK_THROWS_AS(parse_code(bad), ParseError);
}

TEST_CASE("generators and separation") {
  for (int n = 2; n <= 9; ++n) {
    CHECK(separation(simplex_code(n)) == doctest::Approx(-1.0 / n).epsilon(1e-12));
    CHECK(simplex_code(n).size() == n + 1);
    CHECK(std::abs(separation(cross_polytope_code(n))) < 1e-14);
    CHECK(cross_polytope_code(n).size() == 2 * n);
    CHECK(orthonormal_code(n).size() == n);
  }
  CHECK(separation(hexagon_code()) == doctest::Approx(0.5));
  CHECK(separation(icosahedron_code()) == doctest::Approx(1.0 / std::sqrt(5.0)));
  CHECK(generate("cross:4").size() == 8);
  CHECK(generate("simplex:3").size() == 4);
  CHECK_THROWS_AS(generate("dodecahedron"), ArgumentError);
  for (const auto& c : {simplex_code(5), icosahedron_code(), generate("orthonormal:4")}) {
    const auto& G = c.gram();
    CHECK((G - G.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((G.diagonal().array() - 1.0).abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("energies against a direct double sum") {
  for (int n = 3; n <= 8; ++n) {
    for (const auto& h : {Potential::newton(n), Potential::gaussian(1.5), Potential::logarithmic()}) {
      CHECK(energy(orthonormal_code(n), h) == doctest::Approx(n * (n - 1) * h(0.0)).epsilon(1e-12));
      const auto sx = simplex_code(n);
      CHECK(energy(sx, h) == doctest::Approx(oracle::energy(sx.points(), [&](double t) { return h(t); })).epsilon(1e-12));
    }
  }
  CHECK(std::abs(energy(icosahedron_code(), Potential::newton(3)) - 98.33) < 0.01);
  CHECK(energy(hexagon_code(), Potential::newton(2)) == doctest::Approx(-6 * std::log(6.0)).epsilon(1e-12));
  Eigen::MatrixXd dup(2, 3);
  dup << 1, 0, 0, 1, 0, 0;
  CHECK(std::isinf(energy(SphericalCode(dup), Potential::newton(3))));
}

TEST_CASE("rotation invariance") {
  std::mt19937_64 rng(5);
  for (const auto& c : {icosahedron_code(), simplex_code(6), cross_polytope_code(4)}) {
    const auto Q = random_rotation(c.dim(), rng);
    const SphericalCode r(c.points() * Q, 1e-9, true);
    for (const auto& h : {Potential::newton(c.dim()), Potential::riesz(1.0), Potential::gaussian(2.0)}) {
      CHECK(oracle::rel(energy(r, h), energy(c, h)) < 1e-10);
    }
  }
}

TEST_CASE("moments") {
  for (const auto& c : {icosahedron_code(), simplex_code(5), cross_polytope_code(6), hexagon_code(), orthonormal_code(4)}) {
    const auto mom = moments(c, 6);
    REQUIRE(mom.size() == 7);
    CHECK(mom[0] == doctest::Approx(double(c.size()) * c.size()));
    for (double v : mom) CHECK(v >= -1e-9);
  }
  // The icosahedron is a spherical 5-design.
  const auto mi = moments(icosahedron_code(), 6);
  for (int i = 1; i <= 5; ++i) CHECK(std::abs(mi[i]) < 1e-9);
  CHECK(mi[6] > 1.0);
}

TEST_CASE("distance distributions") {
  for (int n = 3; n <= 7; ++n) {
    const auto cp = distance_distribution(cross_polytope_code(n), 0);
    REQUIRE(cp.entries.size() == 2);
    CHECK(cp.entries[0].first == doctest::Approx(-1.0));
    CHECK(cp.entries[0].second == 1);
    CHECK(cp.entries[1].second == 2 * n - 2);
    const auto on = distance_distribution(orthonormal_code(n), n - 1);
    REQUIRE(on.entries.size() == 1);
    CHECK(on.entries[0].second == n - 1);
    const auto sx = distance_distribution(simplex_code(n), 1);
    REQUIRE(sx.entries.size() == 1);
    CHECK(sx.entries[0].first == doctest::Approx(-1.0 / n));
    CHECK(sx.entries[0].second == n);
  }
  const auto ico = icosahedron_code();
  for (int a = 0; a < ico.size(); ++a) {
    int total = 0;
    for (const auto& [t, cnt] : distance_distribution(ico, a).entries) total += cnt;
    CHECK(total == 11);
  }
  CHECK_THROWS_AS(distance_distribution(ico, 12), ArgumentError);
}

TEST_CASE("distance distribution system") {
  for (int n = 3; n <= 7; ++n) {
    const auto q = quadrature(n, 0.0);
    const std::vector<int> vanish{1, 2};
    const auto rep = dd_system_solve(n, 2.0 * n, q, vanish);
    CHECK(rep.consistent);
    CHECK(rep.unique);
    REQUIRE(rep.solution.size() == 2);
    CHECK(rep.solution[0] == doctest::Approx(1.0));
    CHECK(rep.solution[1] == doctest::Approx(2.0 * n - 2));
    CHECK(rep.matches_quadrature);
    const auto under = dd_system_solve(n, 2.0 * n, q, std::vector<int>{});
    CHECK_FALSE(under.unique);
    CHECK(under.equations == 1);
    const auto wrong = dd_system_solve(n, 2.0 * n - 1, q, vanish);
    CHECK_FALSE(wrong.consistent);
  }
  const auto q = quadrature(5, ez_separation(5));
  const auto rep = dd_system_solve(5, q.N, q, std::vector<int>{1, 2});
  CHECK(rep.unique);
  CHECK(rep.matches_quadrature);
}

TEST_CASE("strip verification of concrete codes") {
  for (int n = 3; n <= 6; ++n) {
    for (const auto& h : {Potential::newton(n), Potential::gaussian(1.0)}) {
      const auto v = verify_strip(simplex_code(n), h);
      CHECK(v.inside);
      CHECK(oracle::rel(v.energy, v.strip.uub) < 1e-9);
      CHECK(oracle::rel(v.energy, v.strip.ulb) < 1e-9);
      const auto o = verify_strip(orthonormal_code(n), h);
      CHECK(o.attains_uub);
      CHECK(o.inner_products_on_nodes);
    }
  }
  const auto ico = verify_strip(icosahedron_code(), Potential::newton(3));
  CHECK(ico.inside);
  CHECK(oracle::rel(ico.energy, ico.strip.ulb) < 1e-3);
}

TEST_CASE("EZ example data") {
  for (int n = 3; n <= 12; ++n) {
    const double x = ez_separation(n);
    CHECK(x > 0.0);
    CHECK(x < 1.0 / n);
    CHECK(std::abs(n * (n - 2.0) * (n - 2.0) * x * x * x - n * n * x * x - n * x + 1) < 1e-12);
  }
  CHECK(std::abs(ez_separation(5) - 0.13285) < 1e-5);
  CHECK(std::abs(ez_energy_n5(Potential::newton(5)) - 39.0225) < 0.005);
  CHECK(ez_energy_n5(Potential::riesz(3.0)) == doctest::Approx(ez_energy_n5(Potential::newton(5))).epsilon(1e-13));
  const auto one = Potential::custom("one", [](double) { return 1.0; }, [](double) { return 0.0; });
  CHECK(ez_energy_n5(one) == doctest::Approx(110.0));
  const auto st = strip(5, 11, ez_separation(5), Potential::newton(5));
  const double e = ez_energy_n5(Potential::newton(5));
  CHECK(st.ulb < e);
  CHECK(e < st.uub);
}
