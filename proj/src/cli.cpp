#include "ebound/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "ebound/bounds.hpp"
#include "ebound/certificate.hpp"
#include "ebound/codes.hpp"
#include "ebound/error.hpp"

namespace ebound::cli {

namespace {

using nlohmann::json;

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

std::string num_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += "  ";
    out += num(v[i]);
  }
  return out;
}

double parse_double(const std::string& text, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ArgumentError(std::string("bad ") + what + " '" + text + "'");
  return v;
}

double resolve_s(const RunConfig& cfg) {
  if (cfg.s_text == "auto-ez") return ez_separation(cfg.n);
  return parse_double(cfg.s_text, "separation");
}

CertificateTolerances tolerances(const RunConfig& cfg) {
  CertificateTolerances tol;
  tol.coeff = cfg.tol_coeff;
  tol.domination = cfg.tol_domination;
  tol.grid_points = cfg.grid_points;
  return tol;
}

void print_certificate_text(const BoundCertificate& c, std::ostream& out) {
  const auto& I = c.quad.interval;
  out << "UUB certificate: n=" << c.n << " M=" << num(c.M) << " s=" << num(c.s) << " potential=" << c.potential << "\n";
  out << "  interval     m=" << I.m << " (k=" << I.k << ", eps=" << I.eps << ")" << (I.tie ? "  [shared endpoint with m+1]" : "")
      << "\n";
  out << "  L_m(n,s)     " << num(c.quad.N) << "\n";
  out << "  nodes        " << num_list(c.quad.nodes) << "\n";
  out << "  weights      " << num_list(c.quad.weights) << "\n";
  out << "  lambda       " << num(c.lambda.lambda) << " (argmax i=" << c.lambda.argmax << ")"
      << (c.lambda.degenerate ? " [degenerate: f = g_T]" : "") << "\n";
  out << "  feasibility  max f_i (i>=1) = " << num(c.feasibility.max_coeff) << ", min(f-h) = " << num(c.feasibility.min_gap)
      << " over " << c.feasibility.grid_size << " points: " << (c.feasibility.passed() ? "ok" : "FAILED") << "\n";
  out << "  uub          " << num(c.uub) << "\n";
}

int cmd_bound(const RunConfig& cfg, std::ostream& out) {
  const double s = resolve_s(cfg);
  const Potential pot = parse_potential(cfg.potential, cfg.n);
  const auto cert = uub(cfg.n, cfg.M, s, pot, tolerances(cfg));
  if (cfg.format == Format::json) {
    out << certificate_to_json(cert).dump(2) << "\n";
  } else {
    print_certificate_text(cert, out);
  }
  return kOk;
}

int cmd_strip(const RunConfig& cfg, std::ostream& out) {
  const double s = resolve_s(cfg);
  const Potential pot = parse_potential(cfg.potential, cfg.n);
  const auto st = strip(cfg.n, cfg.M, s, pot, tolerances(cfg));
  if (cfg.format == Format::json) {
    out << strip_to_json(st).dump(2) << "\n";
    return kOk;
  }
  out << "energy strip: n=" << cfg.n << " M=" << cfg.M << " s=" << num(s) << " potential=" << pot.spec() << "\n";
  out << "  ulb          " << num(st.ulb) << "  (r=" << num(st.lower.r) << ", m=" << st.lower.rule.m() << ")\n";
  out << "  uub          " << num(st.uub) << "  (m=" << st.upper.quad.m() << ", lambda=" << num(st.upper.lambda.lambda)
      << ")\n";
  out << "  strip        [" << num(st.ulb) << ", " << num(st.uub) << "]\n";
  out << "  sharp        " << (st.sharp ? "yes (M = L_m(n,s); strip is a point)" : "no") << "\n";
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const SphericalCode code = cfg.code_path ? load_code(*cfg.code_path, std::nullopt, cfg.renormalize)
                                           : generate(*cfg.generator);
  const Potential pot = parse_potential(cfg.potential, code.dim());
  const auto v = verify_strip(code, pot);
  if (cfg.format == Format::json) {
    json doc = strip_to_json(v.strip);
    doc["meta"]["kind"] = "code-verification";
    doc["code"] = {{"n", code.dim()},
                   {"M", code.size()},
                   {"separation", v.s},
                   {"energy", v.energy},
                   {"position", v.position},
                   {"inside", v.inside},
                   {"attains_uub", v.attains_uub},
                   {"attains_ulb", v.attains_ulb},
                   {"inner_products_on_nodes", v.inner_products_on_nodes},
                   {"moment_conditions", v.moment_conditions},
                   {"moments", v.moments}};
    out << doc.dump(2) << "\n";
    return kOk;
  }
  out << "code: n=" << code.dim() << " M=" << code.size() << " potential=" << pot.spec() << "\n";
  out << "  separation   " << num(v.s) << "\n";
  out << "  energy       " << num(v.energy) << "\n";
  out << "  strip        [" << num(v.strip.ulb) << ", " << num(v.strip.uub) << "]" << (v.strip.sharp ? " (sharp)" : "") << "\n";
  out << "  position     " << num(v.position) << (v.inside ? "  inside" : "  OUTSIDE") << "\n";
  out << "  attains      uub=" << (v.attains_uub ? "yes" : "no") << " ulb=" << (v.attains_ulb ? "yes" : "no") << "\n";
  out << "  diagnostics  inner products on nodes: " << (v.inner_products_on_nodes ? "yes" : "no")
      << "; f_i M_i(C) = 0 for i=1..m: " << (v.moment_conditions ? "yes" : "no") << "\n";
  return kOk;
}

TableRow parse_row(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ArgumentError("table row '" + spec + "' must look like n:M1,M2");
  TableRow row;
  row.n = static_cast<int>(parse_double(spec.substr(0, colon), "table dimension"));
  std::stringstream ss(spec.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) row.Ms.push_back(static_cast<int>(parse_double(item, "table cardinality")));
  if (row.Ms.empty()) throw ArgumentError("table row '" + spec + "' lists no cardinalities");
  return row;
}

struct TableCell {
  int M = 0;
  double ulb = NAN;
  double uub = NAN;
  std::string error;
};

struct TableResult {
  int n = 0;
  IntervalIndex interval;
  double L = 0.0;
  std::vector<TableCell> cells;
};

TableResult compute_row(const TableRow& row, double s) {
  TableResult res;
  res.n = row.n;
  res.interval = find_interval(row.n, s);
  res.L = lev_value(row.n, res.interval, s);
  const Potential pot = Potential::newton(row.n);
  for (int M : row.Ms) {
    TableCell cell;
    cell.M = M;
    try {
      const auto st = strip(row.n, M, s, pot);
      cell.ulb = st.ulb;
      cell.uub = st.uub;
    } catch (const InfeasibleError& e) {
      cell.error = "infeasible";
    }
    res.cells.push_back(cell);
  }
  return res;
}

int cmd_table(const RunConfig& cfg, std::ostream& out) {
  std::vector<TableRow> rows;
  if (cfg.table_rows.empty()) {
    rows = default_table_rows();
  } else {
    for (const auto& r : cfg.table_rows) rows.push_back(parse_row(r));
  }
  std::vector<TableResult> results;
  if (cfg.jobs > 1) {
    std::vector<std::future<TableResult>> futures;
    for (const auto& row : rows) futures.push_back(std::async(std::launch::async, compute_row, row, cfg.table_s));
    for (auto& f : futures) results.push_back(f.get());
  } else {
    for (const auto& row : rows) results.push_back(compute_row(row, cfg.table_s));
  }

  if (cfg.format == Format::json) {
    json doc;
    doc["meta"] = {{"tool", kToolName}, {"version", kToolVersion}, {"kind", "newton-energy-table"}};
    doc["inputs"] = {{"s", cfg.table_s}, {"potential", "newton"}};
    doc["rows"] = json::array();
    for (const auto& r : results) {
      json cells = json::array();
      for (const auto& c : r.cells) {
        json cj = {{"M", c.M}};
        if (c.error.empty()) {
          cj["ulb"] = c.ulb;
          cj["uub"] = c.uub;
        } else {
          cj["error"] = c.error;
        }
        cells.push_back(cj);
      }
      doc["rows"].push_back({{"n", r.n}, {"m", r.interval.m}, {"tie", r.interval.tie}, {"L", r.L}, {"cells", cells}});
    }
    out << doc.dump(2) << "\n";
    return kOk;
  }

  auto range = [](const std::vector<TableCell>& cells, auto field) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += " .. ";
      out += cells[i].error.empty() ? num(field(cells[i])) : cells[i].error;
    }
    return out;
  };
  out << "Newton energy bounds at s = " << num(cfg.table_s) << "\n";
  out << std::left << std::setw(4) << "n" << std::setw(14) << "M" << std::setw(7) << "m" << std::setw(12) << "L_m(n,s)"
      << std::setw(24) << "ULB" << "UUB\n";
  for (const auto& r : results) {
    std::string Ms;
    for (std::size_t i = 0; i < r.cells.size(); ++i) Ms += (i ? " .. " : "") + std::to_string(r.cells[i].M);
    std::string m = std::to_string(r.interval.m);
    if (r.interval.tie) m += "|" + std::to_string(r.interval.m + 1);
    out << std::setw(4) << r.n << std::setw(14) << Ms << std::setw(7) << m << std::setw(12) << num(r.L) << std::setw(24)
        << range(r.cells, [](const TableCell& c) { return c.ulb; }) << range(r.cells, [](const TableCell& c) { return c.uub; })
        << "\n";
  }
  return kOk;
}

int cmd_testfn(const RunConfig& cfg, std::ostream& out) {
  const double s = resolve_s(cfg);
  const auto rep = test_functions(cfg.n, s, cfg.j_max);
  if (cfg.format == Format::json) {
    json values = json::array();
    for (const auto& [j, r] : rep.values) values.push_back({{"j", j}, {"R", r}});
    json doc;
    doc["meta"] = {{"tool", kToolName}, {"version", kToolVersion}, {"kind", "test-functions"}};
    doc["inputs"] = {{"n", cfg.n}, {"s", s}, {"j_max", cfg.j_max}};
    doc["quadrature"] = rule_to_json(rep.rule);
    doc["values"] = values;
    doc["verdict"] = {{"first_checked", rep.first_checked},
                      {"checked", rep.checked},
                      {"min_checked", rep.min_checked},
                      {"optimal_in_class", rep.optimal_in_class}};
    out << doc.dump(2) << "\n";
    return kOk;
  }
  out << "test functions: n=" << cfg.n << " s=" << num(s) << " m=" << rep.rule.m() << " L_m(n,s)=" << num(rep.rule.N) << "\n";
  for (const auto& [j, r] : rep.values) {
    out << "  R_" << std::left << std::setw(4) << j << std::right << std::setw(14) << num(r)
        << (j >= rep.first_checked ? "  checked" : "") << "\n";
  }
  out << "verdict: ";
  if (rep.checked == 0) {
    out << "inconclusive (no j in [" << rep.first_checked << ", " << cfg.j_max << "])\n";
  } else if (rep.optimal_in_class) {
    out << "optimal in class (R_j >= 0 for j = " << rep.first_checked << ".." << cfg.j_max << ")\n";
  } else {
    out << "not certified (min R_j = " << num(rep.min_checked) << " for j >= " << rep.first_checked << ")\n";
  }
  return kOk;
}

int cmd_recheck(const RunConfig& cfg, std::ostream& out) {
  std::ifstream in(cfg.cert_path);
  if (!in) throw ParseError("cannot open certificate " + cfg.cert_path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("certificate is not valid JSON: ") + e.what());
  }
  const auto rep = recheck_certificate(doc, tolerances(cfg));
  out << "recheck: uub=" << num(rep.uub) << " (stored " << num(rep.stored_uub) << ")"
      << "  max f_i=" << num(rep.feasibility.max_coeff) << "  min(f-h)=" << num(rep.feasibility.min_gap)
      << "  quadrature residual=" << num(rep.quadrature_residual) << "  " << (rep.passed() ? "ok" : "FAILED") << "\n";
  return rep.passed() ? kOk : kCertificationFailure;
}

}  // namespace

std::vector<TableRow> default_table_rows() {
  return {{2, {6}},         {3, {12}},        {4, {24}},   {5, {40, 44}},  {6, {72, 78}},
          {7, {126, 134}},  {8, {240}},       {9, {306, 363}}, {10, {500, 554}}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Universal upper and lower bounds on the potential energy of spherical codes", "ebound"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  std::string format = "text";

  auto add_common = [&](CLI::App* sub, bool needs_M) {
    sub->add_option("-n,--dim", cfg.n, "Dimension n of the ambient space")->required()->check(CLI::Range(2, 1 << 20));
    if (needs_M) sub->add_option("-M,--cardinality", cfg.M, "Code cardinality M")->required()->check(CLI::Range(2, 1 << 30));
    sub->add_option("-s,--separation", cfg.s_text, "Maximal inner product s, or auto-ez")->required();
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_potential = [&](CLI::App* sub) {
    sub->add_option("-h,--potential", cfg.potential, "Kernel: newton, riesz:a, gauss:a, log");
  };
  auto add_tolerances = [&](CLI::App* sub) {
    sub->add_option("--tol-coeff", cfg.tol_coeff, "Allowed positive slack on f_i, i >= 1");
    sub->add_option("--tol-domination", cfg.tol_domination, "Allowed negative slack on f - h");
    sub->add_option("--grid", cfg.grid_points, "Feasibility grid size")->check(CLI::Range(2, 1 << 22));
  };

  auto* bound = app.add_subcommand("bound", "Universal upper bound with its certificate");
  add_common(bound, true);
  add_potential(bound);
  add_tolerances(bound);

  auto* strip_cmd = app.add_subcommand("strip", "Energy strip [ULB, UUB]");
  add_common(strip_cmd, true);
  add_potential(strip_cmd);
  add_tolerances(strip_cmd);

  auto* verify = app.add_subcommand("verify", "Place a concrete code inside its energy strip");
  auto* code_opt = verify->add_option("--code", cfg.code_path, "Code file (one point per line)");
  auto* gen_opt = verify->add_option("--generate", cfg.generator,
                                     "Generator: simplex:n, cross_polytope:n, orthonormal:n, icosahedron, hexagon");
  code_opt->excludes(gen_opt);
  verify->add_flag("--renormalize", cfg.renormalize, "Rescale rows within tolerance to unit norm");
  verify->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  add_potential(verify);

  auto* table = app.add_subcommand("table", "Newton-energy bounds for kissing configurations");
  table->add_option("-s,--separation", cfg.table_s, "Separation (default 1/2)");
  table->add_option("--row", cfg.table_rows, "Row n:M1,M2 (repeatable; default n = 2..10 kissing bounds)");
  table->add_option("--jobs", cfg.jobs, "Rows computed concurrently")->check(CLI::Range(1, 256));
  table->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* testfn = app.add_subcommand("testfn", "Test functions R_j and the optimality verdict");
  testfn->add_option("-n,--dim", cfg.n, "Dimension n")->required()->check(CLI::Range(2, 1 << 20));
  testfn->add_option("-s,--separation", cfg.s_text, "Maximal inner product s, or auto-ez")->required();
  testfn->add_option("--jmax", cfg.j_max, "Largest j")->required()->check(CLI::Range(1, 64));
  testfn->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* recheck = app.add_subcommand("recheck", "Re-verify a stored JSON certificate");
  recheck->add_option("--cert", cfg.cert_path, "Certificate file")->required();
  add_tolerances(recheck);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  cfg.format = format == "json" ? Format::json : Format::text;
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (cfg.command == "verify" && !cfg.code_path && !cfg.generator) {
      throw ArgumentError("verify needs --code or --generate");
    }
    if (cfg.command == "bound") return cmd_bound(cfg, out);
    if (cfg.command == "strip") return cmd_strip(cfg, out);
    if (cfg.command == "verify") return cmd_verify(cfg, out);
    if (cfg.command == "table") return cmd_table(cfg, out);
    if (cfg.command == "testfn") return cmd_testfn(cfg, out);
    if (cfg.command == "recheck") return cmd_recheck(cfg, out);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const CertificationError& e) {
    err << "certification failure: " << e.what() << "\n";
    return kCertificationFailure;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kCertificationFailure;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kCertificationFailure;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ArgumentError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace ebound::cli
