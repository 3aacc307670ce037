// Acceptance gate: prints one PASS/FAIL line per criterion.
// Usage: ebound_acceptance [criterion...]   (no argument runs all seven)

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/oracles.hpp"
#include "ebound/bounds.hpp"
#include "ebound/cli.hpp"
#include "ebound/codes.hpp"
#include "ebound/levenshtein.hpp"

using namespace ebound;

namespace {

struct Check {
  std::vector<std::string> failures;
  int checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream os;
    os.precision(10);
    os << what << ": got " << got << ", want " << want << " +/- " << tol;
    expect(std::abs(got - want) <= tol, os.str());
  }
};

std::vector<Potential> named_kernels(int n) {
  return {Potential::newton(n), Potential::riesz(1.0), Potential::gaussian(1.0), Potential::logarithmic()};
}

double relerr(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

void criterion1(Check& c) {
  const auto h = Potential::newton(5);
  const double s = ez_separation(5);
  c.near(s, 0.13285, 1e-5, "s*");
  const auto cert = uub(5, 11, s, h);
  c.near(cert.quad.nodes.front(), -0.68069, 1e-4, "alpha_0");
  const auto g = oracle::monomial_fit([&](double t) { return cert.interpolant(t); }, 2);
  c.near(g[2], 0.23835, 1e-4, "interpolant t^2");
  c.near(g[1], 0.46931, 1e-4, "interpolant t");
  c.near(g[0], 0.37128, 1e-4, "interpolant 1");
  c.near(cert.lambda.lambda, 0.661, 0.005, "lambda*");
  c.expect(cert.lambda.argmax == 1, "lambda argmax is not i=1");
  c.near(cert.quad.N, 13.3014, 1e-3, "L_3(5,s*)");
  c.near(cert.uub, 41.906, 0.01, "UUB");
  c.near(ulb(5, 11, h).value, 37.484, 0.01, "ULB");
  c.near(ez_energy_n5(h), 39.0225, 0.005, "E_h(C_5)");
}

// Printed table entries; `unit` is one unit in the last printed digit.
struct TableEntry {
  int n;
  int M;
  double L, ulb, uub, unit_L, unit_b;
};

void criterion2(Check& c) {
  const std::vector<TableEntry> rows{
      {2, 6, 6, -10.75, -10.75, 1, 0.01},          {3, 12, 13.2, 98.3, 101.3, 0.1, 0.1},
      {4, 24, 26, 333, 344, 1, 1},                 {5, 40, 48, 765, 840, 1, 1},
      {5, 44, 48, 947, 989, 1, 1},                 {6, 72, 84, 2116, 2218, 1, 1},
      {6, 78, 84, 2530, 2594, 1, 1},               {7, 126, 142, 5552, 5793, 1, 1},
      {7, 134, 142, 6376, 6514, 1, 1},             {8, 240, 240, 17721, 17721, 1, 1},
      {9, 306, 384, 23149, 27443, 1, 1},           {9, 363, 384, 34231, 35616, 1, 1},
      {10, 500, 605, 53059, 61467, 1, 1},          {10, 554, 605, 67004, 71606, 1, 1},
  };
  for (const auto& r : rows) {
    const auto h = Potential::newton(r.n);
    const std::string tag = "n=" + std::to_string(r.n) + " M=" + std::to_string(r.M);
    c.near(levenshtein_function(r.n, 0.5), r.L, r.unit_L, tag + " L_m(n,1/2)");
    const auto st = strip(r.n, r.M, 0.5, h);
    c.near(st.ulb, r.ulb, r.unit_b, tag + " ULB");
    c.near(st.uub, r.uub, r.unit_b, tag + " UUB");
  }
}

void criterion3(Check& c) {
  for (int n = 3; n <= 10; ++n) {
    const auto code = orthonormal_code(n);
    for (const auto& h : named_kernels(n)) {
      const std::string tag = "n=" + std::to_string(n) + " " + h.spec();
      const auto cert = uub(n, n, 0.0, h);
      const double want = n * (n - 1) * h(0.0);
      c.expect(relerr(cert.uub, want) <= 1e-10, tag + " UUB != n(n-1)h(0)");
      c.expect(relerr(cert.uub, energy(code, h)) <= 1e-10, tag + " UUB != orthonormal energy");
      const auto& q = cert.quad;
      c.expect(q.nodes.size() == 2, tag + " expected two nodes");
      if (q.nodes.size() != 2) continue;
      c.near(q.nodes[0], -1.0, 1e-12, tag + " node 0");
      c.near(q.nodes[1], 0.0, 1e-12, tag + " node 1");
      c.near(q.weights[0], 1.0 / (2 * n), 1e-12, tag + " weight 0");
      c.near(q.weights[1], (n - 1.0) / n, 1e-12, tag + " weight 1");
    }
  }
}

void criterion4(Check& c) {
  for (int n = 3; n <= 8; ++n) {
    for (const auto& code : {simplex_code(n), cross_polytope_code(n)}) {
      for (const auto& h : named_kernels(n)) {
        const std::string tag = "n=" + std::to_string(n) + " M=" + std::to_string(code.size()) + " " + h.spec();
        const auto v = verify_strip(code, h);
        const double scale = std::abs(v.strip.uub);
        c.expect(std::abs(v.strip.uub - v.strip.ulb) < 1e-8 * scale, tag + " strip did not collapse");
        c.expect(v.energy >= v.strip.ulb - 1e-8 * scale && v.energy <= v.strip.uub + 1e-8 * scale,
                 tag + " energy outside strip");
      }
    }
  }
  const double e = energy(icosahedron_code(), Potential::newton(3));
  const double lb = ulb(3, 12, Potential::newton(3)).value;
  c.expect(relerr(e, lb) <= 1e-3, "icosahedron energy vs ULB(3,12)");
}

std::vector<double> sweep_s() {
  std::vector<double> s(50);
  for (int j = 0; j < 50; ++j) s[j] = -0.95 + 1.6 * j / 49;
  return s;
}

void criterion5(Check& c) {
  for (int n : {3, 4, 5, 8}) {
    for (double s : sweep_s()) {
      const double M = std::max(2.0, std::floor(levenshtein_function(n, s)));
      for (const auto& h : named_kernels(n)) {
        std::ostringstream tag;
        tag << "n=" << n << " s=" << s << " " << h.spec();
        try {
          const auto cert = uub(n, M, s, h);
          const auto& f = cert.f;
          for (int i = 1; i <= f.degree(); ++i) c.expect(f.coeff(i) <= 1e-12, tag.str() + " positive f_i");
          const auto grid = feasibility_grid(s, cert.quad.nodes, 2048);
          double gap = INFINITY;
          for (double t : grid) gap = std::min(gap, f(t) - h(t));
          c.expect(gap >= -1e-9, tag.str() + " f < h on grid");
          const auto& q = cert.quad;
          for (int j = 0; j <= q.m(); ++j) {
            double v = 1.0 / q.N;
            for (std::size_t i = 0; i < q.nodes.size(); ++i) v += q.weights[i] * oracle::gegen(n, j, q.nodes[i]);
            c.expect(std::abs(v - (j == 0 ? 1.0 : 0.0)) < 1e-9, tag.str() + " quadrature residual");
          }
        } catch (const std::exception& e) {
          c.expect(false, tag.str() + " threw: " + e.what());
        }
      }
    }
  }
}

void criterion6(Check& c) {
  for (int n : {3, 4, 5, 8}) {
    for (double s : sweep_s()) {
      const auto rep = test_functions(n, s, 16);
      for (const auto& [j, r] : rep.values)
        if (j <= rep.rule.m()) c.expect(std::abs(r) < 1e-9, "R_j != 0 below m");
      const double M = std::max(2.0, std::floor(levenshtein_function(n, s)));
      const auto h = Potential::newton(n);
      const auto cert = uub(n, M, s, h);
      c.expect(relerr(uub_with_extra_node(cert, h, s), cert.uub) <= 1e-9, "extra node s changes UUB");
      if (cert.quad.m() % 2 == 1)
        c.expect(relerr(uub_with_extra_node(cert, h, -1.0), cert.uub) <= 1e-9, "extra node -1 changes UUB");
    }
  }

  const auto h5 = Potential::newton(5);
  const auto ez = uub(5, 11, ez_separation(5), h5);
  const auto probe = optimality_probe(ez, h5, 100);
  c.expect(probe.violations == 0, "optimality probe found a better polynomial");
  c.expect(probe.accepted > 0, "optimality probe accepted no perturbations");

  std::mt19937_64 rng(99);
  std::normal_distribution<double> G;
  for (const auto& code : {icosahedron_code(), simplex_code(5), cross_polytope_code(4), hexagon_code()}) {
    const int n = code.dim();
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = G(rng);
    const Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(A).householderQ();
    const SphericalCode rotated(code.points() * Q, 1e-9, true);
    for (const auto& h : named_kernels(n))
      c.expect(relerr(energy(rotated, h), energy(code, h)) <= 1e-10, "energy not rotation invariant");
    for (double m : moments(code, 6)) c.expect(m >= -1e-9, "negative moment");
  }

  std::uniform_real_distribution<double> T(-1.0, 1.0);
  std::uniform_int_distribution<int> N(2, 16), I(1, 30);
  for (int r = 0; r < 300; ++r) {
    const int n = N(rng), i = I(rng);
    const double t = T(rng);
    const double res = (i + n - 2) * eval_gegenbauer(n, i + 1, t) - (2 * i + n - 2) * t * eval_gegenbauer(n, i, t) +
                       i * eval_gegenbauer(n, i - 1, t);
    c.expect(std::abs(res) < 1e-12 * (i + n), "recurrence residual");
  }
  for (int n : {3, 4, 7}) {
    for (int i = 0; i <= 6; ++i) {
      for (int j = 0; j < i; ++j) {
        const double ip = oracle::weighted_integral(n, [&](double t) { return eval_gegenbauer(n, i, t) * eval_gegenbauer(n, j, t); });
        c.expect(std::abs(ip) < 1e-12, "orthogonality");
      }
    }
  }
}

void criterion7(Check& c) {
  std::ostringstream out, err;
  const int code = cli::run({"bound", "-n", "4", "-M", "27", "-s", "0.5"}, out, err);
  c.expect(code == 2, "exit code " + std::to_string(code) + " (expected 2)");
  c.near(levenshtein_function(4, 0.5), 26.0, 1e-9, "L_5(4,1/2)");
}

const std::vector<std::pair<std::string, std::function<void(Check&)>>> kCriteria{
    {"EZ example n=5 M=11 Newton", criterion1},
    {"kissing-configuration table n=2..10", criterion2},
    {"orthonormal-basis exactness", criterion3},
    {"strip collapse at sharp codes", criterion4},
    {"feasibility certificate sweep", criterion5},
    {"property suites", criterion6},
    {"infeasibility exit code", criterion7},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::stoi(argv[i]));
  if (which.empty())
    for (int i = 1; i <= static_cast<int>(kCriteria.size()); ++i) which.push_back(i);

  int failed = 0;
  for (int id : which) {
    if (id < 1 || id > static_cast<int>(kCriteria.size())) {
      std::cerr << "unknown criterion " << id << "\n";
      return 2;
    }
    const auto& [name, fn] = kCriteria[id - 1];
    Check c;
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = c.failures.empty();
    std::printf("criterion %d: %s - %s (%d checks, %zu failed)\n", id, ok ? "PASS" : "FAIL", name.c_str(), c.checks,
                c.failures.size());
    for (const auto& f : c.failures) std::printf("    %s\n", f.c_str());
    failed += ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
