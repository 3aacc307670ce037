#include "ebound/codes.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "ebound/error.hpp"

namespace ebound {

SphericalCode::SphericalCode(Eigen::MatrixXd points, double norm_tol, bool renormalize)
    : points_(std::move(points)) {
  if (points_.rows() < 2) throw ArgumentError("a spherical code needs at least 2 points");
  if (points_.cols() < 2) throw ArgumentError("a spherical code needs dimension n >= 2");
  for (Eigen::Index r = 0; r < points_.rows(); ++r) {
    const double norm = points_.row(r).norm();
    if (!(std::abs(norm - 1.0) <= norm_tol)) {
      std::ostringstream os;
      os << "point " << r << " has norm " << norm << ", not within " << norm_tol << " of 1";
      throw ParseError(os.str());
    }
    if (renormalize) points_.row(r) /= norm;
  }
  gram_ = points_ * points_.transpose();
}

SphericalCode parse_code(std::istream& in, std::optional<int> dim_hint, bool renormalize, double norm_tol) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::vector<double> row;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
      if (p == end) break;
      double v = 0.0;
      const auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc() || (res.ptr < end && *res.ptr != ' ' && *res.ptr != '\t' && *res.ptr != '\r')) {
        throw ParseError("line " + std::to_string(lineno) + ": malformed number");
      }
      row.push_back(v);
      p = res.ptr;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(rows.front().size()) +
                       " fields, got " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("code file contains no points");
  const int n = static_cast<int>(rows.front().size());
  if (dim_hint && *dim_hint != n) {
    throw ParseError("dimension mismatch: expected " + std::to_string(*dim_hint) + ", file has " + std::to_string(n));
  }
  Eigen::MatrixXd pts(static_cast<Eigen::Index>(rows.size()), n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int c = 0; c < n; ++c) pts(static_cast<Eigen::Index>(r), c) = rows[r][static_cast<std::size_t>(c)];
  }
  try {
    return SphericalCode(std::move(pts), norm_tol, renormalize);
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  }
}

SphericalCode load_code(const std::filesystem::path& path, std::optional<int> dim_hint, bool renormalize,
                        double norm_tol) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open code file " + path.string());
  return parse_code(in, dim_hint, renormalize, norm_tol);
}

SphericalCode simplex_code(int n) {
  if (n < 2) throw ArgumentError("simplex needs n >= 2");
  // Gram matrix (1 + 1/n) I - (1/n) J has rank n; factor it.
  const int M = n + 1;
  Eigen::MatrixXd G = Eigen::MatrixXd::Constant(M, M, -1.0 / n);
  G.diagonal().setOnes();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(G);
  Eigen::MatrixXd pts(M, n);
  for (int c = 0; c < n; ++c) {
    // Eigenvalues ascending; the first is the zero mode.
    pts.col(c) = eig.eigenvectors().col(c + 1) * std::sqrt(eig.eigenvalues()(c + 1));
  }
  return SphericalCode(std::move(pts), 1e-12, true);
}

SphericalCode cross_polytope_code(int n) {
  if (n < 2) throw ArgumentError("cross polytope needs n >= 2");
  Eigen::MatrixXd pts = Eigen::MatrixXd::Zero(2 * n, n);
  for (int i = 0; i < n; ++i) {
    pts(2 * i, i) = 1.0;
    pts(2 * i + 1, i) = -1.0;
  }
  return SphericalCode(std::move(pts));
}

SphericalCode orthonormal_code(int n) {
  if (n < 2) throw ArgumentError("orthonormal basis needs n >= 2");
  return SphericalCode(Eigen::MatrixXd::Identity(n, n));
}

SphericalCode icosahedron_code() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  Eigen::MatrixXd pts(12, 3);
  int r = 0;
  for (double s1 : {-1.0, 1.0}) {
    for (double s2 : {-1.0, 1.0}) {
      pts.row(r++) << 0.0, s1, s2 * phi;
      pts.row(r++) << s1, s2 * phi, 0.0;
      pts.row(r++) << s2 * phi, 0.0, s1;
    }
  }
  pts /= std::sqrt(1.0 + phi * phi);
  return SphericalCode(std::move(pts), 1e-12, true);
}

SphericalCode hexagon_code() {
  Eigen::MatrixXd pts(6, 2);
  const double h = std::sqrt(3.0) / 2.0;
  pts << 1.0, 0.0, 0.5, h, -0.5, h, -1.0, 0.0, -0.5, -h, 0.5, -h;
  return SphericalCode(std::move(pts), 1e-12, true);
}

SphericalCode generate(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  auto dim = [&]() {
    if (colon == std::string_view::npos) throw ArgumentError("generator '" + std::string(spec) + "' needs a dimension");
    int n = 0;
    const auto text = spec.substr(colon + 1);
    const auto res = std::from_chars(text.data(), text.data() + text.size(), n);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
      throw ArgumentError("bad generator dimension '" + std::string(text) + "'");
    }
    return n;
  };
  if (name == "simplex") return simplex_code(dim());
  if (name == "cross_polytope" || name == "cross") return cross_polytope_code(dim());
  if (name == "orthonormal") return orthonormal_code(dim());
  if (name == "icosahedron") return icosahedron_code();
  if (name == "hexagon") return hexagon_code();
  throw ArgumentError("unknown generator '" + std::string(spec) + "'");
}

double energy(const SphericalCode& code, const Potential& pot) {
  const auto& G = code.gram();
  const bool singular = pot.singular_at_one();
  double sum = 0.0;
  for (int x = 0; x < code.size(); ++x) {
    for (int y = 0; y < code.size(); ++y) {
      if (x == y) continue;
      const double t = G(x, y);
      if (singular && t >= 1.0 - 1e-12) return std::numeric_limits<double>::infinity();
      sum += pot(std::min(t, 1.0));
    }
  }
  return sum;
}

double separation(const SphericalCode& code) {
  const auto& G = code.gram();
  double s = -INFINITY;
  for (int x = 0; x < code.size(); ++x) {
    for (int y = 0; y < code.size(); ++y) {
      if (x != y) s = std::max(s, G(x, y));
    }
  }
  return s;
}

std::vector<double> moments(const SphericalCode& code, int i_max) {
  if (i_max < 1) throw ArgumentError("i_max must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(i_max) + 1, 0.0);
  const auto& G = code.gram();
  for (int x = 0; x < code.size(); ++x) {
    for (int y = 0; y < code.size(); ++y) {
      const auto p = gegenbauer_values(code.dim(), i_max, std::clamp(G(x, y), -1.0, 1.0));
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += p[i];
    }
  }
  return out;
}

DistanceDistribution distance_distribution(const SphericalCode& code, int anchor, double cluster_tol) {
  if (anchor < 0 || anchor >= code.size()) throw ArgumentError("anchor index out of range");
  std::vector<double> values;
  for (int y = 0; y < code.size(); ++y) {
    if (y != anchor) values.push_back(code.gram()(anchor, y));
  }
  std::sort(values.begin(), values.end());
  DistanceDistribution dd;
  dd.anchor = anchor;
  double cluster_start = 0.0;
  double cluster_sum = 0.0;
  for (double v : values) {
    if (dd.entries.empty() || v - cluster_start > cluster_tol) {
      if (!dd.entries.empty()) dd.entries.back().first = cluster_sum / dd.entries.back().second;
      dd.entries.emplace_back(v, 0);
      cluster_start = v;
      cluster_sum = 0.0;
    }
    ++dd.entries.back().second;
    cluster_sum += v;
  }
  if (!dd.entries.empty()) dd.entries.back().first = cluster_sum / dd.entries.back().second;
  return dd;
}

DdSystemReport dd_system_solve(int n, double M, const QuadratureRule& quad, std::span<const int> vanishing) {
  const int unknowns = static_cast<int>(quad.nodes.size());
  for (int i : vanishing) {
    if (i < 1 || i > quad.m()) throw ArgumentError("vanishing moment index outside 1..m");
  }
  const int rows = static_cast<int>(vanishing.size()) + 1;
  Eigen::MatrixXd A(rows, unknowns);
  Eigen::VectorXd b(rows);
  for (int r = 0; r < static_cast<int>(vanishing.size()); ++r) {
    for (int j = 0; j < unknowns; ++j) A(r, j) = eval_gegenbauer(n, vanishing[static_cast<std::size_t>(r)], quad.nodes[static_cast<std::size_t>(j)]);
    b(r) = -1.0;
  }
  A.row(rows - 1).setOnes();
  b(rows - 1) = M - 1.0;

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
  cod.setThreshold(1e-10);
  const Eigen::VectorXd x = cod.solve(b);

  DdSystemReport rep;
  rep.equations = rows;
  rep.unknowns = unknowns;
  rep.rank = static_cast<int>(cod.rank());
  rep.solution.assign(x.data(), x.data() + unknowns);
  rep.residual = (A * x - b).cwiseAbs().maxCoeff();
  rep.consistent = rep.residual <= 1e-9 * std::max(1.0, M);
  rep.unique = rep.rank == unknowns;
  rep.matches_quadrature = rep.consistent && rep.unique;
  for (int j = 0; j < unknowns && rep.matches_quadrature; ++j) {
    const double expect = quad.weights[static_cast<std::size_t>(j)] * quad.N;
    if (std::abs(rep.solution[static_cast<std::size_t>(j)] - expect) > 1e-7 * std::max(1.0, expect)) {
      rep.matches_quadrature = false;
    }
  }
  return rep;
}

StripVerdict verify_strip(const SphericalCode& code, const Potential& pot) {
  StripVerdict v;
  const int n = code.dim();
  const double M = code.size();
  v.s = separation(code);
  v.energy = energy(code, pot);
  v.strip = strip(n, M, v.s, pot);

  const double scale = std::max(1.0, std::abs(v.strip.uub));
  const double tol = 1e-9 * scale;
  const double width = v.strip.uub - v.strip.ulb;
  v.position = width > tol ? (v.energy - v.strip.ulb) / width : 0.0;
  v.inside = v.energy >= v.strip.ulb - tol && v.energy <= v.strip.uub + tol;
  v.attains_uub = std::abs(v.energy - v.strip.uub) <= tol;
  v.attains_ulb = std::abs(v.energy - v.strip.ulb) <= tol;

  const auto& nodes = v.strip.upper.quad.nodes;
  v.inner_products_on_nodes = true;
  const auto& G = code.gram();
  for (int x = 0; x < code.size() && v.inner_products_on_nodes; ++x) {
    for (int y = 0; y < code.size(); ++y) {
      if (x == y) continue;
      const double t = G(x, y);
      const bool hit = std::any_of(nodes.begin(), nodes.end(), [&](double a) { return std::abs(a - t) <= 1e-7; });
      if (!hit) {
        v.inner_products_on_nodes = false;
        break;
      }
    }
  }

  const int m = v.strip.upper.quad.m();
  v.moments = moments(code, m);
  v.moment_conditions = true;
  for (int i = 1; i <= m; ++i) {
    const double fi = v.strip.upper.f.coeff(i);
    const double mi = v.moments[static_cast<std::size_t>(i)];
    if (std::abs(fi) > 1e-12 && std::abs(mi) > 1e-8 * M * M) v.moment_conditions = false;
  }
  return v;
}

double ez_separation(int n) {
  if (n < 3) throw ArgumentError("ez_separation needs n >= 3");
  const double nn = n;
  auto cubic = [&](double x) { return nn * (nn - 2) * (nn - 2) * x * x * x - nn * nn * x * x - nn * x + 1.0; };
  double lo = 0.0;
  double hi = 1.0 / nn;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cubic(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double ez_energy_n5(const Potential& pot) {
  constexpr double n = EzFixture::n;
  const double s = ez_separation(EzFixture::n);
  return (3 * n * n - n) * pot(s) + (n * n - n) * pot(EzFixture::a) + 2 * n * pot(EzFixture::b) +
         2 * n * pot(EzFixture::c);
}

}  // namespace ebound
