#include "ebound/certificate.hpp"

#include <cmath>
#include <vector>

#include "ebound/error.hpp"
#include "ebound/potentials.hpp"

namespace ebound {

namespace {

using nlohmann::json;

json coeff_array(const GegenPoly& p) { return json(std::vector<double>(p.coeffs().begin(), p.coeffs().end())); }

json feasibility_to_json(const Feasibility& f) {
  return {{"max_coeff", f.max_coeff},       {"max_coeff_index", f.max_coeff_index},
          {"min_gap", f.min_gap},           {"min_gap_t", f.min_gap_t},
          {"grid_size", f.grid_size},       {"f1", f.f1},
          {"f2", f.f2}};
}

}  // namespace

json rule_to_json(const QuadratureRule& rule) {
  return {{"m", rule.interval.m},
          {"k", rule.interval.k},
          {"eps", rule.interval.eps},
          {"interval", {rule.interval.lo, rule.interval.hi}},
          {"tie", rule.interval.tie},
          {"s", rule.s},
          {"L", rule.N},
          {"nodes", rule.nodes},
          {"weights", rule.weights},
          {"max_residual", rule.max_residual}};
}

json certificate_to_json(const BoundCertificate& cert) {
  json doc;
  doc["meta"] = {{"tool", kToolName}, {"version", kToolVersion}, {"kind", "uub-certificate"}};
  doc["inputs"] = {{"n", cert.n}, {"M", cert.M}, {"s", cert.s}, {"potential", cert.potential}};
  doc["quadrature"] = rule_to_json(cert.quad);
  doc["interpolant"] = {{"multiset", cert.lev.multiset}, {"gegenbauer", coeff_array(cert.interpolant)}};
  doc["lambda"] = {{"value", cert.lambda.lambda}, {"argmax", cert.lambda.argmax}, {"degenerate", cert.lambda.degenerate}};
  doc["coefficients"] = {{"levenshtein", coeff_array(cert.lev.gegen)}, {"f", coeff_array(cert.f)}};
  doc["feasibility"] = feasibility_to_json(cert.feasibility);
  doc["bounds"] = {{"uub", cert.uub},
                   {"uub_quadrature_form", cert.uub_quadrature_form},
                   {"interpolation_residual", cert.interpolation_residual}};
  return doc;
}

json strip_to_json(const EnergyStrip& strip) {
  json doc = certificate_to_json(strip.upper);
  doc["meta"]["kind"] = "energy-strip";
  doc["bounds"]["ulb"] = strip.ulb;
  doc["bounds"]["sharp"] = strip.sharp;
  doc["ulb_quadrature"] = rule_to_json(strip.lower.rule);
  doc["ulb_quadrature"]["r"] = strip.lower.r;
  return doc;
}

RecheckReport recheck_certificate(const json& doc, const CertificateTolerances& tol) {
  RecheckReport rep;
  try {
    const auto& in = doc.at("inputs");
    const int n = in.at("n").get<int>();
    const double M = in.at("M").get<double>();
    const double s = in.at("s").get<double>();
    const Potential pot = parse_potential(in.at("potential").get<std::string>(), n);
    const auto f_coeffs = doc.at("coefficients").at("f").get<std::vector<double>>();
    const auto& quad = doc.at("quadrature");
    const auto nodes = quad.at("nodes").get<std::vector<double>>();
    const auto weights = quad.at("weights").get<std::vector<double>>();
    const double N = quad.at("L").get<double>();
    const int m = quad.at("m").get<int>();
    if (nodes.size() != weights.size()) throw ParseError("certificate nodes/weights size mismatch");

    const GegenPoly f(n, f_coeffs);
    rep.feasibility = check_feasibility(f, pot, s, nodes, tol);
    rep.uub = bound_from_polynomial(f, M);
    rep.stored_uub = doc.at("bounds").at("uub").get<double>();
    rep.bound_matches = std::abs(rep.uub - rep.stored_uub) <= 1e-12 * std::max(1.0, std::abs(rep.stored_uub));

    for (int j = 0; j <= m; ++j) {
      double q = 1.0 / N;
      for (std::size_t i = 0; i < nodes.size(); ++i) q += weights[i] * eval_gegenbauer(n, j, nodes[i]);
      rep.quadrature_residual = std::max(rep.quadrature_residual, std::abs((j == 0 ? 1.0 : 0.0) - q));
    }
    for (double w : weights) {
      if (!(w > 0.0)) rep.quadrature_residual = INFINITY;
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  }
  return rep;
}

}  // namespace ebound
