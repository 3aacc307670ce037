#pragma once

#include <nlohmann/json.hpp>

#include "ebound/bounds.hpp"
#include "ebound/levenshtein.hpp"

namespace ebound {

inline constexpr const char* kToolName = "ebound";
inline constexpr const char* kToolVersion = "0.1.0";

/// Quadrature block: m, k, eps, interval, tie, L, nodes, weights, max_residual.
nlohmann::json rule_to_json(const QuadratureRule& rule);

/// Self-contained certificate with top-level fields
/// {meta, inputs, quadrature, interpolant, lambda, coefficients, feasibility, bounds}.
/// Doubles are written in shortest round-trip form; nothing time-dependent.
nlohmann::json certificate_to_json(const BoundCertificate& cert);

/// Certificate of the upper edge plus `bounds.ulb`, `bounds.sharp` and a
/// `ulb_quadrature` block for the rule at r.
nlohmann::json strip_to_json(const EnergyStrip& strip);

struct RecheckReport {
  Feasibility feasibility;
  double uub = 0.0;          // recomputed from the stored coefficients
  double stored_uub = 0.0;
  double quadrature_residual = 0.0;
  bool bound_matches = false;
  bool passed() const noexcept { return feasibility.passed() && bound_matches && quadrature_residual <= 1e-8; }
};

/// Re-verifies a stored certificate offline: (F1) and (F2) from the stored f
/// coefficients, the bound value, and the stored quadrature's exactness.
RecheckReport recheck_certificate(const nlohmann::json& doc, const CertificateTolerances& tol = {});

}  // namespace ebound
