#pragma once

#include <cmath>

#include <json.hpp>

#include "statlie/dynamics.hpp"
#include "statlie/statstruct.hpp"
#include "statlie/sweep.hpp"

// JSON views of the report types. Non-finite numbers map to null rather
// than violating the JSON grammar.

namespace statlie {

inline nlohmann::json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json();
}

inline void to_json(nlohmann::json& j, const VerificationReport& r) {
  j = nlohmann::json{
      {"alpha", r.alpha ? nlohmann::json(*r.alpha) : nlohmann::json()},
      {"cond2", r.cond2},
      {"cond3", r.cond3},
      {"cond4", r.cond4},
      {"cond5", r.cond5},
      {"residuals", r.residuals},
  };
}

inline void to_json(nlohmann::json& j, const SweepResult& r) {
  j = nlohmann::json{
      {"n_total", r.n_total},
      {"n_random", r.n_random},
      {"n_family_injected", r.n_family_injected},
      {"n_family_detected", r.n_family_detected},
      {"n_disagreements", r.n_disagreements},
      {"n_mismatches", r.n_mismatches},
      {"max_family_residual", finite_or_null(r.max_family_residual)},
      {"min_offfamily_residual", finite_or_null(r.min_offfamily_residual)},
  };
}

inline void to_json(nlohmann::json& j, const GridResult& r) {
  j = nlohmann::json{
      {"max_fisher_abs", r.max_fisher_abs},
      {"max_fisher_scaled", r.max_fisher_scaled},
      {"max_cubic_abs", r.max_cubic_abs},
      {"max_cubic_scaled", r.max_cubic_scaled},
      {"max_offdiag", r.max_offdiag},
      {"max_mu_dependence", r.max_mu_dependence},
  };
}

inline void to_json(nlohmann::json& j, const Characterization& r) {
  j = nlohmann::json{
      {"lambda", r.lambda},
      {"dimension", r.dimension},
      {"generator", r.generator},
      {"singular_values", r.singular_values},
      {"alpha_at_p1", r.alpha_for_p(1.0)},
  };
}

inline void to_json(nlohmann::json& j, const FitResult& r) {
  j = nlohmann::json{
      {"mu", r.theta.mu},
      {"sigma", r.theta.sigma},
      {"iterations", r.iterations},
      {"converged", r.converged},
  };
}

inline nlohmann::json bilinear_to_json(const BilinearMap& m) {
  nlohmann::json comps = nlohmann::json::array();
  for (int k = 0; k < 2; ++k) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 2; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int j = 0; j < 2; ++j) row.push_back(m.comps(k, i, j));
      rows.push_back(row);
    }
    comps.push_back(rows);
  }
  return comps;
}

inline nlohmann::json christoffels_to_json(const Christoffels& g) {
  nlohmann::json comps = nlohmann::json::array();
  for (int k = 0; k < 2; ++k) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 2; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int j = 0; j < 2; ++j) row.push_back(g(k, i, j));
      rows.push_back(row);
    }
    comps.push_back(rows);
  }
  return comps;
}

}  // namespace statlie
