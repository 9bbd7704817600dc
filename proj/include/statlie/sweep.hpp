#pragma once

#include <cstdint>
#include <limits>
#include <numbers>

#include "statlie/quadrature.hpp"
#include "statlie/statstruct.hpp"

// Data-parallel verification kernels: the random-structure equivalence
// sweep and the quadrature-vs-closed-form grid. Each kernel has a serial
// reference path and an OpenMP path; per-index seeding and index-order
// aggregation make the two bitwise identical.

namespace statlie {

enum class ExecMode { serial, parallel };

struct SweepConfig {
  double lambda = std::numbers::sqrt2;
  std::uint64_t seed = 1;
  int n_random = 500;  // random compatible structures, kept off the family
  int n_family = 50;   // injected family members
  double tol = 1e-9;
};

struct SweepResult {
  int n_total = 0;
  int n_random = 0;
  int n_family_injected = 0;
  int n_family_detected = 0;
  // structures whose five condition booleans fail to agree pairwise
  int n_disagreements = 0;
  // structures whose detected family membership contradicts how they
  // were sampled
  int n_mismatches = 0;
  // worst residual over all conditions on detected family members
  double max_family_residual = 0.0;
  // narrowest failing margin over conditions on off-family structures
  double min_offfamily_residual = std::numeric_limits<double>::infinity();

  bool pass() const { return n_disagreements == 0 && n_mismatches == 0; }
};

// Samples n_random structures inside the compatible-nu subspace with the
// family component's complement bounded away from zero, plus n_family
// family members, and runs the five-condition check on each.
SweepResult run_structure_sweep(const SweepConfig& cfg, ExecMode mode);

struct GridConfig {
  double mu_min = -5.0;
  double mu_max = 5.0;
  double sigma_min = 0.1;
  double sigma_max = 10.0;
  int n_mu = 10;
  int n_sigma = 10;
  int order = 16;  // quadrature rule order
};

struct GridResult {
  // quadrature Fisher metric vs diag(1/sigma^2, 2/sigma^2)
  double max_fisher_abs = 0.0;
  double max_fisher_scaled = 0.0;  // deviation / max(1, |closed|)
  // quadrature cubic form vs the closed form at lambda = sqrt(2)
  double max_cubic_abs = 0.0;
  double max_cubic_scaled = 0.0;
  // worst off-diagonal Fisher entry
  double max_offdiag = 0.0;
  // worst deviation from the same-sigma column at the first mu value
  double max_mu_dependence = 0.0;
};

// Evaluates fisher_metric_numeric and cubic_numeric on the grid and
// compares against the closed forms.
GridResult run_fisher_grid(const GridConfig& cfg, ExecMode mode);

}  // namespace statlie
