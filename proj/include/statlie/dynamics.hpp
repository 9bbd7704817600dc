#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "statlie/chart.hpp"
#include "statlie/quadrature.hpp"

// Integral curves of the connection family on the chart, and a
// natural-gradient fitting demo driven by the closed-form metric.

namespace statlie {

// Raised when an iteration leaves the admissible parameter region or
// produces non-finite values.
struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GeodesicState {
  ChartPoint point;
  Vec2 velocity;
};

enum class GeodesicStatus {
  completed,  // all requested steps taken
  boundary,   // halted because y dropped to y_min
};

struct GeodesicResult {
  std::vector<GeodesicState> states;  // states[0] is the initial state
  GeodesicStatus status = GeodesicStatus::completed;
};

// Classical fixed-step RK4 on (position, velocity) for
// d2x^k + Gamma^k_ij dx^i dx^j = 0 with the closed-form family symbols.
// Halts with a boundary status instead of clamping when y <= y_min.
GeodesicResult integrate_geodesic(double alpha, double lambda, const GeodesicState& init,
                                  double step, int n_steps, double y_min = 1e-9);

// Observations t_i; at least two, all finite.
struct SampleSet {
  std::vector<double> data;

  explicit SampleSet(std::vector<double> values);

  // Whitespace- or comma-separated numbers.
  static SampleSet from_file(const std::string& path);

  std::size_t size() const { return data.size(); }
  double mean() const;
  double stddev_ml() const;  // maximum-likelihood (1/n) normalization
};

// Gradient of the summed negative log-likelihood:
// (-sum(t_i - mu)/sigma^2, n/sigma - sum(t_i - mu)^2/sigma^3).
Vec2 nll_gradient(const GaussianParam& theta, const SampleSet& s);

struct FitResult {
  GaussianParam theta;
  int iterations = 0;
  bool converged = false;
};

// theta <- theta - rate * (n g)^{-1} grad NLL, preconditioned by the
// sample Fisher information n * diag(1/sigma^2, 2/sigma^2). Converges
// when |grad NLL| < tol; throws DivergenceError if sigma leaves
// (1e-9, 1e9). rate must lie in (0, 1].
FitResult natural_gradient_fit(const SampleSet& s, const GaussianParam& init, double rate,
                               double tol, int max_iter);

// Unpreconditioned comparison run on the mean NLL:
// theta <- theta - (rate/n) * grad NLL. Same stopping rule; reported
// for iteration-count comparison only.
FitResult vanilla_gradient_fit(const SampleSet& s, const GaussianParam& init, double rate,
                               double tol, int max_iter);

// Columns: step, t, x, y, vx, vy. t = step index * step size.
void write_trajectory_csv(std::ostream& os, const GeodesicResult& result, double step);

}  // namespace statlie
