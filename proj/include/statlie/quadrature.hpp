#pragma once

#include <functional>
#include <vector>

#include "statlie/chart.hpp"
#include "statlie/tensor.hpp"

// Statistics-side recomputation of the metric and cubic form from score
// expectations under the normal density, via Gauss-Hermite quadrature.
// Serves as the independent oracle for the closed forms in chart.hpp.

namespace statlie {

/// Parameters (mean, standard deviation) of a normal distribution.
struct GaussianParam {
  double mu;
  double sigma;

  GaussianParam(double mu_, double sigma_);
};

/// Gauss-Hermite rule for the weight e^{-u^2} on the real line.
/// Nodes ascend and are symmetric about 0; weights sum to sqrt(pi).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
};

/// n-point rule, exact for polynomials of degree <= 2n-1 against e^{-u^2}.
/// Newton iteration on the orthonormal Hermite recurrence; 1 <= n <= 200.
QuadratureRule hermite_rule(int n);

/// E_theta[f] = (1/sqrt(pi)) sum_i w_i f(mu + sqrt(2) sigma u_i).
/// Throws if any f evaluation is non-finite.
double expectation(const std::function<double(double)>& f, const GaussianParam& theta,
                   const QuadratureRule& rule);

/// Log-density derivatives at t:
/// (d_mu log p, d_sigma log p) = ((t-mu)/sigma^2, -1/sigma + (t-mu)^2/sigma^3).
Vec2 score(const GaussianParam& theta, double t);

/// Matrix of pairwise score products under expectation; equals
/// diag(1/sigma^2, 2/sigma^2). Requires rule order >= 3.
MetricTensor fisher_metric_numeric(const GaussianParam& theta, const QuadratureRule& rule);

/// Totally symmetric tensor of triple score products under expectation;
/// equals cubic_form_closed(sqrt(2), (mu, sigma)). Requires order >= 4.
Tensor3Sym cubic_numeric(const GaussianParam& theta, const QuadratureRule& rule);

}  // namespace statlie
