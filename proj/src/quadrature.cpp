#include "statlie/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace statlie {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;  // sqrt(pi)
constexpr double kPiQuarterInv = 0.7511255444649425;  // pi^{-1/4}

void require_order(const QuadratureRule& rule, int min_order, const char* what) {
  if (rule.order < min_order) throw std::invalid_argument(what);
}

}  // namespace

GaussianParam::GaussianParam(double mu_, double sigma_) : mu(mu_), sigma(sigma_) {
  if (!(sigma > 0.0)) throw std::domain_error("sigma must be positive");
  if (!std::isfinite(mu) || !std::isfinite(sigma))
    throw std::domain_error("parameters must be finite");
}

QuadratureRule hermite_rule(int n) {
  if (n < 1 || n > 200) throw std::out_of_range("hermite_rule order must be in [1, 200]");

  constexpr int maxit = 200;

  QuadratureRule rule;
  rule.order = n;
  rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
  rule.weights.assign(static_cast<std::size_t>(n), 0.0);

  // orthonormal-polynomial recurrence: bounded values at every order in range
  const auto eval = [n](double z, double& p, double& dp) {
    double p1 = kPiQuarterInv;
    double p2 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
    }
    p = p1;
    dp = std::sqrt(2.0 * n) * p2;
  };

  const int m = (n + 1) / 2;
  std::vector<double> pos(static_cast<std::size_t>(m), 0.0);  // roots, descending

  // half the minimum root spacing pi/sqrt(2n+1-z^2): a downward march with
  // this step cannot skip a root, so each sign change brackets exactly one
  const double march = 0.5 * std::numbers::pi / std::sqrt(2.0 * n + 1.0);

  for (int i = 0; i < m; ++i) {
    double z = 0.0;
    double dp = 0.0;

    if (n % 2 == 1 && i == m - 1) {
      // middle root of an odd rule at exactly 0 (odd recurrence terms stay 0)
      double p = 0.0;
      eval(z, p, dp);
    } else {
      // all roots lie strictly below sqrt(2n+1), where p > 0; later starts
      // sit just below the previous root, clear of its residual noise
      double b = i == 0 ? std::sqrt(2.0 * n + 1.0) : pos[static_cast<std::size_t>(i - 1)] - march / 8.0;
      double pb = 0.0;
      double dpb = 0.0;
      eval(b, pb, dpb);

      double a = b;
      double pa = pb;
      bool bracketed = false;
      for (int k = 0; k < 8 * n && !bracketed; ++k) {
        a = b - march * (k + 1);
        eval(a, pa, dp);
        bracketed = (pa > 0.0) != (pb > 0.0);
      }
      if (!bracketed) throw std::runtime_error("hermite_rule: root bracketing failed");
      double lo = a;
      double hi = a + march;
      double plo = pa;

      // Newton clamped to the bracket, bisection when a step leaves it
      z = 0.5 * (lo + hi);
      bool converged = false;
      for (int it = 0; it < maxit; ++it) {
        double p = 0.0;
        eval(z, p, dp);
        if ((p > 0.0) == (plo > 0.0)) {
          lo = z;
          plo = p;
        } else {
          hi = z;
        }
        const double step = p / dp;
        double znew = z - step;
        if (!(znew > lo && znew < hi)) znew = 0.5 * (lo + hi);
        const double moved = std::abs(znew - z);
        z = znew;
        if (moved <= 1e-15 * std::max(1.0, std::abs(z)) || hi - lo <= 1e-15 * std::max(1.0, std::abs(z))) {
          converged = true;
          break;
        }
      }
      if (!converged) throw std::runtime_error("hermite_rule: Newton iteration did not converge");
      double p = 0.0;
      eval(z, p, dp);  // derivative at the settled node, for the weight
    }

    pos[static_cast<std::size_t>(i)] = z;
    const double w = 2.0 / (dp * dp);
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
    rule.nodes[static_cast<std::size_t>(i)] = -z;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    rule.weights[static_cast<std::size_t>(i)] = w;
  }
  return rule;
}

double expectation(const std::function<double(double)>& f, const GaussianParam& theta,
                   const QuadratureRule& rule) {
  const double scale = std::numbers::sqrt2 * theta.sigma;
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double value = f(theta.mu + scale * rule.nodes[i]);
    if (!std::isfinite(value))
      throw std::domain_error("expectation: integrand evaluated to a non-finite value");
    acc += rule.weights[i] * value;
  }
  return acc / kSqrtPi;
}

Vec2 score(const GaussianParam& theta, double t) {
  const double z = t - theta.mu;
  const double s2 = theta.sigma * theta.sigma;
  return {z / s2, -1.0 / theta.sigma + z * z / (s2 * theta.sigma)};
}

MetricTensor fisher_metric_numeric(const GaussianParam& theta, const QuadratureRule& rule) {
  require_order(rule, 3, "fisher_metric_numeric requires rule order >= 3");

  // scores evaluated in the centered variable z = sqrt(2) sigma u, so the
  // result carries no mu roundoff
  const double sigma = theta.sigma;
  double gxx = 0.0, gxy = 0.0, gyy = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = rule.nodes[i];
    const double w = rule.weights[i];
    const double sx = std::numbers::sqrt2 * u / sigma;           // (t-mu)/sigma^2
    const double sy = (2.0 * u * u - 1.0) / sigma;               // -1/sigma + (t-mu)^2/sigma^3
    gxx += w * sx * sx;
    gxy += w * sx * sy;
    gyy += w * sy * sy;
  }
  Mat2 g;
  g(0, 0) = gxx / kSqrtPi;
  g(0, 1) = gxy / kSqrtPi;
  g(1, 0) = g(0, 1);
  g(1, 1) = gyy / kSqrtPi;
  return MetricTensor(g);
}

Tensor3Sym cubic_numeric(const GaussianParam& theta, const QuadratureRule& rule) {
  require_order(rule, 4, "cubic_numeric requires rule order >= 4");

  const double sigma = theta.sigma;
  double cxxx = 0.0, cxxy = 0.0, cxyy = 0.0, cyyy = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = rule.nodes[i];
    const double w = rule.weights[i];
    const double sx = std::numbers::sqrt2 * u / sigma;
    const double sy = (2.0 * u * u - 1.0) / sigma;
    cxxx += w * sx * sx * sx;
    cxxy += w * sx * sx * sy;
    cxyy += w * sx * sy * sy;
    cyyy += w * sy * sy * sy;
  }
  cxxx /= kSqrtPi;
  cxxy /= kSqrtPi;
  cxyy /= kSqrtPi;
  cyyy /= kSqrtPi;

  Tensor3Sym C;
  C.c(0, 0, 0) = cxxx;
  C.c(0, 0, 1) = C.c(0, 1, 0) = C.c(1, 0, 0) = cxxy;
  C.c(0, 1, 1) = C.c(1, 0, 1) = C.c(1, 1, 0) = cxyy;
  C.c(1, 1, 1) = cyyy;
  C.basepoint = ChartPoint(theta.mu, theta.sigma);
  return C;
}

}  // namespace statlie
