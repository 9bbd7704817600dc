#include "statlie/dynamics.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace statlie {

namespace {

struct RawState {
  double x, y, vx, vy;
};

// geodesic equation with the closed-form family symbols; valid for y > 0
RawState rhs(double alpha, double lambda, const RawState& s) {
  const double y = s.y;
  const double acc_x = 2.0 * (1.0 + alpha) * s.vx * s.vy / y;
  const double acc_y =
      -(1.0 - alpha) * s.vx * s.vx / (lambda * lambda * y) + (1.0 + 2.0 * alpha) * s.vy * s.vy / y;
  return {s.vx, s.vy, acc_x, acc_y};
}

RawState advance(const RawState& s, const RawState& d, double h) {
  return {s.x + h * d.x, s.y + h * d.y, s.vx + h * d.vx, s.vy + h * d.vy};
}

bool finite(const RawState& s) {
  return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.vx) && std::isfinite(s.vy);
}

}  // namespace

GeodesicResult integrate_geodesic(double alpha, double lambda, const GeodesicState& init,
                                  double step, int n_steps, double y_min) {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::domain_error("step must be positive");
  if (!(lambda > 0.0)) throw std::domain_error("lambda must be positive");
  if (n_steps < 0) throw std::domain_error("n_steps must be non-negative");

  GeodesicResult result;
  result.states.reserve(static_cast<std::size_t>(n_steps) + 1);
  result.states.push_back(init);

  RawState s{init.point.x, init.point.y, init.velocity[0], init.velocity[1]};
  for (int n = 0; n < n_steps; ++n) {
    const RawState k1 = rhs(alpha, lambda, s);
    const RawState s2 = advance(s, k1, step / 2.0);
    if (s2.y <= y_min) break;
    const RawState k2 = rhs(alpha, lambda, s2);
    const RawState s3 = advance(s, k2, step / 2.0);
    if (s3.y <= y_min) break;
    const RawState k3 = rhs(alpha, lambda, s3);
    const RawState s4 = advance(s, k3, step);
    if (s4.y <= y_min) break;
    const RawState k4 = rhs(alpha, lambda, s4);

    const RawState next{
        s.x + step / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
        s.y + step / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
        s.vx + step / 6.0 * (k1.vx + 2.0 * k2.vx + 2.0 * k3.vx + k4.vx),
        s.vy + step / 6.0 * (k1.vy + 2.0 * k2.vy + 2.0 * k3.vy + k4.vy),
    };
    if (!finite(next)) throw DivergenceError("geodesic state became non-finite");
    if (next.y <= y_min) break;
    s = next;
    result.states.push_back({ChartPoint(s.x, s.y), Vec2{s.vx, s.vy}});
  }

  result.status = result.states.size() == static_cast<std::size_t>(n_steps) + 1
                      ? GeodesicStatus::completed
                      : GeodesicStatus::boundary;
  return result;
}

SampleSet::SampleSet(std::vector<double> values) : data(std::move(values)) {
  if (data.size() < 2) throw std::invalid_argument("sample set needs at least 2 observations");
  for (double t : data)
    if (!std::isfinite(t)) throw std::invalid_argument("sample set entries must be finite");
}

SampleSet SampleSet::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sample file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  for (char& c : text)
    if (c == ',') c = ' ';

  std::istringstream tokens(text);
  std::vector<double> values;
  double v = 0.0;
  while (tokens >> v) values.push_back(v);
  if (!tokens.eof()) throw std::runtime_error("malformed number in sample file: " + path);
  return SampleSet(std::move(values));
}

double SampleSet::mean() const {
  double acc = 0.0;
  for (double t : data) acc += t;
  return acc / static_cast<double>(data.size());
}

double SampleSet::stddev_ml() const {
  const double m = mean();
  double acc = 0.0;
  for (double t : data) acc += (t - m) * (t - m);
  return std::sqrt(acc / static_cast<double>(data.size()));
}

Vec2 nll_gradient(const GaussianParam& theta, const SampleSet& s) {
  const double sigma2 = theta.sigma * theta.sigma;
  double sum_dev = 0.0;
  double sum_dev2 = 0.0;
  for (double t : s.data) {
    const double d = t - theta.mu;
    sum_dev += d;
    sum_dev2 += d * d;
  }
  const double n = static_cast<double>(s.size());
  return {-sum_dev / sigma2, n / theta.sigma - sum_dev2 / (sigma2 * theta.sigma)};
}

namespace {

FitResult gradient_fit(const SampleSet& s, const GaussianParam& init, double rate, double tol,
                       int max_iter, bool preconditioned) {
  if (!(rate > 0.0) || rate > 1.0) throw std::domain_error("rate must lie in (0, 1]");
  if (!(tol > 0.0)) throw std::domain_error("tol must be positive");
  if (max_iter < 0) throw std::domain_error("max_iter must be non-negative");

  const double n = static_cast<double>(s.size());
  GaussianParam theta = init;
  FitResult result{theta, 0, false};
  for (int it = 0; it <= max_iter; ++it) {
    const Vec2 grad = nll_gradient(theta, s);
    if (std::hypot(grad[0], grad[1]) < tol) {
      result.theta = theta;
      result.iterations = it;
      result.converged = true;
      return result;
    }
    if (it == max_iter) break;

    double dmu, dsigma;
    if (preconditioned) {
      // inverse sample Fisher information diag(sigma^2/n, sigma^2/(2n))
      const double sigma2 = theta.sigma * theta.sigma;
      dmu = sigma2 / n * grad[0];
      dsigma = sigma2 / (2.0 * n) * grad[1];
    } else {
      dmu = grad[0] / n;
      dsigma = grad[1] / n;
    }
    const double mu = theta.mu - rate * dmu;
    const double sigma = theta.sigma - rate * dsigma;
    if (!std::isfinite(mu) || !std::isfinite(sigma) || sigma <= 1e-9 || sigma >= 1e9)
      throw DivergenceError("fit left the admissible parameter region");
    theta = GaussianParam(mu, sigma);
  }
  result.theta = theta;
  result.iterations = max_iter;
  result.converged = false;
  return result;
}

}  // namespace

FitResult natural_gradient_fit(const SampleSet& s, const GaussianParam& init, double rate,
                               double tol, int max_iter) {
  return gradient_fit(s, init, rate, tol, max_iter, true);
}

FitResult vanilla_gradient_fit(const SampleSet& s, const GaussianParam& init, double rate,
                               double tol, int max_iter) {
  return gradient_fit(s, init, rate, tol, max_iter, false);
}

void write_trajectory_csv(std::ostream& os, const GeodesicResult& result, double step) {
  os.precision(std::numeric_limits<double>::max_digits10);
  os << "step,t,x,y,vx,vy\n";
  for (std::size_t i = 0; i < result.states.size(); ++i) {
    const GeodesicState& st = result.states[i];
    os << i << ',' << static_cast<double>(i) * step << ',' << st.point.x << ',' << st.point.y
       << ',' << st.velocity[0] << ',' << st.velocity[1] << '\n';
  }
}

}  // namespace statlie
