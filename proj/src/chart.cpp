#include "statlie/chart.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace statlie {

namespace {

void require_positive_lambda(double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("lambda must be positive");
}

// step scaled with y so accuracy is uniform across the half-plane
double scaled_step(double h, const ChartPoint& p) {
  if (!(h > 0.0)) throw std::domain_error("finite-difference step must be positive");
  return h * p.y;
}

ChartPoint shifted(const ChartPoint& p, int dir, double d) {
  return dir == 0 ? ChartPoint(p.x + d, p.y) : ChartPoint(p.x, p.y + d);
}

}  // namespace

ChartPoint::ChartPoint(double x_, double y_) : x(x_), y(y_) {
  if (!(y > kMinY)) throw std::domain_error("chart point requires y > 0");
  if (!std::isfinite(x) || !std::isfinite(y))
    throw std::domain_error("chart point must be finite");
}

MetricTensor::MetricTensor(const Mat2& m) : g(m) {
  if (g(0, 1) != g(1, 0)) throw std::domain_error("metric must be symmetric");
  if (!(g(0, 0) > 0.0) || !(g.det() > 0.0))
    throw std::domain_error("metric must be positive definite");
}

Mat2 MetricTensor::inverse() const {
  const double d = g.det();
  return Mat2{{g(1, 1) / d, -g(0, 1) / d, -g(1, 0) / d, g(0, 0) / d}};
}

double Christoffels::torsion_defect() const {
  double m = 0.0;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(c(k, i, j) - c(k, j, i)));
  return m;
}

double CurvatureTensor::antisymmetry_defect() const {
  double m = 0.0;
  for (int l = 0; l < 2; ++l)
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(r(l, k, i, j) + r(l, k, j, i)));
  return m;
}

MetricTensor metric_at(double lambda, const ChartPoint& p) {
  require_positive_lambda(lambda);
  const double y2 = p.y * p.y;
  return MetricTensor(Mat2::diag(1.0 / y2, lambda * lambda / y2));
}

MetricField metric_field(double lambda) {
  require_positive_lambda(lambda);
  return [lambda](const ChartPoint& p) { return metric_at(lambda, p); };
}

Christoffels alpha_christoffels(double alpha, double lambda, const ChartPoint& p) {
  require_positive_lambda(lambda);
  Christoffels gamma;
  gamma(1, 0, 0) = (1.0 - alpha) / (lambda * lambda * p.y);
  gamma(0, 0, 1) = -(1.0 + alpha) / p.y;
  gamma(0, 1, 0) = gamma(0, 0, 1);
  gamma(1, 1, 1) = -(1.0 + 2.0 * alpha) / p.y;
  return gamma;
}

ConnectionField alpha_connection(double alpha, double lambda) {
  require_positive_lambda(lambda);
  ConnectionField conn;
  conn.gamma = [alpha, lambda](const ChartPoint& p) {
    return alpha_christoffels(alpha, lambda, p);
  };
  conn.alpha = alpha;
  conn.lambda = lambda;
  return conn;
}

Christoffels levi_civita_fd(const MetricField& metric, const ChartPoint& p, double h) {
  const double d = scaled_step(h, p);
  const Mat2 g = metric(p).g;
  if (g.det() < 1e-14 * g.max_abs() * g.max_abs())
    throw std::domain_error("singular metric");
  const Mat2 ginv = MetricTensor(g).inverse();

  // dg[l](i,j) = d_l g_ij by central differences
  Mat2 dg[2];
  for (int l = 0; l < 2; ++l) {
    const Mat2 gp = metric(shifted(p, l, d)).g;
    const Mat2 gm = metric(shifted(p, l, -d)).g;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) dg[l](i, j) = (gp(i, j) - gm(i, j)) / (2.0 * d);
  }

  Christoffels gamma;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double s = 0.0;
        for (int l = 0; l < 2; ++l)
          s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma(k, i, j) = 0.5 * s;
      }
  return gamma;
}

ConnectionField levi_civita_connection(MetricField metric, double h) {
  ConnectionField conn;
  conn.gamma = [metric = std::move(metric), h](const ChartPoint& p) {
    return levi_civita_fd(metric, p, h);
  };
  return conn;
}

Tensor3Sym cubic_form_closed(double lambda, const ChartPoint& p) {
  require_positive_lambda(lambda);
  const double y3 = p.y * p.y * p.y;
  Tensor3Sym C;
  C.c(0, 0, 1) = 2.0 / y3;
  C.c(0, 1, 0) = C.c(0, 0, 1);
  C.c(1, 0, 0) = C.c(0, 0, 1);
  C.c(1, 1, 1) = 4.0 * lambda * lambda / y3;
  C.basepoint = p;
  return C;
}

CubicField cubic_field(double lambda) {
  require_positive_lambda(lambda);
  return [lambda](const ChartPoint& p) { return cubic_form_closed(lambda, p); };
}

CurvatureTensor curvature_fd(const ConnectionField& conn, const ChartPoint& p, double h) {
  const double d = scaled_step(h, p);
  const Christoffels g0 = conn.gamma(p);

  Tensor3 dgamma[2];  // dgamma[i](l,j,k) = d_i Gamma^l_jk
  for (int i = 0; i < 2; ++i) {
    const Christoffels gp = conn.gamma(shifted(p, i, d));
    const Christoffels gm = conn.gamma(shifted(p, i, -d));
    for (int l = 0; l < 2; ++l)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          dgamma[i](l, j, k) = (gp(l, j, k) - gm(l, j, k)) / (2.0 * d);
  }

  CurvatureTensor R;
  for (int l = 0; l < 2; ++l)
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          double s = dgamma[i](l, j, k) - dgamma[j](l, i, k);
          for (int m = 0; m < 2; ++m)
            s += g0(l, i, m) * g0(m, j, k) - g0(l, j, m) * g0(m, i, k);
          R.r(l, k, i, j) = s;
        }
  return R;
}

double sectional_curvature(const MetricTensor& metric, const CurvatureTensor& R) {
  const double denom = metric(0, 0) * metric(1, 1) - metric(0, 1) * metric(0, 1);
  if (std::abs(denom) < 1e-12) throw std::domain_error("degenerate plane");
  double num = 0.0;  // g(R(d_x, d_y)d_y, d_x)
  for (int l = 0; l < 2; ++l) num += metric(l, 0) * R(l, 1, 0, 1);
  return num / denom;
}

Tensor4 covariant_derivative_t3(const ConnectionField& conn, const CubicField& field,
                                const ChartPoint& p, double h) {
  const double d = scaled_step(h, p);
  const Christoffels gamma = conn.gamma(p);
  const Tensor3 C = field(p).c;

  Tensor3 dC[2];
  for (int i = 0; i < 2; ++i) {
    const Tensor3 Cp = field(shifted(p, i, d)).c;
    const Tensor3 Cm = field(shifted(p, i, -d)).c;
    for (std::size_t n = 0; n < 8; ++n) dC[i].v[n] = (Cp.v[n] - Cm.v[n]) / (2.0 * d);
  }

  Tensor4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          double s = dC[i](j, k, l);
          for (int m = 0; m < 2; ++m)
            s -= gamma(m, i, j) * C(m, k, l) + gamma(m, i, k) * C(j, m, l) +
                 gamma(m, i, l) * C(j, k, m);
          out(i, j, k, l) = s;
        }
  return out;
}

Tensor3 covariant_derivative_metric(const ConnectionField& conn, const MetricField& metric,
                                    const ChartPoint& p, double h) {
  const double d = scaled_step(h, p);
  const Christoffels gamma = conn.gamma(p);
  const Mat2 g = metric(p).g;

  Mat2 dg[2];
  for (int i = 0; i < 2; ++i) {
    const Mat2 gp = metric(shifted(p, i, d)).g;
    const Mat2 gm = metric(shifted(p, i, -d)).g;
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) dg[i](j, k) = (gp(j, k) - gm(j, k)) / (2.0 * d);
  }

  Tensor3 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        double s = dg[i](j, k);
        for (int m = 0; m < 2; ++m)
          s -= gamma(m, i, j) * g(m, k) + gamma(m, i, k) * g(j, m);
        out(i, j, k) = s;
      }
  return out;
}

Tensor4 covariant_derivative_t12(const ConnectionField& conn,
                                 const std::function<Tensor3(const ChartPoint&)>& field,
                                 const ChartPoint& p, double h) {
  const double d = scaled_step(h, p);
  const Christoffels gamma = conn.gamma(p);
  const Tensor3 K = field(p);  // comp(l, j, k) = K^l_jk

  Tensor3 dK[2];
  for (int i = 0; i < 2; ++i) {
    const Tensor3 Kp = field(shifted(p, i, d));
    const Tensor3 Km = field(shifted(p, i, -d));
    for (std::size_t n = 0; n < 8; ++n) dK[i].v[n] = (Kp.v[n] - Km.v[n]) / (2.0 * d);
  }

  Tensor4 out;  // comp(i, j, k, l) = (nabla_i K)^l_jk
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          double s = dK[i](l, j, k);
          for (int m = 0; m < 2; ++m)
            s += gamma(l, i, m) * K(m, j, k) - gamma(m, i, j) * K(l, m, k) -
                 gamma(m, i, k) * K(l, j, m);
          out(i, j, k, l) = s;
        }
  return out;
}

}  // namespace statlie
