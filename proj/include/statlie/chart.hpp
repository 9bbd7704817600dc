#pragma once

#include <functional>
#include <optional>

#include "statlie/tensor.hpp"

// Tensor calculus on the upper half-plane chart {(x, y) : y > 0}.
// The chart carries the one-parameter family of metrics
//   g = (dx^2 + lambda^2 dy^2) / y^2
// together with its one-parameter family of torsion-free connections.
// Closed-form evaluation and finite-difference evaluation are both
// provided; tests compare the two paths.

namespace statlie {

inline constexpr double kMinY = 1e-12;
inline constexpr double kDefaultStep = 1e-5;

/// Point of the upper half-plane. (x, y) plays the role of (mean, scale)
/// for the normal family; construction rejects y <= kMinY.
struct ChartPoint {
  double x;
  double y;

  ChartPoint(double x_, double y_);
};

/// Symmetric positive-definite 2x2 metric at a point.
struct MetricTensor {
  Mat2 g;

  MetricTensor(const Mat2& m);

  double operator()(int i, int j) const { return g(i, j); }
  Mat2 inverse() const;
};

using MetricField = std::function<MetricTensor(const ChartPoint&)>;

/// Christoffel symbols Gamma^k_ij at a point; comp(k, i, j).
struct Christoffels {
  Tensor3 c;

  double& operator()(int k, int i, int j) { return c(k, i, j); }
  double operator()(int k, int i, int j) const { return c(k, i, j); }

  /// max |Gamma^k_ij - Gamma^k_ji|
  double torsion_defect() const;
};

/// A connection given by evaluable Christoffel symbols. `alpha` is set
/// when the field is a member of the one-parameter family.
struct ConnectionField {
  std::function<Christoffels(const ChartPoint&)> gamma;
  std::optional<double> alpha;
  double lambda = 1.0;
};

/// Rank-3 covariant tensor with an optional basepoint (absent for
/// algebra-level tensors); comp(i, j, k).
struct Tensor3Sym {
  Tensor3 c;
  std::optional<ChartPoint> basepoint;

  double operator()(int i, int j, int k) const { return c(i, j, k); }
  double symmetry_defect() const { return c.symmetry_defect(); }
};

using CubicField = std::function<Tensor3Sym(const ChartPoint&)>;

/// Curvature tensor R^l_kij with R(d_i, d_j)d_k = sum_l R^l_kij d_l;
/// comp(l, k, i, j), antisymmetric in (i, j).
struct CurvatureTensor {
  Tensor4 r;

  double operator()(int l, int k, int i, int j) const { return r(l, k, i, j); }
  double max_abs() const { return r.max_abs(); }

  /// max |R^l_kij + R^l_kji|
  double antisymmetry_defect() const;
};

/// g = (dx^2 + lambda^2 dy^2)/y^2 evaluated at p: diag(1/y^2, lambda^2/y^2).
MetricTensor metric_at(double lambda, const ChartPoint& p);

/// The metric as an evaluable field.
MetricField metric_field(double lambda);

/// Christoffel symbols of the alpha-family member at p:
///   Gamma^y_xx = (1-alpha)/(lambda^2 y),
///   Gamma^x_xy = Gamma^x_yx = -(1+alpha)/y,
///   Gamma^y_yy = -(1+2 alpha)/y,
/// all other entries zero.
Christoffels alpha_christoffels(double alpha, double lambda, const ChartPoint& p);

/// The alpha-family member as a ConnectionField.
ConnectionField alpha_connection(double alpha, double lambda);

/// Levi-Civita symbols of an arbitrary metric field by central differences:
/// Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij).
/// Steps scale with y; throws on a singular metric.
Christoffels levi_civita_fd(const MetricField& metric, const ChartPoint& p,
                            double h = kDefaultStep);

/// Wraps levi_civita_fd as a ConnectionField (fully finite-difference path).
ConnectionField levi_civita_connection(MetricField metric, double h = kDefaultStep);

/// Closed-form cubic form of the lambda-metric at p:
/// C_xxy = 2/y^3 (plus symmetric permutations), C_yyy = 4 lambda^2/y^3.
Tensor3Sym cubic_form_closed(double lambda, const ChartPoint& p);

/// The closed-form cubic as an evaluable field.
CubicField cubic_field(double lambda);

/// Curvature of a connection field by central differences of its symbols:
/// R^l_kij = d_i Gamma^l_jk - d_j Gamma^l_ik
///           + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik.
CurvatureTensor curvature_fd(const ConnectionField& conn, const ChartPoint& p,
                             double h = kDefaultStep);

/// K = g(R(d_x, d_y)d_y, d_x) / (g_xx g_yy - g_xy^2).
double sectional_curvature(const MetricTensor& metric, const CurvatureTensor& R);

/// Covariant derivative of a rank-3 covariant field, comp(i, j, k, l):
/// (nabla_i C)_jkl = d_i C_jkl - G^m_ij C_mkl - G^m_ik C_jml - G^m_il C_jkm.
Tensor4 covariant_derivative_t3(const ConnectionField& conn, const CubicField& field,
                                const ChartPoint& p, double h = kDefaultStep);

/// Covariant derivative of a metric field, comp(i, j, k):
/// (nabla_i g)_jk = d_i g_jk - G^m_ij g_mk - G^m_ik g_jm.
Tensor3 covariant_derivative_metric(const ConnectionField& conn, const MetricField& metric,
                                    const ChartPoint& p, double h = kDefaultStep);

/// Covariant derivative of a (1,2)-tensor field K^l_jk, comp(i, j, k, l):
/// (nabla_i K)^l_jk = d_i K^l_jk + G^l_im K^m_jk - G^m_ij K^l_mk - G^m_ik K^l_jm.
/// The field is supplied as comp(l, j, k).
Tensor4 covariant_derivative_t12(const ConnectionField& conn,
                                 const std::function<Tensor3(const ChartPoint&)>& field,
                                 const ChartPoint& p, double h = kDefaultStep);

}  // namespace statlie
