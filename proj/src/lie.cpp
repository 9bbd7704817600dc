#include "statlie/lie.hpp"

#include <cmath>
#include <stdexcept>

namespace statlie {

namespace {

// exact-structure validation allowance (roundoff from user arithmetic)
constexpr double kStructTol = 1e-12;

Vec2 basis(int i) { return i == 0 ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0}; }

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::domain_error("lambda must be positive and finite");
}

// frame components at p: columns of A are the chart components of e_a,
// B = A^{-1}, dB = d(B)/dy (B depends on y only)
struct FrameAtPoint {
  Mat2 A;
  Mat2 B;
  Mat2 dB;
};

FrameAtPoint frame_at(double lambda, const ChartPoint& p) {
  require_lambda(lambda);
  const double y = p.y;
  FrameAtPoint f;
  f.A = Mat2::diag(y, y / lambda);
  f.B = Mat2::diag(1.0 / y, lambda / y);
  f.dB = Mat2::diag(-1.0 / (y * y), -lambda / (y * y));
  return f;
}

}  // namespace

LieAlgebra2::LieAlgebra2(const Tensor3& c) : structure(c) {
  const double scale = std::max(1.0, c.max_abs());
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (std::abs(c(k, i, j) + c(k, j, i)) > kStructTol * scale)
          throw std::invalid_argument("structure constants must be antisymmetric");
}

LieAlgebra2 LieAlgebra2::solvable_frame(double lambda) {
  require_lambda(lambda);
  Tensor3 c;
  c(0, 0, 1) = -1.0 / lambda;
  c(0, 1, 0) = 1.0 / lambda;
  return LieAlgebra2(c);
}

LieAlgebra2 LieAlgebra2::abelian() { return LieAlgebra2(Tensor3{}); }

InnerProduct::InnerProduct(const Mat2& g) : gram(g) {
  if (g(0, 1) != g(1, 0)) throw std::invalid_argument("Gram matrix must be symmetric");
  if (!(g(0, 0) > 0.0) || !(g.det() > 0.0))
    throw std::invalid_argument("Gram matrix must be positive definite");
}

InnerProduct InnerProduct::identity() { return InnerProduct(Mat2::identity()); }

double InnerProduct::pair(const Vec2& v, const Vec2& w) const {
  return dot(v, gram.mul(w));
}

BilinearMap::BilinearMap(const Tensor3& m, bool symmetric)
    : comps(m), symmetric_flag(symmetric) {
  if (symmetric_flag) {
    const double scale = std::max(1.0, m.max_abs());
    if (symmetry_defect() > kStructTol * scale)
      throw std::invalid_argument("bilinear map declared symmetric is not");
  }
}

Vec2 BilinearMap::apply(const Vec2& x, const Vec2& y) const {
  Vec2 out{0.0, 0.0};
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out[static_cast<std::size_t>(k)] += comps(k, i, j) * x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
  return out;
}

double BilinearMap::symmetry_defect() const {
  double d = 0.0;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        d = std::max(d, std::abs(comps(k, i, j) - comps(k, j, i)));
  return d;
}

BilinearMap operator+(const BilinearMap& a, const BilinearMap& b) {
  return BilinearMap(a.comps + b.comps, false);
}

BilinearMap operator-(const BilinearMap& a, const BilinearMap& b) {
  return BilinearMap(a.comps - b.comps, false);
}

BilinearMap operator*(double s, const BilinearMap& m) {
  return BilinearMap(m.comps * s, false);
}

double max_abs_diff(const BilinearMap& a, const BilinearMap& b) {
  return max_abs_diff(a.comps, b.comps);
}

GroupElement::GroupElement(double x_, double y_) : x(x_), y(y_) {
  if (!(y > 0.0) || !std::isfinite(y) || !std::isfinite(x))
    throw std::domain_error("group element requires finite x and y > 0");
}

Vec2 bracket(const LieAlgebra2& alg, const Vec2& x, const Vec2& y) {
  Vec2 out{0.0, 0.0};
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        out[static_cast<std::size_t>(k)] +=
            alg.structure(k, i, j) * x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
  return out;
}

BilinearMap u_map(const LieAlgebra2& alg, const InnerProduct& ip) {
  Tensor3 u;
  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j) {
      Vec2 rhs{0.0, 0.0};
      for (int z = 0; z < 2; ++z)
        rhs[static_cast<std::size_t>(z)] =
            ip.pair(bracket(alg, basis(z), basis(i)), basis(j)) +
            ip.pair(basis(i), bracket(alg, basis(z), basis(j)));
      const Vec2 val = ip.gram.solve({rhs[0] / 2.0, rhs[1] / 2.0});
      for (int k = 0; k < 2; ++k) {
        u(k, i, j) = val[static_cast<std::size_t>(k)];
        u(k, j, i) = val[static_cast<std::size_t>(k)];
      }
    }
  return BilinearMap(u, true);
}

bool bi_invariance_check(const LieAlgebra2& alg, const InnerProduct& ip, double tol) {
  return u_map(alg, ip).comps.max_abs() < tol;
}

BilinearMap levi_civita_left_invariant(const LieAlgebra2& alg, const InnerProduct& ip) {
  const BilinearMap u = u_map(alg, ip);
  return BilinearMap(alg.structure * 0.5 + u.comps, false);
}

BilinearMap torsion(const LieAlgebra2& alg, const BilinearMap& mu) {
  Tensor3 t;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        t(k, i, j) = -alg.structure(k, i, j) + mu.comps(k, i, j) - mu.comps(k, j, i);
  return BilinearMap(t, false);
}

BilinearMap connection_from_nu(const LieAlgebra2& alg, const BilinearMap& nu) {
  const double scale = std::max(1.0, nu.comps.max_abs());
  if (nu.symmetry_defect() > kStructTol * scale)
    throw std::invalid_argument("connection_from_nu requires a symmetric nu");
  return BilinearMap(nu.comps + alg.structure * 0.5, false);
}

BilinearMap alpha_connection_left_invariant(double alpha, double lambda) {
  require_lambda(lambda);
  Tensor3 m;
  m(1, 0, 0) = (1.0 - alpha) / lambda;
  m(0, 0, 1) = -(1.0 + alpha) / lambda;
  m(0, 1, 0) = -alpha / lambda;
  m(1, 1, 1) = -2.0 * alpha / lambda;
  return BilinearMap(m, false);
}

GroupElement group_mul(const GroupElement& a, const GroupElement& b) {
  return GroupElement(a.y * b.x + a.x, a.y * b.y);
}

GroupElement group_inv(const GroupElement& a) {
  return GroupElement(-a.x / a.y, 1.0 / a.y);
}

double act_on_line(const GroupElement& a, double t) { return a.y * t + a.x; }

ChartPoint left_translation(const GroupElement& a, const ChartPoint& p) {
  return ChartPoint(a.y * p.x + a.x, a.y * p.y);
}

Christoffels frame_to_coordinates(double lambda, const ChartPoint& p, const BilinearMap& mu) {
  const FrameAtPoint f = frame_at(lambda, p);
  Christoffels out;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double acc = 0.0;
        // derivative of the inverse frame: only the y-direction contributes
        if (i == 1)
          for (int a = 0; a < 2; ++a) acc += f.dB(a, j) * f.A(k, a);
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
              acc += f.B(b, i) * f.A(k, c) * mu.comps(c, b, a) * f.B(a, j);
        out(k, i, j) = acc;
      }
  return out;
}

MetricTensor frame_to_coordinates(double lambda, const ChartPoint& p, const InnerProduct& ip) {
  const FrameAtPoint f = frame_at(lambda, p);
  auto lower = [&](int i, int j) {
    double acc = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) acc += f.B(a, i) * f.B(b, j) * ip.gram(a, b);
    return acc;
  };
  Mat2 g;
  g(0, 0) = lower(0, 0);
  g(0, 1) = lower(0, 1);
  g(1, 0) = g(0, 1);
  g(1, 1) = lower(1, 1);
  return MetricTensor(g);
}

Tensor3Sym frame_to_coordinates(double lambda, const ChartPoint& p, const Tensor3Sym& c) {
  const FrameAtPoint f = frame_at(lambda, p);
  Tensor3Sym out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        double acc = 0.0;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            for (int d = 0; d < 2; ++d)
              acc += f.B(a, i) * f.B(b, j) * f.B(d, k) * c(a, b, d);
        out.c(i, j, k) = acc;
      }
  out.basepoint = p;
  return out;
}

Tensor4 frame_to_coordinates(double lambda, const ChartPoint& p, const Tensor4& t) {
  const FrameAtPoint f = frame_at(lambda, p);
  Tensor4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          double acc = 0.0;
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
              for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                  acc += f.B(a, i) * f.B(b, j) * f.B(c, k) * f.B(d, l) * t(a, b, c, d);
          out(i, j, k, l) = acc;
        }
  return out;
}

CurvatureTensor frame_to_coordinates(double lambda, const ChartPoint& p,
                                     const CurvatureTensor& r) {
  const FrameAtPoint f = frame_at(lambda, p);
  CurvatureTensor out;
  for (int l = 0; l < 2; ++l)
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          double acc = 0.0;
          for (int d = 0; d < 2; ++d)
            for (int c = 0; c < 2; ++c)
              for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                  acc += f.A(l, d) * f.B(c, k) * f.B(a, i) * f.B(b, j) * r(d, c, a, b);
          out.r(l, k, i, j) = acc;
        }
  return out;
}

}  // namespace statlie
