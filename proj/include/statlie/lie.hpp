#pragma once

#include <string>

#include "statlie/chart.hpp"
#include "statlie/tensor.hpp"

namespace statlie {

// Two-dimensional Lie algebra given by structure constants c(k,i,j),
// meaning [e_i, e_j] = sum_k c(k,i,j) e_k.  Antisymmetric in (i,j);
// Jacobi is vacuous in dimension 2.
struct LieAlgebra2 {
  Tensor3 structure;

  explicit LieAlgebra2(const Tensor3& c);

  // [e_1, e_2] = -e_1 / lambda: the scaled orthonormal frame of the
  // affine group of the line.
  static LieAlgebra2 solvable_frame(double lambda);
  static LieAlgebra2 abelian();
};

// Inner product on the algebra, stored as the Gram matrix of the frame.
struct InnerProduct {
  Mat2 gram;

  explicit InnerProduct(const Mat2& g);
  static InnerProduct identity();

  double pair(const Vec2& v, const Vec2& w) const;
};

// Algebra-valued bilinear map m(e_i, e_j) = sum_k comps(k,i,j) e_k.
// Connection tables mu, their symmetric parts nu, the U-map, and the
// skewness operator K are all stored this way.
struct BilinearMap {
  Tensor3 comps;
  bool symmetric_flag = false;

  BilinearMap() = default;
  BilinearMap(const Tensor3& m, bool symmetric);

  Vec2 apply(const Vec2& x, const Vec2& y) const;
  double symmetry_defect() const;  // max |m(k,i,j) - m(k,j,i)|
};

BilinearMap operator+(const BilinearMap& a, const BilinearMap& b);
BilinearMap operator-(const BilinearMap& a, const BilinearMap& b);
BilinearMap operator*(double s, const BilinearMap& m);
double max_abs_diff(const BilinearMap& a, const BilinearMap& b);

// Element (x, y) of the group of matrices [[y, x], [0, 1]], y > 0.
struct GroupElement {
  double x = 0.0;
  double y = 1.0;

  GroupElement() = default;
  GroupElement(double x_, double y_);
};

Vec2 bracket(const LieAlgebra2& alg, const Vec2& x, const Vec2& y);

// Symmetric U with 2<U(X,Y),Z> = <[Z,X],Y> + <X,[Z,Y]>, solved per
// (X,Y) pair against the Gram matrix.
BilinearMap u_map(const LieAlgebra2& alg, const InnerProduct& ip);

// True iff every component of u_map is below tol (absolute); the metric
// is bi-invariant exactly when U vanishes.
bool bi_invariance_check(const LieAlgebra2& alg, const InnerProduct& ip, double tol);

// mu_g(X,Y) = [X,Y]/2 + U(X,Y).
BilinearMap levi_civita_left_invariant(const LieAlgebra2& alg, const InnerProduct& ip);

// T(X,Y) = -[X,Y] + mu(X,Y) - mu(Y,X).
BilinearMap torsion(const LieAlgebra2& alg, const BilinearMap& mu);

// mu = nu + [.,.]/2; the unique torsion-free connection with symmetric
// part nu.  Rejects non-symmetric nu.
BilinearMap connection_from_nu(const LieAlgebra2& alg, const BilinearMap& nu);

// Connection table of the alpha-family in the scaled orthonormal frame:
// mu(e1,e1) = (1-a)/l e2, mu(e1,e2) = -(1+a)/l e1,
// mu(e2,e1) = -a/l e1,   mu(e2,e2) = -2a/l e2.
BilinearMap alpha_connection_left_invariant(double alpha, double lambda);

GroupElement group_mul(const GroupElement& a, const GroupElement& b);
GroupElement group_inv(const GroupElement& a);

// t -> y t + x, the affine action on the real line.
double act_on_line(const GroupElement& a, double t);

// L_a(x, y) = (a_y x + a_x, a_y y) on the chart.
ChartPoint left_translation(const GroupElement& a, const ChartPoint& p);

// Frame-to-coordinate dictionary at p: e_1 = y d_x, e_2 = (y/lambda) d_y.
// Each overload converts one left-invariant object into its coordinate
// components at p.

// Connection table -> Christoffel symbols (includes the derivative term
// of the non-tensorial transformation law).
Christoffels frame_to_coordinates(double lambda, const ChartPoint& p, const BilinearMap& mu);

// Inner product -> metric components.
MetricTensor frame_to_coordinates(double lambda, const ChartPoint& p, const InnerProduct& ip);

// Covariant 3-tensor (cubic form) -> coordinate components; the result
// carries p as basepoint.
Tensor3Sym frame_to_coordinates(double lambda, const ChartPoint& p, const Tensor3Sym& c);

// Covariant 4-tensor (covariant derivative of a cubic form).
Tensor4 frame_to_coordinates(double lambda, const ChartPoint& p, const Tensor4& t);

// Curvature tensor, one contravariant slot: comp(l,k,i,j).
CurvatureTensor frame_to_coordinates(double lambda, const ChartPoint& p,
                                     const CurvatureTensor& r);

}  // namespace statlie
