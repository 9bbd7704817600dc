#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "statlie/lie.hpp"

// Statistical structures (inner product + torsion-free connection with
// totally symmetric cubic form) on the 2-dim solvable algebra: the five
// equivalent symmetry/curvature conditions, the curvature decomposition
// identity, and the linear characterization of the admissible family.

namespace statlie {

// Raised when an operation requiring a totally symmetric cubic form is
// applied to a structure whose cubic form is not.
struct IncompatibleStructureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a nullspace computation returns a dimension other than the
// one the theory forces; signals an implementation bug, not a valid result.
struct RankAnomalyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Pair (inner product, torsion-free left-invariant connection), the
// connection stored through its symmetric part nu (mu = nu + [.,.]/2).
// Compatibility is a checkable property, not a constructor requirement:
// incompatible candidates are constructible for negative tests.
struct StatisticalStructure {
  LieAlgebra2 algebra;
  InnerProduct ip;
  BilinearMap nu;

  StatisticalStructure(const LieAlgebra2& alg, const InnerProduct& inner,
                       const BilinearMap& nu_sym);

  BilinearMap mu() const;
};

// Outcome of the five-condition equivalence check. `alpha` is set iff
// condition (1) holds (the connection table matches one family member).
struct VerificationReport {
  std::optional<double> alpha;
  bool cond2 = false;
  bool cond3 = false;
  bool cond4 = false;
  bool cond5 = false;
  std::map<std::string, double> residuals;
  double tolerance = 0.0;

  bool cond1() const { return alpha.has_value(); }
  bool all_pass() const { return cond1() && cond2 && cond3 && cond4 && cond5; }

  // The theorem demands all five booleans agree.
  bool all_equivalent() const {
    const bool c1 = cond1();
    return cond2 == c1 && cond3 == c1 && cond4 == c1 && cond5 == c1;
  }
};

// Which connection differentiates in nabla_C.
enum class WhichConnection { structure, levi_civita };

// Result of the nullspace characterization: the space of cubic-form
// coordinates (C_111, C_112, C_122, C_222) whose induced structure
// satisfies the symmetry condition.
struct Characterization {
  double lambda = 0.0;
  int dimension = 0;
  std::array<double, 4> generator{};        // normalized to C_112 = 1 when possible
  std::array<double, 4> singular_values{};  // descending

  // p parameterizes the generator scale; the family parameter it induces.
  double alpha_for_p(double p) const { return p * lambda / 2.0; }
};

// C(X,Y,Z) = -<mu(X,Y),Z> - <Y, mu(X,Z)> on basis triples; symmetric in
// (Y,Z) by construction, totally symmetric iff the structure is compatible.
Tensor3Sym cubic_left_invariant(const StatisticalStructure& s);

bool compatibility_check(const StatisticalStructure& s, double tol);

// K = 2(U - nu); requires compatibility, which makes the lowered K
// totally symmetric and each K(X) self-adjoint.
BilinearMap skewness(const StatisticalStructure& s, double tol = 1e-9);

// mu* with <mu(X,Y),Z> + <Y, mu*(X,Z)> = 0 (left-invariant product rule).
BilinearMap dual_connection(const BilinearMap& mu, const InnerProduct& ip);
BilinearMap dual_connection(const StatisticalStructure& s);

// comp(i,j,k,l): l-component of (nabla^g_{e_i} K)(e_j, e_k).
Tensor4 nabla_g_K(const StatisticalStructure& s, double tol = 1e-9);

// comp(i,j,k,l): (nabla_{e_i} C)(e_j, e_k, e_l); `which` selects the
// structure's connection or the Levi-Civita one. The directional term
// vanishes on left-invariant fields.
Tensor4 nabla_C(const StatisticalStructure& s, WhichConnection which, double tol = 1e-9);

// R(e_i,e_j)e_k = mu(e_i, mu(e_j,e_k)) - mu(e_j, mu(e_i,e_k))
//                 - mu([e_i,e_j], e_k); comp(l,k,i,j).
CurvatureTensor curvature_left_invariant(const LieAlgebra2& alg, const BilinearMap& mu);

// Max-abs residual of
// R = R^g + (1/4)[K(X),K(Y)]Z - (1/2)((nabla^g_X K)(Y,Z) - (nabla^g_Y K)(X,Z))
// over basis triples; an identity for every compatible structure.
double curvature_decomposition_residual(const StatisticalStructure& s, double tol = 1e-9);

// Evaluates the five equivalent conditions at tolerance tol:
// (1) family membership via table match (alpha recovered from mu(e2,e2)
//     and cross-checked on all entries),
// (2) total symmetry of nabla^g C, (3) of nabla C, (4) of nabla^g K,
// (5) R = R* with R* from the dual connection.
VerificationReport verify_main_theorem(const StatisticalStructure& s, double lambda,
                                       double tol);

// Nullspace of the linear map sending cubic-form coordinates to the
// antisymmetrized nabla^g K residual. Must be 1-dimensional with
// generator proportional to (0, 1, 0, 2); anything else raises
// RankAnomalyError.
Characterization characterize_solutions(double lambda, double tol);

// Orthonormal basis (in flattened symmetric coordinates) of the linear
// part of the compatible-nu affine subspace {nu : cubic totally
// symmetric} = U + span(basis). The dimension must be 4.
std::vector<BilinearMap> compatible_nu_basis(const LieAlgebra2& alg, const InnerProduct& ip);

// The family member: solvable frame, identity inner product,
// nu = U - (alpha/2) K_1.
StatisticalStructure alpha_structure(double alpha, double lambda);

// Structure whose skewness operator has the prescribed lowered components
// (C_111, C_112, C_122, C_222): K from the Gram system, nu = U - K/2.
StatisticalStructure structure_from_cubic(double lambda, const std::array<double, 4>& c);

}  // namespace statlie
