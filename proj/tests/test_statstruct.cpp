#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "statlie/chart.hpp"
#include "statlie/lie.hpp"
#include "statlie/statstruct.hpp"

using namespace statlie;

namespace {

const double kS2 = std::numbers::sqrt2;

double uniform(std::mt19937_64& eng, double lo, double hi) {
  return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(eng);
}

// random structure inside the compatible subspace
StatisticalStructure random_compatible(std::mt19937_64& eng, double lambda) {
  const LieAlgebra2 alg = LieAlgebra2::solvable_frame(lambda);
  const InnerProduct ip = InnerProduct::identity();
  const std::vector<BilinearMap> basis = compatible_nu_basis(alg, ip);
  BilinearMap nu = u_map(alg, ip);
  for (const BilinearMap& b : basis) nu = nu + uniform(eng, -2.0, 2.0) * b;
  return StatisticalStructure(alg, ip, nu);
}

// nu = U plus a symmetric bump violating the compatibility constraints
StatisticalStructure incompatible_example(double lambda) {
  const LieAlgebra2 alg = LieAlgebra2::solvable_frame(lambda);
  const InnerProduct ip = InnerProduct::identity();
  Tensor3 bump;
  bump(0, 0, 1) = 0.3;
  bump(0, 1, 0) = 0.3;
  const BilinearMap nu = u_map(alg, ip) + BilinearMap(bump, true);
  return StatisticalStructure(alg, ip, nu);
}

}  // namespace

TEST_CASE("family structures reproduce the connection table") {
  for (double lambda : {0.5, 1.0, kS2, 3.0})
    for (double alpha : {-1.5, 0.0, 0.7, 1.0}) {
      CAPTURE(lambda);
      CAPTURE(alpha);
      const StatisticalStructure s = alpha_structure(alpha, lambda);
      const BilinearMap table = alpha_connection_left_invariant(alpha, lambda);
      CHECK(max_abs_diff(s.mu(), table) <= 1e-14);
      CHECK(s.nu.symmetry_defect() == 0.0);
    }
}

TEST_CASE("cubic form of a family member") {
  const StatisticalStructure s = alpha_structure(1.0, kS2);
  const Tensor3Sym C = cubic_left_invariant(s);
  const double p = kS2;  // 2 alpha / lambda
  CHECK(std::abs(C.c(0, 0, 1) - p) <= 1e-14);
  CHECK(std::abs(C.c(0, 1, 0) - p) <= 1e-14);
  CHECK(std::abs(C.c(1, 0, 0) - p) <= 1e-14);
  CHECK(std::abs(C.c(1, 1, 1) - 2.0 * p) <= 1e-14);
  CHECK(std::abs(C.c(0, 0, 0)) <= 1e-14);
  CHECK(std::abs(C.c(1, 1, 0)) <= 1e-14);
  CHECK(C.symmetry_defect() <= 1e-14);
  CHECK(compatibility_check(s, 1e-9));
}

TEST_CASE("compatibility fails off the constraint surface") {
  const StatisticalStructure bad = incompatible_example(kS2);
  CHECK_FALSE(compatibility_check(bad, 1e-9));
  CHECK_THROWS_AS(skewness(bad), IncompatibleStructureError);
  CHECK_THROWS_AS(nabla_C(bad, WhichConnection::levi_civita), IncompatibleStructureError);
  CHECK_THROWS_AS(verify_main_theorem(bad, kS2, 1e-9), IncompatibleStructureError);
}

TEST_CASE("skewness of the family matches the hand values") {
  const StatisticalStructure s = alpha_structure(1.0, kS2);
  const BilinearMap K = skewness(s);
  CHECK(std::abs(K.comps(1, 0, 0) - kS2) <= 1e-14);        // K(e1,e1) = sqrt2 e2
  CHECK(std::abs(K.comps(0, 0, 1) - kS2) <= 1e-14);        // K(e1,e2) = sqrt2 e1
  CHECK(std::abs(K.comps(0, 1, 0) - kS2) <= 1e-14);
  CHECK(std::abs(K.comps(1, 1, 1) - 2.0 * kS2) <= 1e-14);  // K(e2,e2) = 2 sqrt2 e2
  CHECK(std::abs(K.comps(0, 0, 0)) <= 1e-14);
  CHECK(std::abs(K.comps(1, 0, 1)) <= 1e-14);

  // scaling in alpha
  const BilinearMap K2 = skewness(alpha_structure(-0.5, kS2));
  CHECK(max_abs_diff(K2, -0.5 * K) <= 1e-14);
}

TEST_CASE("skewness is half the gap to the dual connection") {
  std::mt19937_64 eng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const double lambda = uniform(eng, 0.4, 3.0);
    const StatisticalStructure s = random_compatible(eng, lambda);
    const BilinearMap mu = s.mu();
    const BilinearMap dual = dual_connection(s);
    const BilinearMap K = skewness(s);
    CHECK(max_abs_diff(dual - mu, K) <= 1e-13);
    // duality is an involution
    CHECK(max_abs_diff(dual_connection(dual, s.ip), mu) <= 1e-13);
  }
}

TEST_CASE("dual of a family member is the opposite member") {
  for (double alpha : {-1.0, 0.0, 0.4, 1.0, 2.0}) {
    CAPTURE(alpha);
    const StatisticalStructure s = alpha_structure(alpha, kS2);
    const BilinearMap dual = dual_connection(s);
    CHECK(max_abs_diff(dual, alpha_connection_left_invariant(-alpha, kS2)) <= 1e-14);
  }
  // the metric connection is self-dual
  const StatisticalStructure s0 = alpha_structure(0.0, 1.7);
  CHECK(max_abs_diff(dual_connection(s0), s0.mu()) <= 1e-15);
}

TEST_CASE("derivative of the skewness operator on the family") {
  const StatisticalStructure s = alpha_structure(1.0, kS2);
  const Tensor4 dK = nabla_g_K(s);
  // (nabla^g_{e1} K)(e1, e1) = -6 alpha / lambda^2 e1
  CHECK(std::abs(dK(0, 0, 0, 0) + 3.0) <= 1e-14);
  CHECK(dK.symmetry_defect_all4() <= 1e-14);
}

TEST_CASE("both cubic derivatives are symmetric exactly on the family") {
  for (double lambda : {0.8, kS2})
    for (double alpha : {-1.0, 0.6, 1.0}) {
      CAPTURE(lambda);
      CAPTURE(alpha);
      const StatisticalStructure s = alpha_structure(alpha, lambda);
      CHECK(nabla_C(s, WhichConnection::levi_civita).symmetry_defect_all4() <= 1e-13);
      CHECK(nabla_C(s, WhichConnection::structure).symmetry_defect_all4() <= 1e-13);
      CHECK(nabla_g_K(s).symmetry_defect_all4() <= 1e-13);
    }
}

TEST_CASE("metric derivative of the cubic form is the lowered skewness derivative") {
  // nabla^g g = 0, so in an orthonormal frame the two tensors coincide
  std::mt19937_64 eng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const StatisticalStructure s = random_compatible(eng, uniform(eng, 0.4, 3.0));
    const Tensor4 dC = nabla_C(s, WhichConnection::levi_civita);
    const Tensor4 dK = nabla_g_K(s);
    double dev = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l)
            dev = std::max(dev, std::abs(dC(i, j, k, l) - dK(i, j, k, l)));
    CHECK(dev <= 1e-13);
  }
}

TEST_CASE("left-invariant curvature of the metric connection") {
  for (double lambda : {0.5, 1.0, kS2, 3.0}) {
    CAPTURE(lambda);
    const LieAlgebra2 alg = LieAlgebra2::solvable_frame(lambda);
    const BilinearMap lc = levi_civita_left_invariant(alg, InnerProduct::identity());
    const CurvatureTensor R = curvature_left_invariant(alg, lc);
    // <R(e1,e2)e2, e1> = -1/lambda^2 in the orthonormal frame
    CHECK(std::abs(R.r(0, 1, 0, 1) + 1.0 / (lambda * lambda)) <= 5e-15);
    CHECK(R.antisymmetry_defect() <= 1e-15);
  }
}

TEST_CASE("extreme family members are flat and opposite members share curvature") {
  for (double lambda : {0.5, 1.0, kS2}) {
    CAPTURE(lambda);
    const LieAlgebra2 alg = LieAlgebra2::solvable_frame(lambda);
    for (double alpha : {1.0, -1.0}) {
      const CurvatureTensor R =
          curvature_left_invariant(alg, alpha_connection_left_invariant(alpha, lambda));
      CHECK(R.r.max_abs() <= 5e-15);
    }
    for (double alpha : {0.3, 0.7, 1.5}) {
      CAPTURE(alpha);
      const CurvatureTensor Rp =
          curvature_left_invariant(alg, alpha_connection_left_invariant(alpha, lambda));
      const CurvatureTensor Rm =
          curvature_left_invariant(alg, alpha_connection_left_invariant(-alpha, lambda));
      CHECK(max_abs_diff(Rp.r, Rm.r) <= 5e-15);
    }
  }
}

TEST_CASE("frame curvature converts to the chart curvature") {
  for (double alpha : {-1.0, 0.0, 0.6})
    for (const ChartPoint p : {ChartPoint(0.0, 1.0), ChartPoint(1.0, 0.5)}) {
      CAPTURE(alpha);
      CAPTURE(p.y);
      const LieAlgebra2 alg = LieAlgebra2::solvable_frame(kS2);
      const CurvatureTensor frameR =
          curvature_left_invariant(alg, alpha_connection_left_invariant(alpha, kS2));
      const CurvatureTensor coord = frame_to_coordinates(kS2, p, frameR);
      const CurvatureTensor fd = curvature_fd(alpha_connection(alpha, kS2), p, 1e-5);
      CHECK(max_abs_diff(coord.r, fd.r) <= 5e-9 / (p.y * p.y));
    }
}

TEST_CASE("curvature decomposition holds on the whole compatible space") {
  std::mt19937_64 eng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const double lambda = uniform(eng, 0.4, 3.0);
    const StatisticalStructure s = random_compatible(eng, lambda);
    CHECK(curvature_decomposition_residual(s) <= 1e-13);
  }
  CHECK(curvature_decomposition_residual(alpha_structure(1.0, kS2)) <= 1e-14);
  CHECK(curvature_decomposition_residual(alpha_structure(-2.0, 0.5)) <= 1e-13);
}

TEST_CASE("five conditions all pass on the family") {
  for (double lambda : {0.5, 1.0, kS2, 3.0})
    for (double alpha : {-2.0, -1.0, 0.0, 0.5, 1.0, 1.7}) {
      CAPTURE(lambda);
      CAPTURE(alpha);
      const StatisticalStructure s = alpha_structure(alpha, lambda);
      const VerificationReport rep = verify_main_theorem(s, lambda, 1e-9);
      CHECK(rep.all_pass());
      CHECK(rep.all_equivalent());
      REQUIRE(rep.alpha.has_value());
      CHECK(std::abs(*rep.alpha - alpha) <= 1e-12 * (1.0 + std::abs(alpha)));
      for (const char* key : {"family_table", "nabla_g_C", "nabla_C", "nabla_g_K",
                              "curvature_dual"}) {
        CAPTURE(key);
        REQUIRE(rep.residuals.count(key) == 1);
        CHECK(rep.residuals.at(key) <= 1e-13);
      }
    }
}

TEST_CASE("five conditions all fail together off the family") {
  std::mt19937_64 eng(17);
  int off_family_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const double lambda = uniform(eng, 0.4, 3.0);
    const StatisticalStructure s = random_compatible(eng, lambda);
    const VerificationReport rep = verify_main_theorem(s, lambda, 1e-9);
    CHECK(rep.all_equivalent());
    if (!rep.all_pass()) {
      ++off_family_seen;
      CHECK_FALSE(rep.alpha.has_value());
      CHECK_FALSE(rep.cond2);
      CHECK_FALSE(rep.cond3);
      CHECK_FALSE(rep.cond4);
      CHECK_FALSE(rep.cond5);
    }
  }
  // random draws from a 4-dim space essentially never land on the family line
  CHECK(off_family_seen >= 55);
}

TEST_CASE("recovered alpha uses the scaling entry and the whole table agrees") {
  const StatisticalStructure s = alpha_structure(0.8, 2.0);
  const VerificationReport rep = verify_main_theorem(s, 2.0, 1e-9);
  REQUIRE(rep.alpha.has_value());
  // alpha = -lambda mu(e2,e2)_2 / 2
  CHECK(std::abs(*rep.alpha - (-2.0 * s.mu().comps(1, 1, 1) / 2.0)) <= 1e-15);
}

TEST_CASE("characterization finds the one-dimensional solution line") {
  for (double lambda : {0.5, 1.0, kS2, 3.0}) {
    CAPTURE(lambda);
    const Characterization c = characterize_solutions(lambda, 1e-9);
    CHECK(c.dimension == 1);
    CHECK(c.lambda == lambda);
    CHECK(std::abs(c.generator[0] - 0.0) <= 1e-12);
    CHECK(std::abs(c.generator[1] - 1.0) <= 1e-12);
    CHECK(std::abs(c.generator[2] - 0.0) <= 1e-12);
    CHECK(std::abs(c.generator[3] - 2.0) <= 1e-12);
    // clear spectral gap above the nullspace
    CHECK(c.singular_values[2] > 0.1);
    CHECK(c.singular_values[3] < 1e-12 * c.singular_values[0]);
    CHECK(c.alpha_for_p(1.0) == lambda / 2.0);
    CHECK(c.alpha_for_p(2.0 / lambda) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("compatible subspace has dimension four with orthonormal basis") {
  const LieAlgebra2 alg = LieAlgebra2::solvable_frame(kS2);
  const InnerProduct ip = InnerProduct::identity();
  const std::vector<BilinearMap> basis = compatible_nu_basis(alg, ip);
  REQUIRE(basis.size() == 4);
  const BilinearMap u = u_map(alg, ip);
  for (std::size_t m = 0; m < basis.size(); ++m) {
    CAPTURE(m);
    CHECK(basis[m].symmetry_defect() == 0.0);
    const StatisticalStructure s(alg, ip, u + basis[m]);
    CHECK(compatibility_check(s, 1e-9));
    for (std::size_t n = 0; n <= m; ++n) {
      double dot = 0.0;
      for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            dot += basis[m].comps(k, i, j) * basis[n].comps(k, i, j);
      // flattened symmetric coordinates count each off-diagonal pair once
      double sym_dot = 0.0;
      for (int k = 0; k < 2; ++k) {
        sym_dot += basis[m].comps(k, 0, 0) * basis[n].comps(k, 0, 0);
        sym_dot += basis[m].comps(k, 0, 1) * basis[n].comps(k, 0, 1);
        sym_dot += basis[m].comps(k, 1, 1) * basis[n].comps(k, 1, 1);
      }
      CAPTURE(n);
      CHECK(std::abs(sym_dot - (m == n ? 1.0 : 0.0)) <= 1e-12);
      (void)dot;
    }
  }
}

TEST_CASE("structures rebuilt from cubic coordinates round-trip") {
  std::mt19937_64 eng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const double lambda = uniform(eng, 0.4, 3.0);
    const std::array<double, 4> coords{uniform(eng, -2, 2), uniform(eng, -2, 2),
                                       uniform(eng, -2, 2), uniform(eng, -2, 2)};
    CAPTURE(lambda);
    const StatisticalStructure s = structure_from_cubic(lambda, coords);
    CHECK(compatibility_check(s, 1e-9));
    const Tensor3Sym C = cubic_left_invariant(s);
    CHECK(std::abs(C.c(0, 0, 0) - coords[0]) <= 1e-13);
    CHECK(std::abs(C.c(0, 0, 1) - coords[1]) <= 1e-13);
    CHECK(std::abs(C.c(0, 1, 1) - coords[2]) <= 1e-13);
    CHECK(std::abs(C.c(1, 1, 1) - coords[3]) <= 1e-13);
  }
}

TEST_CASE("the generator line rebuilds the family") {
  for (double lambda : {0.5, 1.0, kS2}) {
    for (double p : {-1.0, 0.5, 2.0 / lambda}) {
      CAPTURE(lambda);
      CAPTURE(p);
      const StatisticalStructure s =
          structure_from_cubic(lambda, {0.0, p, 0.0, 2.0 * p});
      const double alpha = p * lambda / 2.0;
      CHECK(max_abs_diff(s.mu(), alpha_connection_left_invariant(alpha, lambda)) <= 1e-13);
      const VerificationReport rep = verify_main_theorem(s, lambda, 1e-9);
      CHECK(rep.all_pass());
      REQUIRE(rep.alpha.has_value());
      CHECK(std::abs(*rep.alpha - alpha) <= 1e-12);
    }
  }
}

TEST_CASE("family cubic converts to the statistical cubic form on the chart") {
  for (double lambda : {1.0, kS2, 3.0})
    for (const ChartPoint p : {ChartPoint(0.0, 1.0), ChartPoint(2.0, 0.5)}) {
      CAPTURE(lambda);
      CAPTURE(p.y);
      const StatisticalStructure s = alpha_structure(1.0, lambda);
      const Tensor3Sym coord = frame_to_coordinates(lambda, p, cubic_left_invariant(s));
      const Tensor3Sym want = cubic_form_closed(lambda, p);
      const double scale = want.c.max_abs();
      for (std::size_t n = 0; n < 8; ++n)
        CHECK(std::abs(coord.c.v[n] - want.c.v[n]) <= 1e-13 * scale);
      REQUIRE(coord.basepoint.has_value());
      CHECK(coord.basepoint->x == p.x);
    }
}

TEST_CASE("frame cubic derivative matches the finite-difference chart derivative") {
  const double lambda = kS2;
  const StatisticalStructure s = alpha_structure(1.0, lambda);
  const Tensor4 frame_dC = nabla_C(s, WhichConnection::levi_civita);
  const ChartPoint p(0.2, 1.3);
  const Tensor4 coord_dC = frame_to_coordinates(lambda, p, frame_dC);
  const Tensor4 fd =
      covariant_derivative_t3(alpha_connection(0.0, lambda), cubic_field(lambda), p, 1e-5);
  CHECK(max_abs_diff(coord_dC, fd) <= 1e-6);
}

TEST_CASE("conjugate product rule of the family pair in coordinates") {
  for (double lambda : {1.0, kS2, 2.5})
    for (double alpha : {-1.0, 0.0, 0.6, 1.3}) {
      CAPTURE(lambda);
      CAPTURE(alpha);
      const ChartPoint p(0.7, 1.4);
      const Christoffels g1 = alpha_christoffels(alpha, lambda, p);
      const Christoffels g2 = alpha_christoffels(-alpha, lambda, p);
      const Mat2 g = metric_at(lambda, p).g;
      const double y = p.y;
      // exact coordinate derivatives of the metric
      Tensor3 dg;
      dg(1, 0, 0) = -2.0 / (y * y * y);
      dg(1, 1, 1) = -2.0 * lambda * lambda / (y * y * y);
      double dev = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k) {
            double rhs = 0.0;
            for (int m = 0; m < 2; ++m)
              rhs += g1(m, i, j) * g(m, k) + g2(m, i, k) * g(j, m);
            dev = std::max(dev, std::abs(dg(i, j, k) - rhs));
          }
      CHECK(dev <= 1e-13 * (1.0 + g.max_abs()));
    }
}
