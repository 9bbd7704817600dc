#include "statlie/statstruct.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace statlie {

namespace {

// relative singular-value cutoff for nullspace membership
constexpr double kNullspaceRelTol = 1e-10;

Vec2 basisv(int i) { return i == 0 ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0}; }

Vec2 vsub(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }

Vec2 vadd3(const Vec2& a, const Vec2& b, const Vec2& c) {
  return {a[0] + b[0] + c[0], a[1] + b[1] + c[1]};
}

double trilinear(const Tensor3& c, const Vec2& a, const Vec2& b, const Vec2& d) {
  double acc = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        acc += c(i, j, k) * a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)] *
               d[static_cast<std::size_t>(k)];
  return acc;
}

// flattened coordinates of symmetric bilinear maps:
// (k, i<=j) in the order (0,00),(0,01),(0,11),(1,00),(1,01),(1,11)
struct SymIndex {
  int k, i, j;
};
constexpr SymIndex kSymIndex[6] = {{0, 0, 0}, {0, 0, 1}, {0, 1, 1},
                                   {1, 0, 0}, {1, 0, 1}, {1, 1, 1}};

BilinearMap sym_from_flat(const std::array<double, 6>& v) {
  Tensor3 m;
  for (int n = 0; n < 6; ++n) {
    const SymIndex s = kSymIndex[n];
    m(s.k, s.i, s.j) = v[static_cast<std::size_t>(n)];
    m(s.k, s.j, s.i) = v[static_cast<std::size_t>(n)];
  }
  return BilinearMap(m, true);
}

Tensor3 cubic_from_coords(const std::array<double, 4>& c) {
  Tensor3 t;
  t(0, 0, 0) = c[0];
  t(0, 0, 1) = t(0, 1, 0) = t(1, 0, 0) = c[1];
  t(0, 1, 1) = t(1, 0, 1) = t(1, 1, 0) = c[2];
  t(1, 1, 1) = c[3];
  return t;
}

// rows of the symmetry defect C(i,j,k) - C(j,i,k) over all (i,j,k);
// the cubic is symmetric in its last two slots by construction, so these
// rows vanishing is exactly total symmetry
std::array<double, 8> first_pair_defect(const Tensor3Sym& c) {
  std::array<double, 8> rows{};
  int r = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) rows[static_cast<std::size_t>(r++)] = c(i, j, k) - c(j, i, k);
  return rows;
}

}  // namespace

StatisticalStructure::StatisticalStructure(const LieAlgebra2& alg, const InnerProduct& inner,
                                           const BilinearMap& nu_sym)
    : algebra(alg), ip(inner), nu(nu_sym.comps, true) {}

BilinearMap StatisticalStructure::mu() const { return connection_from_nu(algebra, nu); }

Tensor3Sym cubic_left_invariant(const StatisticalStructure& s) {
  const BilinearMap m = s.mu();
  Tensor3Sym c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        c.c(i, j, k) = -s.ip.pair(m.apply(basisv(i), basisv(j)), basisv(k)) -
                       s.ip.pair(basisv(j), m.apply(basisv(i), basisv(k)));
  return c;
}

bool compatibility_check(const StatisticalStructure& s, double tol) {
  return cubic_left_invariant(s).symmetry_defect() < tol;
}

BilinearMap skewness(const StatisticalStructure& s, double tol) {
  if (!compatibility_check(s, tol))
    throw IncompatibleStructureError("skewness requires a totally symmetric cubic form");
  const BilinearMap u = u_map(s.algebra, s.ip);
  Tensor3 k;
  for (int l = 0; l < 2; ++l)
    for (int i = 0; i < 2; ++i)
      for (int j = i; j < 2; ++j) {
        const double v = 2.0 * (u.comps(l, i, j) - s.nu.comps(l, i, j));
        k(l, i, j) = v;
        k(l, j, i) = v;
      }
  return BilinearMap(k, true);
}

BilinearMap dual_connection(const BilinearMap& mu, const InnerProduct& ip) {
  Tensor3 d;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      Vec2 rhs{0.0, 0.0};
      for (int j = 0; j < 2; ++j)
        rhs[static_cast<std::size_t>(j)] = -ip.pair(mu.apply(basisv(i), basisv(j)), basisv(k));
      const Vec2 val = ip.gram.solve(rhs);
      for (int l = 0; l < 2; ++l) d(l, i, k) = val[static_cast<std::size_t>(l)];
    }
  return BilinearMap(d, false);
}

BilinearMap dual_connection(const StatisticalStructure& s) {
  return dual_connection(s.mu(), s.ip);
}

Tensor4 nabla_g_K(const StatisticalStructure& s, double tol) {
  const BilinearMap k = skewness(s, tol);
  const BilinearMap mg = levi_civita_left_invariant(s.algebra, s.ip);
  Tensor4 t;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int m = 0; m < 2; ++m) {
        const Vec2 ei = basisv(i), ej = basisv(j), em = basisv(m);
        const Vec2 val = vsub(mg.apply(ei, k.apply(ej, em)),
                              vadd3(k.apply(mg.apply(ei, ej), em),
                                    k.apply(ej, mg.apply(ei, em)), Vec2{0.0, 0.0}));
        for (int l = 0; l < 2; ++l) t(i, j, m, l) = val[static_cast<std::size_t>(l)];
      }
  return t;
}

Tensor4 nabla_C(const StatisticalStructure& s, WhichConnection which, double tol) {
  if (!compatibility_check(s, tol))
    throw IncompatibleStructureError("nabla_C requires a totally symmetric cubic form");
  const BilinearMap m =
      which == WhichConnection::structure ? s.mu() : levi_civita_left_invariant(s.algebra, s.ip);
  const Tensor3Sym c = cubic_left_invariant(s);
  Tensor4 t;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) {
          const Vec2 ei = basisv(i), ej = basisv(j), ep = basisv(p), eq = basisv(q);
          t(i, j, p, q) = -trilinear(c.c, m.apply(ei, ej), ep, eq) -
                          trilinear(c.c, ej, m.apply(ei, ep), eq) -
                          trilinear(c.c, ej, ep, m.apply(ei, eq));
        }
  return t;
}

CurvatureTensor curvature_left_invariant(const LieAlgebra2& alg, const BilinearMap& mu) {
  CurvatureTensor r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const Vec2 ei = basisv(i), ej = basisv(j), ek = basisv(k);
        const Vec2 val = vsub(vsub(mu.apply(ei, mu.apply(ej, ek)),
                                   mu.apply(ej, mu.apply(ei, ek))),
                              mu.apply(bracket(alg, ei, ej), ek));
        for (int l = 0; l < 2; ++l) r.r(l, k, i, j) = val[static_cast<std::size_t>(l)];
      }
  return r;
}

double curvature_decomposition_residual(const StatisticalStructure& s, double tol) {
  const BilinearMap m = s.mu();
  const BilinearMap mg = levi_civita_left_invariant(s.algebra, s.ip);
  const BilinearMap k = skewness(s, tol);
  const CurvatureTensor r = curvature_left_invariant(s.algebra, m);
  const CurvatureTensor rg = curvature_left_invariant(s.algebra, mg);
  const Tensor4 dk = nabla_g_K(s, tol);

  double defect = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int p = 0; p < 2; ++p) {
        const Vec2 ei = basisv(i), ej = basisv(j), ep = basisv(p);
        const Vec2 comm = vsub(k.apply(ei, k.apply(ej, ep)), k.apply(ej, k.apply(ei, ep)));
        for (int l = 0; l < 2; ++l) {
          const double expected = rg(l, p, i, j) +
                                  0.25 * comm[static_cast<std::size_t>(l)] -
                                  0.5 * (dk(i, j, p, l) - dk(j, i, p, l));
          defect = std::max(defect, std::abs(r(l, p, i, j) - expected));
        }
      }
  return defect;
}

VerificationReport verify_main_theorem(const StatisticalStructure& s, double lambda,
                                       double tol) {
  if (!compatibility_check(s, tol))
    throw IncompatibleStructureError("verify_main_theorem requires a compatible structure");

  VerificationReport rep;
  rep.tolerance = tol;

  const BilinearMap m = s.mu();
  const double alpha_hat = -lambda * m.comps(1, 1, 1) / 2.0;
  const double r1 = max_abs_diff(m, alpha_connection_left_invariant(alpha_hat, lambda));
  if (r1 < tol) rep.alpha = alpha_hat;

  const double r2 = nabla_C(s, WhichConnection::levi_civita, tol).symmetry_defect_all4();
  const double r3 = nabla_C(s, WhichConnection::structure, tol).symmetry_defect_all4();
  const double r4 = nabla_g_K(s, tol).symmetry_defect_first3();

  const CurvatureTensor r = curvature_left_invariant(s.algebra, m);
  const CurvatureTensor rstar = curvature_left_invariant(s.algebra, dual_connection(s));
  const double r5 = max_abs_diff(r.r, rstar.r);

  rep.cond2 = r2 < tol;
  rep.cond3 = r3 < tol;
  rep.cond4 = r4 < tol;
  rep.cond5 = r5 < tol;
  rep.residuals["family_table"] = r1;
  rep.residuals["nabla_g_C"] = r2;
  rep.residuals["nabla_C"] = r3;
  rep.residuals["nabla_g_K"] = r4;
  rep.residuals["curvature_dual"] = r5;
  return rep;
}

Characterization characterize_solutions(double lambda, double tol) {
  Eigen::Matrix<double, 8, 4> map;
  for (int col = 0; col < 4; ++col) {
    std::array<double, 4> unit{};
    unit[static_cast<std::size_t>(col)] = 1.0;
    const Tensor4 t = nabla_g_K(structure_from_cubic(lambda, unit));
    int row = 0;
    for (const auto& ij : {std::pair<int, int>{0, 1}, std::pair<int, int>{1, 0}})
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          map(row++, col) = t(ij.first, ij.second, k, l) - t(ij.second, ij.first, k, l);
  }

  Eigen::JacobiSVD<Eigen::Matrix<double, 8, 4>> svd(map, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = kNullspaceRelTol * sv(0);

  Characterization result;
  result.lambda = lambda;
  for (int i = 0; i < 4; ++i) {
    result.singular_values[static_cast<std::size_t>(i)] = sv(i);
    if (sv(i) <= cutoff) ++result.dimension;
  }
  if (result.dimension != 1)
    throw RankAnomalyError("symmetry-condition nullspace has dimension " +
                           std::to_string(result.dimension) + ", expected 1");

  Eigen::Vector4d gen = svd.matrixV().col(3);
  if (std::abs(gen(1)) > tol) gen /= gen(1);  // normalize to C_112 = 1
  for (int i = 0; i < 4; ++i) result.generator[static_cast<std::size_t>(i)] = gen(i);
  return result;
}

std::vector<BilinearMap> compatible_nu_basis(const LieAlgebra2& alg, const InnerProduct& ip) {
  const auto defect_rows = [&](const BilinearMap& nu) {
    return first_pair_defect(cubic_left_invariant(StatisticalStructure(alg, ip, nu)));
  };

  const std::array<double, 8> base = defect_rows(sym_from_flat({}));
  Eigen::Matrix<double, 8, 6> map;
  for (int col = 0; col < 6; ++col) {
    std::array<double, 6> unit{};
    unit[static_cast<std::size_t>(col)] = 1.0;
    const std::array<double, 8> rows = defect_rows(sym_from_flat(unit));
    for (int r = 0; r < 8; ++r)
      map(r, col) = rows[static_cast<std::size_t>(r)] - base[static_cast<std::size_t>(r)];
  }

  Eigen::JacobiSVD<Eigen::Matrix<double, 8, 6>> svd(map, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = kNullspaceRelTol * sv(0);
  int dim = 0;
  for (int i = 0; i < 6; ++i)
    if (sv(i) <= cutoff) ++dim;
  if (dim != 4)
    throw RankAnomalyError("compatible-nu space has dimension " + std::to_string(dim) +
                           ", expected 4");

  std::vector<BilinearMap> basis;
  basis.reserve(4);
  for (int col = 6 - dim; col < 6; ++col) {
    std::array<double, 6> flat{};
    for (int i = 0; i < 6; ++i) flat[static_cast<std::size_t>(i)] = svd.matrixV()(i, col);
    basis.push_back(sym_from_flat(flat));
  }
  return basis;
}

StatisticalStructure alpha_structure(double alpha, double lambda) {
  const LieAlgebra2 alg = LieAlgebra2::solvable_frame(lambda);
  Tensor3 n;
  n(1, 0, 0) = (1.0 - alpha) / lambda;
  n(0, 0, 1) = -(1.0 + 2.0 * alpha) / (2.0 * lambda);
  n(0, 1, 0) = n(0, 0, 1);
  n(1, 1, 1) = -2.0 * alpha / lambda;
  return StatisticalStructure(alg, InnerProduct::identity(), BilinearMap(n, true));
}

StatisticalStructure structure_from_cubic(double lambda, const std::array<double, 4>& c) {
  const LieAlgebra2 alg = LieAlgebra2::solvable_frame(lambda);
  const InnerProduct ip = InnerProduct::identity();
  const Tensor3 cubic = cubic_from_coords(c);

  Tensor3 k;
  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j) {
      const Vec2 val = ip.gram.solve({cubic(i, j, 0), cubic(i, j, 1)});
      for (int l = 0; l < 2; ++l) {
        k(l, i, j) = val[static_cast<std::size_t>(l)];
        k(l, j, i) = val[static_cast<std::size_t>(l)];
      }
    }

  const BilinearMap u = u_map(alg, ip);
  return StatisticalStructure(alg, ip, BilinearMap(u.comps + k * (-0.5), true));
}

}  // namespace statlie
