#include "statlie/sweep.hpp"

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace statlie {

namespace {

// minimum Euclidean distance of a random sample from the family line
constexpr double kOffFamilyFloor = 1e-3;

// engine output is fully specified by the standard, so uniforms derived
// this way are identical across platforms and thread counts
double uniform(std::mt19937_64& eng, double a, double b) {
  const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
  return a + (b - a) * u;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// flattened symmetric-map coordinates, (k, i<=j) pairs in fixed order
struct SymIndex {
  int k, i, j;
};
constexpr SymIndex kSymIndex[6] = {{0, 0, 0}, {0, 0, 1}, {0, 1, 1},
                                   {1, 0, 0}, {1, 0, 1}, {1, 1, 1}};

std::array<double, 6> flatten(const BilinearMap& m) {
  std::array<double, 6> v{};
  for (int n = 0; n < 6; ++n) v[static_cast<std::size_t>(n)] = m.comps(kSymIndex[n].k, kSymIndex[n].i, kSymIndex[n].j);
  return v;
}

BilinearMap unflatten(const std::array<double, 6>& v) {
  Tensor3 m;
  for (int n = 0; n < 6; ++n) {
    const SymIndex s = kSymIndex[n];
    m(s.k, s.i, s.j) = v[static_cast<std::size_t>(n)];
    m(s.k, s.j, s.i) = v[static_cast<std::size_t>(n)];
  }
  return BilinearMap(m, true);
}

struct SweepOutcome {
  bool ok = false;
  bool family = false;
  bool expected_family = false;
  bool equivalent = false;
  double max_residual = 0.0;
  double min_residual = std::numeric_limits<double>::infinity();
  std::string error;
};

struct SweepContext {
  LieAlgebra2 alg;
  InnerProduct ip;
  BilinearMap u;
  std::array<std::array<double, 6>, 4> basis;  // compatible-nu linear part
  std::array<double, 6> family_unit;           // family direction, unit norm
};

SweepContext make_context(const SweepConfig& cfg) {
  const LieAlgebra2 alg = LieAlgebra2::solvable_frame(cfg.lambda);
  const InnerProduct ip = InnerProduct::identity();
  SweepContext ctx{alg, ip, u_map(alg, ip), {}, {}};

  const std::vector<BilinearMap> basis = compatible_nu_basis(alg, ip);
  for (std::size_t m = 0; m < 4; ++m) ctx.basis[m] = flatten(basis[m]);

  // nu moves along -K/2 as alpha varies; normalize that direction
  const BilinearMap k1 = skewness(alpha_structure(1.0, cfg.lambda), cfg.tol);
  std::array<double, 6> f = flatten(k1);
  double norm = 0.0;
  for (double x : f) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : f) x /= norm;
  ctx.family_unit = f;
  return ctx;
}

SweepOutcome sweep_one(int idx, const SweepConfig& cfg, const SweepContext& ctx) {
  SweepOutcome out;
  out.expected_family = idx >= cfg.n_random;
  std::mt19937_64 eng(mix_seed(cfg.seed, static_cast<std::uint64_t>(idx)));
  try {
    const auto make_random = [&]() {
      std::array<double, 6> v{};
      for (int attempt = 0;; ++attempt) {
        if (attempt > 1000)
          throw std::runtime_error("off-family sampling failed to escape the family line");
        std::array<double, 4> c{};
        for (double& x : c) x = uniform(eng, -1.0, 1.0);
        for (int n = 0; n < 6; ++n) {
          double acc = 0.0;
          for (int m = 0; m < 4; ++m)
            acc += c[static_cast<std::size_t>(m)] * ctx.basis[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)];
          v[static_cast<std::size_t>(n)] = acc;
        }
        double proj = 0.0;
        for (int n = 0; n < 6; ++n)
          proj += v[static_cast<std::size_t>(n)] * ctx.family_unit[static_cast<std::size_t>(n)];
        double off2 = 0.0;
        for (int n = 0; n < 6; ++n) {
          const double d = v[static_cast<std::size_t>(n)] - proj * ctx.family_unit[static_cast<std::size_t>(n)];
          off2 += d * d;
        }
        if (std::sqrt(off2) >= kOffFamilyFloor) break;
      }
      std::array<double, 6> nu = flatten(ctx.u);
      for (int n = 0; n < 6; ++n) nu[static_cast<std::size_t>(n)] += v[static_cast<std::size_t>(n)];
      return StatisticalStructure(ctx.alg, ctx.ip, unflatten(nu));
    };
    const auto make_family = [&]() {
      return alpha_structure(uniform(eng, -2.0, 2.0), cfg.lambda);
    };

    const StatisticalStructure s = out.expected_family ? make_family() : make_random();
    const VerificationReport rep = verify_main_theorem(s, cfg.lambda, cfg.tol);

    out.family = rep.cond1();
    out.equivalent = rep.all_equivalent();
    for (const auto& [name, r] : rep.residuals) {
      out.max_residual = std::max(out.max_residual, r);
      out.min_residual = std::min(out.min_residual, r);
    }
    out.ok = true;
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

struct GridCell {
  bool ok = false;
  double fisher_abs = 0.0;
  double fisher_scaled = 0.0;
  double cubic_abs = 0.0;
  double cubic_scaled = 0.0;
  double offdiag = 0.0;
  double mu_dependence = 0.0;
  std::string error;
};

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (int i = 0; i < n; ++i)
    v[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  return v;
}

GridCell grid_one(double mu, double sigma, const QuadratureRule& rule, const Mat2& ref) {
  GridCell cell;
  try {
    const GaussianParam theta(mu, sigma);
    const ChartPoint p(mu, sigma);

    const MetricTensor g = fisher_metric_numeric(theta, rule);
    const MetricTensor closed = metric_at(std::numbers::sqrt2, p);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const double dev = std::abs(g(i, j) - closed(i, j));
        cell.fisher_abs = std::max(cell.fisher_abs, dev);
        cell.fisher_scaled = std::max(cell.fisher_scaled, dev / std::max(1.0, std::abs(closed(i, j))));
        cell.mu_dependence = std::max(cell.mu_dependence, std::abs(g(i, j) - ref(i, j)));
      }
    cell.offdiag = std::abs(g(0, 1));

    const Tensor3Sym c = cubic_numeric(theta, rule);
    const Tensor3Sym closed_c = cubic_form_closed(std::numbers::sqrt2, p);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          const double dev = std::abs(c(i, j, k) - closed_c(i, j, k));
          cell.cubic_abs = std::max(cell.cubic_abs, dev);
          cell.cubic_scaled =
              std::max(cell.cubic_scaled, dev / std::max(1.0, std::abs(closed_c(i, j, k))));
        }
    cell.ok = true;
  } catch (const std::exception& e) {
    cell.error = e.what();
  }
  return cell;
}

}  // namespace

SweepResult run_structure_sweep(const SweepConfig& cfg, ExecMode mode) {
  if (cfg.n_random < 0 || cfg.n_family < 0) throw std::domain_error("negative sweep count");
  if (!(cfg.tol > 0.0)) throw std::domain_error("tol must be positive");

  const SweepContext ctx = make_context(cfg);
  const int total = cfg.n_random + cfg.n_family;
  std::vector<SweepOutcome> outcomes(static_cast<std::size_t>(total));

  if (mode == ExecMode::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < total; ++i)
      outcomes[static_cast<std::size_t>(i)] = sweep_one(i, cfg, ctx);
  } else {
    for (int i = 0; i < total; ++i)
      outcomes[static_cast<std::size_t>(i)] = sweep_one(i, cfg, ctx);
  }

  SweepResult res;
  res.n_total = total;
  res.n_random = cfg.n_random;
  res.n_family_injected = cfg.n_family;
  for (int i = 0; i < total; ++i) {
    const SweepOutcome& o = outcomes[static_cast<std::size_t>(i)];
    if (!o.ok)
      throw std::runtime_error("structure " + std::to_string(i) + ": " + o.error);
    if (o.family) {
      ++res.n_family_detected;
      res.max_family_residual = std::max(res.max_family_residual, o.max_residual);
    } else {
      res.min_offfamily_residual = std::min(res.min_offfamily_residual, o.min_residual);
    }
    if (!o.equivalent) ++res.n_disagreements;
    if (o.family != o.expected_family) ++res.n_mismatches;
  }
  return res;
}

GridResult run_fisher_grid(const GridConfig& cfg, ExecMode mode) {
  if (cfg.n_mu < 1 || cfg.n_sigma < 1) throw std::domain_error("grid needs at least one cell");
  if (!(cfg.sigma_min > 0.0) || cfg.sigma_max < cfg.sigma_min || cfg.mu_max < cfg.mu_min)
    throw std::domain_error("invalid grid bounds");

  const QuadratureRule rule = hermite_rule(cfg.order);
  const std::vector<double> mus = linspace(cfg.mu_min, cfg.mu_max, cfg.n_mu);
  const std::vector<double> sigmas = linspace(cfg.sigma_min, cfg.sigma_max, cfg.n_sigma);

  // reference column for the translation-invariance check
  std::vector<Mat2> ref(sigmas.size());
  for (std::size_t j = 0; j < sigmas.size(); ++j)
    ref[j] = fisher_metric_numeric(GaussianParam(mus[0], sigmas[j]), rule).g;

  const int total = cfg.n_mu * cfg.n_sigma;
  std::vector<GridCell> cells(static_cast<std::size_t>(total));
  const auto body = [&](int idx) {
    const std::size_t i = static_cast<std::size_t>(idx) / sigmas.size();
    const std::size_t j = static_cast<std::size_t>(idx) % sigmas.size();
    cells[static_cast<std::size_t>(idx)] = grid_one(mus[i], sigmas[j], rule, ref[j]);
  };

  if (mode == ExecMode::parallel) {
#pragma omp parallel for schedule(static)
    for (int idx = 0; idx < total; ++idx) body(idx);
  } else {
    for (int idx = 0; idx < total; ++idx) body(idx);
  }

  GridResult res;
  for (int idx = 0; idx < total; ++idx) {
    const GridCell& c = cells[static_cast<std::size_t>(idx)];
    if (!c.ok) throw std::runtime_error("grid cell " + std::to_string(idx) + ": " + c.error);
    res.max_fisher_abs = std::max(res.max_fisher_abs, c.fisher_abs);
    res.max_fisher_scaled = std::max(res.max_fisher_scaled, c.fisher_scaled);
    res.max_cubic_abs = std::max(res.max_cubic_abs, c.cubic_abs);
    res.max_cubic_scaled = std::max(res.max_cubic_scaled, c.cubic_scaled);
    res.max_offdiag = std::max(res.max_offdiag, c.offdiag);
    res.max_mu_dependence = std::max(res.max_mu_dependence, c.mu_dependence);
  }
  return res;
}

}  // namespace statlie
