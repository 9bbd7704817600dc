#include <CLI11.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "statlie/chart.hpp"
#include "statlie/dynamics.hpp"
#include "statlie/json_io.hpp"
#include "statlie/lie.hpp"
#include "statlie/quadrature.hpp"
#include "statlie/statstruct.hpp"
#include "statlie/sweep.hpp"

namespace {

using nlohmann::json;

// pass thresholds, fixed here so reports are self-describing
constexpr double kFisherTol = 1e-10;   // scaled metric deviation
constexpr double kCubicTol = 1e-9;     // scaled cubic deviation
constexpr double kDictionaryTol = 1e-12;
constexpr double kPatternTol = 1e-10;

struct Options {
  double lambda = std::numbers::sqrt2;
  double alpha = 1.0;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::string out;
  std::string format = "json";
  bool serial = false;

  // fisher
  int order = 16;
  int grid = 10;
  double mu_min = -5.0, mu_max = 5.0;
  double sigma_min = 0.1, sigma_max = 10.0;

  // verify
  int count = 500;
  int family_count = 50;
  double perturb = 1e-3;

  // geodesic
  double x0 = 0.0, y0 = 1.0, vx = 0.0, vy = 1.0;
  double step = 1e-3;
  int steps = 1000;

  // natgrad
  std::string data;
  double rate = 1.0;
  int max_iter = 200;
  double mu0 = 0.0, sigma0 = 1.0;
};

statlie::ExecMode mode_of(const Options& o) {
  return o.serial ? statlie::ExecMode::serial : statlie::ExecMode::parallel;
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  f << text;
  if (!f) throw std::runtime_error("cannot write output file: " + out_path);
}

int finish(const std::string& command, bool pass, const json& residuals, const json& details,
           const std::string& out_path) {
  const json report{
      {"command", command}, {"pass", pass}, {"residuals", residuals}, {"details", details}};
  emit_text(report.dump(2) + "\n", out_path);
  return pass ? 0 : 1;
}

int run_fisher(const Options& o) {
  statlie::GridConfig cfg;
  cfg.mu_min = o.mu_min;
  cfg.mu_max = o.mu_max;
  cfg.sigma_min = o.sigma_min;
  cfg.sigma_max = o.sigma_max;
  cfg.n_mu = o.grid;
  cfg.n_sigma = o.grid;
  cfg.order = o.order;

  const statlie::GridResult r = statlie::run_fisher_grid(cfg, mode_of(o));
  const bool pass = r.max_fisher_scaled < kFisherTol && r.max_cubic_scaled < kCubicTol;
  const json details{
      {"grid", o.grid},
      {"order", o.order},
      {"mu_range", {o.mu_min, o.mu_max}},
      {"sigma_range", {o.sigma_min, o.sigma_max}},
      {"fisher_threshold", kFisherTol},
      {"cubic_threshold", kCubicTol},
      {"mode", o.serial ? "serial" : "parallel"},
  };
  return finish("fisher", pass, json(r), details, o.out);
}

int run_connection(const Options& o) {
  const statlie::BilinearMap mu =
      statlie::alpha_connection_left_invariant(o.alpha, o.lambda);
  const statlie::ChartPoint p(o.x0, o.y0);
  const statlie::Christoffels coord = statlie::frame_to_coordinates(o.lambda, p, mu);
  const statlie::Christoffels closed = statlie::alpha_christoffels(o.alpha, o.lambda, p);
  const double dev = statlie::max_abs_diff(coord.c, closed.c);

  const json details{
      {"alpha", o.alpha},
      {"lambda", o.lambda},
      {"point", {p.x, p.y}},
      {"frame_table", statlie::bilinear_to_json(mu)},
      {"coordinate_table", statlie::christoffels_to_json(coord)},
  };
  return finish("connection", dev < kDictionaryTol, json{{"dictionary_roundtrip", dev}},
                details, o.out);
}

int run_verify(const Options& o, bool single_alpha, bool single_perturb) {
  if (single_alpha || single_perturb) {
    const bool expect_family = !single_perturb;
    statlie::StatisticalStructure s = [&]() {
      if (!single_perturb) return statlie::alpha_structure(o.alpha, o.lambda);
      // compatible cubic form pushed off the family along C_111
      const double pcoef = 2.0 * o.alpha / o.lambda;
      return statlie::structure_from_cubic(
          o.lambda, {o.perturb, pcoef, 0.0, 2.0 * pcoef});
    }();
    const statlie::VerificationReport rep = statlie::verify_main_theorem(s, o.lambda, o.tol);
    const bool pass = rep.all_equivalent() && rep.all_pass() == expect_family;
    json details = json(rep);
    details["mode"] = "single";
    details["expected_family"] = expect_family;
    if (single_perturb) details["perturbation"] = o.perturb;
    return finish("verify", pass, json(rep.residuals), details, o.out);
  }

  statlie::SweepConfig cfg;
  cfg.lambda = o.lambda;
  cfg.seed = o.seed;
  cfg.n_random = o.count;
  cfg.n_family = o.family_count;
  cfg.tol = o.tol;
  const statlie::SweepResult r = statlie::run_structure_sweep(cfg, mode_of(o));

  json details = json(r);
  details["mode"] = o.serial ? "serial" : "parallel";
  details["seed"] = o.seed;
  const json residuals{
      {"max_family_residual", statlie::finite_or_null(r.max_family_residual)},
      {"min_offfamily_residual", statlie::finite_or_null(r.min_offfamily_residual)},
  };
  return finish("verify", r.pass(), residuals, details, o.out);
}

int run_characterize(const Options& o) {
  const statlie::Characterization c = statlie::characterize_solutions(o.lambda, o.tol);

  const std::array<double, 4> pattern{0.0, 1.0, 0.0, 2.0};
  double dev = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    dev = std::max(dev, std::abs(c.generator[i] - pattern[i]));
  const bool pass = c.dimension == 1 && dev < kPatternTol;

  const statlie::StatisticalStructure s1 = statlie::structure_from_cubic(o.lambda, c.generator);
  json details = json(c);
  details["connection_table_p1"] = statlie::bilinear_to_json(s1.mu());
  details["pattern"] = pattern;
  return finish("characterize", pass,
                json{{"pattern_deviation", dev},
                     {"smallest_singular_value", c.singular_values[3]}},
                details, o.out);
}

int run_geodesic(const Options& o) {
  const statlie::GeodesicState init{statlie::ChartPoint(o.x0, o.y0), {o.vx, o.vy}};
  const statlie::GeodesicResult r =
      statlie::integrate_geodesic(o.alpha, o.lambda, init, o.step, o.steps);
  const bool completed = r.status == statlie::GeodesicStatus::completed;

  if (o.format == "csv") {
    std::ostringstream csv;
    statlie::write_trajectory_csv(csv, r, o.step);
    emit_text(csv.str(), o.out);
    if (!completed)
      std::cerr << "geodesic halted at the y boundary after " << r.states.size() - 1
                << " steps\n";
    return completed ? 0 : 1;
  }

  const statlie::GeodesicState& last = r.states.back();
  const json details{
      {"alpha", o.alpha},
      {"lambda", o.lambda},
      {"status", completed ? "completed" : "boundary"},
      {"n_states", r.states.size()},
      {"final", {{"x", last.point.x}, {"y", last.point.y},
                 {"vx", last.velocity[0]}, {"vy", last.velocity[1]}}},
  };
  return finish("geodesic", completed, json::object(), details, o.out);
}

statlie::SampleSet synthetic_sample(std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  const auto uniform01 = [&]() { return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53; };
  std::vector<double> values;
  values.reserve(100);
  for (int i = 0; i < 50; ++i) {
    // Box-Muller pair around mean 3, scale 1.5
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    values.push_back(3.0 + 1.5 * r * std::cos(2.0 * std::numbers::pi * u2));
    values.push_back(3.0 + 1.5 * r * std::sin(2.0 * std::numbers::pi * u2));
  }
  return statlie::SampleSet(std::move(values));
}

int run_natgrad(const Options& o) {
  const statlie::SampleSet sample =
      o.data.empty() ? synthetic_sample(o.seed) : statlie::SampleSet::from_file(o.data);
  const statlie::GaussianParam init(o.mu0, o.sigma0);

  const statlie::FitResult nat =
      statlie::natural_gradient_fit(sample, init, o.rate, o.tol, o.max_iter);

  json vanilla;
  try {
    // generous iteration cap: the unpreconditioned run is the slow one
    const statlie::FitResult van =
        statlie::vanilla_gradient_fit(sample, init, o.rate, o.tol, o.max_iter * 100);
    vanilla = json(van);
  } catch (const statlie::DivergenceError& e) {
    vanilla = json{{"diverged", true}, {"error", e.what()}};
  }

  const double mle_mu = sample.mean();
  const double mle_sigma = sample.stddev_ml();
  const double mle_dev =
      std::max(std::abs(nat.theta.mu - mle_mu), std::abs(nat.theta.sigma - mle_sigma));
  const bool pass = nat.converged && mle_dev < 10.0 * o.tol;

  const json details{
      {"n_samples", sample.size()},
      {"natural", json(nat)},
      {"vanilla", vanilla},
      {"mle", {{"mu", mle_mu}, {"sigma", mle_sigma}}},
      {"rate", o.rate},
      {"data", o.data.empty() ? json("synthetic") : json(o.data)},
  };
  return finish("natgrad", pass, json{{"mle_deviation", mle_dev}}, details, o.out);
}

std::string check_rate(const std::string& s) {
  try {
    const double v = std::stod(s);
    if (!(v > 0.0) || v > 1.0) return "rate must lie in (0, 1]";
  } catch (...) {
    return "rate must be a number";
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification toolkit for the normal-family statistical Lie group"};
  app.require_subcommand(1);
  Options o;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--lambda", o.lambda, "metric scale (> 0)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--tol", o.tol, "pass tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--out", o.out, "write the report here instead of stdout");
  };

  CLI::App* fisher =
      app.add_subcommand("fisher", "quadrature metric and cubic form vs closed forms on a grid");
  add_common(fisher);
  fisher->add_option("--order", o.order, "quadrature order")->check(CLI::Range(1, 200))->capture_default_str();
  fisher->add_option("--grid", o.grid, "grid points per axis")->check(CLI::PositiveNumber)->capture_default_str();
  fisher->add_option("--mu-min", o.mu_min)->capture_default_str();
  fisher->add_option("--mu-max", o.mu_max)->capture_default_str();
  fisher->add_option("--sigma-min", o.sigma_min)->check(CLI::PositiveNumber)->capture_default_str();
  fisher->add_option("--sigma-max", o.sigma_max)->check(CLI::PositiveNumber)->capture_default_str();
  fisher->add_flag("--serial", o.serial, "run the reference serial path");

  CLI::App* connection =
      app.add_subcommand("connection", "frame and coordinate tables of a family connection");
  add_common(connection);
  connection->add_option("--alpha", o.alpha, "family parameter")->capture_default_str();
  connection->add_option("--x", o.x0, "evaluation point x")->capture_default_str();
  connection->add_option("--y", o.y0, "evaluation point y (> 0)")->check(CLI::PositiveNumber)->capture_default_str();

  CLI::App* verify = app.add_subcommand(
      "verify", "five-condition equivalence: random-structure sweep or a single structure");
  add_common(verify);
  CLI::Option* alpha_opt =
      verify->add_option("--alpha", o.alpha, "check the single family member with this alpha");
  CLI::Option* perturb_opt = verify->add_option(
      "--perturb", o.perturb, "check a single compatible structure pushed off the family");
  verify->add_option("--count", o.count, "random structures in sweep mode")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  verify->add_option("--family-count", o.family_count, "injected family members in sweep mode")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  verify->add_option("--seed", o.seed, "sweep RNG seed")->capture_default_str();
  verify->add_flag("--serial", o.serial, "run the reference serial path");

  CLI::App* characterize =
      app.add_subcommand("characterize", "nullspace of the symmetry condition in cubic coordinates");
  add_common(characterize);

  CLI::App* geodesic = app.add_subcommand("geodesic", "integrate a family geodesic");
  add_common(geodesic);
  geodesic->add_option("--alpha", o.alpha, "family parameter")->capture_default_str();
  geodesic->add_option("--x0", o.x0)->capture_default_str();
  geodesic->add_option("--y0", o.y0)->check(CLI::PositiveNumber)->capture_default_str();
  geodesic->add_option("--vx", o.vx)->capture_default_str();
  geodesic->add_option("--vy", o.vy)->capture_default_str();
  geodesic->add_option("--step", o.step, "integration step")->check(CLI::PositiveNumber)->capture_default_str();
  geodesic->add_option("--steps", o.steps, "number of steps")->check(CLI::NonNegativeNumber)->capture_default_str();
  geodesic->add_option("--format", o.format, "csv trajectory or json summary")
      ->check(CLI::IsMember({"csv", "json"}));
  o.format = "csv";

  CLI::App* natgrad = app.add_subcommand("natgrad", "natural-gradient fit of a normal sample");
  add_common(natgrad);
  natgrad->add_option("--data", o.data, "sample file (whitespace/comma separated); synthetic when omitted");
  natgrad->add_option("--rate", o.rate, "step rate in (0, 1]")->check(check_rate)->capture_default_str();
  natgrad->add_option("--max-iter", o.max_iter, "iteration cap")->check(CLI::PositiveNumber)->capture_default_str();
  natgrad->add_option("--mu0", o.mu0, "initial mean")->capture_default_str();
  natgrad->add_option("--sigma0", o.sigma0, "initial deviation (> 0)")->check(CLI::PositiveNumber)->capture_default_str();
  natgrad->add_option("--seed", o.seed, "seed for the synthetic sample")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (fisher->parsed()) return run_fisher(o);
    if (connection->parsed()) return run_connection(o);
    if (verify->parsed())
      return run_verify(o, alpha_opt->count() > 0, perturb_opt->count() > 0);
    if (characterize->parsed()) return run_characterize(o);
    if (geodesic->parsed()) return run_geodesic(o);
    if (natgrad->parsed()) return run_natgrad(o);
  } catch (const std::exception& e) {
    const json report{{"command", command}, {"pass", false}, {"error", e.what()}};
    std::cout << report.dump(2) << "\n";
    return 1;
  }
  return 2;
}
