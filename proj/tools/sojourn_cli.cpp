// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: samplers, analytic transforms and the full
// verification suite. Outputs are CSV/JSON with a reproducibility header;
// rerunning with the same arguments and seed writes byte-identical files.
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sojourn/io.hpp"
#include "sojourn/laplace.hpp"
#include "sojourn/models.hpp"
#include "sojourn/moments.hpp"
#include "sojourn/occupation.hpp"
#include "sojourn/parallel.hpp"
#include "sojourn/poisson_rep.hpp"
#include "sojourn/random.hpp"
#include "sojourn/stats.hpp"
#include "sojourn/verify.hpp"

namespace {

using namespace sojourn;

struct CommonArgs {
  std::string model_spec = "bm";
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out;
};

void add_seed_option(CLI::App* cmd, std::uint64_t& seed) {
  cmd->add_option("--seed", seed, "random seed")->envname("SOJOURN_SEED");
}

void print_value(double v) { std::printf("%.10g\n", v); }

int run_positivity(const std::string& spec, double t) {
  print_value(models::positivity(models::parse_model(spec), t));
  return 0;
}

int run_simulate_occupation(const CommonArgs& args, double t, std::size_t steps,
                            std::size_t paths) {
  const auto model = models::parse_model(args.model_spec);
  const auto out = occupation::simulate_occupation(model, t, steps, paths,
                                                   StreamFamily{args.seed, 0}, args.threads);
  io::Metadata meta{args.model_spec, args.seed, paths, ""};
  io::CsvWriter csv(args.out, meta, {"sample_index", "a_value", "horizon"});
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    csv.row(i, {out.samples[i], out.horizon});
  }
  std::printf("wrote %zu samples; atom at 0: %.6g, atom at horizon: %.6g\n", paths,
              out.atom_at_zero, out.atom_at_horizon);
  return 0;
}

int run_poisson_sum(const CommonArgs& args, double q, double eps, std::size_t samples) {
  const auto model = models::parse_model(args.model_spec);
  const poisson_rep::IntensitySpec spec(q, models::positivity_function(model),
                                        eps > 0.0 ? eps : poisson_rep::default_epsilon(q));
  std::vector<double> totals(samples);
  std::vector<double> counts(samples);
  const StreamFamily fam{args.seed, 0};
  parallel_for(samples, args.threads, [&](std::uint64_t i) {
    RandomStream rng = fam.at(i);
    const auto s = poisson_rep::sample_poisson_sum(spec, rng);
    totals[i] = s.total;
    counts[i] = static_cast<double>(s.points.size());
  });
  io::Metadata meta{args.model_spec, args.seed, samples, "q: " + io::format_double(q)};
  io::CsvWriter csv(args.out, meta, {"sample_index", "total", "n_points"});
  for (std::size_t i = 0; i < samples; ++i) csv.row(i, {totals[i], counts[i]});
  std::printf("wrote %zu poisson-sum samples\n", samples);
  return 0;
}

int run_colored_gamma(const CommonArgs& args, double c, double q, double eps,
                      std::size_t samples) {
  std::vector<double> blacks(samples), whites(samples);
  const StreamFamily fam{args.seed, 0};
  parallel_for(samples, args.threads, [&](std::uint64_t i) {
    RandomStream rng = fam.at(i);
    const auto [black, white] = poisson_rep::sample_colored_gamma(c, q, rng, eps);
    blacks[i] = black;
    whites[i] = white;
  });
  io::Metadata meta{"colored-gamma", args.seed, samples,
                    "c: " + io::format_double(c) + ", q: " + io::format_double(q)};
  io::CsvWriter csv(args.out, meta, {"sample_index", "gamma_black", "gamma_white"});
  for (std::size_t i = 0; i < samples; ++i) csv.row(i, {blacks[i], whites[i]});
  std::printf("wrote %zu colored-gamma samples\n", samples);
  return 0;
}

int run_moments(const CommonArgs& args, double t, int max_m, const std::string& method,
                std::size_t paths, std::size_t steps) {
  const auto model = models::parse_model(args.model_spec);
  nlohmann::json body;
  body["meta"] = io::metadata_json(io::Metadata{args.model_spec, args.seed, paths, ""});
  body["t"] = t;
  body["entries"] = nlohmann::json::array();
  for (int m = 1; m <= max_m; ++m) {
    nlohmann::json entry;
    entry["m"] = m;
    entry["method"] = method;
    if (method == "partition") {
      const auto est =
          moments::moment_partition_quadrature(models::positivity_function(model), t, m, 1024);
      entry["value"] = est.value;
      entry["err"] = est.error;
    } else if (method == "bell") {
      // E[A_t^m] from the Laplace transform of the moment function,
      // m!/q^{m+1} p_m(q), inverted on the real axis.
      const auto p = models::positivity_function(model);
      const double mfact = std::tgamma(static_cast<double>(m) + 1.0);
      const auto inv = laplace::gaver_stehfest_invert(
          [&](double q) {
            return mfact / std::pow(q, m + 1) * moments::persistence_prob_bell(p, q, m);
          },
          t, 14);
      entry["value"] = inv.value;
      entry["err"] = inv.stability;
    } else if (method == "mc") {
      const auto est = moments::moment_sampling_mc(model, t, m, paths, steps,
                                                   StreamFamily{args.seed, 0}, args.threads);
      entry["value"] = est.estimate * std::pow(t, m);
      entry["err"] = est.standard_error * std::pow(t, m);
    } else {
      throw std::invalid_argument("moments: method must be partition|bell|mc");
    }
    body["entries"].push_back(entry);
  }
  io::write_json(args.out, body);
  std::printf("wrote %d moment entries\n", max_m);
  return 0;
}

int run_laplace(const std::string& spec, double q, double lambda, const std::string& method) {
  const auto model = models::parse_model(spec);
  const laplace::LaplaceQuery query(q, lambda);
  double value = 0.0;
  if (method == "closed") {
    value = laplace::g_for_model(model, query, true);
  } else if (method == "quad") {
    value = laplace::g_double_laplace_quadrature(models::positivity_function(model), query);
  } else {
    throw std::invalid_argument("laplace: method must be quad|closed");
  }
  print_value(value);
  return 0;
}

int run_invert(const std::string& spec, double lambda, double t, int stages) {
  const auto model = models::parse_model(spec);
  const auto result = laplace::gaver_stehfest_invert(
      [&](double q) {
        return laplace::g_for_model(model, laplace::LaplaceQuery(q, lambda), true);
      },
      t, stages);
  if (result.flagged_unstable) {
    std::fprintf(stderr, "warning: inversion stability indicator %.3e\n", result.stability);
  }
  print_value(result.value);
  return 0;
}

int run_halfstable_density(const CommonArgs& args, double mu, double t, std::size_t points) {
  const auto law = laplace::halfstable_law(mu, t);
  io::Metadata meta{"half-stable:" + io::format_double(mu), args.seed, 0,
                    "atom0: " + io::format_double(law.atom0())};
  io::CsvWriter csv(args.out, meta, {"x", "density", "cdf"});
  for (std::size_t i = 0; i < points; ++i) {
    const double x = t * static_cast<double>(i) / static_cast<double>(points - 1);
    csv.row({x, law.density(x), law.cdf(x)});
  }
  std::printf("wrote %zu density points (atom at zero: %.10g)\n", points, law.atom0());
  return 0;
}

int run_verify(std::uint64_t seed, bool quick, unsigned threads) {
  verify::Options options;
  options.seed = seed;
  options.quick = quick;
  options.threads = threads;
  const auto results = verify::run_acceptance(options);
  verify::print_table(std::cout, results);
  const bool ok = verify::all_pass(results);
  std::cout << (ok ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << '\n';
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sojourn time distributions of Levy processes"};
  app.require_subcommand(1);

  CommonArgs args;
  double t = 1.0, q = 1.0, lambda = 1.0, mu = 1.0, c = 0.5, eps = 0.0;
  std::size_t steps = 4096, paths = 100000, samples = 100000, points = 512;
  int max_m = 6, stages = 14;
  std::string method = "partition";
  bool quick = false;

  auto* positivity = app.add_subcommand("positivity", "evaluate P(X_t > 0)");
  positivity->add_option("--model", args.model_spec)->required();
  positivity->add_option("--t", t)->required();

  auto* sim = app.add_subcommand("simulate-occupation", "path Monte Carlo for A_t");
  sim->add_option("--model", args.model_spec)->required();
  sim->add_option("--t", t);
  sim->add_option("--steps", steps);
  sim->add_option("--paths", paths);
  add_seed_option(sim, args.seed);
  sim->add_option("--threads", args.threads);
  sim->add_option("--out", args.out)->required();

  auto* psum = app.add_subcommand("poisson-sum", "point-process representation of A at Exp(q)");
  psum->add_option("--model", args.model_spec)->required();
  psum->add_option("--q", q);
  psum->add_option("--eps", eps);
  psum->add_option("--samples", samples);
  add_seed_option(psum, args.seed);
  psum->add_option("--threads", args.threads);
  psum->add_option("--out", args.out)->required();

  auto* colored = app.add_subcommand("colored-gamma", "black/white gamma-process sums");
  colored->add_option("--c", c)->required();
  colored->add_option("--q", q);
  colored->add_option("--eps", eps);
  colored->add_option("--samples", samples);
  add_seed_option(colored, args.seed);
  colored->add_option("--threads", args.threads);
  colored->add_option("--out", args.out)->required();

  auto* mom = app.add_subcommand("moments", "E[A_t^m] by partition quadrature, Bell or MC");
  mom->add_option("--model", args.model_spec)->required();
  mom->add_option("--t", t);
  mom->add_option("--max-m", max_m);
  mom->add_option("--method", method)->check(CLI::IsMember({"partition", "bell", "mc"}));
  mom->add_option("--paths", paths);
  mom->add_option("--steps", steps);
  add_seed_option(mom, args.seed);
  mom->add_option("--threads", args.threads);
  mom->add_option("--out", args.out)->required();

  auto* lap = app.add_subcommand("laplace", "double Laplace transform G(q, lambda)");
  lap->add_option("--model", args.model_spec)->required();
  lap->add_option("--q", q)->required();
  lap->add_option("--lambda", lambda)->required();
  lap->add_option("--method", method)->check(CLI::IsMember({"quad", "closed"}));

  auto* inv = app.add_subcommand("invert", "E[exp(-lambda A_t)] by Gaver-Stehfest");
  inv->add_option("--model", args.model_spec)->required();
  inv->add_option("--lambda", lambda)->required();
  inv->add_option("--t", t)->required();
  inv->add_option("--stages", stages);

  auto* dens = app.add_subcommand("halfstable-density", "analytic occupation law tables");
  dens->add_option("--mu", mu)->required();
  dens->add_option("--t", t)->required();
  dens->add_option("--points", points);
  dens->add_option("--out", args.out)->required();

  auto* ver = app.add_subcommand("verify", "run the full acceptance suite");
  add_seed_option(ver, args.seed);
  ver->add_flag("--quick", quick, "1/10 sample counts, sqrt(10) wider KS tolerances");
  ver->add_option("--threads", args.threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (positivity->parsed()) return run_positivity(args.model_spec, t);
    if (sim->parsed()) return run_simulate_occupation(args, t, steps, paths);
    if (psum->parsed()) return run_poisson_sum(args, q, eps, samples);
    if (colored->parsed()) return run_colored_gamma(args, c, q, eps, samples);
    if (mom->parsed()) {
      if (!mom->count("--method")) method = "partition";
      return run_moments(args, t, max_m, method, paths, steps);
    }
    if (lap->parsed()) {
      if (!lap->count("--method")) method = "closed";
      return run_laplace(args.model_spec, q, lambda, method);
    }
    if (inv->parsed()) return run_invert(args.model_spec, lambda, t, stages);
    if (dens->parsed()) return run_halfstable_density(args, mu, t, points);
    if (ver->parsed()) return run_verify(args.seed, quick, args.threads);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
