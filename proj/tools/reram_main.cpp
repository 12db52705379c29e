#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "reram/format.hpp"
#include "reram/infotheory.hpp"
#include "reram/montecarlo.hpp"
#include "reram/parallel.hpp"
#include "reram/run_config.hpp"

namespace fs = std::filesystem;
using namespace reram;

namespace {

constexpr std::uint64_t kStreamSimulate = 4;

void write_output(const RunConfig& cfg, const std::string& payload) {
  if (cfg.out.empty()) {
    std::cout << payload;
    return;
  }
  fs::path p(cfg.out);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw config_error("cannot open output file " + cfg.out);
  f << payload;
  if (!f) throw config_error("failed writing output file " + cfg.out);
}

std::string table_payload(const RunConfig& cfg,
                          const std::vector<std::string>& columns,
                          const std::vector<std::vector<double>>& rows) {
  if (cfg.format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      nlohmann::ordered_json obj;
      for (std::size_t c = 0; c < columns.size(); ++c) obj[columns[c]] = row[c];
      arr.push_back(obj);
    }
    return arr.dump(2) + "\n";
  }
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out += columns[c];
    out += c + 1 < columns.size() ? ',' : '\n';
  }
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out += g15(row[c]);
      out += c + 1 < row.size() ? ',' : '\n';
    }
  }
  return out;
}

int effective_jobs(const RunConfig& cfg) {
  if (cfg.jobs > 0) return cfg.jobs;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

double tin_rate_at(const RunConfig& cfg, const SfDistribution& dist, double q,
                   double sigma, TinVariant variant) {
  ResistiveParams p = cfg.params;
  p.sigma = sigma;
  return tin_rate(q, p, tin_sp_probability(q, dist, variant), cfg.quad);
}

int cmd_spectrum(const RunConfig& cfg) {
  SfDistribution dist = cfg.sf.resolve(cfg.n);
  std::vector<SpectrumAtom> atoms =
      mi_spectrum(cfg.q, cfg.params, dist, cfg.quad);
  std::vector<std::vector<double>> rows;
  for (const SpectrumAtom& a : atoms)
    rows.push_back({static_cast<double>(a.k_active), a.location, a.weight});
  write_output(cfg, table_payload(cfg, {"k_prime", "location_bits", "weight"},
                                  rows));
  return 0;
}

int cmd_rate_curve(const RunConfig& cfg) {
  SfDistribution dist = cfg.sf.resolve(cfg.n);
  std::vector<double> qs = cfg.q_grid.values();
  std::vector<std::vector<double>> rows(qs.size());
  parallel_for(qs.size(), effective_jobs(cfg), [&](std::uint64_t i) {
    double q = qs[i];
    rows[i] = {q,
               single_array_rate(q, cfg.params, dist.kmax, cfg.quad),
               across_array_rate(q, cfg.params, dist, cfg.quad),
               tin_rate_at(cfg, dist, q, cfg.params.sigma, cfg.tin_single),
               tin_rate_at(cfg, dist, q, cfg.params.sigma, cfg.tin_across)};
  });
  write_output(cfg,
               table_payload(cfg, {"q", "single", "across", "tin_single",
                                   "tin_across"},
                             rows));
  return 0;
}

int cmd_rate_vs_sigma(const RunConfig& cfg) {
  SfDistribution dist = cfg.sf.resolve(cfg.n);
  std::vector<double> sigmas = cfg.sigma_grid.values();
  std::vector<std::vector<double>> rows(sigmas.size());
  parallel_for(sigmas.size(), effective_jobs(cfg), [&](std::uint64_t i) {
    double sigma = sigmas[i];
    ResistiveParams p = cfg.params;
    p.sigma = sigma;
    OptimizeResult single = maximize_over_q(
        [&](double q) { return single_array_rate(q, p, dist.kmax, cfg.quad); },
        cfg.optimizer_grid_step, cfg.optimizer_tol);
    OptimizeResult across = maximize_over_q(
        [&](double q) { return across_array_rate(q, p, dist, cfg.quad); },
        cfg.optimizer_grid_step, cfg.optimizer_tol);
    OptimizeResult tin_s = maximize_over_q(
        [&](double q) { return tin_rate_at(cfg, dist, q, sigma, cfg.tin_single); },
        cfg.optimizer_grid_step, cfg.optimizer_tol);
    OptimizeResult tin_a = maximize_over_q(
        [&](double q) { return tin_rate_at(cfg, dist, q, sigma, cfg.tin_across); },
        cfg.optimizer_grid_step, cfg.optimizer_tol);
    rows[i] = {sigma,
               single.q_star, single.value_star,
               across.q_star, across.value_star,
               tin_s.q_star, tin_s.value_star,
               tin_a.q_star, tin_a.value_star};
  });
  write_output(
      cfg, table_payload(cfg,
                         {"sigma", "q_single", "rate_single", "q_across",
                          "rate_across", "q_tin_single", "rate_tin_single",
                          "q_tin_across", "rate_tin_across"},
                         rows));
  return 0;
}

int cmd_validate(const RunConfig& cfg) {
  if (cfg.trials_sp_rate < 100 || cfg.trials_spectrum < 100 ||
      cfg.trials_scattered < 100)
    throw config_error("validate: need at least 100 trials per check");
  SfDistribution dist = cfg.sf.resolve(cfg.n);
  int jobs = effective_jobs(cfg);
  std::vector<ValidationCheck> checks;

  {
    int k = dist.kmax > 0 ? dist.kmax : 1;
    double target = exact_scattered_probability(cfg.n, k);
    McEstimate est = estimate_scattered_frequency(cfg.n, k, cfg.trials_scattered,
                                                  cfg.seed, jobs);
    double se = std::sqrt(target * (1.0 - target) /
                          static_cast<double>(est.trials));
    checks.push_back(make_check("scattered_frequency_k" + std::to_string(k),
                                cfg.n, cfg.q, est.trials, est.mean, se,
                                target));
  }

  double q = cfg.q;
  double asym = 1.0 - (1.0 - q * q) * (1.0 - q * q);
  for (int n : {64, 128, 256}) {
    McEstimate est =
        estimate_sp_rate(n, q, 2, cfg.trials_sp_rate, cfg.seed, jobs);
    checks.push_back(make_check("sp_rate_k2_n" + std::to_string(n), n, q,
                                est.trials, est.mean, est.std_error, asym,
                                0.02));
  }

  std::vector<SpectrumAtom> atoms = mi_spectrum(q, cfg.params, dist, cfg.quad);
  SpectrumTrials trials = estimate_spectrum(cfg.n, q, cfg.params, dist, atoms,
                                            cfg.trials_spectrum, cfg.seed, jobs);
  std::vector<AtomCluster> clusters = cluster_by_atom(trials, atoms);
  for (const AtomCluster& cl : clusters) {
    checks.push_back(make_check(
        "spectrum_weight_k" + std::to_string(cl.atom.k_active), cfg.n, q,
        cfg.trials_spectrum, cl.empirical_weight, cl.weight_sigma,
        cl.atom.weight));
    if (cl.count >= 5) {
      double se = cl.stddev / std::sqrt(static_cast<double>(cl.count));
      checks.push_back(make_check(
          "spectrum_location_k" + std::to_string(cl.atom.k_active), cfg.n, q,
          cl.count, cl.mean, se, cl.atom.location, 0.02));
    }
  }

  std::string payload = cfg.format == "json" ? validation_report_json(checks)
                                             : validation_report_csv(checks);
  write_output(cfg, payload);
  for (const ValidationCheck& c : checks)
    if (!c.pass) return 2;
  return 0;
}

int cmd_simulate(const RunConfig& cfg) {
  if (cfg.out.empty())
    throw config_error("simulate: --out <directory> is required");
  fs::create_directories(cfg.out);
  SfDistribution dist = cfg.sf.resolve(cfg.n);
  Rng rng(derive_seed(cfg.seed, kStreamSimulate, 0));
  SfPattern phi = sample_sf_pattern(dist.p, cfg.n, rng);
  DataArray x = sample_data_array(cfg.n, cfg.q, rng);
  IndicatorArray v = sneak_path_indicators(x, phi);
  ReadbackArray y = readback(x, v, cfg.params, rng);

  auto write_file = [&](const char* name, const std::string& body) {
    fs::path p = fs::path(cfg.out) / name;
    std::ofstream f(p, std::ios::binary);
    if (!f) throw config_error("cannot open " + p.string());
    f << body;
    std::cout << "wrote " << p.string() << "\n";
  };

  std::string ycsv;
  for (int i = 0; i < y.n; ++i) {
    for (int j = 0; j < y.n; ++j) {
      ycsv += g15(y.at(i, j));
      ycsv += j + 1 < y.n ? ',' : '\n';
    }
  }
  write_file("x.txt", to_text_grid(x.bits));
  write_file("phi.json", sf_pattern_to_json(phi));
  write_file("v.txt", to_text_grid(v.bits));
  write_file("y.csv", ycsv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ReRAM sneak-path channel model: information spectrum, achievable "
      "rates, and Monte Carlo validation"};
  app.require_subcommand(1);

  std::string config_path, out, format, tin_variant;
  std::uint64_t seed = 0, trials = 0;
  int jobs = -1, n = 0;
  double q = -1.0, sigma = 0.0;

  auto* opt_config =
      app.add_option("--config", config_path, "JSON config file");
  auto* opt_seed = app.add_option("--seed", seed, "base RNG seed");
  auto* opt_jobs = app.add_option("--jobs", jobs, "worker threads (0 = auto)");
  auto* opt_out = app.add_option("--out", out, "output path (default stdout)");
  auto* opt_format = app.add_option("--format", format, "csv or json");
  auto* opt_q = app.add_option("--q", q, "input one-probability");
  auto* opt_sigma = app.add_option("--sigma", sigma, "read noise sigma");
  auto* opt_n = app.add_option("--n", n, "array side length");
  auto* opt_trials = app.add_option("--trials", trials,
                                    "Monte Carlo trials for every check");
  auto* opt_tin = app.add_option(
      "--tin-variant", tin_variant,
      "single-array TIN mixing: ergodic, worst-k, or worst-active");

  CLI::App* c_spectrum =
      app.add_subcommand("spectrum", "information density atoms for one q");
  CLI::App* c_rate_curve =
      app.add_subcommand("rate-curve", "rates as a function of q");
  CLI::App* c_rate_sigma = app.add_subcommand(
      "rate-vs-sigma", "q-optimized rates as a function of sigma");
  CLI::App* c_validate = app.add_subcommand(
      "validate", "Monte Carlo checks against closed-form targets");
  CLI::App* c_simulate =
      app.add_subcommand("simulate", "sample one (x, phi, v, y) draw");
  for (CLI::App* s :
       {c_spectrum, c_rate_curve, c_rate_sigma, c_validate, c_simulate})
    s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    RunConfig cfg;
    if (opt_config->count()) cfg = load_run_config(config_path);
    if (opt_seed->count()) cfg.seed = seed;
    if (opt_jobs->count()) cfg.jobs = jobs;
    if (opt_out->count()) cfg.out = out;
    if (opt_format->count()) cfg.format = format;
    if (opt_q->count()) cfg.q = q;
    if (opt_sigma->count()) cfg.params.sigma = sigma;
    if (opt_n->count()) cfg.n = n;
    if (opt_trials->count()) {
      cfg.trials_spectrum = trials;
      cfg.trials_sp_rate = trials;
      cfg.trials_scattered = trials;
    }
    if (opt_tin->count()) cfg.tin_single = tin_variant_from_string(tin_variant);
    cfg.validate();

    if (*c_spectrum) return cmd_spectrum(cfg);
    if (*c_rate_curve) return cmd_rate_curve(cfg);
    if (*c_rate_sigma) return cmd_rate_vs_sigma(cfg);
    if (*c_validate) return cmd_validate(cfg);
    if (*c_simulate) return cmd_simulate(cfg);
    return 1;
  } catch (const config_error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const quadrature_error& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
