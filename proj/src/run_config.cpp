#include "reram/run_config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace reram {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) {
  throw config_error("config: " + msg);
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const char* ctx) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed)
      if (it.key() == a) {
        ok = true;
        break;
      }
    if (!ok) bad("unknown key '" + it.key() + "' in " + ctx);
  }
}

double get_num(const json& j, const char* key, double dflt) {
  if (!j.contains(key)) return dflt;
  const json& v = j.at(key);
  if (!v.is_number()) bad(std::string(key) + " must be a number");
  return v.get<double>();
}

std::uint64_t get_u64(const json& j, const char* key, std::uint64_t dflt) {
  if (!j.contains(key)) return dflt;
  const json& v = j.at(key);
  if (!v.is_number_unsigned()) bad(std::string(key) + " must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

int get_int(const json& j, const char* key, int dflt) {
  if (!j.contains(key)) return dflt;
  const json& v = j.at(key);
  if (!v.is_number_integer()) bad(std::string(key) + " must be an integer");
  return v.get<int>();
}

std::string get_str(const json& j, const char* key, const std::string& dflt) {
  if (!j.contains(key)) return dflt;
  const json& v = j.at(key);
  if (!v.is_string()) bad(std::string(key) + " must be a string");
  return v.get<std::string>();
}

GridSpec parse_grid(const json& j, const GridSpec& dflt, const char* ctx) {
  check_keys(j, {"start", "stop", "step"}, ctx);
  GridSpec g;
  g.start = get_num(j, "start", dflt.start);
  g.stop = get_num(j, "stop", dflt.stop);
  g.step = get_num(j, "step", dflt.step);
  return g;
}

}  // namespace

std::vector<double> GridSpec::values() const {
  if (!(step > 0.0)) throw config_error("config: grid step must be > 0");
  if (!(stop >= start))
    throw config_error("config: grid stop must be >= start");
  std::vector<double> out;
  long count = std::lround((stop - start) / step);
  for (long i = 0; i <= count + 1; ++i) {
    double v = start + static_cast<double>(i) * step;
    if (v > stop + 0.5 * step) break;
    out.push_back(v);
  }
  return out;
}

SfDistribution SfConfig::resolve(int array_n) const {
  if (!p.empty()) {
    SfDistribution dist;
    dist.kmax = static_cast<int>(p.size()) - 1;
    dist.p = p;
    dist.validate();
    return dist;
  }
  std::uint64_t cells = n_cells;
  if (cells == 0)
    cells = static_cast<std::uint64_t>(array_n) *
            static_cast<std::uint64_t>(array_n);
  return truncated_binomial(cells, mu, kmax, truncation);
}

void RunConfig::validate() const {
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("config: ") + e.what());
  }
  if (n < 2) throw config_error("config: n must be >= 2");
  if (!(q >= 0.0 && q <= 1.0))
    throw config_error("config: q must lie in [0,1]");
  if (!(quad.tol > 0.0)) throw config_error("config: quadrature tol must be > 0");
  if (quad.max_depth < 4)
    throw config_error("config: quadrature max_depth must be >= 4");
  if (!(quad.truncation_sigmas >= 2.0))
    throw config_error("config: truncation_sigmas must be >= 2");
  if (!(optimizer_grid_step > 0.0 && optimizer_grid_step < 0.5))
    throw config_error("config: optimizer grid_step must lie in (0, 0.5)");
  if (!(optimizer_tol > 0.0))
    throw config_error("config: optimizer tol must be > 0");
  if (jobs < 0) throw config_error("config: jobs must be >= 0");
  if (format != "csv" && format != "json")
    throw config_error("config: format must be csv or json");
  if (sf.p.empty()) {
    if (sf.kmax < 0) throw config_error("config: sf.kmax must be >= 0");
    if (!(sf.mu >= 0.0 && sf.mu <= 1.0))
      throw config_error("config: sf.mu must lie in [0,1]");
  }
}

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    bad(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) bad("top level must be an object");
  check_keys(j,
             {"r0", "r1", "rs", "sigma", "sf", "n", "q", "q_grid",
              "sigma_grid", "quadrature", "optimizer", "tin_single",
              "tin_across", "trials", "seed", "jobs", "out", "format"},
             "top level");

  RunConfig cfg;
  cfg.params.r0 = get_num(j, "r0", cfg.params.r0);
  cfg.params.r1 = get_num(j, "r1", cfg.params.r1);
  cfg.params.rs = get_num(j, "rs", cfg.params.rs);
  cfg.params.sigma = get_num(j, "sigma", cfg.params.sigma);
  cfg.n = get_int(j, "n", cfg.n);
  cfg.q = get_num(j, "q", cfg.q);

  if (j.contains("sf")) {
    const json& s = j.at("sf");
    if (!s.is_object()) bad("sf must be an object");
    check_keys(s, {"n_cells", "mu", "kmax", "truncation", "p"}, "sf");
    cfg.sf.n_cells = get_u64(s, "n_cells", cfg.sf.n_cells);
    cfg.sf.mu = get_num(s, "mu", cfg.sf.mu);
    cfg.sf.kmax = get_int(s, "kmax", cfg.sf.kmax);
    std::string tr = get_str(s, "truncation", "condition");
    if (tr == "condition")
      cfg.sf.truncation = TruncationMode::condition;
    else if (tr == "tail-lump")
      cfg.sf.truncation = TruncationMode::tail_lump;
    else
      bad("sf.truncation must be condition or tail-lump");
    if (s.contains("p")) {
      const json& pv = s.at("p");
      if (!pv.is_array() || pv.empty()) bad("sf.p must be a nonempty array");
      for (const auto& e : pv) {
        if (!e.is_number()) bad("sf.p entries must be numbers");
        cfg.sf.p.push_back(e.get<double>());
      }
    }
  }

  if (j.contains("q_grid"))
    cfg.q_grid = parse_grid(j.at("q_grid"), cfg.q_grid, "q_grid");
  if (j.contains("sigma_grid"))
    cfg.sigma_grid = parse_grid(j.at("sigma_grid"), cfg.sigma_grid, "sigma_grid");

  if (j.contains("quadrature")) {
    const json& g = j.at("quadrature");
    check_keys(g, {"tol", "max_depth", "truncation_sigmas"}, "quadrature");
    cfg.quad.tol = get_num(g, "tol", cfg.quad.tol);
    cfg.quad.max_depth = get_int(g, "max_depth", cfg.quad.max_depth);
    cfg.quad.truncation_sigmas =
        get_num(g, "truncation_sigmas", cfg.quad.truncation_sigmas);
  }
  if (j.contains("optimizer")) {
    const json& g = j.at("optimizer");
    check_keys(g, {"grid_step", "tol"}, "optimizer");
    cfg.optimizer_grid_step = get_num(g, "grid_step", cfg.optimizer_grid_step);
    cfg.optimizer_tol = get_num(g, "tol", cfg.optimizer_tol);
  }
  if (j.contains("tin_single"))
    cfg.tin_single = tin_variant_from_string(get_str(j, "tin_single", ""));
  if (j.contains("tin_across"))
    cfg.tin_across = tin_variant_from_string(get_str(j, "tin_across", ""));
  if (j.contains("trials")) {
    const json& g = j.at("trials");
    check_keys(g, {"spectrum", "sp_rate", "scattered"}, "trials");
    cfg.trials_spectrum = get_u64(g, "spectrum", cfg.trials_spectrum);
    cfg.trials_sp_rate = get_u64(g, "sp_rate", cfg.trials_sp_rate);
    cfg.trials_scattered = get_u64(g, "scattered", cfg.trials_scattered);
  }
  cfg.seed = get_u64(j, "seed", cfg.seed);
  cfg.jobs = get_int(j, "jobs", cfg.jobs);
  cfg.out = get_str(j, "out", cfg.out);
  cfg.format = get_str(j, "format", cfg.format);
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

TinVariant tin_variant_from_string(const std::string& s) {
  if (s == "ergodic") return TinVariant::ergodic;
  if (s == "worst-k") return TinVariant::worst_k;
  if (s == "worst-active") return TinVariant::worst_active;
  throw config_error(
      "config: tin variant must be ergodic, worst-k, or worst-active (got '" +
      s + "')");
}

const char* tin_variant_name(TinVariant v) {
  switch (v) {
    case TinVariant::ergodic:
      return "ergodic";
    case TinVariant::worst_k:
      return "worst-k";
    case TinVariant::worst_active:
    default:
      return "worst-active";
  }
}

}  // namespace reram
