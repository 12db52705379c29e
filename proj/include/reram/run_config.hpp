#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "reram/channel.hpp"
#include "reram/infotheory.hpp"

namespace reram {

// Bad JSON, unknown keys, or out-of-range values. The CLI maps this (and
// flag misuse) to exit code 1.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  std::vector<double> values() const;  // inclusive of stop within step/2
};

// Fault-cardinality law configuration. When `p` is nonempty it is used
// directly; otherwise Binomial(n_cells, mu) truncated at kmax. n_cells = 0
// means "track the array size" (n_cells = n^2).
struct SfConfig {
  std::uint64_t n_cells = 0;
  double mu = 1e-4;
  int kmax = 8;
  TruncationMode truncation = TruncationMode::condition;
  std::vector<double> p;

  SfDistribution resolve(int array_n) const;
};

struct RunConfig {
  ResistiveParams params;         // r0=1000, r1=100, rs=250, sigma=100
  SfConfig sf;
  int n = 256;                    // array side for simulate/validate
  double q = 0.5;
  GridSpec q_grid{0.01, 0.99, 0.01};
  GridSpec sigma_grid{10.0, 150.0, 10.0};
  QuadratureOptions quad;
  double optimizer_grid_step = 0.005;
  double optimizer_tol = 1e-4;
  TinVariant tin_single = TinVariant::worst_active;
  TinVariant tin_across = TinVariant::ergodic;
  std::uint64_t trials_spectrum = 2000;
  std::uint64_t trials_sp_rate = 1000;
  std::uint64_t trials_scattered = 100000;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string out;                // empty = stdout
  std::string format = "csv";     // csv | json

  void validate() const;          // throws config_error
};

// Parse a JSON config file into defaults. Unknown keys are errors so typos
// do not silently fall back to defaults.
RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(const std::string& json_text);

TinVariant tin_variant_from_string(const std::string& s);
const char* tin_variant_name(TinVariant v);

}  // namespace reram
