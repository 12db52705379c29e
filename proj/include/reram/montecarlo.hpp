#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reram/channel.hpp"
#include "reram/infotheory.hpp"

namespace reram {

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

// P(a uniform k-subset of the n x n cells is scattered)
//   = k! C(n,k)^2 / C(n^2,k), evaluated in log space.
double exact_scattered_probability(int n, int k);

// Fraction of uniform k-subsets that are scattered, over `trials` draws.
McEstimate estimate_scattered_frequency(int n, int k, std::uint64_t trials,
                                        std::uint64_t seed, int jobs);

// Mean over trials of sp_rate(x, phi) with phi a uniform scattered pattern
// of k_active cells and x ~ Bern(q) conditioned on x = 1 at every fault.
// Expectation tends to 1 - (1-q^2)^k_active as n grows.
McEstimate estimate_sp_rate(int n, double q, int k_active,
                            std::uint64_t trials, std::uint64_t seed,
                            int jobs);

// Normalized conditional information density (1/|S|) sum_{(m,n) in S}
// log2 f(y_mn | x_mn, u_mn) / g(y_mn | u_mn), where S excludes cells in
// fault rows or columns (their factors cancel identically) and u is the
// sneak-path OR mask. Requires y produced from (x, phi) by readback().
double conditional_mi_density(const DataArray& x, const ReadbackArray& y,
                              const SfPattern& phi, double q,
                              const ResistiveParams& params);

// Per-trial densities for fresh (phi, x, y) draws, phi sampled from dist by
// cardinality and placed uniformly, plus nearest-atom assignments.
struct SpectrumTrials {
  std::vector<double> density;
  std::vector<int> atom_index;
};

SpectrumTrials estimate_spectrum(int n, double q, const ResistiveParams& params,
                                 const SfDistribution& dist,
                                 const std::vector<SpectrumAtom>& atoms,
                                 std::uint64_t trials, std::uint64_t seed,
                                 int jobs);

struct AtomCluster {
  SpectrumAtom atom;
  std::uint64_t count = 0;
  double empirical_weight = 0.0;
  double weight_sigma = 0.0;  // multinomial sqrt(w (1-w) / trials)
  double mean = 0.0;          // of densities assigned to this atom
  double stddev = 0.0;
};

std::vector<AtomCluster> cluster_by_atom(const SpectrumTrials& trials,
                                         const std::vector<SpectrumAtom>& atoms);

// One line of the validation report. pass is |z| <= 3, or for cluster
// location rows |mean - target| <= location_band as well.
struct ValidationCheck {
  std::string check;
  int n = 0;
  double q = 0.0;
  std::uint64_t trials = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double target = 0.0;
  double z_score = 0.0;
  bool pass = false;
};

ValidationCheck make_check(const std::string& name, int n, double q,
                           std::uint64_t trials, double mean, double std_error,
                           double target, double location_band = 0.0);

std::string validation_report_json(const std::vector<ValidationCheck>& checks);
std::string validation_report_csv(const std::vector<ValidationCheck>& checks);

}  // namespace reram
