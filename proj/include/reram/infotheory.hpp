#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "reram/channel.hpp"
#include "reram/quadrature.hpp"

namespace reram {

// Law of the sneak-path fault cardinality K. p[k] = P(K = k), k = 0..kmax.
struct SfDistribution {
  int kmax = 0;
  std::vector<double> p;

  // Throws std::invalid_argument unless p has kmax+1 nonnegative entries
  // summing to 1 within 1e-12.
  void validate() const;
  double mean() const;
};

// How the Binomial(n, mu) law is restricted to {0..kmax}. tail_lump moves
// all mass above kmax onto kmax; condition renormalizes P(K <= kmax) to 1.
// The reference figures use condition.
enum class TruncationMode { tail_lump, condition };

SfDistribution truncated_binomial(std::uint64_t n, double mu, int kmax,
                                  TruncationMode mode = TruncationMode::tail_lump);

// Mutual information in bits of the binary-input unit-noise Gaussian channel
// with input prior (1-q, q) and levels +-gamma. Evaluated as
// (-integral g ln g - ln sqrt(2 pi e)) / ln 2 by adaptive Simpson over
// [-gamma - s, gamma + s], s = truncation_sigmas.
double binary_awgn_mi(double q, double gamma, const QuadratureOptions& quad = {});

double binary_entropy_bits(double q);

// One atom of the information density spectrum: the value reached when
// k_active sneak paths are live, and its probability.
struct SpectrumAtom {
  int k_active = 0;
  double location = 0.0;
  double weight = 0.0;
};

// The kmax+1 atoms: location_j = C' + (1-q^2)^j (C - C'),
// weight_j = sum_{k >= j} p_k Binom(k, j) q^j (1-q)^(k-j),
// with C = binary_awgn_mi(q, gamma), C' = binary_awgn_mi(q, gamma').
std::vector<SpectrumAtom> mi_spectrum(double q, const ResistiveParams& params,
                                      const SfDistribution& dist,
                                      const QuadratureOptions& quad = {});

// Worst-case (all kmax faults present) achievable rate of one array.
double single_array_rate(double q, const ResistiveParams& params, int kmax,
                         const QuadratureOptions& quad = {});

// Ergodic rate across arrays: C' + (C - C') sum_k p_k (1-q^3)^k.
double across_array_rate(double q, const ResistiveParams& params,
                         const SfDistribution& dist,
                         const QuadratureOptions& quad = {});

enum class TinVariant { ergodic, worst_k, worst_active };

// Mixing weight A = P(cell reads at r0' | stores 0) under the decoder that
// treats sneak-path interference as noise.
//   ergodic:      A = 1 - sum_k p_k (1-q^3)^k   (across-array average)
//   worst_k:      A = 1 - (1-q^3)^kmax          (all faults present)
//   worst_active: A = 1 - (1-q^2)^kmax          (all faults present and
//                  activation resolved, per-cell hit probability q^2; this
//                  variant reproduces the reference single-array curve)
double tin_sp_probability(double q, const SfDistribution& dist,
                          TinVariant variant);

// Rate of the mismatched decoder: I = h(Y) - (1-q) h(Y | X=0) - q h(noise),
// with Y | X=0 the (1-A, A) mixture of N(r0, sigma^2) and N(r0', sigma^2).
double tin_rate(double q, const ResistiveParams& params, double sp_probability,
                const QuadratureOptions& quad = {});

// Coarse grid scan followed by golden-section refinement of the winning
// bracket. Reports both the grid winner and the refined point.
struct OptimizeResult {
  double grid_q = 0.0;
  double grid_value = 0.0;
  double q_star = 0.0;
  double value_star = 0.0;
};

OptimizeResult maximize_over_q(const std::function<double(double)>& fn,
                               double grid_step = 0.005, double tol = 1e-4);

}  // namespace reram
