#pragma once

#include <cstddef>
#include <cstdint>

namespace reram::kernels {

// Constants for the per-cell information density term. Levels are raw
// readback means; inv_two_sigma_sq = 1 / (2 sigma^2), log_w0 = ln(1-q),
// log_w1 = ln q.
struct MiRowArgs {
  double level_x0_u0 = 0.0;
  double level_x0_u1 = 0.0;
  double level_x1 = 0.0;
  double inv_two_sigma_sq = 0.0;
  double log_w0 = 0.0;
  double log_w1 = 0.0;
};

// One backend. Bit kernels must agree exactly between backends; the float
// kernel must agree to ~1e-9 relative (vector exp/log differ from libm in
// the last ulp).
struct Ops {
  const char* name;
  // dst |= src over nwords words.
  void (*or_rows)(std::uint64_t* dst, const std::uint64_t* src, int nwords);
  // dst &= ~mask over nwords words.
  void (*andnot_rows)(std::uint64_t* dst, const std::uint64_t* mask, int nwords);
  std::uint64_t (*popcount_words)(const std::uint64_t* w, std::size_t nwords);
  // Sum over columns j with keep bit set of
  //   ln f(y_j; mean(x_j,u_j)) - ln g(y_j; u_j)
  // in nats, where g is the (1-q, q) mixture over the x hypotheses.
  double (*mi_row_terms)(const double* y, const std::uint64_t* xbits,
                         const std::uint64_t* ubits, const std::uint64_t* keep,
                         int n, const MiRowArgs& args);
};

enum class Backend { autodetect, scalar, avx2 };

const Ops& scalar_ops();
bool avx2_supported();

// Active backend: RERAM_KERNELS={scalar,avx2} wins, else AVX2 when the CPU
// has it, else scalar.
const Ops& active_ops();
void set_backend(Backend b);
Backend active_backend();

#if defined(RERAM_HAVE_AVX2)
const Ops& avx2_ops();
#endif

}  // namespace reram::kernels
