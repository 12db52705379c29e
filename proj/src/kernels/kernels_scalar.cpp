#include "reram/kernels.hpp"

#include <bit>
#include <cmath>

namespace reram::kernels {

namespace {

void or_rows_scalar(std::uint64_t* dst, const std::uint64_t* src, int nwords) {
  for (int i = 0; i < nwords; ++i) dst[i] |= src[i];
}

void andnot_rows_scalar(std::uint64_t* dst, const std::uint64_t* mask,
                        int nwords) {
  for (int i = 0; i < nwords; ++i) dst[i] &= ~mask[i];
}

std::uint64_t popcount_words_scalar(const std::uint64_t* w,
                                    std::size_t nwords) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < nwords; ++i) s += std::popcount(w[i]);
  return s;
}

double mi_row_terms_scalar(const double* y, const std::uint64_t* xbits,
                           const std::uint64_t* ubits,
                           const std::uint64_t* keep, int n,
                           const MiRowArgs& a) {
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    if (!((keep[j >> 6] >> (j & 63)) & 1u)) continue;
    bool x = (xbits[j >> 6] >> (j & 63)) & 1u;
    bool u = (ubits[j >> 6] >> (j & 63)) & 1u;
    double mu0 = u ? a.level_x0_u1 : a.level_x0_u0;
    double d0 = y[j] - mu0;
    double d1 = y[j] - a.level_x1;
    double t0 = d0 * d0 * a.inv_two_sigma_sq;
    double t1 = d1 * d1 * a.inv_two_sigma_sq;
    double l0 = a.log_w0 - t0;
    double l1 = a.log_w1 - t1;
    double num = x ? -t1 : -t0;
    double hi = l0 > l1 ? l0 : l1;
    double lo = l0 > l1 ? l1 : l0;
    sum += num - hi - std::log1p(std::exp(lo - hi));
  }
  return sum;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{"scalar", or_rows_scalar, andnot_rows_scalar,
                       popcount_words_scalar, mi_row_terms_scalar};
  return ops;
}

}  // namespace reram::kernels
