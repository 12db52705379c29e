#include "reram/kernels.hpp"

#if defined(RERAM_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>
#include <cstdint>

namespace reram::kernels {

namespace {

void or_rows_avx2(std::uint64_t* dst, const std::uint64_t* src, int nwords) {
  int i = 0;
  for (; i + 4 <= nwords; i += 4) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<__m256i*>(dst + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                        _mm256_or_si256(a, b));
  }
  for (; i < nwords; ++i) dst[i] |= src[i];
}

void andnot_rows_avx2(std::uint64_t* dst, const std::uint64_t* mask,
                      int nwords) {
  int i = 0;
  for (; i + 4 <= nwords; i += 4) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<__m256i*>(dst + i));
    __m256i m = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mask + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                        _mm256_andnot_si256(m, a));
  }
  for (; i < nwords; ++i) dst[i] &= ~mask[i];
}

// Mula's nibble-lookup popcount, 4 packed u64 partial sums per step.
std::uint64_t popcount_words_avx2(const std::uint64_t* w, std::size_t nwords) {
  const __m256i lookup =
      _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1,
                       2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= nwords; i += 4) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(w + i));
    __m256i lo = _mm256_and_si256(v, low_mask);
    __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo),
                                  _mm256_shuffle_epi8(lookup, hi));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, _mm256_setzero_si256()));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < nwords; ++i) s += static_cast<std::uint64_t>(__builtin_popcountll(w[i]));
  return s;
}

// ---- vector math ------------------------------------------------------

// exp for x in [-709, 0]; smaller inputs flush to 0. Cody-Waite reduction
// plus the Cephes rational approximation.
inline __m256d exp_pd(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d underflow = _mm256_set1_pd(-708.0);

  __m256d xc = _mm256_max_pd(x, underflow);
  __m256d n = _mm256_round_pd(_mm256_mul_pd(xc, log2e),
                              _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, c1, xc);
  r = _mm256_fnmadd_pd(n, c2, r);
  __m256d z = _mm256_mul_pd(r, r);

  __m256d p = _mm256_set1_pd(1.26177193074810590878e-4);
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(3.02994407707441961300e-2));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(9.99999999999999999910e-1));
  p = _mm256_mul_pd(p, r);

  __m256d q = _mm256_set1_pd(3.00198505138664455042e-6);
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(2.52448340349684104192e-3));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(2.27265548208155028766e-1));
  q = _mm256_fmadd_pd(q, z, _mm256_set1_pd(2.00000000000000000005e0));

  __m256d e = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  e = _mm256_fmadd_pd(e, _mm256_set1_pd(2.0), one);

  // scale by 2^n through the exponent field; n in [-1022, 0] here
  __m128i ni = _mm256_cvtpd_epi32(n);
  __m256i nl = _mm256_cvtepi32_epi64(ni);
  __m256i bits = _mm256_slli_epi64(
      _mm256_add_epi64(nl, _mm256_set1_epi64x(1023)), 52);
  e = _mm256_mul_pd(e, _mm256_castsi256_pd(bits));

  __m256d zero_mask = _mm256_cmp_pd(x, underflow, _CMP_LT_OQ);
  return _mm256_andnot_pd(zero_mask, e);
}

// log(1 + w) for w in [0, 1], Cephes log on t = 1 + w in [1, 2].
inline __m256d log1p_pd(__m256d w) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d sqrt2 = _mm256_set1_pd(1.41421356237309504880);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);

  __m256d t = _mm256_add_pd(one, w);
  __m256d big = _mm256_cmp_pd(t, sqrt2, _CMP_GT_OQ);
  __m256d m = _mm256_blendv_pd(t, _mm256_mul_pd(t, half), big);
  __m256d e = _mm256_and_pd(big, one);

  __m256d x = _mm256_sub_pd(m, one);
  __m256d z = _mm256_mul_pd(x, x);

  __m256d p = _mm256_set1_pd(1.01875663804580931796e-4);
  p = _mm256_fmadd_pd(p, x, _mm256_set1_pd(4.97494994976747001425e-1));
  p = _mm256_fmadd_pd(p, x, _mm256_set1_pd(4.70579119878881725854e0));
  p = _mm256_fmadd_pd(p, x, _mm256_set1_pd(1.44989225341610930846e1));
  p = _mm256_fmadd_pd(p, x, _mm256_set1_pd(1.79368678507819816313e1));
  p = _mm256_fmadd_pd(p, x, _mm256_set1_pd(7.70838733755885391666e0));

  __m256d q = _mm256_add_pd(x, _mm256_set1_pd(1.12873587189167450590e1));
  q = _mm256_fmadd_pd(q, x, _mm256_set1_pd(4.52279145837532221105e1));
  q = _mm256_fmadd_pd(q, x, _mm256_set1_pd(8.29875266912776603211e1));
  q = _mm256_fmadd_pd(q, x, _mm256_set1_pd(7.11544750618563894466e1));
  q = _mm256_fmadd_pd(q, x, _mm256_set1_pd(2.31251620126765340583e1));

  __m256d y = _mm256_mul_pd(_mm256_mul_pd(x, z), _mm256_div_pd(p, q));
  y = _mm256_fmadd_pd(e, ln2_lo, y);
  y = _mm256_fnmadd_pd(half, z, y);
  __m256d r = _mm256_add_pd(x, y);
  return _mm256_fmadd_pd(e, ln2_hi, r);
}

inline __m256d bit_mask_pd(std::uint64_t word, int shift) {
  const __m256i sel = _mm256_setr_epi64x(1, 2, 4, 8);
  __m256i b = _mm256_set1_epi64x(static_cast<long long>((word >> shift) & 0xF));
  return _mm256_castsi256_pd(
      _mm256_cmpeq_epi64(_mm256_and_si256(b, sel), sel));
}

double mi_row_terms_avx2(const double* y, const std::uint64_t* xbits,
                         const std::uint64_t* ubits, const std::uint64_t* keep,
                         int n, const MiRowArgs& a) {
  const __m256d l00 = _mm256_set1_pd(a.level_x0_u0);
  const __m256d l01 = _mm256_set1_pd(a.level_x0_u1);
  const __m256d l1v = _mm256_set1_pd(a.level_x1);
  const __m256d inv = _mm256_set1_pd(a.inv_two_sigma_sq);
  const __m256d lw0 = _mm256_set1_pd(a.log_w0);
  const __m256d lw1 = _mm256_set1_pd(a.log_w1);

  __m256d acc = _mm256_setzero_pd();
  double tail = 0.0;
  int nw = (n + 63) / 64;
  for (int wi = 0; wi < nw; ++wi) {
    std::uint64_t kw = keep[wi];
    if (kw == 0) continue;
    std::uint64_t xw = xbits[wi];
    std::uint64_t uw = ubits[wi];
    int base = wi * 64;
    int limit = n - base < 64 ? n - base : 64;
    int quads = limit & ~3;
    for (int j = 0; j < quads; j += 4) {
      if (((kw >> j) & 0xF) == 0) continue;
      __m256d yv = _mm256_loadu_pd(y + base + j);
      __m256d xm = bit_mask_pd(xw, j);
      __m256d um = bit_mask_pd(uw, j);
      __m256d km = bit_mask_pd(kw, j);
      __m256d mu0 = _mm256_blendv_pd(l00, l01, um);
      __m256d d0 = _mm256_sub_pd(yv, mu0);
      __m256d d1 = _mm256_sub_pd(yv, l1v);
      __m256d t0 = _mm256_mul_pd(_mm256_mul_pd(d0, d0), inv);
      __m256d t1 = _mm256_mul_pd(_mm256_mul_pd(d1, d1), inv);
      __m256d g0 = _mm256_sub_pd(lw0, t0);
      __m256d g1 = _mm256_sub_pd(lw1, t1);
      __m256d num = _mm256_blendv_pd(
          _mm256_sub_pd(_mm256_setzero_pd(), t0),
          _mm256_sub_pd(_mm256_setzero_pd(), t1), xm);
      __m256d hi = _mm256_max_pd(g0, g1);
      __m256d lo = _mm256_min_pd(g0, g1);
      __m256d lse =
          _mm256_add_pd(hi, log1p_pd(exp_pd(_mm256_sub_pd(lo, hi))));
      __m256d term = _mm256_and_pd(_mm256_sub_pd(num, lse), km);
      acc = _mm256_add_pd(acc, term);
    }
    for (int j = quads; j < limit; ++j) {
      if (!((kw >> j) & 1u)) continue;
      bool x = (xw >> j) & 1u;
      bool u = (uw >> j) & 1u;
      double yj = y[base + j];
      double mu0 = u ? a.level_x0_u1 : a.level_x0_u0;
      double d0 = yj - mu0;
      double d1 = yj - a.level_x1;
      double t0 = d0 * d0 * a.inv_two_sigma_sq;
      double t1 = d1 * d1 * a.inv_two_sigma_sq;
      double g0 = a.log_w0 - t0;
      double g1 = a.log_w1 - t1;
      double hi = g0 > g1 ? g0 : g1;
      double lo = g0 > g1 ? g1 : g0;
      tail += (x ? -t1 : -t0) - hi - std::log1p(std::exp(lo - hi));
    }
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3] + tail;
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops{"avx2", or_rows_avx2, andnot_rows_avx2,
                       popcount_words_avx2, mi_row_terms_avx2};
  return ops;
}

}  // namespace reram::kernels

#endif  // RERAM_HAVE_AVX2
