#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace reram {

// Thrown when adaptive refinement hits max_depth before reaching tol.
// The CLI maps this to exit code 3.
class quadrature_error : public std::runtime_error {
 public:
  explicit quadrature_error(const std::string& what)
      : std::runtime_error(what) {}
};

struct QuadratureOptions {
  double tol = 1e-9;             // absolute tolerance on the integral
  int max_depth = 48;            // recursion limit per half interval
  double truncation_sigmas = 10.0;  // integration reach beyond extreme means
};

namespace detail {

template <typename F>
double simpson_recurse(F& f, double a, double b, double fa, double fm,
                       double fb, double whole, double tol, int depth,
                       int max_depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = f(lm);
  double frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double err = left + right - whole;
  if (std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
  if (depth >= max_depth)
    throw quadrature_error("adaptive Simpson: max depth " +
                           std::to_string(max_depth) +
                           " reached before tolerance");
  double half_tol = 0.5 * tol;
  return simpson_recurse(f, a, m, fa, flm, fm, left, half_tol, depth + 1,
                         max_depth) +
         simpson_recurse(f, m, b, fm, frm, fb, right, half_tol, depth + 1,
                         max_depth);
}

}  // namespace detail

// Adaptive Simpson with the standard (S_fine - S_coarse)/15 error estimate.
template <typename F>
double adaptive_simpson(F&& f, double a, double b,
                        const QuadratureOptions& opt = {}) {
  if (!(b > a)) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a);
  double fm = f(m);
  double fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_recurse(f, a, b, fa, fm, fb, whole, opt.tol, 0,
                                 opt.max_depth);
}

}  // namespace reram
