#include "reram/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace reram {

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;
constexpr double kHalfLn2PiE = 1.4189385332046727417803297364056;  // ln sqrt(2 pi e)
constexpr double kHalfLn2Pi = 0.91893853320467274178032973640562;  // ln sqrt(2 pi)

struct MixComp {
  double mean = 0.0;
  double log_w = 0.0;
};

// Differential entropy in nats of sum_i w_i N(mean_i, 1). Integrates
// -g ln g piecewise between the component means so no mode can be missed
// when means are far apart; each piece gets an equal share of tol.
double mixture_entropy_nats(std::vector<MixComp> comps,
                            const QuadratureOptions& opt) {
  if (comps.empty())
    throw std::invalid_argument("mixture_entropy_nats: no components");
  auto log_g = [&comps](double y) {
    double hi = -HUGE_VAL;
    for (const MixComp& c : comps) {
      double d = y - c.mean;
      double l = c.log_w - 0.5 * d * d;
      if (l > hi) hi = l;
    }
    double s = 0.0;
    for (const MixComp& c : comps) {
      double d = y - c.mean;
      s += std::exp(c.log_w - 0.5 * d * d - hi);
    }
    return hi + std::log(s) - kHalfLn2Pi;
  };
  auto integrand = [&log_g](double y) {
    double lg = log_g(y);
    return -lg * std::exp(lg);
  };

  std::sort(comps.begin(), comps.end(),
            [](const MixComp& a, const MixComp& b) { return a.mean < b.mean; });
  std::vector<double> cuts;
  cuts.push_back(comps.front().mean - opt.truncation_sigmas);
  for (const MixComp& c : comps)
    if (c.mean > cuts.back()) cuts.push_back(c.mean);
  double top = comps.back().mean + opt.truncation_sigmas;
  if (top > cuts.back()) cuts.push_back(top);

  QuadratureOptions piece = opt;
  piece.tol = opt.tol / static_cast<double>(cuts.size() - 1);
  double h = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    h += adaptive_simpson(integrand, cuts[i], cuts[i + 1], piece);
  return h;
}

double choose(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

void SfDistribution::validate() const {
  if (kmax < 0 || p.size() != static_cast<std::size_t>(kmax) + 1)
    throw std::invalid_argument("SfDistribution: p must have kmax+1 entries");
  double s = 0.0;
  for (double w : p) {
    if (!(w >= 0.0))
      throw std::invalid_argument("SfDistribution: negative weight");
    s += w;
  }
  if (std::abs(s - 1.0) > 1e-12)
    throw std::invalid_argument("SfDistribution: weights must sum to 1");
}

double SfDistribution::mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) m += static_cast<double>(k) * p[k];
  return m;
}

SfDistribution truncated_binomial(std::uint64_t n, double mu, int kmax,
                                  TruncationMode mode) {
  if (kmax < 0) throw std::invalid_argument("truncated_binomial: kmax < 0");
  if (static_cast<std::uint64_t>(kmax) > n)
    throw std::invalid_argument("truncated_binomial: kmax > n");
  if (!(mu >= 0.0 && mu <= 1.0))
    throw std::invalid_argument("truncated_binomial: mu outside [0,1]");

  SfDistribution dist;
  dist.kmax = kmax;
  dist.p.assign(static_cast<std::size_t>(kmax) + 1, 0.0);
  if (mu == 0.0) {
    dist.p[0] = 1.0;
    return dist;
  }
  if (mu == 1.0) {
    if (mode == TruncationMode::condition && static_cast<std::uint64_t>(kmax) != n)
      throw std::invalid_argument(
          "truncated_binomial: conditioning on zero-mass support");
    dist.p[kmax] = 1.0;
    return dist;
  }

  double nd = static_cast<double>(n);
  double lmu = std::log(mu);
  double l1mu = std::log1p(-mu);
  double partial = 0.0;
  for (int k = 0; k <= kmax; ++k) {
    double kd = static_cast<double>(k);
    double lg = std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) -
                std::lgamma(nd - kd + 1.0) + kd * lmu + (nd - kd) * l1mu;
    dist.p[k] = std::exp(lg);
    partial += dist.p[k];
  }
  if (mode == TruncationMode::tail_lump) {
    double below = partial - dist.p[kmax];
    dist.p[kmax] = 1.0 - below;  // pmf(kmax) plus everything above
  } else {
    if (!(partial > 0.0))
      throw std::invalid_argument(
          "truncated_binomial: conditioning on zero-mass support");
    for (double& w : dist.p) w /= partial;
  }
  dist.validate();
  return dist;
}

double binary_entropy_bits(double q) {
  if (q <= 0.0 || q >= 1.0) return 0.0;
  return -(q * std::log(q) + (1.0 - q) * std::log1p(-q)) / kLn2;
}

double binary_awgn_mi(double q, double gamma, const QuadratureOptions& quad) {
  if (!(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("binary_awgn_mi: q outside [0,1]");
  if (!(gamma >= 0.0))
    throw std::invalid_argument("binary_awgn_mi: gamma < 0");
  if (q == 0.0 || q == 1.0 || gamma == 0.0) return 0.0;
  std::vector<MixComp> comps{{gamma, std::log1p(-q)}, {-gamma, std::log(q)}};
  double h = mixture_entropy_nats(std::move(comps), quad);
  return (h - kHalfLn2PiE) / kLn2;
}

std::vector<SpectrumAtom> mi_spectrum(double q, const ResistiveParams& params,
                                      const SfDistribution& dist,
                                      const QuadratureOptions& quad) {
  params.validate();
  dist.validate();
  double c = binary_awgn_mi(q, params.gamma(), quad);
  double cp = binary_awgn_mi(q, params.gamma_prime(), quad);
  double span = c - cp;
  double q2 = q * q;
  int kmax = dist.kmax;
  std::vector<SpectrumAtom> atoms(static_cast<std::size_t>(kmax) + 1);
  for (int j = 0; j <= kmax; ++j) {
    double w = 0.0;
    for (int k = j; k <= kmax; ++k)
      w += dist.p[k] * choose(k, j) * std::pow(q, j) *
           std::pow(1.0 - q, k - j);
    atoms[j] = SpectrumAtom{j, cp + std::pow(1.0 - q2, j) * span, w};
  }
  return atoms;
}

double single_array_rate(double q, const ResistiveParams& params, int kmax,
                         const QuadratureOptions& quad) {
  if (kmax < 0) throw std::invalid_argument("single_array_rate: kmax < 0");
  params.validate();
  double c = binary_awgn_mi(q, params.gamma(), quad);
  double cp = binary_awgn_mi(q, params.gamma_prime(), quad);
  return cp + std::pow(1.0 - q * q, kmax) * (c - cp);
}

double across_array_rate(double q, const ResistiveParams& params,
                         const SfDistribution& dist,
                         const QuadratureOptions& quad) {
  params.validate();
  dist.validate();
  double c = binary_awgn_mi(q, params.gamma(), quad);
  double cp = binary_awgn_mi(q, params.gamma_prime(), quad);
  double q3 = q * q * q;
  double s = 0.0;
  for (int k = 0; k <= dist.kmax; ++k)
    s += dist.p[k] * std::pow(1.0 - q3, k);
  return cp + (c - cp) * s;
}

double tin_sp_probability(double q, const SfDistribution& dist,
                          TinVariant variant) {
  dist.validate();
  if (!(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("tin_sp_probability: q outside [0,1]");
  double q3 = q * q * q;
  switch (variant) {
    case TinVariant::ergodic: {
      double s = 0.0;
      for (int k = 0; k <= dist.kmax; ++k)
        s += dist.p[k] * std::pow(1.0 - q3, k);
      return 1.0 - s;
    }
    case TinVariant::worst_k:
      return 1.0 - std::pow(1.0 - q3, dist.kmax);
    case TinVariant::worst_active:
    default:
      return 1.0 - std::pow(1.0 - q * q, dist.kmax);
  }
}

double tin_rate(double q, const ResistiveParams& params, double sp_probability,
                const QuadratureOptions& quad) {
  params.validate();
  if (!(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("tin_rate: q outside [0,1]");
  if (!(sp_probability >= 0.0 && sp_probability <= 1.0))
    throw std::invalid_argument("tin_rate: sp_probability outside [0,1]");
  if (q == 0.0 || q == 1.0) return 0.0;
  double a = sp_probability;
  double m0 = params.r0 / params.sigma;
  double m0p = params.r0_prime() / params.sigma;
  double m1 = params.r1 / params.sigma;

  std::vector<MixComp> cond0;
  if (a < 1.0) cond0.push_back({m0, std::log1p(-a)});
  if (a > 0.0) cond0.push_back({m0p, std::log(a)});

  std::vector<MixComp> full;
  for (const MixComp& c : cond0)
    full.push_back({c.mean, c.log_w + std::log1p(-q)});
  full.push_back({m1, std::log(q)});

  double h_y = mixture_entropy_nats(std::move(full), quad);
  double h_y0 = cond0.size() == 1 ? kHalfLn2PiE
                                  : mixture_entropy_nats(std::move(cond0), quad);
  return (h_y - (1.0 - q) * h_y0 - q * kHalfLn2PiE) / kLn2;
}

OptimizeResult maximize_over_q(const std::function<double(double)>& fn,
                               double grid_step, double tol) {
  if (!(grid_step > 0.0 && grid_step < 0.5))
    throw std::invalid_argument("maximize_over_q: bad grid_step");
  if (!(tol > 0.0)) throw std::invalid_argument("maximize_over_q: bad tol");

  OptimizeResult res;
  double best = -HUGE_VAL;
  int steps = static_cast<int>(std::floor(1.0 / grid_step + 0.5));
  for (int i = 1; i < steps; ++i) {
    double qi = static_cast<double>(i) * grid_step;
    double v = fn(qi);
    if (v > best) {
      best = v;
      res.grid_q = qi;
    }
  }
  res.grid_value = best;

  double a = std::max(res.grid_q - grid_step, 0.0);
  double b = std::min(res.grid_q + grid_step, 1.0);
  const double gr = 0.61803398874989484820458683436564;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = fn(d);
    }
  }
  res.q_star = 0.5 * (a + b);
  res.value_star = fn(res.q_star);
  if (res.grid_value > res.value_star) {
    res.q_star = res.grid_q;
    res.value_star = res.grid_value;
  }
  return res;
}

}  // namespace reram
