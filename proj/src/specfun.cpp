#include "jacobi_mfun/specfun.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "jacobi_mfun/errors.hpp"

namespace jacobi::specfun {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * kPi);

// Series stop: this many consecutive terms below kTailTol relative.
constexpr int kQuietTerms = 3;
constexpr double kTailTol = 1e-16;

// log Gamma for Re z >= 1/2.
cplx log_gamma_right(cplx z) {
  z -= 1.0;
  cplx acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z + double(i));
  const cplx t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(acc);
}

std::string show(cplx z) {
  return "(" + std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")";
}

bool quiet(cplx term, cplx sum) { return std::abs(term) <= kTailTol * std::abs(sum); }

double cancellation(double mass, cplx result) { return std::max(1.0, mass / std::max(std::abs(result), 1e-300)); }

}  // namespace

bool is_nonpositive_integer(cplx z) {
  if (z.real() > 0.5) return false;
  const double n = std::round(z.real());
  const double tol = 4.0 * 2.220446049250313e-16 * std::max(1.0, std::abs(n));
  return std::abs(z.imag()) <= tol && std::abs(z.real() - n) <= tol;
}

cplx sin_pi(cplx z) {
  const double n = std::round(z.real());
  const cplx w = z - n;
  const cplx s = std::sin(kPi * w);
  return (static_cast<long long>(n) % 2 == 0) ? s : -s;
}

cplx cos_pi(cplx z) {
  const double n = std::round(z.real());
  const cplx w = z - n;
  const cplx c = std::cos(kPi * w);
  return (static_cast<long long>(n) % 2 == 0) ? c : -c;
}

cplx log_gamma(cplx z) {
  if (is_nonpositive_integer(z)) throw PoleError("log_gamma: pole at " + show(z));
  if (z.real() >= 0.5) return log_gamma_right(z);
  return std::log(kPi) - std::log(sin_pi(z)) - log_gamma_right(1.0 - z);
}

cplx gamma(cplx z) {
  if (is_nonpositive_integer(z)) throw PoleError("gamma: pole at " + show(z));
  if (z.real() >= 0.5) return std::exp(log_gamma_right(z));
  return kPi / (sin_pi(z) * std::exp(log_gamma_right(1.0 - z)));
}

cplx rgamma(cplx z) {
  if (is_nonpositive_integer(z)) return 0.0;
  if (z.real() >= 0.5) return std::exp(-log_gamma_right(z));
  return sin_pi(z) * std::exp(log_gamma_right(1.0 - z)) / kPi;
}

cplx digamma(cplx z) {
  if (is_nonpositive_integer(z)) throw PoleError("digamma: pole at " + show(z));
  if (z.real() < 0.5) return digamma(1.0 - z) - kPi * cos_pi(z) / sin_pi(z);
  cplx acc = 0.0;
  while (std::abs(z) < 10.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  // Bernoulli numbers B_2 .. B_14 divided by 2k.
  static constexpr std::array<double, 7> kB = {1.0 / 12.0,   -1.0 / 120.0, 1.0 / 252.0,
                                               -1.0 / 240.0, 1.0 / 132.0,  -691.0 / 32760.0,
                                               1.0 / 12.0};
  const cplx inv2 = 1.0 / (z * z);
  cplx pw = inv2;
  cplx tail = 0.0;
  for (double b : kB) {
    tail += b * pw;
    pw *= inv2;
  }
  return acc + std::log(z) - 0.5 / z - tail;
}

cplx digamma_over_gamma(cplx z) {
  if (z.real() >= 0.5) return digamma(z) * rgamma(z);
  // psi(z)/Gamma(z) = psi(1-z)/Gamma(z) - cos(pi z) Gamma(1-z), both entire.
  return digamma(1.0 - z) * rgamma(z) - cos_pi(z) * gamma(1.0 - z);
}

cplx pochhammer(cplx z, int n) {
  cplx p = 1.0;
  for (int k = 0; k < n; ++k) p *= z + double(k);
  return p;
}

namespace {

// Maclaurin sum with its cancellation ratio.
Pair maclaurin(cplx a, cplx b, cplx c, double xi, int max_terms) {
  if (is_nonpositive_integer(c)) throw PoleError("hyp2f1: c is a non-positive integer");
  cplx term = 1.0;  // (a)_n (b)_n / ((c)_n n!) xi^n
  cplx f = 1.0;
  cplx df = 0.0;
  double peak = 1.0;
  int calm = 0;
  for (int n = 0; n < max_terms; ++n) {
    const cplx ratio = (a + double(n)) * (b + double(n)) / ((c + double(n)) * double(n + 1));
    if (ratio == 0.0) return {f, df, cancellation(peak, f)};  // terminating series
    const cplx dterm = term * ratio * double(n + 1);  // coefficient of xi^n in F'
    term *= ratio * xi;
    f += term;
    df += dterm;
    peak = std::max(peak, std::abs(term));
    if (quiet(term, f) && quiet(dterm, df)) {
      if (++calm >= kQuietTerms) return {f, df, cancellation(peak, f)};
    } else {
      calm = 0;
    }
  }
  throw NonConvergence("hyp2f1 series: no convergence in " + std::to_string(max_terms) + " terms");
}

// Beyond this argument the direct sum is only used when the continuation
// is unavailable.
constexpr double kDirectLimit = 0.9;

}  // namespace

Pair hyp2f1_series(cplx a, cplx b, cplx c, double xi, int max_terms) {
  return maclaurin(a, b, c, xi, max_terms);
}

Pair hyp2f1_pair(cplx a, cplx b, cplx c, double xi) {
  if (!(xi >= 0.0 && xi < 1.0)) throw DomainError("hyp2f1: xi must lie in [0,1)");
  const bool terminating = is_nonpositive_integer(a) || is_nonpositive_integer(b);
  if (xi <= 0.5 || terminating) return hyp2f1_series(a, b, c, xi, terminating ? kDefaultTerms : kExtendedTerms);
  if (is_nonpositive_integer(c)) throw PoleError("hyp2f1: c is a non-positive integer");
  const cplx s = c - a - b;
  const bool near_integer = std::abs(s - std::round(s.real())) < 1e-8;
  // Direct sum and its cancellation ratio.
  Pair direct{0.0, 0.0, std::numeric_limits<double>::infinity()};
  if (xi <= kDirectLimit || near_integer) {
    direct = maclaurin(a, b, c, xi, kExtendedTerms);
    if (near_integer || direct.cond < 1e2) return direct;
  }
  // Gauss continuation to 1 - xi.
  const double eta = 1.0 - xi;
  const cplx gc = gamma(c);
  const cplx k1 = gc * gamma(s) * rgamma(c - a) * rgamma(c - b);
  const cplx k2 = gc * gamma(-s) * rgamma(a) * rgamma(b);
  Pair out{0.0, 0.0};
  double mass = 0.0;
  if (k1 != 0.0) {
    const Pair w1 = hyp2f1_series(a, b, 1.0 - s, eta);
    out.f += k1 * w1.f;
    out.df -= k1 * w1.df;
    mass += std::abs(k1 * w1.f) * w1.cond;
  }
  if (k2 != 0.0) {
    const Pair w2 = hyp2f1_series(c - a, c - b, 1.0 + s, eta);
    const cplx pw = std::pow(cplx(eta), s);
    out.f += k2 * pw * w2.f;
    out.df -= k2 * (s * pw / eta * w2.f + pw * w2.df);
    mass += std::abs(k2 * pw * w2.f) * w2.cond;
  }
  out.cond = cancellation(mass, out.f);
  return direct.cond <= out.cond ? direct : out;
}

cplx hyp2f1(cplx a, cplx b, cplx c, double xi) { return hyp2f1_pair(a, b, c, xi).f; }

Pair hyp2f1_log_regular_part(cplx a, cplx b, double xi, int max_terms) {
  // Coefficients use d/da (a)_n instead of (a)_n [psi(a+n) - psi(a)] so the
  // sum stays finite when a or b is a non-positive integer.
  cplx pa = 1.0, pb = 1.0;  // (a)_n/n!, (b)_n/n!
  cplx da = 0.0, db = 0.0;  // d/da of (a)_n/n!, same for b
  double harmonic = 0.0;
  double xn = 1.0;
  cplx g = 0.0, dg = 0.0;
  double peak = 0.0;
  int calm = 0;
  for (int n = 0; n < max_terms; ++n) {
    const double np1 = n + 1.0;
    da = (da * (a + double(n)) + pa) / np1;
    db = (db * (b + double(n)) + pb) / np1;
    pa *= (a + double(n)) / np1;
    pb *= (b + double(n)) / np1;
    harmonic += 1.0 / np1;
    const cplx coef = da * pb + pa * db - 2.0 * harmonic * pa * pb;
    const cplx dterm = coef * np1 * xn;
    xn *= xi;
    const cplx term = coef * xn;
    g += term;
    dg += dterm;
    peak = std::max(peak, std::abs(term));
    if (quiet(term, g) && quiet(dterm, dg) && n > 2) {
      if (++calm >= kQuietTerms) return {g, dg, cancellation(peak, g)};
    } else {
      calm = 0;
    }
  }
  throw NonConvergence("hyp2f1_log: no convergence in " + std::to_string(max_terms) + " terms");
}

Pair hyp2f1_log_pair(cplx a, cplx b, double xi, int max_terms) {
  if (!(xi > 0.0 && xi < 1.0)) throw DomainError("hyp2f1_log: xi must lie in (0,1)");
  const int cap = xi <= 0.5 ? max_terms : std::max(max_terms, kExtendedTerms);
  const Pair f = hyp2f1_series(a, b, 1.0, xi, cap);
  const Pair g = hyp2f1_log_regular_part(a, b, xi, cap);
  const double lx = std::log(xi);
  const cplx val = f.f * lx + g.f;
  return {val, f.df * lx + f.f / xi + g.df,
          cancellation(std::abs(f.f * lx) * f.cond + std::abs(g.f) * g.cond, val)};
}

cplx hyp2f1_log(cplx a, cplx b, double xi) { return hyp2f1_log_pair(a, b, xi).f; }

}  // namespace jacobi::specfun
