#pragma once

#include "jacobi_mfun/types.hpp"

namespace jacobi::specfun {

inline constexpr int kDefaultTerms = 10000;
// Cap used when a series is summed past |xi| = 1/2 because no connection
// formula applies (integer exponent differences).
inline constexpr int kExtendedTerms = 400000;

// Value and first derivative (with respect to the series variable). cond
// is the cancellation ratio of the evaluation (largest summand over the
// result), so cond * 1e-16 estimates the relative rounding error.
struct Pair {
  cplx f;
  cplx df;
  double cond = 1.0;
};

// True when z lies (to rounding) on a non-positive integer.
bool is_nonpositive_integer(cplx z);

// Some branch of log Gamma(z); only meant for exponentiation.
cplx log_gamma(cplx z);
cplx gamma(cplx z);
// 1/Gamma(z), entire; exactly zero at the poles of Gamma.
cplx rgamma(cplx z);
cplx digamma(cplx z);
// psi(z)/Gamma(z), continued to the poles of Gamma (entire).
cplx digamma_over_gamma(cplx z);
cplx pochhammer(cplx z, int n);
// sin(pi z) with argument reduction, exact zeros at integers.
cplx sin_pi(cplx z);
cplx cos_pi(cplx z);

// Direct Maclaurin sum of F(a,b;c;xi) and d/dxi; no continuation.
Pair hyp2f1_series(cplx a, cplx b, cplx c, double xi, int max_terms = kDefaultTerms);

// F(a,b;c;xi) for xi in [0,1). For xi > 1/2 takes the better conditioned
// of the direct sum and the Gauss continuation to 1 - xi (the direct sum
// alone when c - a - b is an integer).
cplx hyp2f1(cplx a, cplx b, cplx c, double xi);
Pair hyp2f1_pair(cplx a, cplx b, cplx c, double xi);

// Logarithmic Frobenius solution at a regular singular point with c = 1:
// F(a,b;1;xi) ln xi + sum_{n>=1} (a)_n (b)_n/(n!)^2 xi^n
//   * [psi(a+n) - psi(a) + psi(b+n) - psi(b) - 2 H_n].
cplx hyp2f1_log(cplx a, cplx b, double xi);
Pair hyp2f1_log_pair(cplx a, cplx b, double xi, int max_terms = kDefaultTerms);

// Part of hyp2f1_log without the F ln(xi) term (analytic at 0).
Pair hyp2f1_log_regular_part(cplx a, cplx b, double xi, int max_terms = kDefaultTerms);

}  // namespace jacobi::specfun
