#include "jacobi_mfun/mweyl.hpp"

#include <cmath>

#include "jacobi_mfun/errors.hpp"
#include "jacobi_mfun/solutions.hpp"
#include "jacobi_mfun/specfun.hpp"

namespace jacobi {

namespace {

cplx hyp_a(double mu, double nu, cplx s) { return 0.5 * (1.0 + mu + nu + s); }

// Gamma(u+)Gamma(u-) / (Gamma(w+)Gamma(w-)) with u = a_{num}(+-s), w = a_{den}(+-s).
cplx gamma_ratio(double nmu, double nnu, double dmu, double dnu, cplx s) {
  const cplx u1 = hyp_a(nmu, nnu, s), u2 = hyp_a(nmu, nnu, -s);
  const cplx w1 = hyp_a(dmu, dnu, s), w2 = hyp_a(dmu, dnu, -s);
  if (specfun::is_nonpositive_integer(u1) || specfun::is_nonpositive_integer(u2))
    throw SpectrumPole("m_weyl: z is a Friedrichs eigenvalue");
  if (specfun::is_nonpositive_integer(w1) || specfun::is_nonpositive_integer(w2)) return 0.0;
  using specfun::log_gamma;
  return std::exp(log_gamma(u1) + log_gamma(u2) - log_gamma(w1) - log_gamma(w2));
}

cplx digamma_sum(double mu, cplx s) {
  try {
    return 2.0 * kEulerGamma + specfun::digamma(hyp_a(mu, 0.0, s)) + specfun::digamma(hyp_a(mu, 0.0, -s));
  } catch (const PoleError&) {
    throw SpectrumPole("m_weyl: z is a Friedrichs eigenvalue");
  }
}

Params reflect(const Params& prm) { return {prm.beta, prm.alpha}; }

Point reflect(const Point& pt) { return {-pt.x, pt.dist_plus, pt.dist_minus}; }

}  // namespace

cplx m_weyl(const Params& prm, cplx z) {
  const double a = prm.alpha, b = prm.beta;
  const cplx s = sigma(prm, z);
  using specfun::gamma;
  switch (regime(prm)) {
    case Regime::I:
      return std::pow(2.0, 1.0 + a + b) * b * gamma(1.0 + b) / gamma(1.0 - b) * gamma_ratio(a, -b, a, b, s);
    case Regime::II: return -std::pow(2.0, -a - 1.0) * digamma_sum(a, s);
    case Regime::III:
      return -std::pow(2.0, -1.0 - a - b) / b * gamma(1.0 - b) / gamma(1.0 + b) * gamma_ratio(a, b, a, -b, s);
    case Regime::IV:
      return std::pow(2.0, 1.0 + a + b) * b * gamma(1.0 + b) / gamma(1.0 - b) * gamma_ratio(-a, -b, -a, b, s);
    case Regime::V: return -std::pow(2.0, -a - 1.0) * digamma_sum(-a, s);
    case Regime::VI:
      return -std::pow(2.0, -1.0 - a - b) / b * gamma(1.0 - b) / gamma(1.0 + b) * gamma_ratio(-a, b, -a, -b, s);
    case Regime::MirroredOneLC: return m_weyl(reflect(prm), z);
    default: throw ParamError("m_weyl: needs exactly one limit point endpoint");
  }
}

SolutionValue weyl_solution(const Params& prm, cplx z, const Point& pt) {
  const Regime rg = regime(prm);
  if (rg == Regime::MirroredOneLC) {
    const SolutionValue v = weyl_solution(reflect(prm), z, reflect(pt));
    return {v.y, -v.yq};
  }
  const cplx m = m_weyl(prm, z);
  auto left = [&](const Point& q) {
    const PhiTheta pt2 = phi_theta(prm, z, q);
    return pt2.theta + m * pt2.phi;
  };
  if (pt.dist_minus <= 1.0) return left(pt);
  // Past the midpoint the combination loses accuracy; use the principal
  // solution at +1, scaled to agree at x = 0.
  const SolutionId pid{Endpoint::Plus, prm.alpha >= 1.0 ? 1 : 2, false};
  const Point mid = Point::at(0.0);
  const SolutionValue at_mid = left(mid);
  const SolutionValue pr_mid = eval_solution(pid, prm, z, mid);
  const cplx kappa = (at_mid.y * std::conj(pr_mid.y) + at_mid.yq * std::conj(pr_mid.yq)) /
                     (std::norm(pr_mid.y) + std::norm(pr_mid.yq));
  return kappa * eval_solution(pid, prm, z, pt);
}

SolutionValue weyl_solution(const Params& prm, cplx z, double x) {
  if (!(x > -1.0 && x < 1.0)) throw DomainError("weyl_solution: x must lie in (-1,1)");
  return weyl_solution(prm, z, Point::at(x));
}

UData u_data(const Params& prm, cplx z) {
  if (regime(prm) != Regime::TwoLC) throw ParamError("u1_u2: alpha and beta must lie in (-1,1)");
  std::pair<BoundaryData, BoundaryData> bv;
  try {
    bv = solution_bv(prm, z);
  } catch (const SpectrumPole&) {
    throw;
  } catch (const PoleError&) {
    // the log-case entry at +1 has its Gamma poles exactly on the spectrum
    throw SpectrumPole("u1_u2: z is a Friedrichs eigenvalue");
  }
  const auto& [y1, y2] = bv;
  const cplx det = y1.g_m1 * y2.g_p1 - y2.g_m1 * y1.g_p1;
  const double scale = std::abs(y1.g_m1 * y2.g_p1) + std::abs(y2.g_m1 * y1.g_p1);
  if (det == 0.0 || std::abs(det) <= 1e-14 * scale) throw SpectrumPole("u1_u2: z is a Friedrichs eigenvalue");
  UData d;
  // Solve [[y1(-1), y2(-1)], [y1(1), y2(1)]] c = rhs.
  d.u1 = {-y2.g_m1 / det, y1.g_m1 / det};
  d.u2 = {y2.g_p1 / det, -y1.g_p1 / det};
  d.bv1 = d.u1[0] * y1 + d.u1[1] * y2;
  d.bv2 = d.u2[0] * y1 + d.u2[1] * y2;
  return d;
}

U1U2 u1_u2(const Params& prm, cplx z, const Point& pt) {
  const UData d = u_data(prm, z);
  const SolutionPair y = eval_pair(prm, Endpoint::Minus, z, pt);
  return {d.u1[0] * y.first + d.u1[1] * y.second, d.u2[0] * y.first + d.u2[1] * y.second};
}

U1U2 u1_u2(const Params& prm, cplx z, double x) {
  if (!(x > -1.0 && x < 1.0)) throw DomainError("u1_u2: x must lie in (-1,1)");
  return u1_u2(prm, z, Point::at(x));
}

cplx friedrichs_characteristic(const Params& prm, cplx z) {
  if (regime(prm) != Regime::TwoLC) throw ParamError("friedrichs_characteristic: alpha and beta must lie in (-1,1)");
  const PhiThetaCoeffs c = phi_theta_coeffs(prm);
  const auto t = bv_values_plus1(prm, z);
  return c.phi[0] * t[0] + c.phi[1] * t[1];
}

std::vector<double> friedrichs_spectrum(const Params& prm, int n_max) {
  if (n_max < 0) throw ParamError("friedrichs_spectrum: n_max must be non-negative");
  const double a = prm.alpha, b = prm.beta;
  const Regime rg = regime(prm);
  if (rg == Regime::MirroredOneLC) return friedrichs_spectrum(reflect(prm), n_max);
  std::vector<double> out;
  for (int k = 0; k <= n_max; ++k) {
    const double n = k;
    switch (rg) {
      case Regime::I: out.push_back((n - b) * (n + 1.0 + a)); break;
      case Regime::II: out.push_back(n * (n + 1.0 + a)); break;
      case Regime::III: out.push_back(n * (n + 1.0 + a + b)); break;
      case Regime::IV: out.push_back((n - a - b) * (n + 1.0)); break;
      case Regime::V: out.push_back((n - a) * (n + 1.0)); break;
      case Regime::VI: out.push_back((n - a) * (n + 1.0 + b)); break;
      case Regime::TwoLC:
        if (a < 0.0 || b < 0.0)
          throw ParamError("friedrichs_spectrum: no closed form for negative exponents; use a root search");
        out.push_back(n * (n + 1.0 + a + b));
        break;
      default: throw ParamError("friedrichs_spectrum: both endpoints are limit point");
    }
  }
  return out;
}

SolutionValue zero_energy_solution(const Params& prm, const Point& pt) {
  const Point mid = Point::at(0.0);
  const Endpoint e = pt.dist_minus <= 1.0 ? Endpoint::Minus : Endpoint::Plus;
  const cplx base = zero_energy_second(prm, e, mid).y;
  return {zero_energy_second(prm, e, pt).y - base, 1.0};
}

}  // namespace jacobi
