#include "jacobi_mfun/boundary.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "jacobi_mfun/errors.hpp"
#include "jacobi_mfun/specfun.hpp"

namespace jacobi {

namespace {

using specfun::digamma_over_gamma;
using specfun::gamma;
using specfun::rgamma;

bool is_int(double v) { return std::abs(v - std::round(v)) < 1e-12; }

// (2 gamma_E + psi(u) + psi(v)) / (Gamma(u) Gamma(v)), entire in (u, v).
cplx psi_pair(cplx u, cplx v) {
  return digamma_over_gamma(u) * rgamma(v) + rgamma(u) * digamma_over_gamma(v) +
         2.0 * kEulerGamma * rgamma(u) * rgamma(v);
}

// a_{mu,nu,s} = (1 + mu + nu + s)/2.
cplx hyp_a(double mu, double nu, cplx s) { return 0.5 * (1.0 + mu + nu + s); }

// 1/(Gamma(a_{mu,nu,s}) Gamma(a_{mu,nu,-s})).
cplx rg_pair(double mu, double nu, cplx s) { return rgamma(hyp_a(mu, nu, s)) * rgamma(hyp_a(mu, nu, -s)); }
cplx psi_pair_s(double mu, double nu, cplx s) { return psi_pair(hyp_a(mu, nu, s), hyp_a(mu, nu, -s)); }

void require_window(double v, const char* what) {
  if (!(v > -1.0 && v < 1.0)) throw ParamError(std::string(what) + " must lie in (-1,1)");
}

// Antiderivative of xi^{-b-1} (1-xi)^{-a-1} without constant term.
cplx zero_energy_primitive(double b, double a, double xi) {
  if (b == 0.0) {
    double sum = std::log(xi);
    double coef = 1.0;  // (1+a)_n / n!
    double pw = 1.0;
    for (int n = 1; n < 100000; ++n) {
      coef *= (a + n) / n;
      pw *= xi;
      const double term = coef * pw / n;
      sum += term;
      if (std::abs(term) <= 1e-17 * std::abs(sum) && n > 3) return sum;
    }
    throw NonConvergence("zero-energy primitive did not converge");
  }
  return -std::pow(xi, -b) / b * specfun::hyp2f1_pair(-b, 1.0 + a, 1.0 - b, xi).f;
}

}  // namespace

double connection_determinant(const Params& prm) {
  connection_case(prm);
  const double a = prm.alpha, b = prm.beta;
  const double w_minus = b == 0.0 ? std::pow(2.0, a + 1.0) : -b * std::pow(2.0, a + b + 1.0);
  const double w_plus = a == 0.0 ? -std::pow(2.0, b + 1.0) : a * std::pow(2.0, a + b + 1.0);
  return w_minus / w_plus;
}

ConnectionCase connection_case(const Params& prm) {
  const double a = prm.alpha, b = prm.beta;
  if (a == 0.0 && b == 0.0) return ConnectionCase::IV;
  if (a == 0.0) {
    if (is_int(b)) throw ParamError("connection: integer beta is not covered");
    return ConnectionCase::II;
  }
  if (is_int(a)) throw DegenerateCase("connection: integer alpha makes a+b-c an integer");
  if (b == 0.0) return ConnectionCase::III;
  if (is_int(b)) throw ParamError("connection: integer beta is not covered");
  return ConnectionCase::I;
}

ConnectionMatrix connection_matrix(const Params& prm, cplx z) {
  const ConnectionCase tag = connection_case(prm);
  const HypParams hp = hyp_params(prm, z);
  const cplx a = hp.a, b = hp.b;
  const double al = prm.alpha, be = prm.beta;
  ConnectionMatrix cm{{}, tag};
  auto& c = cm.c;
  switch (tag) {
    case ConnectionCase::I: {
      const cplx gc = gamma(1.0 + be), g2c = gamma(1.0 - be);
      const cplx gs = gamma(-al), gms = gamma(al);
      c[0][0] = gc * gs * rgamma(1.0 + be - a) * rgamma(1.0 + be - b);
      c[0][1] = gc * gms * rgamma(a) * rgamma(b);
      c[1][0] = g2c * gs * rgamma(1.0 - a) * rgamma(1.0 - b);
      c[1][1] = g2c * gms * rgamma(a - be) * rgamma(b - be);
      break;
    }
    case ConnectionCase::II: {
      // The tabulated relation expresses the xi = 1 pair through the xi = 0
      // pair; invert it with the exact determinant.
      const cplx m00 = gamma(-be) * rgamma(a - be) * rgamma(b - be);
      const cplx m01 = gamma(be) * rgamma(a) * rgamma(b);
      const cplx m10 = -gamma(-be) * psi_pair(1.0 - a, 1.0 - b);
      const cplx m11 = -gamma(be) * psi_pair(a, b);
      const double det_c = connection_determinant(prm);
      c[0][0] = m11 * det_c;
      c[0][1] = -m01 * det_c;
      c[1][0] = -m10 * det_c;
      c[1][1] = m00 * det_c;
      break;
    }
    case ConnectionCase::III: {
      const cplx gs = gamma(-al), gms = gamma(al);
      c[0][0] = gs * rgamma(1.0 - a) * rgamma(1.0 - b);
      c[0][1] = gms * rgamma(a) * rgamma(b);
      c[1][0] = -gs * psi_pair(1.0 - a, 1.0 - b);
      c[1][1] = -gms * psi_pair(a, b);
      break;
    }
    case ConnectionCase::IV: {
      // sin(pi a)/pi = 1/(Gamma(a) Gamma(1-a)); the map is an involution.
      const cplx r = rgamma(a) * rgamma(b);
      if (r == 0.0) throw PoleError("connection: sin(pi a) vanishes");
      const cplx s = psi_pair(a, b);
      c[0][0] = -s;
      c[0][1] = -r;
      c[1][0] = (s * s - 1.0) / r;
      c[1][1] = s;
      break;
    }
  }
  return cm;
}

BoundaryData operator+(const BoundaryData& a, const BoundaryData& b) {
  return {a.g_m1 + b.g_m1, a.gp_m1 + b.gp_m1, a.g_p1 + b.g_p1, a.gp_p1 + b.gp_p1};
}
BoundaryData operator*(cplx c, const BoundaryData& a) { return {c * a.g_m1, c * a.gp_m1, c * a.g_p1, c * a.gp_p1}; }
BoundaryData conj(const BoundaryData& a) {
  return {std::conj(a.g_m1), std::conj(a.gp_m1), std::conj(a.g_p1), std::conj(a.gp_p1)};
}

EndpointTable bv_table_minus1(const Params& prm) {
  require_window(prm.beta, "beta");
  const double be = prm.beta;
  const double s = std::pow(2.0, prm.alpha + 1.0);
  if (be < 0.0) return {1.0, 0.0, 0.0, -be * s};
  if (be == 0.0) return {0.0, 1.0, -s, 0.0};
  return {0.0, 1.0, be * s, 0.0};
}

namespace {

// The +1 table; derivative entries are skipped when not wanted because the
// logarithmic one has poles where the values stay finite.
EndpointTable plus1_table(const Params& prm, cplx z, bool derivatives) {
  require_window(prm.alpha, "alpha");
  require_window(prm.beta, "beta");
  const double al = prm.alpha, be = prm.beta;
  const cplx s = sigma(prm, z);
  EndpointTable t;
  const double p1ab = std::pow(2.0, 1.0 + al + be);
  if (al < 0.0) {
    t.y1 = gamma(1.0 + be) * gamma(-al) * rg_pair(-al, be, s);
    t.y1p = p1ab * gamma(1.0 + al) * gamma(1.0 + be) * rg_pair(al, be, s);
  } else {
    t.y1 = -p1ab * gamma(1.0 + al) * gamma(1.0 + be) * rg_pair(al, be, s);
    if (al == 0.0)
      t.y1p = -gamma(1.0 + be) * psi_pair_s(0.0, be, s);
    else
      t.y1p = gamma(1.0 + be) * gamma(-al) * rg_pair(-al, be, s);
  }
  if (be != 0.0) {
    const double pmb = std::pow(2.0, -be);
    const double pa1 = std::pow(2.0, al + 1.0);
    if (al < 0.0) {
      t.y2 = pmb * gamma(1.0 - be) * gamma(-al) * rg_pair(-al, -be, s);
      t.y2p = pa1 * gamma(1.0 + al) * gamma(1.0 - be) * rg_pair(al, -be, s);
    } else {
      t.y2 = -pa1 * gamma(1.0 + al) * gamma(1.0 - be) * rg_pair(al, -be, s);
      if (al == 0.0)
        t.y2p = -pmb * gamma(1.0 - be) * psi_pair_s(0.0, -be, s);
      else
        t.y2p = pmb * gamma(1.0 - be) * gamma(-al) * rg_pair(-al, -be, s);
    }
  } else {
    const double pa1 = std::pow(2.0, al + 1.0);
    if (al < 0.0) {
      t.y2 = -gamma(-al) * psi_pair_s(-al, 0.0, s);
      t.y2p = -pa1 * gamma(1.0 + al) * psi_pair_s(al, 0.0, s);
    } else if (al == 0.0) {
      t.y2 = pa1 * psi_pair_s(0.0, 0.0, s);
      if (!derivatives) return t;
      const cplx r = rg_pair(0.0, 0.0, s);
      if (r == 0.0) throw PoleError("bv_table_plus1: Gamma pole in the logarithmic entry");
      const cplx ps = psi_pair_s(0.0, 0.0, s);
      t.y2p = (ps * ps - 1.0) / r;
    } else {
      t.y2 = pa1 * gamma(1.0 + al) * psi_pair_s(al, 0.0, s);
      t.y2p = -gamma(-al) * psi_pair_s(-al, 0.0, s);
    }
  }
  return t;
}

}  // namespace

EndpointTable bv_table_plus1(const Params& prm, cplx z) { return plus1_table(prm, z, true); }

std::array<cplx, 2> bv_values_plus1(const Params& prm, cplx z) {
  const EndpointTable t = plus1_table(prm, z, false);
  return {t.y1, t.y2};
}

std::pair<BoundaryData, BoundaryData> solution_bv(const Params& prm, cplx z) {
  const EndpointTable m = bv_table_minus1(prm);
  const EndpointTable p = bv_table_plus1(prm, z);
  return {{m.y1, m.y1p, p.y1, p.y1p}, {m.y2, m.y2p, p.y2, p.y2p}};
}

cplx boundary_wronskian(cplx f, cplx fp, cplx g, cplx gp) { return f * gp - fp * g; }

SolutionValue zero_energy_second(const Params& prm, Endpoint e, const Point& pt) {
  const double scale = std::pow(2.0, -prm.alpha - prm.beta - 1.0);
  if (e == Endpoint::Minus) return {scale * zero_energy_primitive(prm.beta, prm.alpha, 0.5 * pt.dist_minus), 1.0};
  return {-scale * zero_energy_primitive(prm.alpha, prm.beta, 0.5 * pt.dist_plus), 1.0};
}

std::pair<cplx, cplx> generalized_bv_at(const Params& prm, const Evaluable& g, Endpoint e) {
  const double ex = e == Endpoint::Minus ? prm.beta : prm.alpha;
  if (!(ex > -1.0 && ex < 1.0)) throw ParamError("generalized_bv: endpoint is in the limit point case");
  constexpr int kFirst = 4, kLast = 26;
  std::vector<double> s;
  std::vector<cplx> xs, ys;
  for (int k = kFirst; k <= kLast; ++k) {
    const double t = std::ldexp(1.0, -k);
    const Point pt = e == Endpoint::Minus ? Point::near_minus(t) : Point::near_plus(t);
    const SolutionValue v = g(pt);
    const cplx pz = zero_energy_second(prm, e, pt).y;
    s.push_back(t);
    xs.push_back(v.y - pz * v.yq);
    ys.push_back(v.yq);
  }
  // Correction exponents: j, j -+ ex for j = 1..3 (positive, deduplicated);
  // logarithms join them when the exponents collide at ex = 0.
  std::vector<double> powers;
  for (int j = 1; j <= 3; ++j) {
    for (double p : {double(j), j - ex, j + ex}) {
      if (p <= 0.0) continue;
      if (std::none_of(powers.begin(), powers.end(), [&](double q) { return std::abs(p - q) < 1e-9; }))
        powers.push_back(p);
    }
  }
  const int logs = ex == 0.0 ? 3 : 1;
  const int ncol = 1 + int(powers.size()) * logs;
  auto fit = [&](int rows) {
    Eigen::MatrixXd a(rows, ncol);
    for (int i = 0; i < rows; ++i) {
      const double ls = std::log(s[i]);
      int col = 0;
      a(i, col++) = 1.0;
      for (double p : powers) {
        const double base = std::pow(s[i], p);
        a(i, col++) = base;
        if (logs == 3) {
          a(i, col++) = base * ls;
          a(i, col++) = base * ls * ls;
        }
      }
    }
    const Eigen::RowVectorXd scale = a.cwiseAbs().colwise().maxCoeff();
    for (int j = 0; j < ncol; ++j) a.col(j) /= scale(j);
    Eigen::MatrixXcd rhs(rows, 2);
    for (int i = 0; i < rows; ++i) {
      rhs(i, 0) = xs[i];
      rhs(i, 1) = ys[i];
    }
    const Eigen::MatrixXcd sol = a.cast<cplx>().colPivHouseholderQr().solve(rhs);
    return std::pair<cplx, cplx>{sol(0, 0) / scale(0), sol(0, 1) / scale(0)};
  };
  const auto full = fit(int(s.size()));
  const auto part = fit(int(s.size()) - 2);
  const double mag = std::max({1.0, std::abs(full.first), std::abs(full.second)});
  if (std::abs(full.first - part.first) > 1e-5 * mag || std::abs(full.second - part.second) > 1e-5 * mag)
    throw NonConvergence("generalized_bv: extrapolants do not stabilize");
  if (ex < 0.0) return full;
  return {-full.second, full.first};
}

BoundaryData generalized_bv(const Params& prm, const Evaluable& g) {
  const auto m = generalized_bv_at(prm, g, Endpoint::Minus);
  const auto p = generalized_bv_at(prm, g, Endpoint::Plus);
  return {m.first, m.second, p.first, p.second};
}

PhiThetaCoeffs phi_theta_coeffs(const Params& prm) {
  require_window(prm.beta, "beta");
  const double be = prm.beta;
  const double h = std::pow(2.0, -prm.alpha - 1.0);
  if (be < 0.0) return {{0.0, -h / be}, {1.0, 0.0}};
  if (be == 0.0) return {{1.0, 0.0}, {0.0, -h}};
  return {{1.0, 0.0}, {0.0, h / be}};
}

PhiTheta phi_theta(const Params& prm, cplx z, const Point& pt) {
  const PhiThetaCoeffs c = phi_theta_coeffs(prm);
  const SolutionPair y = eval_pair(prm, Endpoint::Minus, z, pt);
  return {c.phi[0] * y.first + c.phi[1] * y.second, c.theta[0] * y.first + c.theta[1] * y.second};
}

PhiTheta phi_theta(const Params& prm, cplx z, double x) {
  if (!(x > -1.0 && x < 1.0)) throw DomainError("phi_theta: x must lie in (-1,1)");
  return phi_theta(prm, z, Point::at(x));
}

}  // namespace jacobi
