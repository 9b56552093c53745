#include "jacobi_mfun/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>

#include "jacobi_mfun/boundary.hpp"
#include "jacobi_mfun/errors.hpp"
#include "jacobi_mfun/mweyl.hpp"
#include "jacobi_mfun/solutions.hpp"
#include "jacobi_mfun/specfun.hpp"

namespace jacobi::oracle {

namespace {

const cplx kI{0.0, 1.0};

double to_u(const Point& pt) { return 0.5 * (std::log(pt.dist_minus) - std::log(pt.dist_plus)); }

Point from_u(double u) {
  const double dm = 2.0 / (1.0 + std::exp(-2.0 * u));
  const double dp = 2.0 / (1.0 + std::exp(2.0 * u));
  return {std::tanh(u), dm, dp};
}

using State = std::array<cplx, 2>;

State rhs(const Params& prm, cplx z, double u, const State& s) {
  const Point pt = from_u(u);
  const double r = std::pow(pt.dist_plus, prm.alpha) * std::pow(pt.dist_minus, prm.beta);
  return {s[1] / r, -pt.dist_minus * pt.dist_plus * z * r * s[0]};
}

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
  State out = y;
  for (const auto& [c, k] : terms) {
    out[0] += h * c * (*k)[0];
    out[1] += h * c * (*k)[1];
  }
  return out;
}

// Dormand-Prince 5(4) from u0 to u1.
State dopri(const Params& prm, cplx z, double u0, State y, double u1, double rtol) {
  if (u0 == u1) return y;
  const double dir = u1 > u0 ? 1.0 : -1.0;
  double u = u0;
  double h = dir * std::min(1e-2, std::abs(u1 - u0));
  int steps = 0;
  State k1 = rhs(prm, z, u, y);
  while (dir * (u1 - u) > 0.0) {
    if (++steps > 2000000) throw StepFailure("integrate_ivp: too many steps");
    if (dir * (u + h - u1) > 0.0) h = u1 - u;
    const State k2 = rhs(prm, z, u + h / 5.0, axpy(y, h, {{1.0 / 5.0, &k1}}));
    const State k3 = rhs(prm, z, u + 3.0 * h / 10.0, axpy(y, h, {{3.0 / 40.0, &k1}, {9.0 / 40.0, &k2}}));
    const State k4 =
        rhs(prm, z, u + 4.0 * h / 5.0, axpy(y, h, {{44.0 / 45.0, &k1}, {-56.0 / 15.0, &k2}, {32.0 / 9.0, &k3}}));
    const State k5 = rhs(prm, z, u + 8.0 * h / 9.0,
                         axpy(y, h,
                              {{19372.0 / 6561.0, &k1},
                               {-25360.0 / 2187.0, &k2},
                               {64448.0 / 6561.0, &k3},
                               {-212.0 / 729.0, &k4}}));
    const State k6 = rhs(prm, z, u + h,
                         axpy(y, h,
                              {{9017.0 / 3168.0, &k1},
                               {-355.0 / 33.0, &k2},
                               {46732.0 / 5247.0, &k3},
                               {49.0 / 176.0, &k4},
                               {-5103.0 / 18656.0, &k5}}));
    const State ynew = axpy(y, h,
                            {{35.0 / 384.0, &k1},
                             {500.0 / 1113.0, &k3},
                             {125.0 / 192.0, &k4},
                             {-2187.0 / 6784.0, &k5},
                             {11.0 / 84.0, &k6}});
    const State k7 = rhs(prm, z, u + h, ynew);
    const State err = axpy(State{0.0, 0.0}, h,
                           {{71.0 / 57600.0, &k1},
                            {-71.0 / 16695.0, &k3},
                            {71.0 / 1920.0, &k4},
                            {-17253.0 / 339200.0, &k5},
                            {22.0 / 525.0, &k6},
                            {-1.0 / 40.0, &k7}});
    const double big = std::max({std::abs(y[0]), std::abs(y[1]), std::abs(ynew[0]), std::abs(ynew[1])});
    double en = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double sc = rtol * std::max(std::abs(y[i]), std::abs(ynew[i])) + rtol * 1e-6 * big + 1e-300;
      en = std::max(en, std::abs(err[i]) / sc);
    }
    if (!std::isfinite(en)) throw StepFailure("integrate_ivp: non-finite state");
    if (en <= 1.0) {
      u += h;
      y = ynew;
      k1 = k7;
    }
    const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
    h *= fac;
    if (std::abs(h) < 1e-15 * std::max(1.0, std::abs(u))) throw StepFailure("integrate_ivp: step size underflow");
  }
  return y;
}

}  // namespace

SolutionValue integrate_ivp(const Params& prm, cplx z, const Point& from, const SolutionValue& init, const Point& to,
                            double rtol) {
  if (!(from.dist_minus > 0.0 && from.dist_plus > 0.0 && to.dist_minus > 0.0 && to.dist_plus > 0.0))
    throw StepFailure("integrate_ivp: endpoints must lie inside (-1,1)");
  const State out = dopri(prm, z, to_u(from), {init.y, init.yq}, to_u(to), rtol);
  return {out[0], out[1]};
}

SolutionValue integrate_ivp(const Params& prm, cplx z, double x0, const SolutionValue& init, double x1, double rtol) {
  if (!(x0 > -1.0 && x0 < 1.0 && x1 > -1.0 && x1 < 1.0)) throw StepFailure("integrate_ivp: x must lie in (-1,1)");
  return integrate_ivp(prm, z, Point::at(x0), init, Point::at(x1), rtol);
}

Quadrature gauss_jacobi(const Params& prm, int n) {
  const double a = prm.alpha, b = prm.beta;
  if (!(a > -1.0 && b > -1.0)) throw ParamError("gauss_jacobi: weight exponents must exceed -1");
  if (n < 1) throw ParamError("gauss_jacobi: need at least one node");
  Eigen::VectorXd diag(n), sub(std::max(n - 1, 1));
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    diag(k) = k == 0 ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    double v;
    if (k == 1)
      v = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
    else
      v = 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    sub(k - 1) = std::sqrt(v);
  }
  Quadrature q;
  const double mu0 = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                              std::lgamma(a + b + 2.0));
  if (n == 1) {
    q.nodes = {diag(0)};
    q.weights = {mu0};
    return q;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
  for (int k = 0; k < n; ++k) {
    q.nodes.push_back(es.eigenvalues()(k));
    const double v0 = es.eigenvectors()(0, k);
    q.weights.push_back(mu0 * v0 * v0);
  }
  return q;
}

cplx gauss_jacobi_inner(const Params& prm, const ScalarFn& f, const ScalarFn& g, int n_nodes) {
  const Quadrature q = gauss_jacobi(prm, n_nodes);
  cplx acc = 0.0;
  for (size_t k = 0; k < q.nodes.size(); ++k) acc += q.weights[k] * std::conj(f(q.nodes[k])) * g(q.nodes[k]);
  return acc;
}

GradedRule graded_rule(int per_unit, double t_max) {
  GradedRule rule;
  const double h = 1.0 / per_unit;
  const int n = int(std::ceil(t_max * per_unit));
  for (int k = -n; k <= n; ++k) {
    const double t = k * h;
    const double s = 0.5 * kPi * std::sinh(t);
    const Point pt{std::tanh(s), 2.0 / (1.0 + std::exp(-2.0 * s)), 2.0 / (1.0 + std::exp(2.0 * s))};
    if (!(pt.dist_minus > 0.0 && pt.dist_plus > 0.0)) continue;
    // dx/dt = (pi/2) cosh(t) sech^2(s) and sech^2(s) = (1+x)(1-x).
    const double w = h * 0.5 * kPi * std::cosh(t) * pt.dist_minus * pt.dist_plus;
    if (w < 1e-300) continue;
    rule.nodes.push_back(pt);
    rule.weights.push_back(w);
  }
  return rule;
}

cplx graded_inner(const Params& prm, const PointFn& f, const PointFn& g, const GradedRule& rule) {
  cplx acc = 0.0;
  for (size_t k = 0; k < rule.nodes.size(); ++k) {
    const Point& pt = rule.nodes[k];
    const double r = std::pow(pt.dist_plus, prm.alpha) * std::pow(pt.dist_minus, prm.beta);
    acc += rule.weights[k] * r * std::conj(f(pt)) * g(pt);
  }
  return acc;
}

cplx extract_m_recessive(const Params& prm0, cplx z) {
  Params prm = prm0;
  const Regime rg = regime(prm0);
  if (rg == Regime::MirroredOneLC) prm = {prm0.beta, prm0.alpha};
  else if (rg == Regime::TwoLC || rg == Regime::BothLP) throw ParamError("extract_m_recessive: needs one limit point endpoint");
  if (z.imag() == 0.0) throw DomainError("extract_m_recessive: z must not be real");
  const bool upper = prm.alpha >= 1.0;
  // Leading error of the estimate: s^{alpha+1} (alpha >= 1) or s^{-alpha}.
  const double p = upper ? prm.alpha + 1.0 : -prm.alpha;
  const double gain = std::pow(2.0, p);

  const Point start = Point::at(0.0);
  const PhiTheta pt0 = phi_theta(prm, z, start);
  State th{pt0.theta.y, pt0.theta.yq};
  State ph{pt0.phi.y, pt0.phi.yq};
  double u = to_u(start);
  std::vector<cplx> est;
  constexpr int kFirst = 10, kLast = 40;
  for (int k = kFirst; k <= kLast; ++k) {
    const double u1 = to_u(Point::near_plus(std::ldexp(1.0, -k)));
    th = dopri(prm, z, u, th, u1, kDefaultRtol);
    ph = dopri(prm, z, u, ph, u1, kDefaultRtol);
    u = u1;
    est.push_back(upper ? -th[1] / ph[1] : -th[0] / ph[0]);
  }
  const size_t n = est.size();
  const cplx r1 = (gain * est[n - 1] - est[n - 2]) / (gain - 1.0);
  const cplx r0 = (gain * est[n - 2] - est[n - 3]) / (gain - 1.0);
  if (std::abs(r1 - r0) > 1e-7 * std::abs(r1)) throw NonConvergence("extract_m_recessive: extrapolants disagree");
  return r1;
}

std::vector<double> find_roots(const std::function<double(double)>& f, double lo, double hi, int n_expected,
                               int scan_points) {
  std::vector<double> roots;
  if (hi > lo) {
    std::vector<double> xs(scan_points + 1), fs(scan_points + 1);
    for (int i = 0; i <= scan_points; ++i) {
      xs[i] = lo + (hi - lo) * i / scan_points;
      fs[i] = f(xs[i]);
    }
    for (int i = 0; i < scan_points; ++i) {
      if (fs[i] == 0.0) {
        roots.push_back(xs[i]);
        continue;
      }
      if (!(fs[i] * fs[i + 1] < 0.0)) continue;
      double a = xs[i], b = xs[i + 1], fa = fs[i];
      for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if ((fa < 0.0) == (fm < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    if (fs[scan_points] == 0.0) roots.push_back(xs[scan_points]);
  }
  if (n_expected >= 0 && int(roots.size()) != n_expected)
    throw CountMismatch("find_roots: found " + std::to_string(roots.size()) + ", expected " + std::to_string(n_expected));
  return roots;
}

std::vector<double> find_poles(const std::function<cplx(double)>& f, double lo, double hi, int n_expected,
                               int scan_points) {
  auto h = [&](double x) -> double {
    try {
      return std::real(1.0 / f(x));
    } catch (const PoleError&) {
      return 0.0;
    }
  };
  std::vector<double> poles;
  if (hi > lo) {
    std::vector<double> xs(scan_points + 1), hs(scan_points + 1);
    for (int i = 0; i <= scan_points; ++i) {
      xs[i] = lo + (hi - lo) * i / scan_points;
      hs[i] = h(xs[i]);
    }
    for (int i = 0; i < scan_points; ++i) {
      if (hs[i] == 0.0) {
        poles.push_back(xs[i]);
        continue;
      }
      if (!(hs[i] * hs[i + 1] < 0.0)) continue;
      const double start = std::abs(hs[i]) + std::abs(hs[i + 1]);
      double a = xs[i], b = xs[i + 1], ha = hs[i], hb = hs[i + 1];
      bool exact = false;
      for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        const double hm = h(m);
        if (hm == 0.0) {
          a = b = m;
          exact = true;
          break;
        }
        if ((ha < 0.0) == (hm < 0.0)) {
          a = m;
          ha = hm;
        } else {
          b = m;
          hb = hm;
        }
      }
      // A sign change of 1/f across a zero of f keeps |1/f| large.
      if (exact || std::abs(ha) + std::abs(hb) < 1e-3 * start) poles.push_back(0.5 * (a + b));
    }
    if (hs[scan_points] == 0.0) poles.push_back(xs[scan_points]);
  }
  if (n_expected >= 0 && int(poles.size()) != n_expected)
    throw CountMismatch("find_poles: found " + std::to_string(poles.size()) + ", expected " + std::to_string(n_expected));
  return poles;
}

std::vector<double> friedrichs_spectrum_numeric(const Params& prm, double lo, double hi, int n_expected) {
  return find_roots([&](double x) { return std::real(friedrichs_characteristic(prm, x)); }, lo, hi, n_expected);
}

DonoghueValue resolvent_oracle(const ExtensionSpec& ext, const Params& prm, cplx z) {
  DonoghueValue out;
  if (const auto* o = std::get_if<OneLC>(&ext)) {
    Params q = prm;
    double g = o->gamma;
    if (regime(prm) == Regime::MirroredOneLC) {
      q = {prm.beta, prm.alpha};
      g = g == 0.0 ? 0.0 : kPi - g;
    }
    out.dim = 1;
    const cplx mi = m_weyl(q, kI), mz = m_weyl(q, z), mmi = std::conj(mi);
    // (A - z)^{-1} psi(i) = (psi(i) - c psi(z))/(i - z) with c fixed by the
    // boundary condition at the limit circle end.
    const cplx c = g == 0.0 ? cplx(1.0) : (std::cos(g) / std::sin(g) + mi) / (std::cos(g) / std::sin(g) + mz);
    const cplx overlap = (mz - mmi) / (z + kI);
    out.m(0, 0) = z + (z * z + 1.0) * (1.0 - c * overlap / mi.imag()) / (kI - z);
    return out;
  }
  const DefectBasis db = defect_basis(prm);
  const UData uz = u_data(prm, z);
  auto rows = [&](const BoundaryData& bd) -> std::array<cplx, 2> {
    if (const auto* s = std::get_if<Separated>(&ext))
      return {std::cos(s->gamma) * bd.g_m1 + std::sin(s->gamma) * bd.gp_m1,
              std::cos(s->delta) * bd.g_p1 + std::sin(s->delta) * bd.gp_p1};
    double phi = 0.0;
    RealMat2 r;
    if (const auto* c = std::get_if<Coupled>(&ext)) {
      phi = c->phi;
      r = c->R;
    } else {
      r = krein_R(prm);
    }
    const cplx e = std::exp(kI * phi);
    return {bd.g_p1 - e * (r(0, 0) * bd.g_m1 + r(0, 1) * bd.gp_m1),
            bd.gp_p1 - e * (r(1, 0) * bd.g_m1 + r(1, 1) * bd.gp_m1)};
  };
  const BoundaryData* v[2] = {&db.v1, &db.v2};
  const auto r1 = rows(uz.bv1), r2 = rows(uz.bv2);
  Mat2 a;
  a << r1[0], r2[0], r1[1], r2[1];
  const Mat2 ainv = a.inverse();
  for (int m = 0; m < 2; ++m) {
    const auto rv = rows(*v[m]);
    const cplx c1 = ainv(0, 0) * rv[0] + ainv(0, 1) * rv[1];
    const cplx c2 = ainv(1, 0) * rv[0] + ainv(1, 1) * rv[1];
    for (int l = 0; l < 2; ++l) {
      const cplx s = c1 * inner_product_solutions(kI, *v[l], z, uz.bv1) + c2 * inner_product_solutions(kI, *v[l], z, uz.bv2);
      out.m(l, m) = z * double(l == m) + (z * z + 1.0) * (double(l == m) - s) / (kI - z);
    }
  }
  return out;
}

Mat2 truncated_friedrichs_m(const Params& prm, cplx z, int n_terms, const GradedRule& rule) {
  if (!(prm.alpha >= 0.0 && prm.beta >= 0.0) || regime(prm) != Regime::TwoLC)
    throw ParamError("truncated_friedrichs_m: needs alpha, beta in [0,1)");
  const double a = prm.alpha, b = prm.beta;
  const DefectBasis db = defect_basis(prm);
  const UData ud = db.at_i;
  const size_t nn = rule.nodes.size();
  std::vector<cplx> v1(nn), v2(nn);
  std::vector<double> wr(nn);
  for (size_t k = 0; k < nn; ++k) {
    const Point& pt = rule.nodes[k];
    const SolutionPair y = eval_pair(prm, Endpoint::Minus, kI, pt);
    const SolutionValue u1 = ud.u1[0] * y.first + ud.u1[1] * y.second;
    const SolutionValue u2 = ud.u2[0] * y.first + ud.u2[1] * y.second;
    v1[k] = db.c1 * u1.y;
    v2[k] = db.c2 * (u2.y - db.ratio * u1.y);
    wr[k] = rule.weights[k] * std::pow(pt.dist_plus, a) * std::pow(pt.dist_minus, b);
  }
  Mat2 sum = Mat2::Zero();
  for (int n = 0; n < n_terms; ++n) {
    const double lgh = (a + b + 1.0) * std::log(2.0) - std::log(2.0 * n + a + b + 1.0) + std::lgamma(n + a + 1.0) +
                       std::lgamma(n + b + 1.0) - std::lgamma(n + a + b + 1.0) - std::lgamma(n + 1.0);
    const double inv_norm = std::exp(-0.5 * lgh);
    cplx p1 = 0.0, p2 = 0.0;
    for (size_t k = 0; k < nn; ++k) {
      const double pn = inv_norm * jacobi_polynomial(n, prm, rule.nodes[k].x);
      p1 += wr[k] * pn * v1[k];
      p2 += wr[k] * pn * v2[k];
    }
    const cplx proj[2] = {p1, p2};
    const double lam = eigenvalue_lambda(n, prm);
    for (int l = 0; l < 2; ++l)
      for (int m = 0; m < 2; ++m) sum(l, m) += std::conj(proj[l]) * proj[m] / (lam - z);
  }
  return z * Mat2::Identity() + (z * z + 1.0) * sum;
}

}  // namespace jacobi::oracle
