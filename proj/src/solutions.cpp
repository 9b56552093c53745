#include "jacobi_mfun/solutions.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "jacobi_mfun/boundary.hpp"
#include "jacobi_mfun/errors.hpp"
#include "jacobi_mfun/specfun.hpp"

namespace jacobi {

namespace {

using specfun::Pair;

bool is_int(double v) { return std::abs(v - std::round(v)) < 1e-12; }

// Exponent governing endpoint e: beta at -1, alpha at +1.
double exponent(const Params& prm, Endpoint e) { return e == Endpoint::Minus ? prm.beta : prm.alpha; }
double other_exponent(const Params& prm, Endpoint e) { return e == Endpoint::Minus ? prm.alpha : prm.beta; }

// Local coordinate pieces seen from endpoint e: near = 1 -+ x, far = 1 +- x.
struct Local {
  double near;
  double far;
};
Local local(const Point& pt, Endpoint e) {
  return e == Endpoint::Minus ? Local{pt.dist_minus, pt.dist_plus} : Local{pt.dist_plus, pt.dist_minus};
}

// A solution value with the cancellation ratio of its evaluation.
struct Member {
  SolutionValue v;
  double cond;
};

// Series (or directly continued) evaluation of one local solution at
// endpoint e. The quasi-derivative sign flips at +1 because d/dx = -1/2
// d/deta there.
Member local_member(const Params& prm, Endpoint e, cplx z, const Point& pt, int index) {
  const double ex = exponent(prm, e);
  const double ox = other_exponent(prm, e);
  const Local lc = local(pt, e);
  const double t = 0.5 * lc.near;
  const double sign = e == Endpoint::Minus ? 1.0 : -1.0;
  const HypParams hp = hyp_params(prm, z);
  const double farpow = std::pow(lc.far, ox + 1.0);
  if (index == 1) {
    const Pair f1 = specfun::hyp2f1_pair(hp.a, hp.b, 1.0 + ex, t);
    return {{f1.f, sign * farpow * std::pow(lc.near, ex + 1.0) * 0.5 * f1.df}, f1.cond};
  }
  if (ex == 0.0) {
    const Pair lg = specfun::hyp2f1_log_pair(hp.a, hp.b, t);
    return {{lg.f, sign * farpow * t * lg.df}, lg.cond};
  }
  const Pair f2 = specfun::hyp2f1_pair(hp.a - ex, hp.b - ex, 1.0 - ex, t);
  const double pw = std::pow(lc.near, -ex);
  return {{pw * f2.f, sign * farpow * (-ex * f2.f + lc.near * 0.5 * f2.df)}, f2.cond};
}

// c0 u + c1 v, with the cancellation of the sum folded into the estimate.
Member combine(cplx c0, const Member& u, cplx c1, const Member& v) {
  const SolutionValue r = c0 * u.v + c1 * v.v;
  const double mass = std::abs(c0 * u.v.y) * u.cond + std::abs(c1 * v.v.y) * v.cond;
  return {r, std::max(1.0, mass / std::max(std::abs(r.y), 1e-300))};
}

Member scaled(cplx c, const Member& m) { return {c * m.v, m.cond}; }

std::array<Member, 2> local_members(const Params& prm, Endpoint e, cplx z, const Point& pt) {
  return {local_member(prm, e, z, pt, 1), local_member(prm, e, z, pt, 2)};
}

std::array<Member, 2> connected_members(const Params& prm, Endpoint e, cplx z, const Point& pt) {
  const ConnectionMatrix cm = connection_matrix(prm, z);
  const auto& c = cm.c;
  const double al = prm.alpha, be = prm.beta;
  if (e == Endpoint::Minus) {
    const auto pl = local_members(prm, Endpoint::Plus, z, pt);
    // w11 = y_{1,+1}; w21 = 2^alpha y_{2,+1} (or the log solution itself).
    const Member w11 = pl[0];
    const Member w21 = scaled(al == 0.0 ? 1.0 : std::pow(2.0, al), pl[1]);
    const cplx s20 = be == 0.0 ? 1.0 : std::pow(2.0, -be);
    return {combine(c[0][0], w11, c[0][1], w21), scaled(s20, combine(c[1][0], w11, c[1][1], w21))};
  }
  const auto mi = local_members(prm, Endpoint::Minus, z, pt);
  const Member w10 = mi[0];
  const Member w20 = scaled(be == 0.0 ? 1.0 : std::pow(2.0, be), mi[1]);
  const double det = connection_determinant(prm);
  const Member w11 = combine(c[1][1] / det, w10, -c[0][1] / det, w20);
  const Member w21 = combine(-c[1][0] / det, w10, c[0][0] / det, w20);
  return {w11, scaled(al == 0.0 ? 1.0 : std::pow(2.0, -al), w21)};
}

constexpr double kContinuedLimit = 1.6;

void require_inside(const Point& pt) {
  if (!(pt.dist_minus > 0.0 && pt.dist_plus > 0.0)) throw DomainError("eval_solution: x must lie in (-1,1)");
}

}  // namespace

SolutionPair series_pair(const Params& prm, Endpoint e, cplx z, const Point& pt) {
  require_inside(pt);
  const auto m = local_members(prm, e, z, pt);
  return {m[0].v, m[1].v};
}

SolutionPair connected_pair(const Params& prm, Endpoint e, cplx z, const Point& pt) {
  require_inside(pt);
  const auto m = connected_members(prm, e, z, pt);
  return {m[0].v, m[1].v};
}

void check_admissible(const SolutionId& id, const Params& prm) {
  if (id.index != 1 && id.index != 2) throw ParamError("solution index must be 1 or 2");
  const double ex = exponent(prm, id.endpoint);
  if (id.index == 1) {
    if (id.log_case) throw ParamError("log_case applies only to the second solution");
    if (ex < 0.0 && is_int(ex)) throw ParamError("first solution undefined for negative integer exponent");
    return;
  }
  if (id.log_case) {
    if (ex != 0.0) throw ParamError("log_case requires vanishing exponent at that endpoint");
    return;
  }
  if (ex >= 0.0 && is_int(ex)) throw ParamError("second solution undefined for non-negative integer exponent");
}

SolutionId solution_id(const Params& prm, Endpoint e, int index) {
  SolutionId id{e, index, index == 2 && exponent(prm, e) == 0.0};
  check_admissible(id, prm);
  return id;
}

SolutionPair eval_pair(const Params& prm, Endpoint e, cplx z, const Point& pt) {
  require_inside(pt);
  const double near = local(pt, e).near;
  if (near <= 1.0) {
    const auto m = local_members(prm, e, z, pt);
    return {m[0].v, m[1].v};
  }
  // On the far side the connection formulas are the default. Up to
  // 1 -+ x = kContinuedLimit the continued series competes, and each member
  // takes whichever cancels less. Integer exponents outside the connection
  // cases keep the continued series.
  std::optional<std::array<Member, 2>> moved;
  try {
    moved = connected_members(prm, e, z, pt);
    if (!std::isfinite(std::abs(moved->at(0).v.y)) || !std::isfinite(std::abs(moved->at(1).v.y))) moved.reset();
  } catch (const Error&) {
  }
  if (!moved) {
    const auto m = local_members(prm, e, z, pt);
    return {m[0].v, m[1].v};
  }
  std::array<Member, 2> best = *moved;
  if (near <= kContinuedLimit) {
    try {
      const auto direct = local_members(prm, e, z, pt);
      for (int j = 0; j < 2; ++j)
        if (direct[j].cond < best[j].cond) best[j] = direct[j];
    } catch (const Error&) {
    }
  }
  return {best[0].v, best[1].v};
}

SolutionValue eval_solution(const SolutionId& id, const Params& prm, cplx z, const Point& pt) {
  check_admissible(id, prm);
  require_inside(pt);
  const double ex = exponent(prm, id.endpoint);
  // An integer exponent leaves only one member of the pair defined, and no
  // connection case applies; evaluate that member alone.
  if (is_int(ex) && ex != 0.0) return local_member(prm, id.endpoint, z, pt, id.index).v;
  const SolutionPair pr = eval_pair(prm, id.endpoint, z, pt);
  return id.index == 1 ? pr.first : pr.second;
}

SolutionValue eval_solution(const SolutionId& id, const Params& prm, cplx z, double x) {
  if (!(x > -1.0 && x < 1.0)) throw DomainError("eval_solution: x must lie in (-1,1)");
  return eval_solution(id, prm, z, Point::at(x));
}

namespace {

// Terminating hypergeometric sum; defined for every (alpha, beta).
double jacobi_sum(int n, double a, double b, double x) {
  // sum_k (-n)_k (n+a+b+1)_k (a+k+1)_{n-k} / (n! k!) ((1-x)/2)^k
  const double eta = 0.5 * (1.0 - x);
  double nfact = 1.0;
  for (int i = 2; i <= n; ++i) nfact *= i;
  double sum = 0.0;
  double head = 1.0;
  double pw = 1.0;
  for (int k = 0; k <= n; ++k) {
    double tail = 1.0;
    for (int j = 0; j < n - k; ++j) tail *= a + k + 1 + j;
    sum += head * tail * pw;
    head *= (-n + k) * (n + a + b + 1 + k) / (k + 1.0);
    pw *= eta;
  }
  return sum / nfact;
}

}  // namespace

double jacobi_polynomial(int n, const Params& prm, double x) {
  if (n < 0) throw ParamError("jacobi_polynomial: n must be non-negative");
  const double a = prm.alpha, b = prm.beta;
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
  for (int k = 2; k <= n; ++k) {
    const double s = 2.0 * k + a + b;
    const double lead = 2.0 * k * (k + a + b) * (s - 2.0);
    // The recurrence divides by zero for a few negative (alpha, beta).
    if (std::abs(lead) < 1e-12) return jacobi_sum(n, a, b, x);
    const double next =
        ((s - 1.0) * (s * (s - 2.0) * x + a * a - b * b) * cur - 2.0 * (k + a - 1.0) * (k + b - 1.0) * s * prev) / lead;
    prev = cur;
    cur = next;
  }
  return cur;
}

double jacobi_polynomial_derivative(int n, const Params& prm, double x) {
  if (n == 0) return 0.0;
  return 0.5 * (n + prm.alpha + prm.beta + 1.0) * jacobi_polynomial(n - 1, {prm.alpha + 1.0, prm.beta + 1.0}, x);
}

double eigenvalue_lambda(int n, const Params& prm) { return n * (n + 1.0 + prm.alpha + prm.beta); }

QuasiRational quasi_rational(int kind, int n, const Params& prm, double x) {
  const double a = prm.alpha, b = prm.beta;
  switch (kind) {
    case 1: return {jacobi_polynomial(n, {a, b}, x), eigenvalue_lambda(n, {a, b})};
    case 2: return {std::pow(1.0 - x, -a) * jacobi_polynomial(n, {-a, b}, x), n * (n + 1.0 - a + b) - a * (1.0 + b)};
    case 3: return {std::pow(1.0 + x, -b) * jacobi_polynomial(n, {a, -b}, x), n * (n + 1.0 + a - b) - b * (1.0 + a)};
    case 4:
      return {std::pow(1.0 - x, -a) * std::pow(1.0 + x, -b) * jacobi_polynomial(n, {-a, -b}, x),
              n * (n + 1.0 - a - b) - (a + b)};
    default: throw ParamError("quasi_rational: kind must be 1..4");
  }
}

SymmetryReport symmetry_check(const Params& prm, cplx z, double x) {
  const double a = prm.alpha, b = prm.beta;
  auto rel = [](cplx lhs, cplx rhs) { return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)); };
  auto try_rel = [&](Endpoint e, int idx, const Params& q, cplx zq, int qidx, double pf) -> std::optional<double> {
    try {
      const cplx lhs = eval_solution(solution_id(prm, e, idx), prm, z, x).y;
      const cplx rhs = pf * eval_solution(solution_id(q, e, qidx), q, zq, x).y;
      return rel(lhs, rhs);
    } catch (const ParamError&) {
      return std::nullopt;
    }
  };
  SymmetryReport rep;
  if (b != 0.0) {
    const Params q{a, -b};
    const cplx zq = z + (1.0 + a) * b;
    const double pf = std::pow(1.0 + x, -b);
    rep.minus_first = try_rel(Endpoint::Minus, 1, q, zq, 2, pf);
    rep.minus_second = try_rel(Endpoint::Minus, 2, q, zq, 1, pf);
  }
  if (a != 0.0) {
    const Params q{-a, b};
    const cplx zq = z + (1.0 + b) * a;
    const double pf = std::pow(1.0 - x, -a);
    rep.plus_first = try_rel(Endpoint::Plus, 1, q, zq, 2, pf);
    rep.plus_second = try_rel(Endpoint::Plus, 2, q, zq, 1, pf);
  }
  for (const auto& v : {rep.minus_first, rep.minus_second, rep.plus_first, rep.plus_second})
    if (v) rep.max_deviation = std::max(rep.max_deviation, *v);
  return rep;
}

}  // namespace jacobi
