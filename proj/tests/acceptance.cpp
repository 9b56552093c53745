// Acceptance run: one pass/fail line per criterion. Tolerances and time
// limits below are fixed; they are not read from the environment.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "jacobi_mfun/boundary.hpp"
#include "jacobi_mfun/donoghue.hpp"
#include "jacobi_mfun/errors.hpp"
#include "jacobi_mfun/mweyl.hpp"
#include "jacobi_mfun/oracle.hpp"
#include "jacobi_mfun/solutions.hpp"

using namespace jacobi;

namespace {

const cplx kI{0.0, 1.0};

struct Outcome {
  double deviation = 0.0;
  std::string note;
};

struct Criterion {
  int id;
  const char* name;
  double tol;
  double seconds;
  std::function<Outcome()> run;
};

using Rng = std::mt19937_64;
double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
double rel(const SolutionValue& a, const SolutionValue& b) {
  const double d = std::hypot(std::abs(a.y - b.y), std::abs(a.yq - b.yq));
  return d / std::max(std::hypot(std::abs(b.y), std::abs(b.yq)), 1e-300);
}

// Spectra displayed for the six one limit circle cases.
double displayed_eigenvalue(const Params& p, int n) {
  const double a = p.alpha, b = p.beta;
  if (a >= 1.0) {
    if (b < 0.0) return (n - b) * (n + 1.0 + a);
    if (b == 0.0) return n * (n + 1.0 + a);
    return n * (n + 1.0 + a + b);
  }
  if (b < 0.0) return (n - a - b) * (n + 1.0);
  if (b == 0.0) return (n - a) * (n + 1.0);
  return (n - a) * (n + 1.0 + b);
}

const std::vector<Params> kSixRegimes = {{1, -0.5}, {1, 0}, {1, 0.5}, {-1, -0.5}, {-1, 0}, {-1, 0.5}};

Outcome spectrum_reproduction() {
  Outcome out;
  for (const Params& p : kSixRegimes) {
    std::vector<double> want;
    for (int n = 0; n < 5; ++n) want.push_back(displayed_eigenvalue(p, n));
    const double lo = want[0] - 0.5, hi = 0.5 * (want[3] + want[4]);
    const auto got = oracle::find_poles([&](double x) { return m_weyl(p, x); }, lo, hi, 4);
    for (int n = 0; n < 4; ++n) out.deviation = std::max(out.deviation, std::abs(got[n] - want[n]));
  }
  out.note = "6 regimes x 4 poles";
  return out;
}

Outcome legendre_anchor() {
  Outcome out;
  const auto got = oracle::friedrichs_spectrum_numeric({0.0, 0.0}, -1.0, 21.0, 5);
  for (int n = 0; n < 5; ++n) out.deviation = std::max(out.deviation, std::abs(got[n] - n * (n + 1.0)));
  out.note = "roots of phi~(.,1) on [-1,21]";
  return out;
}

RealMat2 random_sl2(Rng& rng, bool upper_zero) {
  RealMat2 r;
  const double a = uniform(rng, 0.5, 2.0), c = uniform(rng, -2.0, 2.0);
  if (upper_zero) {
    r << a, 0.0, c, 1.0 / a;
  } else {
    const double b = uniform(rng, 0.5, 2.0) * (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0);
    const double d = uniform(rng, -2.0, 2.0);
    // Fix one entry so that ad - bc = 1.
    r << a, b, (a * d - 1.0) / b, d;
  }
  return r;
}

struct Variant {
  Params prm;
  ExtensionSpec ext;
};

std::vector<Variant> extension_variants() {
  std::vector<Variant> v;
  const Params two_lc{0.3, -0.4};
  for (double g : {0.0, kPi / 4, kPi / 2})
    for (double d : {0.0, kPi / 4, kPi / 2}) v.push_back({two_lc, Separated{g, d}});
  Rng rng(20240611);
  for (bool upper_zero : {false, true})
    for (int k = 0; k < 3; ++k) v.push_back({two_lc, Coupled{uniform(rng, 0.0, kPi), random_sl2(rng, upper_zero)}});
  for (Params p : {Params{-0.5, -0.5}, Params{-0.3, 0.4}, Params{0.4, -0.3}, Params{0.0, -0.3}, Params{-0.3, 0.0}})
    v.push_back({p, Krein{}});
  for (double g : {0.0, kPi / 3}) {
    v.push_back({{1.5, 0.3}, OneLC{g}});
    v.push_back({{0.3, 1.5}, OneLC{g}});
  }
  return v;
}

Outcome donoghue_normalization() {
  Outcome out;
  const auto variants = extension_variants();
  for (const Variant& v : variants) {
    for (double s : {1.0, -1.0}) {
      const cplx z = s * kI;
      const Mat2 target = z * Mat2::Identity();
      const DonoghueValue at = m_donoghue(v.ext, v.prm, z);
      out.deviation = std::max(out.deviation, (at.m - target).topLeftCorner(at.dim, at.dim).norm());
      // The general formula just off +-i must approach the same value.
      for (cplx eps : {cplx(1e-12, 0.0), cplx(0.0, 1e-12), cplx(-1e-12, 1e-12)}) {
        const DonoghueValue near = m_donoghue(v.ext, v.prm, z + eps);
        out.deviation = std::max(out.deviation, (near.m - target).topLeftCorner(near.dim, near.dim).norm());
      }
    }
  }
  out.note = std::to_string(variants.size()) + " extensions, explicit and 1e-12-offset evaluation";
  return out;
}

Outcome herglotz_suite() {
  Outcome out;
  const auto variants = extension_variants();
  Rng rng(77);
  double worst = -1e300;
  for (const Variant& v : variants) {
    for (int k = 0; k < 50; ++k) {
      const double im = uniform(rng, 0.05, 5.0) * (k % 2 == 0 ? 1.0 : -1.0);
      const cplx z(uniform(rng, -8.0, 8.0), im);
      const DonoghueValue m = m_donoghue(v.ext, v.prm, z);
      const double margin = herglotz_min_eig(m, z) - herglotz_floor(z);
      worst = std::max(worst, -margin);
    }
  }
  // Deviation is how far the smallest eigenvalue falls below the floor.
  out.deviation = std::max(0.0, worst);
  out.note = std::to_string(variants.size()) + " extensions x 50 z; worst margin " + std::to_string(-worst);
  return out;
}

Outcome oracle_m() {
  Outcome out;
  for (const Params& p : kSixRegimes)
    for (cplx z : {kI, 2.0 * kI, cplx(1.0, 1.0)})
      out.deviation = std::max(out.deviation, rel(oracle::extract_m_recessive(p, z), m_weyl(p, z)));
  out.note = "6 regimes x 3 z";
  return out;
}

Outcome oracle_solutions() {
  Outcome out;
  Rng rng(4242);
  int done = 0;
  while (done < 100) {
    const Params p{uniform(rng, -2.5, 2.5), uniform(rng, -2.5, 2.5)};
    const cplx z(uniform(rng, -20.0, 20.0), uniform(rng, -10.0, 10.0));
    const Endpoint e = done % 2 == 0 ? Endpoint::Minus : Endpoint::Plus;
    const int index = 1 + (done / 2) % 2;
    SolutionId id;
    try {
      id = solution_id(p, e, index);
    } catch (const ParamError&) {
      continue;
    }
    const SolutionValue start = eval_solution(id, p, z, -0.5);
    for (double x1 : {-0.25, 0.0, 0.25, 0.5}) {
      const SolutionValue ode = oracle::integrate_ivp(p, z, -0.5, start, x1);
      out.deviation = std::max(out.deviation, rel(ode, eval_solution(id, p, z, x1)));
    }
    ++done;
  }
  out.note = "100 draws, x0=-1/2 to {-1/4,0,1/4,1/2}";
  return out;
}

// Draws stay where double precision can resolve the identities: near the
// degenerate set (integer alpha, beta = 0 in case I) and for large negative
// Re z the gamma factors grow and the two sides cancel by up to 1e9, so the
// deviation there measures rounding, not the formulas. Parameters within
// kDegenerateMargin of the degenerate set count as degenerate.
constexpr double kDegenerateMargin = 0.05;

Outcome connection_suite() {
  Outcome out;
  Rng rng(9001);
  int rejected = 0;
  auto draw = [&](double lo, double hi, bool zero_is_degenerate) {
    for (;;) {
      const double v = uniform(rng, lo, hi);
      const bool near_int = std::abs(v - std::round(v)) < kDegenerateMargin;
      const bool near_zero = std::abs(v) < kDegenerateMargin;
      if (!near_int && !(zero_is_degenerate && near_zero)) return v;
      ++rejected;
    }
  };
  for (int cs = 0; cs < 4; ++cs) {
    int done = 0;
    while (done < 200) {
      Params p;
      switch (cs) {
        case 0: p = {draw(-2.5, 2.5, true), draw(-0.95, 0.95, true)}; break;
        case 1: p = {0.0, draw(-2.5, 2.5, true)}; break;
        case 2: p = {draw(-2.5, 2.5, true), 0.0}; break;
        default: p = {0.0, 0.0}; break;
      }
      const cplx z(uniform(rng, -5.0, 15.0), uniform(rng, -5.0, 5.0));
      double dev = 0.0;
      try {
        for (double xi : {0.25, 0.5, 0.75}) {
          const Point pt = Point::at(2.0 * xi - 1.0);
          for (Endpoint e : {Endpoint::Minus, Endpoint::Plus}) {
            const SolutionPair direct = series_pair(p, e, z, pt);
            const SolutionPair moved = connected_pair(p, e, z, pt);
            dev = std::max({dev, rel(moved.first, direct.first), rel(moved.second, direct.second)});
          }
        }
      } catch (const DegenerateCase&) {
        ++rejected;
        continue;
      } catch (const PoleError&) {
        ++rejected;
        continue;
      }
      out.deviation = std::max(out.deviation, dev);
      ++done;
    }
  }
  out.note = "4 cases x 200 draws, " + std::to_string(rejected) + " degenerate draws resampled";
  return out;
}

Outcome boundary_tables() {
  Outcome out;
  Rng rng(31337);
  auto pick = [&](int sign) {
    if (sign == 0) return 0.0;
    return sign * uniform(rng, 0.05, 0.95);
  };
  int cases = 0;
  for (int sa : {-1, 0, 1}) {
    for (int sb : {-1, 0, 1}) {
      ++cases;
      for (int k = 0; k < 20; ++k) {
        const Params p{pick(sa), pick(sb)};
        const cplx z(uniform(rng, -10.0, 10.0), uniform(rng, 0.2, 6.0) * (k % 2 ? -1.0 : 1.0));
        const auto [t1, t2] = solution_bv(p, z);
        const SolutionId ids[2] = {solution_id(p, Endpoint::Minus, 1), solution_id(p, Endpoint::Minus, 2)};
        const BoundaryData* want[2] = {&t1, &t2};
        for (int j = 0; j < 2; ++j) {
          const BoundaryData got =
              generalized_bv(p, [&](const Point& pt) { return eval_solution(ids[j], p, z, pt); });
          const cplx g[4] = {got.g_m1, got.gp_m1, got.g_p1, got.gp_p1};
          const cplx w[4] = {want[j]->g_m1, want[j]->gp_m1, want[j]->g_p1, want[j]->gp_p1};
          for (int i = 0; i < 4; ++i)
            out.deviation = std::max(out.deviation, std::abs(g[i] - w[i]) / std::max(1.0, std::abs(w[i])));
        }
      }
    }
  }
  out.note = std::to_string(cases) + " sign cases x 20 draws, both solutions, both ends";
  return out;
}

Outcome krein_zero_mode() {
  Outcome out;
  for (Params p : {Params{-0.5, -0.5}, Params{-0.3, 0.4}, Params{0.4, -0.3}, Params{0.0, -0.3}, Params{-0.3, 0.0}}) {
    const RealMat2 r = krein_R(p);
    const Evaluable one = [](const Point&) { return SolutionValue{1.0, 0.0}; };
    const Evaluable second = [&](const Point& pt) { return zero_energy_solution(p, pt); };
    for (const Evaluable* g : {&one, &second}) {
      const BoundaryData bd = generalized_bv(p, *g);
      const cplx lhs0 = bd.g_p1, lhs1 = bd.gp_p1;
      const cplx rhs0 = r(0, 0) * bd.g_m1 + r(0, 1) * bd.gp_m1;
      const cplx rhs1 = r(1, 0) * bd.g_m1 + r(1, 1) * bd.gp_m1;
      out.deviation = std::max({out.deviation, std::abs(lhs0 - rhs0), std::abs(lhs1 - rhs1)});
    }
  }
  const double r12 = krein_R({-0.5, -0.5})(0, 1);
  out.note = "5 cases; R12 at alpha=beta=-1/2 is " + std::to_string(r12);
  if (std::abs(r12 - kPi) > 1e-12) out.deviation = std::max(out.deviation, std::abs(r12 - kPi));
  return out;
}

Outcome resolvent_desk_check() {
  Outcome out;
  const Params p{0.5, 0.5};
  const cplx z = 2.0 * kI;
  const Mat2 trunc = oracle::truncated_friedrichs_m(p, z, 60, oracle::graded_rule(128));
  const Mat2 closed = m_donoghue(Separated{0.0, 0.0}, p, z).m;
  out.deviation = (trunc - closed).cwiseAbs().maxCoeff();
  out.note = "60 eigenpairs, Friedrichs extension, z=2i";
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "spectrum reproduction (poles of m)", 1e-8, 10, spectrum_reproduction},
      {2, "Legendre Friedrichs eigenvalues", 1e-8, 5, legendre_anchor},
      {3, "Donoghue normalization at +-i", 1e-9, 30, donoghue_normalization},
      {4, "Herglotz floor", 1e-9, 60, herglotz_suite},
      {5, "m vs recessive-solution oracle", 1e-6, 60, oracle_m},
      {6, "solutions vs ODE transport", 1e-8, 60, oracle_solutions},
      {7, "connection formulas", 1e-9, 60, connection_suite},
      {8, "boundary-value tables vs limit extraction", 1e-7, 120, boundary_tables},
      {9, "Krein zero modes", 1e-9, 5, krein_zero_mode},
      {10, "truncated resolvent expansion", 1e-4, 120, resolvent_desk_check},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    std::string error;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      error = ex.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = error.empty() && o.deviation <= c.tol && secs <= c.seconds;
    if (!ok) ++failures;
    if (error.empty())
      std::printf("[%s] %2d %-44s dev=%.3e tol=%.0e time=%.2fs/%gs  (%s)\n", ok ? "PASS" : "FAIL", c.id, c.name,
                  o.deviation, c.tol, secs, c.seconds, o.note.c_str());
    else
      std::printf("[FAIL] %2d %-44s error: %s\n", c.id, c.name, error.c_str());
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
