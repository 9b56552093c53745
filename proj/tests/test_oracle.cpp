#include <cmath>

#include "doctest.h"
#include "jacobi_mfun/errors.hpp"
#include "jacobi_mfun/mweyl.hpp"
#include "jacobi_mfun/oracle.hpp"
#include "test_util.hpp"

using namespace jacobi;
using testutil::rel_err;

TEST_CASE("Gauss-Jacobi inner products") {
  const auto one = [](double) { return cplx(1.0); };
  CHECK(std::abs(oracle::gauss_jacobi_inner({0, 0}, one, one) - 2.0) < 1e-13);
  // int (1-x^2)^{-1/2} dx = pi
  CHECK(std::abs(oracle::gauss_jacobi_inner({-0.5, -0.5}, one, one) - kPi) < 1e-12);
  const Params prm{0.3, -0.4};
  for (int m = 0; m < 5; ++m)
    for (int n = 0; n < 5; ++n) {
      const auto pm = [&](double x) { return cplx(jacobi_polynomial(m, prm, x)); };
      const auto pn = [&](double x) { return cplx(jacobi_polynomial(n, prm, x)); };
      const cplx ip = oracle::gauss_jacobi_inner(prm, pm, pn, 20);
      if (m != n) CHECK(std::abs(ip) < 1e-13);
      else CHECK(ip.real() > 0.0);
    }
}

TEST_CASE("Gauss-Jacobi rule") {
  const auto q = oracle::gauss_jacobi({0.5, 1.5}, 12);
  double sum = 0.0;
  for (double w : q.weights) sum += w;
  // int (1-x)^a (1+x)^b = 2^{a+b+1} B(a+1, b+1)
  const double want = std::pow(2.0, 3.0) * std::tgamma(1.5) * std::tgamma(2.5) / std::tgamma(4.0);
  CHECK(sum == doctest::Approx(want).epsilon(1e-13));
  for (size_t i = 1; i < q.nodes.size(); ++i) CHECK(q.nodes[i] > q.nodes[i - 1]);
}

TEST_CASE("graded rule integrates endpoint singularities") {
  const auto rule = oracle::graded_rule(64);
  const Params prm{-0.7, 0.6};
  const oracle::PointFn one = [](const Point&) { return cplx(1.0); };
  const double want = std::pow(2.0, 0.9) * std::tgamma(0.3) * std::tgamma(1.6) / std::tgamma(1.9);
  CHECK(std::abs(oracle::graded_inner(prm, one, one, rule) - want) < 1e-10);
}

TEST_CASE("transport keeps exact solutions") {
  // constants solve the equation at z = 0
  const SolutionValue c = oracle::integrate_ivp({0.3, 0.2}, 0.0, -0.5, {1.0, 0.0}, 0.5);
  CHECK(std::abs(c.y - 1.0) < 1e-10);
  CHECK(std::abs(c.yq) < 1e-10);
  // Jacobi polynomials at their eigenvalues
  const Params prm{0.5, -0.3};
  for (int n : {1, 3, 5}) {
    const auto sv = [&](double x) {
      return SolutionValue{jacobi_polynomial(n, prm, x),
                           coefficients(prm, x).p * jacobi_polynomial_derivative(n, prm, x)};
    };
    const SolutionValue got = oracle::integrate_ivp(prm, eigenvalue_lambda(n, prm), -0.7, sv(-0.7), 0.8);
    CHECK(rel_err(got.y, sv(0.8).y) < 1e-9);
    CHECK(rel_err(got.yq, sv(0.8).yq) < 1e-9);
  }
}

TEST_CASE("transport agrees with the series solutions") {
  const Params prm{0.3, -0.6};
  const cplx z(4.0, -2.0);
  const SolutionId id = solution_id(prm, Endpoint::Minus, 2);
  const SolutionValue got = oracle::integrate_ivp(prm, z, -0.5, eval_solution(id, prm, z, -0.5), 0.5);
  const SolutionValue want = eval_solution(id, prm, z, 0.5);
  CHECK(rel_err(got.y, want.y) < 1e-8);
  CHECK(rel_err(got.yq, want.yq) < 1e-8);
}

TEST_CASE("recessive extraction") {
  const Params prm{1.5, -0.5};
  const cplx z(1.0, 1.0);
  const cplx m = oracle::extract_m_recessive(prm, z);
  CHECK(rel_err(m, m_weyl(prm, z)) < 1e-6);
  CHECK(rel_err(oracle::extract_m_recessive(prm, std::conj(z)), std::conj(m)) < 1e-6);
}

TEST_CASE("pole search") {
  const Params prm{1.0, -0.5};
  const auto f = [&](double x) { return m_weyl(prm, x); };
  const auto poles = oracle::find_poles(f, 0.0, 12.0, 3);
  REQUIRE(poles.size() == 3);
  CHECK(poles[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(poles[1] == doctest::Approx(4.5).epsilon(1e-10));
  CHECK(poles[2] == doctest::Approx(10.0).epsilon(1e-10));
  CHECK(oracle::find_poles(f, 1.5, 4.0).empty());
  CHECK_THROWS_AS(oracle::find_poles(f, 1.5, 4.0, 1), CountMismatch);
}

TEST_CASE("root search") {
  const auto roots = oracle::find_roots([](double x) { return std::cos(x); }, 0.0, 10.0, 3);
  REQUIRE(roots.size() == 3);
  CHECK(roots[2] == doctest::Approx(2.5 * kPi).epsilon(1e-12));
}

TEST_CASE("numeric Friedrichs spectrum with negative exponents") {
  // alpha, beta >= 0 has the closed form; use it to validate the search
  const auto closed = friedrichs_spectrum({0.5, 0.25}, 3);
  const auto found = oracle::friedrichs_spectrum_numeric({0.5, 0.25}, -1.0, 16.0, 4);
  for (size_t k = 0; k < closed.size(); ++k) CHECK(found[k] == doctest::Approx(closed[k]).epsilon(1e-10));
  // with negative exponents the principal solutions are the quasi-rational ones,
  // (1-x)^-alpha for kind 2 and (1-x)^-alpha (1+x)^-beta for kind 4
  const struct {
    Params prm;
    int kind;
  } cases[] = {{{-0.4, -0.3}, 4}, {{-0.4, 0.3}, 2}};
  for (const auto& c : cases) {
    const auto neg = oracle::friedrichs_spectrum_numeric(c.prm, -5.0, 20.0);
    REQUIRE(neg.size() == 4);
    for (int n = 0; n < 4; ++n)
      CHECK(neg[n] == doctest::Approx(quasi_rational(c.kind, n, c.prm, 0.0).eigenvalue).epsilon(1e-10));
  }
}
