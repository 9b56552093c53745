#include <cmath>
#include <vector>

#include "doctest.h"
#include "jacobi_mfun/errors.hpp"
#include "jacobi_mfun/donoghue.hpp"
#include "jacobi_mfun/oracle.hpp"
#include "test_util.hpp"

using namespace jacobi;
using testutil::rel_err;

namespace {

const std::vector<Params> kTwoLC = {{0.3, 0.4}, {-0.5, -0.5}, {0.0, 0.0}, {-0.3, 0.6}};

std::vector<ExtensionSpec> variants() {
  RealMat2 r;
  r << 1.2, 0.7, -0.4, 0.6;
  RealMat2 upper;
  upper << 2.0, 0.0, 0.3, 0.5;
  return {Separated{0.0, 0.0}, Separated{0.4, 1.1}, Separated{0.0, 2.0}, Coupled{0.3, r}, Coupled{1.0, upper}};
}

double mat_err(const Mat2& a, const Mat2& b) { return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff()); }

}  // namespace

TEST_CASE("inner products through boundary data match quadrature") {
  const auto rule = oracle::graded_rule(96);
  for (const Params& prm : kTwoLC) {
    const cplx z1(0.4, 1.3), z2(-2.0, 0.6);
    const UData a = u_data(prm, z1), b = u_data(prm, z2);
    const oracle::PointFn f = [&](const Point& pt) { return u1_u2(prm, z1, pt).u1.y; };
    const oracle::PointFn g = [&](const Point& pt) { return u1_u2(prm, z2, pt).u2.y; };
    const cplx quad = oracle::graded_inner(prm, f, g, rule);
    CHECK(rel_err(inner_product_solutions(z1, a.bv1, z2, b.bv2), quad) < 1e-7);
    CHECK_THROWS_AS(inner_product_solutions(z1, a.bv1, std::conj(z1), a.bv2), DegenerateCase);
  }
}

TEST_CASE("defect basis") {
  const auto rule = oracle::graded_rule(96);
  for (const Params& prm : kTwoLC) {
    const DefectBasis db = defect_basis(prm);
    CHECK(db.c1 > 0.0);
    CHECK(db.c2 > 0.0);
    const cplx i(0, 1);
    const double norm2 = inner_product_solutions(i, db.at_i.bv1, i, db.at_i.bv1).real();
    CHECK(norm2 == doctest::Approx(-db.at_i.bv1.gp_p1.imag()).epsilon(1e-12));
    CHECK(db.c1 == doctest::Approx(1.0 / std::sqrt(norm2)).epsilon(1e-12));
    const cplx cross = inner_product_solutions(i, db.at_i.bv1, i, db.at_i.bv2);
    CHECK(rel_err(cross / norm2, db.at_i.bv2.gp_p1.imag() / db.at_i.bv1.gp_p1.imag()) < 1e-12);

    const auto v1 = [&](const Point& pt) { return db.c1 * u1_u2(prm, i, pt).u1.y; };
    const auto v2 = [&](const Point& pt) {
      const U1U2 u = u1_u2(prm, i, pt);
      return db.c2 * (u.u2.y - db.ratio * u.u1.y);
    };
    CHECK(std::abs(oracle::graded_inner(prm, v1, v1, rule) - 1.0) < 1e-8);
    CHECK(std::abs(oracle::graded_inner(prm, v2, v2, rule) - 1.0) < 1e-8);
    CHECK(std::abs(oracle::graded_inner(prm, v1, v2, rule)) < 1e-8);
    CHECK(std::abs(inner_product_solutions(i, db.v1, i, db.v2)) < 1e-12);
  }
}

TEST_CASE("W matrix") {
  const DefectBasis db = defect_basis({0.3, 0.4});
  const cplx z(1.0, 2.0);
  const Mat2 w = w_matrix(db, z);
  const UData uz = u_data(db.prm, z);
  CHECK(rel_err(w(0, 0), db.c1 * db.c1 * (uz.bv1.gp_p1 - db.at_minus_i.bv1.gp_p1)) < 1e-12);
  CHECK(w_matrix(db, cplx(1e-9, -1.0)).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("normalization and conjugation for every extension") {
  for (const Params& prm : kTwoLC) {
    const DefectBasis db = defect_basis(prm);
    for (const ExtensionSpec& ext : variants()) {
      CHECK(mat_err(m_donoghue(ext, db, cplx(0, 1)).m, cplx(0, 1) * Mat2::Identity()) < 1e-12);
      CHECK(mat_err(m_donoghue(ext, db, cplx(0, -1)).m, cplx(0, -1) * Mat2::Identity()) < 1e-12);
      for (cplx z : {cplx(3.0, 0.2), cplx(-1.5, 4.0)}) {
        const Mat2 a = m_donoghue(ext, db, std::conj(z)).m;
        const Mat2 b = m_donoghue(ext, db, z).m.adjoint();
        CHECK(mat_err(a, b) < 1e-10);
        CHECK(herglotz_min_eig(m_donoghue(ext, db, z), z) >= herglotz_floor(z) - 1e-9);
      }
    }
  }
}

TEST_CASE("matrix functions agree with the resolvent definition") {
  for (const Params& prm : {Params{0.3, 0.4}, Params{-0.5, 0.2}}) {
    for (const ExtensionSpec& ext : variants()) {
      const cplx z(0.7, 1.9);
      CHECK(mat_err(m_donoghue(ext, prm, z).m, oracle::resolvent_oracle(ext, prm, z).m) < 1e-8);
    }
  }
}

TEST_CASE("one limit circle endpoint reduces to the Weyl function") {
  for (Params prm : {Params{1.5, -0.5}, Params{1.5, 0.0}, Params{-1.5, 0.5}}) {
    for (cplx z : {cplx(2.0, 0.5), cplx(-3.0, -1.0)}) {
      const cplx i(0, 1);
      const double im_i = m_weyl(prm, i).imag();
      const cplx want = -i + (m_weyl(prm, z) - m_weyl(prm, -i)) / im_i;
      const DonoghueValue v = m_donoghue(OneLC{0.0}, prm, z);
      CHECK(v.dim == 1);
      CHECK(rel_err(v.m(0, 0), want) < 1e-12);
    }
    CHECK(std::abs(m_donoghue(OneLC{1.0}, prm, cplx(0, 1)).m(0, 0) - cplx(0, 1)) < 1e-12);
  }
}

TEST_CASE("Krein-von Neumann data") {
  const std::vector<Params> positive = {{-0.5, -0.5}, {-0.3, 0.4}, {0.4, -0.3}, {0.0, -0.3}, {-0.3, 0.0}};
  for (const Params& prm : positive) CHECK(krein_R(prm).determinant() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(krein_R({-0.5, -0.5})(0, 1) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(krein_R({-0.5, -0.5})(1, 0) == 0.0);
  CHECK_THROWS_AS(krein_R({0.3, 0.4}), NotStrictlyPositive);
  CHECK_THROWS_AS(krein_R({0.0, 0.0}), NotStrictlyPositive);
  CHECK_THROWS_AS(krein_R({1.3, 0.4}), ParamError);
  for (const Params& prm : positive) {
    const cplx z(0.5, 0.8);
    CHECK(mat_err(m_donoghue(Krein{}, prm, z).m, oracle::resolvent_oracle(Krein{}, prm, z).m) < 1e-8);
  }
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(m_donoghue(Separated{0.2, 0.3}, Params{0.3, 0.4}, 1.0), DomainError);
  CHECK_THROWS_AS(m_donoghue(Separated{0.2, 0.3}, Params{1.3, 0.4}, cplx(0, 1)), ParamError);
  CHECK_THROWS_AS(m_donoghue(OneLC{0.2}, Params{0.3, 0.4}, cplx(0, 1)), ParamError);
  RealMat2 bad;
  bad << 1.0, 1.0, 1.0, 1.0;
  CHECK_THROWS_AS(m_donoghue(Coupled{0.0, bad}, Params{0.3, 0.4}, cplx(0, 1)), ParamError);
  CHECK_THROWS_AS(k_matrix(Separated{0.0, 0.5}, Params{0.3, 0.4}, cplx(0, 1)), ParamError);
  // zero is an eigenvalue of the Krein-von Neumann extension
  CHECK(k_matrix(Krein{}, Params{-0.5, -0.5}, 0.0).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(m_donoghue(Krein{}, Params{-0.5, -0.5}, cplx(0.0, 1e-300)), KMatrixSingular);
}
