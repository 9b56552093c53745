#include "jacobi_mfun/donoghue.hpp"

#include <cmath>
#include <sstream>
#include <type_traits>

#include "jacobi_mfun/errors.hpp"
#include "jacobi_mfun/specfun.hpp"

namespace jacobi {

namespace {

const cplx kI{0.0, 1.0};

bool near_point(cplx z, cplx w) { return std::abs(z - w) <= 1e-14 * std::max(1.0, std::abs(w)); }

void require_two_lc(const Params& prm) {
  if (regime(prm) != Regime::TwoLC) throw ParamError("m_donoghue: extension needs two limit circle endpoints");
}

void check_sl2(const RealMat2& r) {
  const double det = r.determinant();
  if (std::abs(det - 1.0) > 1e-10 * std::max(1.0, r.cwiseAbs().maxCoeff() * r.cwiseAbs().maxCoeff()))
    throw ParamError("coupled boundary condition: det R must equal 1");
}

Mat2 inverse_checked(const Mat2& k) {
  const cplx det = k.determinant();
  const double nrm = k.cwiseAbs().maxCoeff();
  if (!(std::abs(det) > 1e-12 * nrm * nrm)) throw KMatrixSingular("K matrix is singular: z is an eigenvalue");
  Mat2 inv;
  inv << k(1, 1), -k(0, 1), -k(1, 0), k(0, 0);
  return inv / det;
}

cplx checked_scalar(cplx k, double scale) {
  if (!(std::abs(k) > 1e-12 * std::max(1.0, scale))) throw KMatrixSingular("scalar K vanishes: z is an eigenvalue");
  return k;
}

// Columns j = 1, 2: (u_j(conj z), v_m(i)) for m = 1, 2 as a 2x2 matrix P(j, m).
Mat2 projections(const DefectBasis& db, const UData& uz, cplx z) {
  const BoundaryData* v[2] = {&db.v1, &db.v2};
  const BoundaryData u[2] = {conj(uz.bv1), conj(uz.bv2)};
  Mat2 p;
  for (int j = 0; j < 2; ++j)
    for (int m = 0; m < 2; ++m) p(j, m) = inner_product_solutions(std::conj(z), u[j], kI, *v[m]);
  return p;
}

struct OneLCParts {
  Params prm;
  double gamma;
};

// Move a mirrored problem to the frame where -1 is the limit circle end.
OneLCParts one_lc_frame(const Params& prm, double gamma) {
  const Regime rg = regime(prm);
  if (rg == Regime::MirroredOneLC) {
    // x -> -x flips the sign of the quasi-derivative, hence of cot(gamma).
    const double g = gamma == 0.0 ? 0.0 : kPi - gamma;
    return {{prm.beta, prm.alpha}, g};
  }
  if (rg == Regime::TwoLC || rg == Regime::BothLP) throw ParamError("OneLC extension needs exactly one limit circle endpoint");
  return {prm, gamma};
}

DonoghueValue one_lc(const Params& prm0, double gamma0, cplx z) {
  if (!(gamma0 >= 0.0 && gamma0 < kPi)) throw ParamError("OneLC: gamma must lie in [0, pi)");
  const OneLCParts f = one_lc_frame(prm0, gamma0);
  DonoghueValue out;
  out.dim = 1;
  if (near_point(z, kI)) {
    out.m(0, 0) = kI;
    return out;
  }
  if (near_point(z, -kI)) {
    out.m(0, 0) = -kI;
    return out;
  }
  const cplx mi = m_weyl(f.prm, kI);
  const cplx mmi = std::conj(mi);
  const cplx mz = m_weyl(f.prm, z);
  const double nrm2 = mi.imag();
  cplx val = -kI + (mz - mmi) / nrm2;
  if (f.gamma != 0.0) {
    const double cg = std::cos(f.gamma) / std::sin(f.gamma);
    const cplx k = checked_scalar(cg + mz, std::abs(mz));
    // (psi(conj z), psi(i)) = (m(i) - m(z)) / (i - z).
    const cplx proj = (mi - mz) / (kI - z);
    val += (kI - z) * (mz - mmi) / k * proj / nrm2;
  }
  out.m(0, 0) = val;
  return out;
}

}  // namespace

std::string describe(const ExtensionSpec& ext) {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, Separated>)
          os << "separated(gamma=" << e.gamma << ",delta=" << e.delta << ")";
        else if constexpr (std::is_same_v<T, Coupled>)
          os << "coupled(phi=" << e.phi << ",R=[[" << e.R(0, 0) << "," << e.R(0, 1) << "],[" << e.R(1, 0) << ","
             << e.R(1, 1) << "]])";
        else if constexpr (std::is_same_v<T, OneLC>)
          os << "one-lc(gamma=" << e.gamma << ")";
        else
          os << "krein";
      },
      ext);
  return os.str();
}

cplx inner_product_solutions(cplx z1, const BoundaryData& f, cplx z2, const BoundaryData& g) {
  const cplx denom = z2 - std::conj(z1);
  if (std::abs(denom) <= 1e-14 * std::max(1.0, std::abs(z2))) throw DegenerateCase("inner product: z2 = conj(z1)");
  const BoundaryData fc = conj(f);
  const cplx wa = boundary_wronskian(fc.g_m1, fc.gp_m1, g.g_m1, g.gp_m1);
  const cplx wb = boundary_wronskian(fc.g_p1, fc.gp_p1, g.g_p1, g.gp_p1);
  return -(wb - wa) / denom;
}

DefectBasis defect_basis(const Params& prm) {
  require_two_lc(prm);
  DefectBasis db;
  db.prm = prm;
  db.at_i = u_data(prm, kI);
  db.at_minus_i = u_data(prm, -kI);
  const double im1b = db.at_i.bv1.gp_p1.imag();
  const double im2b = db.at_i.bv2.gp_p1.imag();
  const double im2a = db.at_i.bv2.gp_m1.imag();
  const double n1 = -im1b;
  const double n2 = im2a + im2b * im2b / im1b;
  if (!(n1 > 0.0) || !(n2 > 0.0)) throw Error("defect_basis: non-positive norm");
  db.c1 = 1.0 / std::sqrt(n1);
  db.c2 = 1.0 / std::sqrt(n2);
  db.ratio = im2b / im1b;
  db.v1 = db.c1 * db.at_i.bv1;
  db.v2 = db.c2 * (db.at_i.bv2 + (-db.ratio) * db.at_i.bv1);
  return db;
}

Mat2 w_matrix(const DefectBasis& db, cplx z) {
  const UData uz = u_data(db.prm, z);
  const cplx u1b = uz.bv1.gp_p1, u1a = uz.bv1.gp_m1, u2b = uz.bv2.gp_p1, u2a = uz.bv2.gp_m1;
  const UData& um = db.at_minus_i;
  const cplx u1bm = um.bv1.gp_p1, u1am = um.bv1.gp_m1, u2bm = um.bv2.gp_p1, u2am = um.bv2.gp_m1;
  const double c1 = db.c1, c2 = db.c2, q = db.ratio;
  Mat2 w;
  w(0, 0) = c1 * c1 * (u1b - u1bm);
  w(0, 1) = c1 * c2 * (q * (u1bm - u1b) + u2b + u1am);
  w(1, 0) = -c1 * c2 * (q * (u1b - u1bm) + u2bm + u1a);
  w(1, 1) = c2 * c2 * ((u2bm - u2b + q * (u1b - u1bm)) * q + u2am - u2a + q * (u1a - u1am));
  return w;
}

Mat2 wkr_matrix(const DefectBasis& db, cplx z) {
  const UData uz = u_data(db.prm, z);
  const cplx u1b = uz.bv1.gp_p1, u1a = uz.bv1.gp_m1, u2b = uz.bv2.gp_p1, u2a = uz.bv2.gp_m1;
  const UData& um = db.at_minus_i;
  const cplx u1bm = um.bv1.gp_p1, u1am = um.bv1.gp_m1, u2bm = um.bv2.gp_p1, u2am = um.bv2.gp_m1;
  const double c1 = db.c1, c2 = db.c2, q = db.ratio;
  Mat2 w;
  w(0, 0) = c1 * (u1b - u1bm);
  w(0, 1) = c1 * (u2b + u1am);
  w(1, 0) = -c2 * (q * (u1b - u1bm) + u2bm + u1a);
  w(1, 1) = -c2 * (q * (u2b + u1am) + u2a - u2am);
  return w;
}

Mat2 k_matrix(const ExtensionSpec& ext, const Params& prm, cplx z) {
  const UData uz = u_data(prm, z);
  const cplx u1b = uz.bv1.gp_p1, u1a = uz.bv1.gp_m1, u2b = uz.bv2.gp_p1, u2a = uz.bv2.gp_m1;
  Mat2 k;
  if (const auto* s = std::get_if<Separated>(&ext)) {
    if (s->gamma == 0.0 || s->delta == 0.0) throw ParamError("k_matrix: separated K needs both angles nonzero");
    const double cg = std::cos(s->gamma) / std::sin(s->gamma), cd = std::cos(s->delta) / std::sin(s->delta);
    k << cd + u1b, -u1a, u2b, -cg - u2a;
  } else if (const auto* c = std::get_if<Coupled>(&ext)) {
    check_sl2(c->R);
    const double r11 = c->R(0, 0), r12 = c->R(0, 1), r22 = c->R(1, 1);
    if (r12 == 0.0) throw ParamError("k_matrix: coupled K needs R12 != 0");
    const cplx e = std::exp(kI * c->phi);
    k << -r22 / r12 + u1b, 1.0 / (e * r12) - u1a, e / r12 + u2b, -r11 / r12 - u2a;
  } else if (std::holds_alternative<Krein>(ext)) {
    const UData u0 = u_data(prm, 0.0);
    k << u1b - u0.bv1.gp_p1, u0.bv1.gp_m1 - u1a, u2b - u0.bv2.gp_p1, u0.bv2.gp_m1 - u2a;
  } else {
    throw ParamError("k_matrix: not defined for a single limit circle endpoint");
  }
  return k;
}

DonoghueValue m_donoghue(const ExtensionSpec& ext, const Params& prm, cplx z) {
  if (const auto* o = std::get_if<OneLC>(&ext)) return one_lc(prm, o->gamma, z);
  require_two_lc(prm);
  return m_donoghue(ext, defect_basis(prm), z);
}

DonoghueValue m_donoghue(const ExtensionSpec& ext, const DefectBasis& db, cplx z) {
  if (const auto* o = std::get_if<OneLC>(&ext)) return one_lc(db.prm, o->gamma, z);
  if (std::holds_alternative<Krein>(ext)) krein_R(db.prm);  // rejects the non strictly positive cases
  if (const auto* s = std::get_if<Separated>(&ext)) {
    if (!(s->gamma >= 0.0 && s->gamma < kPi && s->delta >= 0.0 && s->delta < kPi))
      throw ParamError("separated: angles must lie in [0, pi)");
  }
  if (const auto* c = std::get_if<Coupled>(&ext)) {
    if (!(c->phi >= 0.0 && c->phi < kPi)) throw ParamError("coupled: phi must lie in [0, pi)");
    check_sl2(c->R);
  }
  DonoghueValue out;
  if (near_point(z, kI)) {
    out.m = kI * Mat2::Identity();
    return out;
  }
  if (near_point(z, -kI)) {
    out.m = -kI * Mat2::Identity();
    return out;
  }
  if (z.imag() == 0.0) throw DomainError("m_donoghue: z must not be real");
  const Mat2 m0 = -kI * Mat2::Identity() - w_matrix(db, z);
  const Separated* sep = std::get_if<Separated>(&ext);
  if (sep && sep->gamma == 0.0 && sep->delta == 0.0) {
    out.m = m0;
    return out;
  }
  const UData uz = u_data(db.prm, z);
  const Mat2 wk = wkr_matrix(db, z);
  Mat2 corr;
  if (sep && sep->delta == 0.0) {
    const double cg = std::cos(sep->gamma) / std::sin(sep->gamma);
    const cplx u2a = uz.bv2.gp_m1;
    const cplx k = checked_scalar(cg + u2a, std::abs(u2a));
    const Mat2 p = projections(db, uz, z);
    for (int l = 0; l < 2; ++l)
      for (int m = 0; m < 2; ++m) corr(l, m) = (z - kI) / k * p(1, m) * wk(l, 1);
  } else if (sep && sep->gamma == 0.0) {
    const double cd = std::cos(sep->delta) / std::sin(sep->delta);
    const cplx u1b = uz.bv1.gp_p1;
    const cplx k = checked_scalar(cd + u1b, std::abs(u1b));
    const Mat2 p = projections(db, uz, z);
    for (int l = 0; l < 2; ++l)
      for (int m = 0; m < 2; ++m) corr(l, m) = -(z - kI) / k * p(0, m) * wk(l, 0);
  } else if (const auto* c = std::get_if<Coupled>(&ext); c && c->R(0, 1) == 0.0) {
    const double r21 = c->R(1, 0), r22 = c->R(1, 1);
    const cplx em = std::exp(-kI * c->phi);
    const BoundaryData uphi = (em * r22) * uz.bv2 + uz.bv1;
    const cplx k = checked_scalar(-r21 * r22 - std::exp(kI * c->phi) * r22 * uphi.gp_m1 + uphi.gp_p1,
                                  std::abs(uphi.gp_m1) + std::abs(uphi.gp_p1));
    // u_{phi,R}(conj z) has boundary data e^{-i phi} R22 conj(u2~) + conj(u1~).
    const BoundaryData ubar = (em * r22) * conj(uz.bv2) + conj(uz.bv1);
    const BoundaryData* v[2] = {&db.v1, &db.v2};
    for (int m = 0; m < 2; ++m) {
      const cplx pm = inner_product_solutions(std::conj(z), ubar, kI, *v[m]);
      for (int l = 0; l < 2; ++l) corr(l, m) = -(z - kI) / k * pm * (em * r22 * wk(l, 1) + wk(l, 0));
    }
  } else {
    const Mat2 kinv = inverse_checked(k_matrix(ext, db.prm, z));
    const Mat2 p = projections(db, uz, z);
    corr = (kI - z) * wk * kinv.transpose() * p;
  }
  out.m = m0 + corr;
  return out;
}

RealMat2 krein_R(const Params& prm) {
  const double a = prm.alpha, b = prm.beta;
  if (!(a > -1.0 && a < 1.0 && b > -1.0 && b < 1.0)) throw ParamError("krein_R: alpha and beta must lie in (-1,1)");
  RealMat2 r;
  auto cval = [&] {
    using specfun::gamma;
    using specfun::rgamma;
    return std::real(std::pow(2.0, -a - b - 1.0) * gamma(-a) * gamma(-b) * rgamma(-a - b));
  };
  if (a < 0.0 && b < 0.0) {
    r << 1.0, cval(), 0.0, 1.0;
  } else if (a < 0.0 && b > 0.0) {
    r << -cval(), 1.0, -1.0, 0.0;
  } else if (a > 0.0 && b < 0.0) {
    r << 0.0, -1.0, 1.0, cval();
  } else if (a == 0.0 && b < 0.0) {
    r << 0.0, -1.0, 1.0, -std::pow(2.0, -b - 1.0) * (kEulerGamma + std::real(specfun::digamma(-b)));
  } else if (a < 0.0 && b == 0.0) {
    r << std::pow(2.0, -a - 1.0) * (kEulerGamma + std::real(specfun::digamma(-a))), 1.0, -1.0, 0.0;
  } else {
    throw NotStrictlyPositive("krein_R: the minimal operator is not strictly positive for these parameters");
  }
  return r;
}

double herglotz_min_eig(const DonoghueValue& v, cplx z) {
  if (v.dim == 1) return (v.m(0, 0).imag()) / z.imag();
  const Mat2 h = (v.m - v.m.adjoint()) / (2.0 * kI * z.imag());
  Eigen::SelfAdjointEigenSolver<Mat2> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double herglotz_floor(cplx z) {
  const double r2 = std::norm(z);
  return 2.0 / ((r2 + 1.0) + std::sqrt((r2 - 1.0) * (r2 - 1.0) + 4.0 * z.real() * z.real()));
}

}  // namespace jacobi
