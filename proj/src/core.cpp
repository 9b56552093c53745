#include "jacobi_mfun/core.hpp"

#include <cmath>

#include "jacobi_mfun/errors.hpp"

namespace jacobi {

Coefficients coefficients(const Params& prm, double x) {
  if (!(x > -1.0 && x < 1.0)) throw DomainError("coefficients: x must lie in (-1,1)");
  return coefficients(prm, Point::at(x));
}

Coefficients coefficients(const Params& prm, const Point& pt) {
  const double wm = std::pow(pt.dist_plus, prm.alpha) * std::pow(pt.dist_minus, prm.beta);
  return {wm * pt.dist_plus * pt.dist_minus, 0.0, wm};
}

EndpointClass classify_endpoint(const Params& prm, Endpoint e) {
  const double v = e == Endpoint::Minus ? prm.beta : prm.alpha;
  if (v > -1.0 && v < 0.0) return EndpointClass::Regular;
  if (v >= 0.0 && v < 1.0) return EndpointClass::LimitCircle;
  return EndpointClass::LimitPoint;
}

Regime regime(const Params& prm) {
  const bool lp_plus = classify_endpoint(prm, Endpoint::Plus) == EndpointClass::LimitPoint;
  const bool lp_minus = classify_endpoint(prm, Endpoint::Minus) == EndpointClass::LimitPoint;
  if (lp_plus && lp_minus) return Regime::BothLP;
  if (!lp_plus && !lp_minus) return Regime::TwoLC;
  if (lp_minus) return Regime::MirroredOneLC;
  const int col = prm.beta < 0.0 ? 0 : (prm.beta == 0.0 ? 1 : 2);
  static constexpr Regime kUpper[3] = {Regime::I, Regime::II, Regime::III};
  static constexpr Regime kLower[3] = {Regime::IV, Regime::V, Regime::VI};
  return prm.alpha >= 1.0 ? kUpper[col] : kLower[col];
}

int deficiency_index(const Params& prm) {
  int n = 0;
  if (classify_endpoint(prm, Endpoint::Minus) != EndpointClass::LimitPoint) ++n;
  if (classify_endpoint(prm, Endpoint::Plus) != EndpointClass::LimitPoint) ++n;
  return n;
}

std::string to_string(EndpointClass c) {
  switch (c) {
    case EndpointClass::Regular: return "Regular";
    case EndpointClass::LimitCircle: return "LimitCircle";
    case EndpointClass::LimitPoint: return "LimitPoint";
  }
  return "?";
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::I: return "I";
    case Regime::II: return "II";
    case Regime::III: return "III";
    case Regime::IV: return "IV";
    case Regime::V: return "V";
    case Regime::VI: return "VI";
    case Regime::TwoLC: return "TwoLC";
    case Regime::MirroredOneLC: return "MirroredOneLC";
    case Regime::BothLP: return "BothLP";
  }
  return "?";
}

cplx sigma(const Params& prm, cplx z) {
  const double s = 1.0 + prm.alpha + prm.beta;
  return std::sqrt(s * s + 4.0 * z);
}

std::array<cplx, 3> sigma_shift_identity(const Params& prm, cplx z) {
  const double a = prm.alpha, b = prm.beta;
  return {sigma({a, -b}, z + (1.0 + a) * b), sigma({-a, b}, z + (1.0 + b) * a),
          sigma({-a, -b}, z + a + b)};
}

HypParams hyp_params(const Params& prm, cplx z, cplx sig) {
  (void)z;
  const double s = 1.0 + prm.alpha + prm.beta;
  return {0.5 * (s + sig), 0.5 * (s - sig)};
}

HypParams hyp_params(const Params& prm, cplx z) { return hyp_params(prm, z, sigma(prm, z)); }

cplx wronskian(const SolutionValue& f, const SolutionValue& g) { return f.y * g.yq - f.yq * g.y; }

}  // namespace jacobi
