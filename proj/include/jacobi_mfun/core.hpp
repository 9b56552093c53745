#pragma once

#include <array>
#include <string>

#include "jacobi_mfun/types.hpp"

namespace jacobi {

enum class Endpoint { Minus = -1, Plus = 1 };

enum class EndpointClass { Regular, LimitCircle, LimitPoint };

// Parameter regimes. I..VI: limit point at +1, limit circle (or regular) at -1.
// MirroredOneLC: the reflected situation (limit point at -1 only).
enum class Regime { I, II, III, IV, V, VI, TwoLC, MirroredOneLC, BothLP };

struct Coefficients {
  double p;
  double q;
  double r;
};

Coefficients coefficients(const Params& prm, double x);
Coefficients coefficients(const Params& prm, const Point& pt);

EndpointClass classify_endpoint(const Params& prm, Endpoint e);
Regime regime(const Params& prm);
// dim N_{+-i}: number of endpoints that are not limit point.
int deficiency_index(const Params& prm);

std::string to_string(EndpointClass c);
std::string to_string(Regime r);

// [(1+alpha+beta)^2 + 4z]^{1/2}, principal branch.
cplx sigma(const Params& prm, cplx z);
// sigma_{a,-b}(z+(1+a)b), sigma_{-a,b}(z+(1+b)a), sigma_{-a,-b}(z+a+b).
std::array<cplx, 3> sigma_shift_identity(const Params& prm, cplx z);

// Hypergeometric parameters a = (1+alpha+beta+sigma)/2, b = (1+alpha+beta-sigma)/2.
struct HypParams {
  cplx a;
  cplx b;
};
HypParams hyp_params(const Params& prm, cplx z);
// Same with an explicit branch of sigma, for branch-invariance checks.
HypParams hyp_params(const Params& prm, cplx z, cplx sig);

cplx wronskian(const SolutionValue& f, const SolutionValue& g);

}  // namespace jacobi
