#pragma once

#include <array>
#include <vector>

#include "jacobi_mfun/boundary.hpp"
#include "jacobi_mfun/core.hpp"
#include "jacobi_mfun/types.hpp"

namespace jacobi {

// Weyl-Titchmarsh function for the Friedrichs condition at the limit
// circle endpoint. Regimes I..VI directly; for the mirrored regime (limit
// point at -1) the value of the reflected expression (alpha <-> beta,
// x -> -x) is returned, whose limit circle endpoint is again -1.
cplx m_weyl(const Params& prm, cplx z);

// theta + m phi, square integrable near the limit point endpoint. In the
// mirrored regime the reflected solution is mapped back to x.
SolutionValue weyl_solution(const Params& prm, cplx z, const Point& pt);
SolutionValue weyl_solution(const Params& prm, cplx z, double x);

// Solutions with boundary values (u1~(-1), u1~(1)) = (0,1) and
// (u2~(-1), u2~(1)) = (1,0), alpha and beta in (-1,1).
struct UData {
  std::array<cplx, 2> u1;  // coefficients in (y_{1,-1}, y_{2,-1})
  std::array<cplx, 2> u2;
  BoundaryData bv1;
  BoundaryData bv2;
};
UData u_data(const Params& prm, cplx z);

struct U1U2 {
  SolutionValue u1;
  SolutionValue u2;
};
U1U2 u1_u2(const Params& prm, cplx z, const Point& pt);
U1U2 u1_u2(const Params& prm, cplx z, double x);

// phi~(z,1) in the two limit circle regime; its zeros are the Friedrichs
// eigenvalues.
cplx friedrichs_characteristic(const Params& prm, cplx z);

// First n_max+1 Friedrichs eigenvalues in closed form.
std::vector<double> friedrichs_spectrum(const Params& prm, int n_max);

// The zero-energy solution int_0^x (1-t)^{-1-alpha} (1+t)^{-1-beta} dt
// (quasi-derivative identically 1), evaluated without cancellation near
// either endpoint.
SolutionValue zero_energy_solution(const Params& prm, const Point& pt);

}  // namespace jacobi
