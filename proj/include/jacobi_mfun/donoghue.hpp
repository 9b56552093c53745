#pragma once

#include <Eigen/Dense>
#include <string>
#include <variant>

#include "jacobi_mfun/boundary.hpp"
#include "jacobi_mfun/mweyl.hpp"
#include "jacobi_mfun/types.hpp"

namespace jacobi {

using Mat2 = Eigen::Matrix2cd;
using RealMat2 = Eigen::Matrix2d;

// cos(gamma) g~(-1) + sin(gamma) g~'(-1) = 0, cos(delta) g~(1) + sin(delta) g~'(1) = 0.
struct Separated {
  double gamma = 0.0;
  double delta = 0.0;
};
// (g~(1), g~'(1)) = e^{i phi} R (g~(-1), g~'(-1)), det R = 1.
struct Coupled {
  double phi = 0.0;
  RealMat2 R = RealMat2::Identity();
};
// Single limit circle endpoint: cos(gamma) g~ + sin(gamma) g~' = 0 there.
struct OneLC {
  double gamma = 0.0;
};
// Krein-von Neumann extension (coupled, phi = 0, R = krein_R).
struct Krein {};

using ExtensionSpec = std::variant<Separated, Coupled, OneLC, Krein>;

std::string describe(const ExtensionSpec& ext);

// Orthonormal basis v1 = c1 u1(i), v2 = c2 (u2(i) - ratio u1(i)) of the
// defect space at i, with the boundary data needed by the matrix formulas.
struct DefectBasis {
  Params prm;
  double c1 = 0.0;
  double c2 = 0.0;
  double ratio = 0.0;
  UData at_i;
  UData at_minus_i;
  BoundaryData v1;
  BoundaryData v2;
};
DefectBasis defect_basis(const Params& prm);

// (f, g) in L^2(r dx) for tau f = z1 f, tau g = z2 g, through the endpoint
// Wronskians of the boundary data. Throws DegenerateCase when z2 = conj(z1).
cplx inner_product_solutions(cplx z1, const BoundaryData& f, cplx z2, const BoundaryData& g);

Mat2 w_matrix(const DefectBasis& db, cplx z);
Mat2 wkr_matrix(const DefectBasis& db, cplx z);
// K matrix of a separated (both angles nonzero), coupled (R12 != 0) or
// Krein extension.
Mat2 k_matrix(const ExtensionSpec& ext, const Params& prm, cplx z);

struct DonoghueValue {
  int dim = 2;
  Mat2 m = Mat2::Zero();
};

DonoghueValue m_donoghue(const ExtensionSpec& ext, const Params& prm, cplx z);
// Two limit circle endpoints with a precomputed basis.
DonoghueValue m_donoghue(const ExtensionSpec& ext, const DefectBasis& db, cplx z);

// R for the Krein-von Neumann extension in the strictly positive cases.
RealMat2 krein_R(const Params& prm);

// Smallest eigenvalue of (M - M^*)/(2i Im z) and the lower bound
// 2 / [(|z|^2+1) + sqrt((|z|^2-1)^2 + 4 (Re z)^2)] it must respect.
double herglotz_min_eig(const DonoghueValue& v, cplx z);
double herglotz_floor(cplx z);

}  // namespace jacobi
