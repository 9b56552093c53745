#pragma once

#include <complex>

namespace jacobi {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;

struct Params {
  double alpha = 0.0;
  double beta = 0.0;
};

// Value and quasi-derivative y^{[1]} = p y' of a solution at one point.
struct SolutionValue {
  cplx y;
  cplx yq;
};

inline SolutionValue operator+(SolutionValue a, SolutionValue b) { return {a.y + b.y, a.yq + b.yq}; }
inline SolutionValue operator-(SolutionValue a, SolutionValue b) { return {a.y - b.y, a.yq - b.yq}; }
inline SolutionValue operator*(cplx c, SolutionValue a) { return {c * a.y, c * a.yq}; }
inline SolutionValue conj(SolutionValue a) { return {std::conj(a.y), std::conj(a.yq)}; }

// A point of (-1,1) with both endpoint distances stored exactly, so that
// evaluation close to an endpoint never forms 1 - x by cancellation.
struct Point {
  double x;
  double dist_minus;  // 1 + x
  double dist_plus;   // 1 - x

  static Point at(double x) { return {x, 1.0 + x, 1.0 - x}; }
  static Point near_minus(double s) { return {-1.0 + s, s, 2.0 - s}; }
  static Point near_plus(double s) { return {1.0 - s, 2.0 - s, s}; }
};

}  // namespace jacobi
