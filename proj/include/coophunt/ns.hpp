#pragma once

#include <array>
#include <complex>
#include <string>

#include "coophunt/stability.hpp"

namespace coophunt {

// Taylor coefficients of the origin-shifted map at an interior equilibrium,
// through third order.  For the prey component (X' = a11 X + a12 Y + ...):
// b1..b7 multiply X^2, XY, Y^2, X^3, X^2 Y, X Y^2, Y^3.  For the predator
// component: c1..c4 multiply XY, Y^2, Y^3, X Y^2 (the other cubics vanish).
struct QuadCoeffs {
  std::array<double, 7> b{};
  std::array<double, 4> c{};
};

QuadCoeffs shift_coefficients(const Equilibrium& e, const Params& p);

// Linear frame (u,v) in which the critical linear part is the
// rotation-scaling [[mu, -omega], [omega, mu]]: (X,Y) = L (u,v) with
// L = [[a12, 0], [mu - a11, -omega]].
struct NormalFrame {
  double mu = 0, omega = 0;
  double l11 = 0, l12 = 0, l21 = 0, l22 = 0;
};

// Requires a complex eigenvalue pair; real eigenvalues are a regime error
// (not a rotation point), a12 ~ 0 a degenerate transform.
NormalFrame linearizing_transform(const Jacobian2& j);

// Nonlinearity in the rotated frame: u' = mu u - omega v + (1/a12) * sum,
// v' = omega u + mu v + sum, with k1..k7 / l1..l7 multiplying
// u^2, v^2, uv, u^3, v^3, u^2 v, u v^2.
struct UVCoeffs {
  std::array<double, 7> k{};
  std::array<double, 7> l{};
};

UVCoeffs uv_coefficients(const QuadCoeffs& q, const NormalFrame& fr,
                         double a11, double a12);

struct XiSet {
  std::complex<double> xi20, xi11, xi02, xi21;
};

XiSet xi_coefficients(const UVCoeffs& uv, double a12);

// Direction coefficient
//   C* = Re((1-2L+)L-^2/(1-L+) xi20 xi11) + |xi11|^2/2 + |xi02|^2
//        - Re(L- xi21),   L+- = mu +- i omega.
// Positive: an attracting invariant circle exists just past the crossing.
double c_star_value(const XiSet& xi, double mu, double omega);

enum class Direction { Supercritical, Subcritical, Inconclusive };

std::string to_string(Direction d);

struct NSReport {
  double lambda = 0, alpha = 0;
  double beta_d = 0;
  double mu = 0, omega = 0;
  Equilibrium equilibrium;
  double transversality = 0;  // d|eigenvalue|/dbeta across the crossing
  bool resonance_clear = false;
  QuadCoeffs quad;
  UVCoeffs uv;
  XiSet xi;
  double c_star = 0;
  Direction direction = Direction::Inconclusive;
  std::string diagnostic;  // empty when everything cross-validates
};

// Full analysis of the eigenvalue crossing at beta_d for a (lambda, alpha)
// family.  Transversality uses the identity d|eig|/dbeta = (d det/dbeta)/2
// with a centered difference along the equilibrium branch.  A supercritical
// verdict is cross-checked by simulation on both sides of beta_d; a mismatch
// is reported in `diagnostic`, never silently flipped.
NSReport ns_report(double lambda, double alpha, double beta_max = 0.0);

}  // namespace coophunt
