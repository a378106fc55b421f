#pragma once

#include <complex>
#include <optional>
#include <string>

#include "coophunt/equilibria.hpp"

namespace coophunt {

// Local linearization at a state, with the usual planar invariants.
struct Jacobian2 {
  double a11 = 0, a12 = 0, a21 = 0, a22 = 0;
  double det = 0, tr = 0;
  std::complex<double> eig1, eig2;
};

Jacobian2 jacobian(const State& s, const Params& p);

// Jacobian determinant along the interior-equilibrium branch, as a function
// of the equilibrium ordinate alone (beta drops out):
//
//   det(y) = y (1 + 2 a y) / (lambda (1 - exp(-d))) + y (1 + 2 a y)
//
// det(0+) = 1/lambda and det is strictly increasing on (0, y_c).
double interior_det(double y, const Params& p);

// The ordinate y_d in (0, y_c) where interior_det crosses 1.  Exists for
// every lambda > 1 since det(0+) = 1/lambda < 1 and det(y_c) > 1.
double det_unity_ordinate(const Params& p);

// Margin V(y) = 1 + det(y) - tr(y) along the interior branch.  V(0) = 0;
// a sign change at y_t marks loss of the saddle/no-saddle dichotomy.
double stability_margin(double y, const Params& p);

// V'(0) = ((3 lambda - 1) - 2 alpha (lambda - 1)) / (2 lambda).
double stability_margin_slope_at_zero(const Params& p);

// Smallest root of V on (0, y_c), present exactly when the cooperation
// excess is positive.  Requires lambda > 1 and 2 alpha > 1.
std::optional<double> margin_root(const Params& p);

// Conversion level beta_d at which the interior equilibrium sits on the
// unit-determinant ordinate y_d: beta_d = y_d / ((lambda e^{-d} - 1)(1 - e^{-d})).
// Throws RegimeError when lambda <= 1 or when beta_d falls outside the
// interior-equilibrium window (no admissible crossing).  beta_max > 0 caps
// the search; 0 means the default cap 50 / x_bar.
double ns_threshold(double lambda, double alpha, double beta_max = 0.0);

enum class StabilityTag { Sink, Saddle, Source, NonHyperbolic };

std::string to_string(StabilityTag t);

struct StabilityClass {
  StabilityTag tag = StabilityTag::Sink;
  // Jury margins: positive values certify 1 - det, 1 + tr + det, 1 - tr + det.
  double jury_det = 0, jury_sum = 0, jury_diff = 0;
  bool marginal = false;  // some margin within 1e-6: near a boundary
  double mod1 = 0, mod2 = 0;
};

StabilityClass classify(const Equilibrium& e, const Params& p);

// The critical ordinates and conversion thresholds of a (lambda, alpha)
// family, each absent when its defining condition fails.
struct CriticalSet {
  std::optional<double> x_bar;
  std::optional<double> y_c;
  std::optional<double> y_d;
  std::optional<double> y_t;
  std::optional<double> beta_star;
  std::optional<double> beta_d;
};

CriticalSet critical_set(const Params& p);

// Sufficient condition for predator extinction from every initial state:
//   2a <= 1:  beta x_bar < 1
//   2a  > 1:  beta x_bar sqrt(2a) exp((1-2a)/(4a)) < 1
bool global_extinction_condition(const Params& p);

// Sufficient condition for uniform persistence: lambda > 1 and
// beta (lambda - 1) > 1.
bool persistence_condition(const Params& p);

}  // namespace coophunt
