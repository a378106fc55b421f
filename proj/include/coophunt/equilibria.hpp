#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coophunt/model.hpp"

namespace coophunt {

// Steady states of the map.  Both isoclines are written as x in terms of y:
//
//   prey isocline     x = f(y) = lambda * exp(-d(y)) - 1
//   predator isocline x = h(y) = y / (beta * (1 - exp(-d(y))))
//
// Interior steady states are the intersections with 0 < y < y_c, where
// y_c solves exp(d(y_c)) = lambda.  Equivalently they are the fixed points
// of the recruitment curve w(y) = beta * f(y) * (1 - exp(-d(y))), the
// predator update evaluated along the prey isocline.

enum class EquilibriumKind { Origin, PreyOnly, Interior };

std::string to_string(EquilibriumKind k);

struct Equilibrium {
  State state{};
  EquilibriumKind kind = EquilibriumKind::Interior;
  double residual = 0;    // max of isocline gap and fixed-point defect
  int multiplicity = 1;   // 2 marks a tangency double root
};

// Root-finder knobs.
struct SolveOptions {
  int scan_points = 4096;        // bracketing grid over (0, y_c)
  double root_width = 1e-13;     // bisection interval width before polish
  double boundary_guard = 1e-8;  // discard roots this close to 0 or y_c
  double double_root_tol = 1e-10;
};

double isocline_h(double y, const Params& p);
double isocline_f(double y, const Params& p);
double isocline_h_prime(double y, const Params& p);
double isocline_f_prime(double y, const Params& p);

// y_c, the predation level beyond which prey growth cannot compensate.
// Requires lambda > 1.
double y_ceiling(const Params& p);

// w(y) above; w(0) = w(y_c) = 0 and w'(0) = beta * (lambda - 1).
double recruitment(double y, const Params& p);

// Interior steady states ordered by increasing y.  Scans w(y) - y on a
// uniform grid, bisects each sign change, then applies one Newton polish.
// A grid point with |w(y) - y| < double_root_tol but no sign change is
// reported once with multiplicity 2.
std::vector<Equilibrium> interior_equilibria(const Params& p,
                                             const SolveOptions& opt = {});

// Origin, the prey-only state (lambda > 1), then interior states.
std::vector<Equilibrium> all_equilibria(const Params& p,
                                        const SolveOptions& opt = {});

enum class CountBound { ExactlyZero, ExactlyOne, AtMostTwo };

struct RegimeReport {
  std::optional<double> x_bar;               // absent when lambda <= 1
  std::optional<double> predator_rmax;       // beta * x_bar
  std::optional<double> cooperation_excess;  // 2a - (3L-1)/(L-1)
  CountBound bound = CountBound::ExactlyZero;
  // predator_rmax within 1e-12 of 1: the count is not classified by the
  // regime table; `bound` then reports the rmax >= 1 side.
  bool boundary_unclassified = false;
};

RegimeReport regime(const Params& p);

// Isocline tangency: the fold point (beta_star, y_star) where the two-root
// window (beta_star, 1/x_bar) opens.  Requires lambda > 1 and positive
// cooperation excess.
struct TangencyResult {
  double beta_star = 0;
  double y_star = 0;
  double residual_gap = 0;    // |h - f| at the solution
  double residual_slope = 0;  // |h' - f'| at the solution
};

TangencyResult tangency(double lambda, double alpha);

// Checks the ordering chain of critical ordinates for p's (lambda, alpha)
// family: 0 < y1* < y_star < y2* < y_e < y_c in the two-root window, and
// y* > y_e when predator_rmax > 1, where y_e is the equilibrium ordinate
// at beta = 1/x_bar.  Requires a positive cooperation excess.
bool ordering_check(const Params& p);

}  // namespace coophunt
