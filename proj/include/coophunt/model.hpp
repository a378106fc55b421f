#pragma once

#include <stdexcept>
#include <vector>

namespace coophunt {

// Dimensionless predator-prey map with cooperative hunting:
//
//   x' = lambda * x / (1 + x) * exp(-d(y))
//   y' = beta * x * (1 - exp(-d(y)))
//
// where d(y) = y * (1 + alpha * y) is the cooperation-adjusted predation
// exposure.  Prey growth is Beverton-Holt, predation is Nicholson-Bailey
// with an attack rate that increases with predator density when alpha > 0.

struct Params {
  double lambda = 0;  // prey per-capita growth factor at low density
  double beta = 0;    // predator conversion efficiency
  double alpha = 0;   // hunting-cooperation strength (0 = none)

  // Prey-only carrying level lambda - 1.  Only defined for lambda > 1.
  double x_bar() const;
};

// Parameters of the unscaled map; x is measured in crowding units k,
// y in units of the search rate a.
struct RawParams {
  double lambda = 0;
  double search_rate = 0;  // a
  double crowding = 0;     // k
  double conversion = 0;   // unscaled beta
  double cooperation = 0;  // unscaled alpha
};

struct State {
  double x = 0;
  double y = 0;
};

// A quantity was requested outside the parameter regime where it exists.
struct RegimeError : std::domain_error {
  using std::domain_error::domain_error;
};

// An iterative solve failed to reach its tolerance, or an orbit left the
// representable range.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Throws std::invalid_argument unless lambda > 0, beta > 0, alpha >= 0,
// all finite.
void validate(const Params& p);

Params nondimensionalize(const RawParams& rp);

// d(y) = y * (1 + alpha * y)
double diamond(double y, double alpha);

// One iteration of the map.  Rejects non-finite or negative states.
State step(const State& s, const Params& p);

// s0 and its next n iterates, in order.  Throws ConvergenceError if an
// iterate overflows to a non-finite value.
std::vector<State> orbit(State s0, const Params& p, std::size_t n);

}  // namespace coophunt
