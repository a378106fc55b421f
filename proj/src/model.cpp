#include "coophunt/model.hpp"

#include <cmath>
#include <string>

namespace coophunt {

double Params::x_bar() const {
  if (!(lambda > 1.0)) throw RegimeError("x_bar requires lambda > 1");
  return lambda - 1.0;
}

void validate(const Params& p) {
  if (!std::isfinite(p.lambda) || !std::isfinite(p.beta) || !std::isfinite(p.alpha))
    throw std::invalid_argument("parameters must be finite");
  if (!(p.lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (!(p.beta > 0.0)) throw std::invalid_argument("beta must be positive");
  if (p.alpha < 0.0) throw std::invalid_argument("alpha must be nonnegative");
}

Params nondimensionalize(const RawParams& rp) {
  if (!std::isfinite(rp.search_rate) || !(rp.search_rate > 0.0))
    throw std::invalid_argument("search rate must be positive");
  if (!std::isfinite(rp.crowding) || !(rp.crowding > 0.0))
    throw std::invalid_argument("crowding must be positive");
  Params p{rp.lambda, rp.conversion * rp.search_rate / rp.crowding,
           rp.cooperation / rp.search_rate};
  validate(p);
  return p;
}

double diamond(double y, double alpha) { return y * (1.0 + alpha * y); }

State step(const State& s, const Params& p) {
  if (!std::isfinite(s.x) || !std::isfinite(s.y))
    throw std::invalid_argument("state must be finite");
  if (s.x < 0.0 || s.y < 0.0)
    throw std::invalid_argument("state must be nonnegative");
  const double d = s.y * (1.0 + p.alpha * s.y);
  // 1 - exp(-d) via expm1: tiny predator densities must stay positive
  // instead of being absorbed onto the x-axis.
  return {p.lambda * s.x / (1.0 + s.x) * std::exp(-d),
          p.beta * s.x * -std::expm1(-d)};
}

std::vector<State> orbit(State s0, const Params& p, std::size_t n) {
  validate(p);
  std::vector<State> out;
  out.reserve(n + 1);
  out.push_back(s0);
  for (std::size_t i = 0; i < n; ++i) {
    s0 = step(s0, p);
    if (!std::isfinite(s0.x) || !std::isfinite(s0.y))
      throw ConvergenceError("orbit diverged to a non-finite value at step " +
                             std::to_string(i + 1));
    out.push_back(s0);
  }
  return out;
}

}  // namespace coophunt
