#include "coophunt/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace coophunt {

std::string to_string(AttractorKind k) {
  switch (k) {
    case AttractorKind::FixedPoint: return "FixedPoint";
    case AttractorKind::InvariantLoop: return "InvariantLoop";
    case AttractorKind::BoundaryPreyOnly: return "BoundaryPreyOnly";
    case AttractorKind::Origin: return "Origin";
    default: return "Unclassified";
  }
}

OrbitSummary classify_orbit(const State& s0, const Params& p,
                            std::size_t burn_in, std::size_t window) {
  validate(p);
  if (burn_in < 1000 || window < 1000)
    throw std::invalid_argument("classify_orbit: need burn_in and window >= 1000");

  State s = s0;
  for (std::size_t i = 0; i < burn_in; ++i) s = step(s, p);
  std::vector<State> tail;
  tail.reserve(window);
  for (std::size_t i = 0; i < window; ++i) {
    tail.push_back(s);
    s = step(s, p);
  }

  OrbitSummary out;
  out.steps_used = burn_in + window;
  out.tail_min_x = out.tail_max_x = tail.front().x;
  out.tail_min_y = out.tail_max_y = tail.front().y;
  double cx = 0, cy = 0;
  for (const State& t : tail) {
    out.tail_min_x = std::min(out.tail_min_x, t.x);
    out.tail_max_x = std::max(out.tail_max_x, t.x);
    out.tail_min_y = std::min(out.tail_min_y, t.y);
    out.tail_max_y = std::max(out.tail_max_y, t.y);
    cx += t.x;
    cy += t.y;
  }
  cx /= tail.size();
  cy /= tail.size();
  out.center = {cx, cy};
  out.tail_diameter = std::max(out.tail_max_x - out.tail_min_x,
                               out.tail_max_y - out.tail_min_y);

  double r_sum = 0, r2_sum = 0, r_first = 0, r_second = 0;
  const std::size_t half = tail.size() / 2;
  for (std::size_t i = 0; i < tail.size(); ++i) {
    const double r = std::hypot(tail[i].x - cx, tail[i].y - cy);
    r_sum += r;
    r2_sum += r * r;
    (i < half ? r_first : r_second) += r;
  }
  out.mean_radius = r_sum / tail.size();
  if (out.mean_radius > 0.0) {
    const double var =
        std::max(0.0, r2_sum / tail.size() - out.mean_radius * out.mean_radius);
    out.radius_cv = std::sqrt(var) / out.mean_radius;
    out.radius_drift = std::fabs(r_second / (tail.size() - half) -
                                 r_first / half) /
                       out.mean_radius;
  }

  const auto within = [&](double x0, double y0) {
    return std::max(std::fabs(out.tail_min_x - x0),
                    std::fabs(out.tail_max_x - x0)) <= 1e-6 &&
           std::max(std::fabs(out.tail_min_y - y0),
                    std::fabs(out.tail_max_y - y0)) <= 1e-6;
  };
  if (within(0.0, 0.0)) {
    out.kind = AttractorKind::Origin;
  } else if (p.lambda > 1.0 && within(p.x_bar(), 0.0)) {
    out.kind = AttractorKind::BoundaryPreyOnly;
  } else if (out.tail_diameter < 1e-7) {
    out.kind = AttractorKind::FixedPoint;
  } else if (out.tail_diameter > 1e-5 && out.radius_cv < 0.5 &&
             out.radius_drift < 0.01) {
    out.kind = AttractorKind::InvariantLoop;
  } else {
    out.kind = AttractorKind::Unclassified;
  }
  return out;
}

PersistenceReport persistence_check(const Params& p, int trials,
                                    std::uint64_t seed, std::size_t burn_in,
                                    std::size_t window) {
  validate(p);
  if (!(p.lambda > 1.0))
    throw RegimeError("persistence_check requires lambda > 1");
  if (trials < 1) throw std::invalid_argument("persistence_check: trials >= 1");
  Rng rng(seed);
  PersistenceReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.min_tail_x = rep.min_tail_y = std::numeric_limits<double>::infinity();
  const double hi = p.x_bar();
  for (int t = 0; t < trials; ++t) {
    State s{rng.uniform(1e-3, hi), rng.uniform(1e-3, hi)};
    for (std::size_t i = 0; i < burn_in; ++i) s = step(s, p);
    for (std::size_t i = 0; i < window; ++i) {
      rep.min_tail_x = std::min(rep.min_tail_x, s.x);
      rep.min_tail_y = std::min(rep.min_tail_y, s.y);
      s = step(s, p);
    }
  }
  rep.persistent = rep.min_tail_x > 1e-6 && rep.min_tail_y > 1e-6;
  return rep;
}

BasinGrid basin_scan(const Params& p, const BasinSpec& spec) {
  validate(p);
  if (spec.nx < 1 || spec.ny < 1)
    throw std::invalid_argument("basin_scan: grid must be at least 1x1");
  if (!(spec.x_min <= spec.x_max) || !(spec.y_min <= spec.y_max))
    throw std::invalid_argument("basin_scan: empty range");
  BasinGrid grid;
  grid.spec = spec;
  grid.labels.reserve(static_cast<std::size_t>(spec.nx) * spec.ny);
  for (int iy = 0; iy < spec.ny; ++iy) {
    const double y = spec.ny == 1 ? spec.y_min
                                  : spec.y_min + (spec.y_max - spec.y_min) *
                                                     iy / (spec.ny - 1);
    for (int ix = 0; ix < spec.nx; ++ix) {
      const double x = spec.nx == 1 ? spec.x_min
                                    : spec.x_min + (spec.x_max - spec.x_min) *
                                                       ix / (spec.nx - 1);
      grid.labels.push_back(
          classify_orbit({x, y}, p, spec.burn_in, spec.window).kind);
    }
  }
  return grid;
}

std::vector<SweepRow> beta_sweep(double lambda, double alpha, double beta_min,
                                 double beta_max, int samples,
                                 std::optional<State> s0, std::size_t burn_in,
                                 std::size_t window) {
  if (samples < 1) throw std::invalid_argument("beta_sweep: samples >= 1");
  if (!(beta_min > 0.0) || !(beta_max >= beta_min))
    throw std::invalid_argument("beta_sweep: need 0 < beta_min <= beta_max");
  std::vector<SweepRow> rows;
  rows.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    SweepRow row;
    row.beta = samples == 1 ? beta_min
                            : beta_min + (beta_max - beta_min) * i / (samples - 1);
    const Params p{lambda, row.beta, alpha};
    validate(p);
    row.equilibria = all_equilibria(p);
    for (const Equilibrium& e : row.equilibria)
      row.classes.push_back(classify(e, p));
    State start{0.5, 0.05};
    if (s0) {
      start = *s0;
    } else {
      const Equilibrium* top = nullptr;
      for (const Equilibrium& e : row.equilibria)
        if (e.kind == EquilibriumKind::Interior) top = &e;
      if (top) {
        start = {top->state.x + 1e-2, top->state.y + 1e-2};
      } else if (lambda > 1.0) {
        start = {p.x_bar() / 2.0, 0.05};
      }
    }
    row.orbit = classify_orbit(start, p, burn_in, window);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace coophunt
