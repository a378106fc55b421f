#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "coophunt/stability.hpp"

namespace coophunt {

enum class AttractorKind {
  FixedPoint,
  InvariantLoop,
  BoundaryPreyOnly,  // prey at carrying level, predator extinct
  Origin,
  Unclassified
};

std::string to_string(AttractorKind k);

// Tail statistics of a long orbit.  The radius figures are measured about
// the tail mean; liminf proxies are the tail minima per coordinate.
struct OrbitSummary {
  AttractorKind kind = AttractorKind::Unclassified;
  State center{};
  double mean_radius = 0;
  double radius_cv = 0;     // tail radius spread / mean
  double radius_drift = 0;  // relative mean-radius change between half-windows
  double tail_diameter = 0;
  double tail_min_x = 0, tail_min_y = 0;
  double tail_max_x = 0, tail_max_y = 0;
  std::size_t steps_used = 0;
};

// Classifies the attractor reached from s0 after `burn_in` steps, judged
// over the next `window` steps.  Labels, in test order:
//   Origin            every tail point within 1e-6 of (0, 0)
//   BoundaryPreyOnly  every tail point within 1e-6 of (x_bar, 0)
//   FixedPoint        tail diameter < 1e-7
//   InvariantLoop     tail diameter > 1e-5, radius spread/mean < 0.5,
//                     mean radius drift between half-windows < 1%
//   Unclassified      anything else
OrbitSummary classify_orbit(const State& s0, const Params& p,
                            std::size_t burn_in = 20000,
                            std::size_t window = 5000);

// Deterministic uniform draws, identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return (gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 gen_;
};

struct PersistenceReport {
  double min_tail_x = 0, min_tail_y = 0;  // worst tail minima over trials
  int trials = 0;
  std::uint64_t seed = 0;
  bool persistent = false;  // both minima above 1e-6
};

// Runs `trials` orbits from initial states drawn uniformly from
// [1e-3, x_bar]^2 and reports the worst tail minima.  Requires lambda > 1.
PersistenceReport persistence_check(const Params& p, int trials = 50,
                                    std::uint64_t seed = 42,
                                    std::size_t burn_in = 20000,
                                    std::size_t window = 5000);

struct BasinSpec {
  double x_min = 0.1, x_max = 4.5;
  double y_min = 0.05, y_max = 0.6;
  int nx = 32, ny = 32;
  std::size_t burn_in = 20000;
  std::size_t window = 5000;
};

struct BasinGrid {
  BasinSpec spec;
  std::vector<AttractorKind> labels;  // row-major, y outer, x inner
};

BasinGrid basin_scan(const Params& p, const BasinSpec& spec);

struct SweepRow {
  double beta = 0;
  std::vector<Equilibrium> equilibria;
  std::vector<StabilityClass> classes;  // parallel to equilibria
  OrbitSummary orbit;
};

// Equilibria, their classifications, and one orbit classification per
// conversion value on a uniform grid.  When s0 is absent the orbit starts
// near the highest interior equilibrium at that beta (or at a fixed fallback
// off the axes).
std::vector<SweepRow> beta_sweep(double lambda, double alpha, double beta_min,
                                 double beta_max, int samples,
                                 std::optional<State> s0 = std::nullopt,
                                 std::size_t burn_in = 20000,
                                 std::size_t window = 5000);

}  // namespace coophunt
