// Acceptance gate: one line per criterion, [PASS]/[FAIL] with the measured
// numbers on failure.  Exit code equals the number of failed criteria, so the
// suite is usable from ctest directly.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "coophunt/equilibria.hpp"
#include "coophunt/model.hpp"
#include "coophunt/ns.hpp"
#include "coophunt/sim.hpp"
#include "coophunt/stability.hpp"
#include "fd_oracle.hpp"

using namespace coophunt;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(10);
  ss << v;
  return ss.str();
}

void note(Outcome& o, const std::string& line) {
  o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += line;
}

// --- 1. tangency value and the two-equilibria window --------------------

Outcome c1_tangency() {
  Outcome o;
  const TangencyResult t = tangency(10.0, 15.0);
  if (std::fabs(t.beta_star - 0.066502) > 1e-4)
    note(o, "beta* = " + fmt(t.beta_star) + " not within 1e-4 of 0.066502");

  const double upper = 1.0 / Params{10.0, 0.09, 15.0}.x_bar();
  if (std::fabs(upper - 1.0 / 9.0) > 1e-12)
    note(o, "window top = " + fmt(upper) + " not within 1e-12 of 1/9");

  const auto count = [](double beta) {
    return interior_equilibria(Params{10.0, beta, 15.0}).size();
  };
  if (count(t.beta_star * 0.995) != 0)
    note(o, "interior count below beta* is not 0");
  if (count(t.beta_star * 1.005) != 2)
    note(o, "interior count just above beta* is not 2");
  if (count(0.5 * (t.beta_star + upper)) != 2)
    note(o, "interior count mid-window is not 2");
  if (count(upper * 1.02) != 1)
    note(o, "interior count above the window is not 1");
  return o;
}

// --- 2. interior-count bound and sign-change oracle over a grid ----------

Outcome c2_regime_grid() {
  Outcome o;
  int cells = 0;
  for (int i = 0; i < 10; ++i) {
    const double lam = 1.1 + i * (20.0 - 1.1) / 9.0;
    for (int j = 0; j < 10; ++j) {
      const double bet = 0.02 + j * (1.0 - 0.02) / 9.0;
      for (int k = 0; k < 10; ++k) {
        const double alp = k * 20.0 / 9.0;
        const Params p{lam, bet, alp};
        const int n = static_cast<int>(interior_equilibria(p).size());
        const RegimeReport rr = regime(p);
        ++cells;

        bool bound_ok = true;
        if (!rr.boundary_unclassified) {
          switch (rr.bound) {
            case CountBound::ExactlyZero: bound_ok = (n == 0); break;
            case CountBound::ExactlyOne: bound_ok = (n == 1); break;
            case CountBound::AtMostTwo: bound_ok = (n <= 2); break;
          }
        }
        if (!bound_ok) {
          note(o, "count " + std::to_string(n) + " violates bound at (" +
                      fmt(lam) + ", " + fmt(bet) + ", " + fmt(alp) + ")");
          return o;
        }

        // Independent count: sign changes of the isocline gap on a
        // 16384-point grid, written out from scratch.
        const double L = std::log(lam);
        const double yc = 2.0 * L / (1.0 + std::sqrt(1.0 + 4.0 * alp * L));
        const auto gap = [&](double y) {
          const double d = y * (1.0 + alp * y);
          const double e = -std::expm1(-d);  // 1 - exp(-d)
          return y / (bet * e) - (lam * std::exp(-d) - 1.0);
        };
        const int N = 16384;
        int oracle = 0;
        double prev = gap(yc * 1.0 / (N + 1));
        for (int m = 2; m <= N; ++m) {
          const double cur = gap(yc * m / (N + 1));
          if ((prev < 0.0) != (cur < 0.0)) ++oracle;
          prev = cur;
        }
        if (oracle != n) {
          note(o, "solver count " + std::to_string(n) + " vs oracle " +
                      std::to_string(oracle) + " at (" + fmt(lam) + ", " +
                      fmt(bet) + ", " + fmt(alp) + ")");
          return o;
        }
      }
    }
  }
  if (cells != 1000) note(o, "grid not fully covered");
  return o;
}

// --- 3. cooperation-excess reference values ------------------------------

Outcome c3_excess_quotes() {
  Outcome o;
  const struct {
    double lambda, alpha, quoted;
  } cases[] = {{15.0, 6.0 / 5.0, -0.743},
               {10.0, 15.0, 26.78},
               {10.0, 15.0 / 2.1, 11.0635},
               {10.0, 1.5 / 2.1, -1.7937}};
  for (const auto& c : cases) {
    const RegimeReport rr = regime(Params{c.lambda, 0.1, c.alpha});
    const double got = rr.cooperation_excess.value();
    if (std::fabs(got - c.quoted) > 5e-4)
      note(o, "excess(" + fmt(c.lambda) + ", " + fmt(c.alpha) + ") = " +
                  fmt(got) + " vs quoted " + fmt(c.quoted) + " (tol 5e-4)");
  }
  return o;
}

// --- 4. interior determinant: monotone, limit, unit crossing -------------

Outcome c4_det_properties() {
  Outcome o;
  Rng rng(4301);
  for (int t = 0; t < 100; ++t) {
    const double lam = rng.uniform(1.1, 20.0);
    const double alp = rng.uniform(0.0, 20.0);
    const Params p{lam, 0.1, alp};
    const double yc = y_ceiling(p);

    double prev = interior_det(yc * 1.0 / 2049.0, p);
    bool monotone = true;
    for (int i = 2; i <= 2048 && monotone; ++i) {
      const double cur = interior_det(yc * i / 2049.0, p);
      monotone = cur > prev;
      prev = cur;
    }
    if (!monotone) {
      note(o, "determinant not strictly increasing at (" + fmt(lam) + ", " +
                  fmt(alp) + ")");
      return o;
    }

    const double at0 = interior_det(1e-9 * yc, p);
    if (std::fabs(at0 - 1.0 / lam) > 1e-6) {
      note(o, "limit at 0+ off by " + fmt(std::fabs(at0 - 1.0 / lam)) +
                  " at (" + fmt(lam) + ", " + fmt(alp) + ")");
      return o;
    }

    const double yd = det_unity_ordinate(p);
    const double resid = std::fabs(interior_det(yd, p) - 1.0);
    if (resid > 1e-10) {
      note(o, "unit-determinant residual " + fmt(resid) + " at (" + fmt(lam) +
                  ", " + fmt(alp) + ")");
      return o;
    }
  }
  return o;
}

// --- 5. stability margin: origin value, slope, root existence ------------

Outcome c5_margin_properties() {
  Outcome o;
  Rng rng(5407);
  double worst0 = 0.0, worst_slope = 0.0;
  for (int t = 0; t < 100; ++t) {
    const double lam = rng.uniform(1.1, 20.0);
    const double alp = rng.uniform(0.0, 20.0);
    const Params p{lam, 0.1, alp};

    worst0 = std::max(worst0, std::fabs(stability_margin(1e-12, p)));

    const double h = 1e-6;
    const double fd =
        (stability_margin(h, p) - stability_margin(-h, p)) / (2.0 * h);
    const double formula = stability_margin_slope_at_zero(p);
    worst_slope = std::max(
        worst_slope,
        std::fabs(fd - formula) / std::max(1.0, std::fabs(formula)));
  }
  if (worst0 > 1e-9) note(o, "margin at 0+ reaches " + fmt(worst0));
  if (worst_slope > 1e-4)
    note(o, "slope mismatch reaches " + fmt(worst_slope));

  for (int t = 0; t < 100; ++t) {
    const double lam = rng.uniform(1.5, 12.0);
    const double alp = rng.uniform(0.55, 8.0);
    const Params p{lam, 0.1, alp};
    const double excess =
        2.0 * alp - (3.0 * lam - 1.0) / (lam - 1.0);
    const bool has_root = margin_root(p).has_value();
    if (has_root != (excess > 0.0)) {
      note(o, "root existence disagrees with excess sign at (" + fmt(lam) +
                  ", " + fmt(alp) + ")");
      return o;
    }
  }
  return o;
}

// --- 6. eigenvalue crossing of the reference family ----------------------

Outcome c6_reference_crossing() {
  Outcome o;
  const double alpha = 1.0 / 2.1;
  const NSReport r = ns_report(5.0, alpha);
  if (std::fabs(r.beta_d - 0.60) > 0.02)
    note(o, "beta_d = " + fmt(r.beta_d) + " not within 0.02 of 0.60");

  const Jacobian2 j =
      jacobian(r.equilibrium.state, Params{5.0, r.beta_d, alpha});
  const double mod1 = std::abs(j.eig1), mod2 = std::abs(j.eig2);
  if (std::fabs(mod1 - 1.0) > 1e-6 || std::fabs(mod2 - 1.0) > 1e-6)
    note(o, "moduli " + fmt(mod1) + ", " + fmt(mod2) + " not 1 +- 1e-6");

  if (!(r.transversality > 0.0))
    note(o, "transversality " + fmt(r.transversality) + " not positive");
  if (!(r.c_star > 0.0))
    note(o, "direction coefficient " + fmt(r.c_star) + " not positive");

  const auto probe = [&](double beta, AttractorKind want, const char* tag) {
    const Params p{5.0, beta, alpha};
    const auto eqs = interior_equilibria(p);
    if (eqs.empty()) {
      note(o, std::string(tag) + ": no interior equilibrium");
      return;
    }
    const State s0{eqs.back().state.x + 1e-2, eqs.back().state.y + 1e-2};
    const OrbitSummary s = classify_orbit(s0, p);
    if (s.kind != want)
      note(o, std::string(tag) + ": got " + to_string(s.kind));
  };
  probe(0.609, AttractorKind::InvariantLoop, "beta=0.609");
  probe(0.55, AttractorKind::FixedPoint, "beta=0.55");
  return o;
}

// --- 7. coefficient chain against the finite-difference oracle -----------

Outcome c7_coefficient_oracle() {
  Outcome o;
  Rng rng(7109);
  int done = 0;
  double worst = 0.0;
  while (done < 20) {
    const double lam = rng.uniform(2.0, 10.0);
    const double alp = rng.uniform(0.05, 1.6);
    double bd;
    try {
      bd = ns_threshold(lam, alp);
    } catch (const RegimeError&) {
      continue;
    }
    const double bet = bd * rng.uniform(0.97, 1.03);
    const Params p{lam, bet, alp};
    const auto eqs = interior_equilibria(p);
    if (eqs.empty()) continue;
    const double yd = det_unity_ordinate(p);
    const Equilibrium* e = &eqs.front();
    for (const Equilibrium& q : eqs)
      if (std::fabs(q.state.y - yd) < std::fabs(e->state.y - yd)) e = &q;

    const Jacobian2 j = jacobian(e->state, p);
    if (0.25 * j.tr * j.tr - j.det >= 0.0) continue;  // real pair: resample
    const NormalFrame fr = linearizing_transform(j);
    const QuadCoeffs q = shift_coefficients(*e, p);
    const UVCoeffs uv = uv_coefficients(q, fr, j.a11, j.a12);
    const XiSet xi = xi_coefficients(uv, j.a12);

    const fdoracle::MapPoint m{lam, bet, alp, e->state.x, e->state.y};
    const fdoracle::CoefficientSet fd =
        fdoracle::coefficients(m, j.a11, j.a12, fr.mu, fr.omega);

    const auto family = [&](const char* name, const double* lib,
                            const long double* ref, int n) {
      double fam_max = 0.0;
      for (int i = 0; i < n; ++i)
        fam_max = std::max(fam_max, std::fabs(static_cast<double>(ref[i])));
      const double floor_scale = std::max(1e-3 * fam_max, 1e-12);
      for (int i = 0; i < n; ++i) {
        const double want = static_cast<double>(ref[i]);
        const double scale = std::max(std::fabs(want), floor_scale);
        const double rel = std::fabs(lib[i] - want) / scale;
        worst = std::max(worst, rel);
        if (rel > 1e-5)
          note(o, std::string(name) + "[" + std::to_string(i) + "] off by " +
                      fmt(rel) + " rel at (" + fmt(lam) + ", " + fmt(bet) +
                      ", " + fmt(alp) + ")");
      }
    };
    family("b", q.b.data(), fd.b, 7);
    family("c", q.c.data(), fd.c, 4);
    family("k", uv.k.data(), fd.k, 7);
    family("l", uv.l.data(), fd.l, 7);
    const double xlib[8] = {xi.xi20.real(), xi.xi20.imag(), xi.xi11.real(),
                            xi.xi11.imag(), xi.xi02.real(), xi.xi02.imag(),
                            xi.xi21.real(), xi.xi21.imag()};
    const long double xref[8] = {fd.xi20.real(), fd.xi20.imag(),
                                 fd.xi11.real(), fd.xi11.imag(),
                                 fd.xi02.real(), fd.xi02.imag(),
                                 fd.xi21.real(), fd.xi21.imag()};
    family("xi", xlib, xref, 8);
    if (!o.pass) return o;
    ++done;
  }
  o.detail = "worst relative gap " + fmt(worst) + " over 20 points";
  return o;
}

// --- 8. bistable starts at strong cooperation ----------------------------

Outcome c8_bistability() {
  Outcome o;
  const double alpha = 20.0 / 2.1;
  const auto probe = [&](double beta, double x0, double y0,
                         AttractorKind want) {
    const OrbitSummary s = classify_orbit(State{x0, y0}, Params{5.0, beta, alpha});
    if (s.kind != want)
      note(o, "(" + fmt(x0) + ", " + fmt(y0) + ") at beta=" + fmt(beta) +
                  ": got " + to_string(s.kind) + ", required " +
                  to_string(want));
  };
  probe(0.21, 2.3, 0.2, AttractorKind::InvariantLoop);
  probe(0.21, 3.9, 0.1, AttractorKind::BoundaryPreyOnly);
  probe(0.188, 2.3, 0.2, AttractorKind::FixedPoint);
  probe(0.188, 3.9, 0.1, AttractorKind::BoundaryPreyOnly);
  return o;
}

// --- 9. global predator extinction ---------------------------------------

Outcome c9_global_extinction() {
  Outcome o;
  Rng rng(9203);
  for (int s = 0; s < 20; ++s) {
    double lam, alp, bet;
    if (s < 10) {
      lam = rng.uniform(1.5, 10.0);
      alp = rng.uniform(0.0, 0.5);
      bet = rng.uniform(0.2, 0.85) / (lam - 1.0);
    } else {
      lam = rng.uniform(1.5, 10.0);
      alp = rng.uniform(0.6, 5.0);
      const double boost =
          std::sqrt(2.0 * alp) * std::exp((1.0 - 2.0 * alp) / (4.0 * alp));
      bet = rng.uniform(0.2, 0.85) / boost / (lam - 1.0);
    }
    const Params p{lam, bet, alp};
    if (!global_extinction_condition(p)) {
      note(o, "sampler left the hypothesis region at set " +
                  std::to_string(s));
      return o;
    }
    const double xb = p.x_bar();
    for (int t = 0; t < 50; ++t) {
      const State s0{rng.uniform(1e-3, xb), rng.uniform(1e-3, xb)};
      const OrbitSummary sum = classify_orbit(s0, p);
      const double prey_gap = std::max(std::fabs(sum.tail_min_x - xb),
                                       std::fabs(sum.tail_max_x - xb));
      if (sum.kind != AttractorKind::BoundaryPreyOnly || prey_gap > 1e-6) {
        note(o, "orbit from (" + fmt(s0.x) + ", " + fmt(s0.y) + ") at (" +
                    fmt(lam) + ", " + fmt(bet) + ", " + fmt(alp) + ") got " +
                    to_string(sum.kind) + ", prey gap " + fmt(prey_gap));
        return o;
      }
    }
  }
  return o;
}

// --- 10. uniform persistence ----------------------------------------------

Outcome c10_persistence() {
  Outcome o;
  Rng rng(1013);
  for (int s = 0; s < 20; ++s) {
    const double lam = rng.uniform(2.0, 8.0);
    const double bet = rng.uniform(1.2, 2.2) / (lam - 1.0);
    const double alp = rng.uniform(0.0, 0.7);
    const Params p{lam, bet, alp};
    const PersistenceReport r =
        persistence_check(p, 50, 1000 + static_cast<std::uint64_t>(s));
    if (!r.persistent) {
      note(o, "tail minima (" + fmt(r.min_tail_x) + ", " + fmt(r.min_tail_y) +
                  ") at (" + fmt(lam) + ", " + fmt(bet) + ", " + fmt(alp) +
                  ")");
      return o;
    }
  }
  return o;
}

// --- 11. no-cooperation regression ----------------------------------------

Outcome c11_no_cooperation() {
  Outcome o;
  // Below replacement at carrying level: predator always exits.
  {
    const Params p{5.0, 0.2, 0.0};
    Rng rng(1117);
    for (int t = 0; t < 20; ++t) {
      const State s0{rng.uniform(1e-3, 4.0), rng.uniform(1e-3, 2.0)};
      const OrbitSummary s = classify_orbit(s0, p);
      if (s.kind != AttractorKind::BoundaryPreyOnly) {
        note(o, "collapse case got " + to_string(s.kind) + " from (" +
                    fmt(s0.x) + ", " + fmt(s0.y) + ")");
        break;
      }
    }
  }
  // Above replacement: one coexistence state and uniform persistence.
  {
    const Params p{5.0, 0.3, 0.0};
    if (interior_equilibria(p).size() != 1)
      note(o, "interior count != 1 above replacement");
    if (!persistence_check(p, 50, 1103).persistent)
      note(o, "persistence fails above replacement");
  }
  // The stepped map with alpha = 0 must equal an independently written
  // no-cooperation map bit for bit.
  {
    const Params p{5.0, 0.3, 0.0};
    Rng rng(1187);
    long mismatches = 0;
    for (long i = 0; i < 1000000; ++i) {
      const double x = rng.uniform(0.0, 10.0);
      const double y = rng.uniform(0.0, 5.0);
      const State got = step(State{x, y}, p);
      const double rx = 5.0 * x / (1.0 + x) * std::exp(-y);
      const double ry = 0.3 * x * -std::expm1(-y);
      if (got.x != rx || got.y != ry) ++mismatches;
    }
    if (mismatches != 0)
      note(o, std::to_string(mismatches) + " of 1e6 states differ bitwise");
  }
  return o;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    std::function<Outcome()> fn;
    double time_limit;  // seconds; 0 = unlimited
  };
  const std::vector<Entry> entries = {
      {"tangency value and two-equilibria window", c1_tangency, 1.0},
      {"interior-count bound and sign-change oracle on a 10x10x10 grid",
       c2_regime_grid, 30.0},
      {"cooperation-excess reference values", c3_excess_quotes, 0.0},
      {"interior determinant: monotone, limit 1/lambda, unit crossing",
       c4_det_properties, 0.0},
      {"stability margin: origin value, slope, root existence",
       c5_margin_properties, 0.0},
      {"eigenvalue crossing of the reference family", c6_reference_crossing,
       10.0},
      {"coefficient chain vs finite-difference oracle", c7_coefficient_oracle,
       0.0},
      {"bistable starts at strong cooperation", c8_bistability, 5.0},
      {"global predator extinction", c9_global_extinction, 0.0},
      {"uniform persistence", c10_persistence, 0.0},
      {"no-cooperation regression", c11_no_cooperation, 0.0},
  };

  int failures = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = entries[i].fn();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail = std::string("exception: ") + ex.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (entries[i].time_limit > 0.0 && secs > entries[i].time_limit) {
      o.pass = false;
      if (!o.detail.empty()) o.detail += "; ";
      o.detail += "runtime " + fmt(secs) + " s exceeds " +
                  fmt(entries[i].time_limit) + " s";
    }
    std::printf("[%s] %zu. %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", i + 1,
                entries[i].name, secs, o.detail.empty() ? "" : " -- ",
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures;
}
