#include "coophunt/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace coophunt {

namespace {

// 1 - exp(-d(y)) without cancellation.
double one_minus_exp(double y, double alpha) {
  return -std::expm1(-diamond(y, alpha));
}

// Recruitment with the conversion factored out: w(y) = beta * unit_w(y).
double unit_w(double y, const Params& p) {
  const double em = std::exp(-diamond(y, p.alpha));
  return (p.lambda * em - 1.0) * -std::expm1(-diamond(y, p.alpha));
}

double f_second(double y, const Params& p) {
  const double q = 1.0 + 2.0 * p.alpha * y;
  return p.lambda * std::exp(-diamond(y, p.alpha)) * (q * q - 2.0 * p.alpha);
}

double h_second(double y, const Params& p) {
  const double q = 1.0 + 2.0 * p.alpha * y;
  const double em = std::exp(-diamond(y, p.alpha));
  const double E = -std::expm1(-diamond(y, p.alpha));  // 1 - e^{-d}
  const double Ep = q * em;
  const double Epp = em * (2.0 * p.alpha - q * q);
  return (-y * Epp * E - 2.0 * Ep * (E - y * Ep)) / (p.beta * E * E * E);
}

double fixed_point_defect(const State& s, const Params& p) {
  const State n = step(s, p);
  return std::max(std::fabs(n.x - s.x), std::fabs(n.y - s.y));
}

Equilibrium make_interior(double y, const Params& p, int multiplicity) {
  Equilibrium e;
  e.state = {isocline_f(y, p), y};
  e.kind = EquilibriumKind::Interior;
  e.multiplicity = multiplicity;
  const double gap = std::fabs(isocline_h(y, p) - isocline_f(y, p));
  e.residual = std::max(gap, fixed_point_defect(e.state, p));
  return e;
}

}  // namespace

std::string to_string(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::Origin: return "Origin";
    case EquilibriumKind::PreyOnly: return "PreyOnly";
    default: return "Interior";
  }
}

double isocline_h(double y, const Params& p) {
  if (y == 0.0) return 1.0 / p.beta;
  return y / (p.beta * one_minus_exp(y, p.alpha));
}

double isocline_f(double y, const Params& p) {
  return p.lambda * std::exp(-diamond(y, p.alpha)) - 1.0;
}

double isocline_f_prime(double y, const Params& p) {
  return -p.lambda * (1.0 + 2.0 * p.alpha * y) * std::exp(-diamond(y, p.alpha));
}

double isocline_h_prime(double y, const Params& p) {
  if (y < 1e-7) return (0.5 - p.alpha) / p.beta;  // series limit at 0
  const double E = one_minus_exp(y, p.alpha);
  const double Ep = (1.0 + 2.0 * p.alpha * y) * std::exp(-diamond(y, p.alpha));
  return (E - y * Ep) / (p.beta * E * E);
}

double y_ceiling(const Params& p) {
  if (!(p.lambda > 1.0)) throw RegimeError("y_ceiling requires lambda > 1");
  const double L = std::log(p.lambda);
  // root of alpha*y^2 + y - L, written to stay stable as alpha -> 0
  return 2.0 * L / (1.0 + std::sqrt(1.0 + 4.0 * p.alpha * L));
}

double recruitment(double y, const Params& p) { return p.beta * unit_w(y, p); }

std::vector<Equilibrium> interior_equilibria(const Params& p,
                                             const SolveOptions& opt) {
  validate(p);
  std::vector<Equilibrium> out;
  if (!(p.lambda > 1.0)) return out;  // prey isocline empty: no interior states
  const double yc = y_ceiling(p);

  auto phi = [&](double y) { return recruitment(y, p) - y; };
  auto phi_prime = [&](double y) {
    const double em = std::exp(-diamond(y, p.alpha));
    return p.beta * (1.0 + 2.0 * p.alpha * y) * em *
               (2.0 * p.lambda * em - (p.lambda + 1.0)) -
           1.0;
  };

  const int n = opt.scan_points;
  std::vector<double> ys(n), ph(n);
  for (int i = 0; i < n; ++i) {
    ys[i] = yc * (i + 1) / (n + 1);
    ph[i] = phi(ys[i]);
  }

  struct Root {
    double y;
    int multiplicity;
  };
  std::vector<Root> roots;

  for (int i = 0; i + 1 < n; ++i) {
    if (ph[i] == 0.0) {
      roots.push_back({ys[i], 1});
      continue;
    }
    if (ph[i] * ph[i + 1] < 0.0) {
      double a = ys[i], b = ys[i + 1], fa = ph[i];
      while (b - a > opt.root_width) {
        const double m = 0.5 * (a + b);
        const double fm = phi(m);
        if (fa * fm <= 0.0) {
          b = m;
        } else {
          a = m;
          fa = fm;
        }
      }
      double r = 0.5 * (a + b);
      const double dp = phi_prime(r);
      if (dp != 0.0) {
        const double rn = r - phi(r) / dp;
        const double w = b - a;
        if (rn >= a - w && rn <= b + w) r = rn;
      }
      roots.push_back({r, 1});
    }
  }

  // Tangency: a grid minimum of |phi| at root depth but without a sign change.
  for (int i = 1; i + 1 < n; ++i) {
    const double a0 = std::fabs(ph[i]);
    if (a0 < opt.double_root_tol && a0 <= std::fabs(ph[i - 1]) &&
        a0 <= std::fabs(ph[i + 1]) && ph[i - 1] * ph[i] > 0.0 &&
        ph[i] * ph[i + 1] > 0.0) {
      const double cell = yc / (n + 1);
      bool taken = false;
      for (const Root& r : roots)
        if (std::fabs(r.y - ys[i]) < 4.0 * cell) taken = true;
      if (!taken) roots.push_back({ys[i], 2});
    }
  }

  std::sort(roots.begin(), roots.end(),
            [](const Root& a, const Root& b) { return a.y < b.y; });
  for (const Root& r : roots) {
    if (r.y <= opt.boundary_guard || r.y >= yc - opt.boundary_guard) continue;
    out.push_back(make_interior(r.y, p, r.multiplicity));
  }
  return out;
}

std::vector<Equilibrium> all_equilibria(const Params& p,
                                        const SolveOptions& opt) {
  validate(p);
  std::vector<Equilibrium> out;
  Equilibrium origin;
  origin.state = {0.0, 0.0};
  origin.kind = EquilibriumKind::Origin;
  origin.residual = fixed_point_defect(origin.state, p);
  out.push_back(origin);
  if (p.lambda > 1.0) {
    Equilibrium prey;
    prey.state = {p.x_bar(), 0.0};
    prey.kind = EquilibriumKind::PreyOnly;
    prey.residual = fixed_point_defect(prey.state, p);
    out.push_back(prey);
  }
  for (Equilibrium& e : interior_equilibria(p, opt)) out.push_back(e);
  return out;
}

RegimeReport regime(const Params& p) {
  validate(p);
  RegimeReport r;
  if (!(p.lambda > 1.0)) {
    r.bound = CountBound::ExactlyZero;
    return r;
  }
  const double xb = p.lambda - 1.0;
  r.x_bar = xb;
  const double rmax = p.beta * xb;
  r.predator_rmax = rmax;
  const double excess = 2.0 * p.alpha - (3.0 * p.lambda - 1.0) / (p.lambda - 1.0);
  r.cooperation_excess = excess;
  if (std::fabs(rmax - 1.0) <= 1e-12) {
    r.boundary_unclassified = true;
    r.bound = CountBound::ExactlyOne;
  } else if (rmax > 1.0) {
    r.bound = CountBound::ExactlyOne;
  } else {
    r.bound = excess > 0.0 ? CountBound::AtMostTwo : CountBound::ExactlyZero;
  }
  return r;
}

TangencyResult tangency(double lambda, double alpha) {
  Params probe{lambda, 1.0, alpha};
  validate(probe);
  if (!(lambda > 1.0)) throw RegimeError("tangency requires lambda > 1");
  const double excess = 2.0 * alpha - (3.0 * lambda - 1.0) / (lambda - 1.0);
  if (!(excess > 0.0))
    throw RegimeError("tangency requires positive cooperation excess");
  const double yc = y_ceiling(probe);

  // On the fold, beta(y) = y / unit_w(y) attains its interior minimum:
  // scan, refine by golden section, then polish on the full system.
  auto beta_of = [&](double y) { return y / unit_w(y, probe); };
  const int n = 4096;
  double by = yc * 0.5, bv = std::numeric_limits<double>::infinity();
  for (int i = 1; i < n; ++i) {
    const double y = yc * i / n;
    const double v = beta_of(y);
    if (v < bv) {
      bv = v;
      by = y;
    }
  }
  {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = std::max(yc / n, by - yc / n), b = std::min(yc * (1.0 - 1e-12), by + yc / n);
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = beta_of(c), fd = beta_of(d);
    for (int it = 0; it < 120 && b - a > 1e-13; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - g * (b - a);
        fc = beta_of(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + g * (b - a);
        fd = beta_of(d);
      }
    }
    by = 0.5 * (a + b);
    bv = beta_of(by);
  }

  // Newton on (h - f, h' - f')(y, beta); h scales as 1/beta so the beta
  // column of the Jacobian is analytic.
  double y = by, beta = bv;
  for (int it = 0; it < 60; ++it) {
    Params p{lambda, beta, alpha};
    const double hv = isocline_h(y, p);
    const double hp = isocline_h_prime(y, p);
    const double F1 = hv - isocline_f(y, p);
    const double F2 = hp - isocline_f_prime(y, p);
    const double J11 = hp - isocline_f_prime(y, p);
    const double J12 = -hv / beta;
    const double J21 = h_second(y, p) - f_second(y, p);
    const double J22 = -hp / beta;
    const double det = J11 * J22 - J12 * J21;
    if (det == 0.0 || !std::isfinite(det)) break;
    const double dy = (F1 * J22 - F2 * J12) / det;
    const double db = (F2 * J11 - F1 * J21) / det;
    y -= dy;
    beta -= db;
    y = std::clamp(y, yc * 1e-9, yc * (1.0 - 1e-9));
    if (!(beta > 0.0)) beta = bv;
    if (std::fabs(dy) < 1e-15 * yc && std::fabs(db) < 1e-15 * bv) break;
  }

  TangencyResult t;
  t.beta_star = beta;
  t.y_star = y;
  {
    Params p{lambda, beta, alpha};
    t.residual_gap = std::fabs(isocline_h(y, p) - isocline_f(y, p));
    t.residual_slope = std::fabs(isocline_h_prime(y, p) - isocline_f_prime(y, p));
  }
  if (!(t.residual_gap <= 1e-9) || !(t.residual_slope <= 1e-9) ||
      !(y > 0.0 && y < yc)) {
    // Fallback: bisect beta over the 0 -> 2 root-count transition.
    double lo = bv * 0.5, hi = 1.0 / (lambda - 1.0);
    auto count = [&](double b) {
      return interior_equilibria(Params{lambda, b, alpha}).size();
    };
    if (count(lo) != 0) lo = bv * 0.25;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
      const double m = 0.5 * (lo + hi);
      if (count(m) == 0)
        lo = m;
      else
        hi = m;
    }
    t.beta_star = 0.5 * (lo + hi);
    double besty = by, best = std::numeric_limits<double>::infinity();
    Params p{lambda, t.beta_star, alpha};
    for (int i = 1; i < n; ++i) {
      const double yy = yc * i / n;
      const double v = std::fabs(recruitment(yy, p) - yy);
      if (v < best) {
        best = v;
        besty = yy;
      }
    }
    t.y_star = besty;
    t.residual_gap = std::fabs(isocline_h(besty, p) - isocline_f(besty, p));
    t.residual_slope =
        std::fabs(isocline_h_prime(besty, p) - isocline_f_prime(besty, p));
  }
  return t;
}

bool ordering_check(const Params& p) {
  validate(p);
  const TangencyResult t = tangency(p.lambda, p.alpha);  // regime-checked there
  const double yc = y_ceiling(p);
  const double xb = p.x_bar();

  Params at_merge{p.lambda, 1.0 / xb, p.alpha};
  const auto merge_eq = interior_equilibria(at_merge);
  if (merge_eq.size() != 1) return false;
  const double ye = merge_eq.front().state.y;

  if (!(t.y_star > 0.0 && t.y_star < ye && ye < yc)) return false;

  const auto eq = interior_equilibria(p);
  const double rmax = p.beta * xb;
  if (p.beta < t.beta_star) return eq.empty();
  if (rmax < 1.0 && p.beta > t.beta_star) {
    if (eq.size() != 2) return false;
    return eq[0].state.y > 0.0 && eq[0].state.y < t.y_star &&
           t.y_star < eq[1].state.y && eq[1].state.y < ye;
  }
  if (rmax > 1.0) {
    if (eq.size() != 1) return false;
    return eq[0].state.y > ye && eq[0].state.y < yc;
  }
  return true;  // boundary or tangency point itself: nothing further to order
}

}  // namespace coophunt
