#include "coophunt/stability.hpp"

#include <cmath>

namespace coophunt {

namespace {

void eigenpair(Jacobian2& j) {
  const double half = 0.5 * j.tr;
  const double disc = half * half - j.det;
  if (disc >= 0.0) {
    const double r = std::sqrt(disc);
    j.eig1 = {half - r, 0.0};
    j.eig2 = {half + r, 0.0};
  } else {
    const double w = std::sqrt(-disc);
    j.eig1 = {half, -w};
    j.eig2 = {half, w};
  }
}

}  // namespace

Jacobian2 jacobian(const State& s, const Params& p) {
  const double d = diamond(s.y, p.alpha);
  const double em = std::exp(-d);
  const double q = 1.0 + 2.0 * p.alpha * s.y;
  const double sx = 1.0 + s.x;
  Jacobian2 j;
  j.a11 = p.lambda * em / (sx * sx);
  j.a12 = -p.lambda * s.x * em * q / sx;
  j.a21 = p.beta * -std::expm1(-d);
  j.a22 = p.beta * s.x * em * q;
  j.det = j.a11 * j.a22 - j.a12 * j.a21;
  j.tr = j.a11 + j.a22;
  eigenpair(j);
  return j;
}

double interior_det(double y, const Params& p) {
  if (y == 0.0) return 1.0 / p.lambda;
  const double q = y * (1.0 + 2.0 * p.alpha * y);
  return q / (p.lambda * -std::expm1(-diamond(y, p.alpha))) + q;
}

double det_unity_ordinate(const Params& p) {
  const double yc = y_ceiling(p);  // throws unless lambda > 1
  double a = yc * 1e-9, b = yc * (1.0 - 1e-12);
  // det - 1 goes from negative (det(0+) = 1/lambda) to positive before y_c.
  if (interior_det(a, p) >= 1.0)
    throw ConvergenceError("det crossing search: lower bracket not below 1");
  if (interior_det(b, p) <= 1.0)
    throw ConvergenceError("det crossing search: upper bracket not above 1");
  while (b - a > 1e-15 * yc) {
    const double m = 0.5 * (a + b);
    if (interior_det(m, p) < 1.0)
      a = m;
    else
      b = m;
  }
  return 0.5 * (a + b);
}

double stability_margin(double y, const Params& p) {
  if (y == 0.0) return 0.0;
  const double d = diamond(y, p.alpha);
  const double q = y * (1.0 + 2.0 * p.alpha * y);
  return 1.0 - std::exp(d) / p.lambda +
         (2.0 - (1.0 - 1.0 / p.lambda) / -std::expm1(-d)) * q;
}

double stability_margin_slope_at_zero(const Params& p) {
  return ((3.0 * p.lambda - 1.0) - 2.0 * p.alpha * (p.lambda - 1.0)) /
         (2.0 * p.lambda);
}

std::optional<double> margin_root(const Params& p) {
  if (!(p.lambda > 1.0)) throw RegimeError("margin_root requires lambda > 1");
  if (!(2.0 * p.alpha > 1.0))
    throw RegimeError("margin_root requires 2 alpha > 1");
  const double excess =
      2.0 * p.alpha - (3.0 * p.lambda - 1.0) / (p.lambda - 1.0);
  if (!(excess > 0.0)) return std::nullopt;
  const double yc = y_ceiling(p);
  // V'(0) < 0 here, so V dips negative off 0; find the first return to 0.
  const int n = 256;
  double a = 0.0, b = 0.0;
  bool found = false;
  double prev_y = yc * 1e-9, prev_v = stability_margin(prev_y, p);
  for (int i = 1; i <= n; ++i) {
    const double y = yc * i / n * (1.0 - 1e-12);
    const double v = stability_margin(y, p);
    if (prev_v < 0.0 && v >= 0.0) {
      a = prev_y;
      b = y;
      found = true;
      break;
    }
    prev_y = y;
    prev_v = v;
  }
  if (!found) return std::nullopt;
  while (b - a > 1e-15 * yc) {
    const double m = 0.5 * (a + b);
    if (stability_margin(m, p) < 0.0)
      a = m;
    else
      b = m;
  }
  return 0.5 * (a + b);
}

double ns_threshold(double lambda, double alpha, double beta_max) {
  Params probe{lambda, 1.0, alpha};
  validate(probe);
  if (!(lambda > 1.0)) throw RegimeError("ns_threshold requires lambda > 1");
  const double yd = det_unity_ordinate(probe);
  const double em = std::exp(-diamond(yd, alpha));
  const double w = (lambda * em - 1.0) * -std::expm1(-diamond(yd, alpha));
  if (!(w > 0.0))
    throw RegimeError("ns_threshold: unit-determinant ordinate beyond the "
                      "prey isocline");
  const double beta_d = yd / w;
  const double cap = beta_max > 0.0 ? beta_max : 50.0 / (lambda - 1.0);
  if (!(beta_d > 0.0) || beta_d > cap)
    throw RegimeError("ns_threshold: crossing outside the admissible range");
  // The crossing must be realized by an actual interior equilibrium.
  Params p{lambda, beta_d, alpha};
  bool realized = false;
  for (const Equilibrium& e : interior_equilibria(p))
    if (std::fabs(e.state.y - yd) <= 1e-7 * (1.0 + yd)) realized = true;
  if (!realized)
    throw RegimeError("ns_threshold: no interior equilibrium at the "
                      "unit-determinant ordinate");
  return beta_d;
}

std::string to_string(StabilityTag t) {
  switch (t) {
    case StabilityTag::Sink: return "Sink";
    case StabilityTag::Saddle: return "Saddle";
    case StabilityTag::Source: return "Source";
    default: return "NonHyperbolic";
  }
}

StabilityClass classify(const Equilibrium& e, const Params& p) {
  const Jacobian2 j = jacobian(e.state, p);
  StabilityClass c;
  c.jury_det = 1.0 - j.det;
  c.jury_sum = 1.0 + j.tr + j.det;
  c.jury_diff = 1.0 - j.tr + j.det;
  c.mod1 = std::abs(j.eig1);
  c.mod2 = std::abs(j.eig2);
  const double lo = std::min(c.mod1, c.mod2);
  const double hi = std::max(c.mod1, c.mod2);
  if (std::fabs(hi - 1.0) <= 1e-9 || std::fabs(lo - 1.0) <= 1e-9) {
    c.tag = StabilityTag::NonHyperbolic;
  } else if (hi < 1.0) {
    c.tag = StabilityTag::Sink;
  } else if (lo > 1.0) {
    c.tag = StabilityTag::Source;
  } else {
    c.tag = StabilityTag::Saddle;
  }
  c.marginal = std::fabs(hi - 1.0) <= 1e-6 || std::fabs(lo - 1.0) <= 1e-6 ||
               std::fabs(c.jury_det) <= 1e-6 || std::fabs(c.jury_sum) <= 1e-6 ||
               std::fabs(c.jury_diff) <= 1e-6;
  return c;
}

CriticalSet critical_set(const Params& p) {
  validate(p);
  CriticalSet s;
  if (!(p.lambda > 1.0)) return s;
  s.x_bar = p.x_bar();
  s.y_c = y_ceiling(p);
  s.y_d = det_unity_ordinate(p);
  if (2.0 * p.alpha > 1.0) s.y_t = margin_root(p);
  const double excess =
      2.0 * p.alpha - (3.0 * p.lambda - 1.0) / (p.lambda - 1.0);
  if (excess > 0.0) s.beta_star = tangency(p.lambda, p.alpha).beta_star;
  try {
    s.beta_d = ns_threshold(p.lambda, p.alpha);
  } catch (const RegimeError&) {
  }
  return s;
}

bool global_extinction_condition(const Params& p) {
  validate(p);
  if (!(p.lambda > 1.0)) return true;  // prey dies out, predators follow
  const double rmax = p.beta * (p.lambda - 1.0);
  if (2.0 * p.alpha <= 1.0) return rmax < 1.0;
  const double a2 = 2.0 * p.alpha;
  return rmax * std::sqrt(a2) * std::exp((1.0 - a2) / (4.0 * p.alpha)) < 1.0;
}

bool persistence_condition(const Params& p) {
  validate(p);
  return p.lambda > 1.0 && p.beta * (p.lambda - 1.0) > 1.0;
}

}  // namespace coophunt
