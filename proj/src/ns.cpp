#include "coophunt/ns.hpp"

#include <cmath>

#include "coophunt/sim.hpp"

namespace coophunt {

QuadCoeffs shift_coefficients(const Equilibrium& e, const Params& p) {
  const double xs = e.state.x, ys = e.state.y;
  const double S = 1.0 + xs;
  const double E = std::exp(-diamond(ys, p.alpha));
  const double P = 1.0 + 2.0 * p.alpha * ys;
  const double Q = P * P - 2.0 * p.alpha;   // second derivative factor
  const double R = P * (P * P - 6.0 * p.alpha);  // third derivative factor
  QuadCoeffs out;
  out.b[0] = -p.lambda * E / (S * S * S);
  out.b[1] = -p.lambda * P * E / (S * S);
  out.b[2] = 0.5 * p.lambda * (xs / S) * Q * E;
  out.b[3] = p.lambda * E / (S * S * S * S);
  out.b[4] = p.lambda * P * E / (S * S * S);
  out.b[5] = 0.5 * p.lambda * Q * E / (S * S);
  out.b[6] = -p.lambda * (xs / S) * R * E / 6.0;
  out.c[0] = p.beta * P * E;
  out.c[1] = -0.5 * p.beta * xs * Q * E;
  out.c[2] = p.beta * xs * R * E / 6.0;
  out.c[3] = -0.5 * p.beta * Q * E;
  return out;
}

NormalFrame linearizing_transform(const Jacobian2& j) {
  const double half = 0.5 * j.tr;
  const double disc = half * half - j.det;
  if (disc >= 0.0)
    throw RegimeError("linearizing_transform: real eigenvalues, no rotation");
  if (std::fabs(j.a12) < 1e-12)
    throw ConvergenceError("linearizing_transform: a12 ~ 0, frame degenerate");
  NormalFrame fr;
  fr.mu = half;
  fr.omega = std::sqrt(-disc);
  fr.l11 = j.a12;
  fr.l12 = 0.0;
  fr.l21 = fr.mu - j.a11;
  fr.l22 = -fr.omega;
  return fr;
}

UVCoeffs uv_coefficients(const QuadCoeffs& q, const NormalFrame& fr,
                         double a11, double a12) {
  if (std::fabs(a12) < 1e-12)
    throw ConvergenceError("uv_coefficients: a12 ~ 0, frame degenerate");
  const double w = fr.omega;
  const double pp = fr.mu - a11;
  const auto& b = q.b;
  const auto& c = q.c;
  UVCoeffs uv;
  uv.k[0] = b[0] * a12 * a12 + b[1] * a12 * pp + b[2] * pp * pp;
  uv.k[1] = b[2] * w * w;
  uv.k[2] = -(b[1] * a12 + 2.0 * b[2] * pp) * w;
  uv.k[3] = b[3] * a12 * a12 * a12 + b[4] * a12 * a12 * pp +
            b[5] * a12 * pp * pp + b[6] * pp * pp * pp;
  uv.k[4] = -b[6] * w * w * w;
  uv.k[5] = -(b[4] * a12 * a12 + 2.0 * b[5] * a12 * pp + 3.0 * b[6] * pp * pp) * w;
  uv.k[6] = (b[5] * a12 + 3.0 * b[6] * pp) * w * w;
  const double r = pp / (a12 * w);
  uv.l[0] = r * uv.k[0] - (c[0] * a12 * pp + c[1] * pp * pp) / w;
  uv.l[1] = r * uv.k[1] - c[1] * w;
  uv.l[2] = r * uv.k[2] + c[0] * a12 + 2.0 * c[1] * pp;
  uv.l[3] = r * uv.k[3] - pp * pp * (c[2] * pp + c[3] * a12) / w;
  uv.l[4] = r * uv.k[4] + c[2] * w * w;
  uv.l[5] = r * uv.k[5] + pp * (3.0 * c[2] * pp + 2.0 * c[3] * a12);
  uv.l[6] = r * uv.k[6] - (3.0 * c[2] * pp + c[3] * a12) * w;
  return uv;
}

XiSet xi_coefficients(const UVCoeffs& uv, double a12) {
  const auto& k = uv.k;
  const auto& l = uv.l;
  XiSet xi;
  xi.xi20 = {(2.0 * k[0] / a12 - 2.0 * k[1] / a12 + 2.0 * l[2]) / 8.0,
             (2.0 * l[0] - 2.0 * l[1] - 2.0 * k[2] / a12) / 8.0};
  xi.xi11 = {(2.0 * k[0] / a12 + 2.0 * k[1] / a12) / 4.0,
             (2.0 * l[0] + 2.0 * l[1]) / 4.0};
  xi.xi02 = {(2.0 * k[0] / a12 - 2.0 * k[1] / a12 - 2.0 * l[2]) / 8.0,
             (2.0 * l[0] - 2.0 * l[1] + 2.0 * k[2] / a12) / 8.0};
  xi.xi21 = {(6.0 * k[3] / a12 + 2.0 * k[6] / a12 + 2.0 * l[5] + 6.0 * l[4]) / 16.0,
             (6.0 * l[3] + 6.0 * l[4] - 2.0 * k[5] / a12 - 6.0 * k[4] / a12) / 16.0};
  return xi;
}

double c_star_value(const XiSet& xi, double mu, double omega) {
  const std::complex<double> lp{mu, omega}, lm{mu, -omega};
  const std::complex<double> head =
      (1.0 - 2.0 * lp) * lm * lm / (1.0 - lp) * xi.xi20 * xi.xi11;
  return head.real() + 0.5 * std::norm(xi.xi11) + std::norm(xi.xi02) -
         (lm * xi.xi21).real();
}

std::string to_string(Direction d) {
  switch (d) {
    case Direction::Supercritical: return "Supercritical";
    case Direction::Subcritical: return "Subcritical";
    default: return "Inconclusive";
  }
}

namespace {

// Interior equilibrium tracking the unit-determinant branch: the one whose
// ordinate is nearest the target.
Equilibrium branch_equilibrium(const Params& p, double y_target) {
  const auto eq = interior_equilibria(p);
  if (eq.empty())
    throw ConvergenceError("branch_equilibrium: no interior equilibrium");
  const Equilibrium* best = &eq.front();
  for (const Equilibrium& e : eq)
    if (std::fabs(e.state.y - y_target) < std::fabs(best->state.y - y_target))
      best = &e;
  return *best;
}

}  // namespace

NSReport ns_report(double lambda, double alpha, double beta_max) {
  NSReport rep;
  rep.lambda = lambda;
  rep.alpha = alpha;
  rep.beta_d = ns_threshold(lambda, alpha, beta_max);
  const Params p{lambda, rep.beta_d, alpha};
  const double yd = det_unity_ordinate(p);
  rep.equilibrium = branch_equilibrium(p, yd);

  const Jacobian2 j = jacobian(rep.equilibrium.state, p);
  const NormalFrame fr = linearizing_transform(j);
  rep.mu = fr.mu;
  rep.omega = fr.omega;
  rep.quad = shift_coefficients(rep.equilibrium, p);
  rep.uv = uv_coefficients(rep.quad, fr, j.a11, j.a12);
  rep.xi = xi_coefficients(rep.uv, j.a12);
  rep.c_star = c_star_value(rep.xi, fr.mu, fr.omega);

  // d|eig|/dbeta = (d det/dbeta)/2 at the crossing, centered difference
  // along the equilibrium branch.
  {
    const double h = 1e-6;
    const Params lo{lambda, rep.beta_d - h, alpha};
    const Params hi{lambda, rep.beta_d + h, alpha};
    const double det_lo =
        jacobian(branch_equilibrium(lo, yd).state, lo).det;
    const double det_hi =
        jacobian(branch_equilibrium(hi, yd).state, hi).det;
    rep.transversality = 0.5 * (det_hi - det_lo) / (2.0 * h);
  }

  const double tr = 2.0 * fr.mu;
  rep.resonance_clear = std::fabs(tr - 2.0) >= 1e-6 &&
                        std::fabs(tr + 2.0) >= 1e-6 &&
                        std::fabs(tr) >= 1e-6 && std::fabs(tr + 1.0) >= 1e-6;

  if (!rep.resonance_clear) {
    rep.direction = Direction::Inconclusive;
    rep.diagnostic = "eigenvalue within 1e-6 of a 1st-4th root of unity";
    return rep;
  }
  if (std::fabs(rep.c_star) < 1e-10) {
    rep.direction = Direction::Inconclusive;
    rep.diagnostic = "direction coefficient within 1e-10 of zero";
    return rep;
  }
  rep.direction =
      rep.c_star > 0.0 ? Direction::Supercritical : Direction::Subcritical;

  if (rep.direction == Direction::Supercritical) {
    // Cross-check both sides of the crossing by simulation.
    const Params above{lambda, rep.beta_d * 1.02, alpha};
    const Params below{lambda, rep.beta_d * 0.98, alpha};
    const Equilibrium ea = branch_equilibrium(above, yd);
    const Equilibrium eb = branch_equilibrium(below, yd);
    const OrbitSummary sa =
        classify_orbit({ea.state.x + 1e-2, ea.state.y + 1e-2}, above);
    const OrbitSummary sb =
        classify_orbit({eb.state.x + 1e-2, eb.state.y + 1e-2}, below);
    const bool ok = sa.kind == AttractorKind::InvariantLoop &&
                    sb.kind == AttractorKind::FixedPoint;
    if (!ok)
      rep.diagnostic =
          "convention-mismatch: simulation does not corroborate the "
          "supercritical verdict";
  } else {
    rep.diagnostic = "direction not simulation-verified";
  }
  return rep;
}

}  // namespace coophunt
