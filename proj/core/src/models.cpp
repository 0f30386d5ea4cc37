#include "stirap/models.hpp"

#include <algorithm>
#include <cmath>

#include "stirap/ode.hpp"

namespace stirap {

namespace {

void check_dim(const SystemParams& p, const CVec& psi) {
  if (psi.size() != dimension(p.variant))
    throw DimensionError("state dimension does not match system variant");
}

}  // namespace

CVec bare_rhs(const SystemParams& p, const PulseSchedule& s, double t, const CVec& psi) {
  check_dim(p, psi);
  const PulseValues v = eval_schedule(s, t);
  const Complex b = p.b();
  CVec d(psi.size());
  switch (p.variant) {
    case Variant::LinearLambda:
      d[0] = -kI * (v.p * psi[1]);
      d[1] = -kI * (-b * psi[1] + v.p * psi[0] + v.d1 * psi[2]);
      d[2] = -kI * (v.d1 * psi[1]);
      break;
    case Variant::LinearTripod:
      d[0] = -kI * (v.p * psi[1]);
      d[1] = -kI * (-b * psi[1] + v.p * psi[0] + v.d1 * psi[2] + v.d2 * psi[3]);
      d[2] = -kI * (v.d1 * psi[1]);
      d[3] = -kI * (v.d2 * psi[1]);
      break;
    case Variant::NonlinearLambda:
      d[0] = -kI * (v.p * std::conj(psi[0]) * psi[1]);
      d[1] = -kI * (-b * psi[1] + 0.5 * v.p * psi[0] * psi[0] + 0.5 * v.d1 * psi[2]);
      d[2] = -kI * (0.5 * v.d1 * psi[1]);
      break;
    case Variant::NonlinearTripod:
      d[0] = -kI * (v.p * std::conj(psi[0]) * psi[1]);
      d[1] = -kI * (-b * psi[1] + 0.5 * v.p * psi[0] * psi[0] + 0.5 * v.d1 * psi[2] +
                    0.5 * v.d2 * psi[3]);
      d[2] = -kI * (0.5 * v.d1 * psi[1]);
      d[3] = -kI * (0.5 * v.d2 * psi[1]);
      break;
  }
  return d;
}

double total_norm(Variant v, const CVec& psi) {
  if (psi.size() != dimension(v))
    throw DimensionError("state dimension does not match system variant");
  const double w = molecular_weight(v);
  double n = std::norm(psi[0]) + w * std::norm(psi[1]);
  for (int i = 2; i < psi.size(); ++i) n += w * std::norm(psi[i]);
  return n;
}

DarkStateSample dark_state_nonlinear_lambda(double omega_p, double omega_d) {
  const double oeff = std::sqrt(omega_d * omega_d + 8.0 * omega_p * omega_p);
  const double den = omega_d + oeff;
  if (den <= 0.0)
    throw DegeneratePulseError("dark state undefined with both pulses zero");
  DarkStateSample d;
  d.a = std::sqrt(2.0 * omega_d / den);  // non-negative real root
  d.e = 0.0;
  d.g1 = -2.0 * omega_p / den;
  return d;
}

namespace {

struct ManifoldCoeffs {
  double thdot;  // dTheta_dark/dt
  double bcap;   // delta_p / (4 cos Theta) = |damp| / (4 pump)
  double bdot;   // d bcap / dt
};

ManifoldCoeffs manifold_coeffs(const PulseSchedule& s, double t) {
  if (s.variant != PulseVariant::Tripod)
    throw DimensionError("dark manifold is defined for tripod schedules");
  const PulseValues v = eval_schedule(s, t);
  if (v.p <= s.floor())
    throw ManifoldSingularityError("pump below pulse floor on the dark manifold", t);
  const double od = std::hypot(v.d1, v.d2);
  if (v.d1 <= 0.0 || od <= 0.0)
    throw ManifoldSingularityError("cos(Theta_dark) not positive", t);
  const double lp = s.pump.dlog(t);
  const double l1 = s.damp1.dlog(t);
  const double l2 = s.damp2.dlog(t);
  ManifoldCoeffs c;
  c.thdot = (l2 - l1) * v.d1 * v.d2 / (od * od);
  c.bcap = od / (4.0 * v.p);
  c.bdot = c.bcap * ((v.d1 * v.d1 * l1 + v.d2 * v.d2 * l2) / (od * od) - lp);
  return c;
}

}  // namespace

ManifoldDerivs dark_manifold_rhs(const PulseSchedule& s, double t, double u1, double u2) {
  if (u2 <= kManifoldFloorU2)
    throw ManifoldSingularityError("manifold parameter u2 at floor", t);
  const ManifoldCoeffs c = manifold_coeffs(s, t);
  ManifoldDerivs d;
  d.du1 = -c.thdot * u2;
  d.du2 = (c.thdot * u1 - c.bdot) * u2 / (u2 + c.bcap);
  return d;
}

DarkStateSample dark_manifold_state(const PulseSchedule& s, double t, double u1, double u2) {
  if (u2 < 0.0) throw ManifoldSingularityError("manifold parameter u2 negative", t);
  const PulseValues v = eval_schedule(s, t);
  if (v.p <= s.floor())
    throw ManifoldSingularityError("pump below pulse floor on the dark manifold", t);
  const double od = std::hypot(v.d1, v.d2);
  if (v.d1 <= 0.0 || od <= 0.0)
    throw ManifoldSingularityError("cos(Theta_dark) not positive", t);
  const double cth = v.d1 / od, sth = v.d2 / od;
  DarkStateSample d;
  d.t = t;
  d.a = std::sqrt(od / v.p * u2);  // non-negative real root
  d.e = 0.0;
  d.g1 = u1 * sth - u2 * cth;
  d.g2 = -u1 * cth - u2 * sth;
  d.u1 = u1;
  d.u2 = u2;
  return d;
}

ManifoldTrace integrate_dark_manifold(const PulseSchedule& s, double t0, double t1,
                                      double step) {
  if (s.variant != PulseVariant::Tripod)
    throw DimensionError("dark manifold is defined for tripod schedules");
  if (!(t1 > t0)) throw ConfigError("manifold window must have t1 > t0");

  // advance the start until the guards admit the initial construction
  const double floor = s.floor();
  const int scan = 20000;
  double start = t0;
  double u2_raw = 0.0;
  bool found = false;
  for (int i = 0; i <= scan; ++i) {
    const double t = t0 + (t1 - t0) * static_cast<double>(i) / scan;
    const PulseValues v = eval_schedule(s, t);
    const double od = std::hypot(v.d1, v.d2);
    if (v.p > floor && od > 0.0 && v.d1 > 0.0 && v.p / od > kManifoldFloorU2) {
      start = t;
      u2_raw = v.p / od;
      found = true;
      break;
    }
  }
  if (!found)
    throw ManifoldSingularityError("no admissible manifold start in the window", t0);

  // u1 = 0, u2 = cos(Theta)/delta_p, rescaled so the total norm is exactly 1
  const double scale = 2.0 / (1.0 + std::sqrt(1.0 + 8.0 * u2_raw * u2_raw));

  ManifoldTrace out;
  out.start = start;
  if (!(step > 0.0)) throw ConfigError("manifold step must be positive");
  const double span = t1 - start;
  const double nsteps = std::ceil(span / step - 1e-9);
  if (nsteps > 1e8) throw ConfigError("integration step-count guard exceeded");
  const long n = nsteps < 1.0 ? 1 : static_cast<long>(nsteps);
  const double h = span / static_cast<double>(n);

  double u1 = 0.0, u2 = scale * u2_raw;
  out.t.reserve(n + 1);
  out.u1.reserve(n + 1);
  out.u2.reserve(n + 1);
  out.t.push_back(start);
  out.u1.push_back(u1);
  out.u2.push_back(u2);
  // a floor violation halts the trace with a flag instead of failing the run
  try {
    for (long i = 0; i < n; ++i) {
      const double t = start + static_cast<double>(i) * h;
      const ManifoldDerivs k1 = dark_manifold_rhs(s, t, u1, u2);
      const ManifoldDerivs k2 =
          dark_manifold_rhs(s, t + 0.5 * h, u1 + 0.5 * h * k1.du1, u2 + 0.5 * h * k1.du2);
      const ManifoldDerivs k3 =
          dark_manifold_rhs(s, t + 0.5 * h, u1 + 0.5 * h * k2.du1, u2 + 0.5 * h * k2.du2);
      const ManifoldDerivs k4 =
          dark_manifold_rhs(s, t + h, u1 + h * k3.du1, u2 + h * k3.du2);
      u1 += (h / 6.0) * (k1.du1 + 2.0 * (k2.du1 + k3.du1) + k4.du1);
      u2 += (h / 6.0) * (k1.du2 + 2.0 * (k2.du2 + k3.du2) + k4.du2);
      out.t.push_back(i + 1 == n ? t1 : start + static_cast<double>(i + 1) * h);
      out.u1.push_back(u1);
      out.u2.push_back(u2);
    }
  } catch (const ManifoldSingularityError& err) {
    out.halted = true;
    out.halt_time = err.t;
  }
  return out;
}

DarkStateSample ManifoldTrace::sample(const PulseSchedule& s, double query) const {
  if (t.empty()) throw Error("empty manifold trace");
  if (query < start) {
    // pinned atomic dark state: same construction as the integration start
    const PulseValues v = eval_schedule(s, query);
    const double od = std::hypot(v.d1, v.d2);
    DarkStateSample d;
    d.t = query;
    if (v.p <= 0.0 || od <= 0.0) {
      d.a = 1.0;
      return d;
    }
    const double u2_raw = v.p / od;
    const double scale = 2.0 / (1.0 + std::sqrt(1.0 + 8.0 * u2_raw * u2_raw));
    const double cth = v.d1 / od, sth = v.d2 / od;
    const double u2q = scale * u2_raw;
    d.a = std::sqrt(scale);
    d.g1 = -u2q * cth;
    d.g2 = -u2q * sth;
    d.u2 = u2q;
    return d;
  }
  if (query > t.back()) {
    // beyond a halt: freeze the last sample and flag it
    DarkStateSample d = dark_manifold_state(s, t.back(), u1.back(), u2.back());
    d.t = query;
    d.flagged = true;
    return d;
  }
  // locate and linearly interpolate the parameters, then map exactly
  int lo = 0, hi = static_cast<int>(t.size()) - 1;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (t[mid] <= query ? lo : hi) = mid;
  }
  const double dt = t[hi] - t[lo];
  const double w = dt > 0.0 ? (query - t[lo]) / dt : 0.0;
  const double q1 = u1[lo] + w * (u1[hi] - u1[lo]);
  const double q2 = u2[lo] + w * (u2[hi] - u2[lo]);
  return dark_manifold_state(s, query, q1, q2);
}

CMat linearization_matrix(const SystemParams& p, const PulseSchedule& s, double t,
                          const DarkStateSample* dark) {
  const PulseValues v = eval_schedule(s, t);
  const Complex b = p.b();
  const int n = dimension(p.variant);
  CMat m(n);
  if (!is_nonlinear(p.variant)) {
    m(0, 1) = v.p;
    m(1, 0) = v.p;
    m(1, 1) = -b;
    m(1, 2) = v.d1;
    m(2, 1) = v.d1;
    if (n == 4) {
      m(1, 3) = v.d2;
      m(3, 1) = v.d2;
    }
    return m;
  }
  if (dark == nullptr)
    throw MissingDarkStateError("nonlinear variants need the dark state for linearization");
  m(0, 1) = v.p * std::conj(dark->a);
  m(1, 0) = v.p * dark->a;
  m(1, 1) = -b;
  m(1, 2) = 0.5 * v.d1;
  m(2, 1) = 0.5 * v.d1;
  if (n == 4) {
    m(1, 3) = 0.5 * v.d2;
    m(3, 1) = 0.5 * v.d2;
  }
  return m;
}

}  // namespace stirap
