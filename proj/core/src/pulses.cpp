#include "stirap/pulses.hpp"

#include <algorithm>

namespace stirap {

PulseSchedule PulseSchedule::make_lambda(double omega0, double tp, double td,
                                         double width) {
  PulseSchedule s;
  s.variant = PulseVariant::Lambda;
  s.pump = {omega0, tp, width};
  s.damp1 = {omega0, td, width};
  s.damp2 = {0.0, 0.0, width};
  s.validate();
  return s;
}

PulseSchedule PulseSchedule::make_tripod(double omega0, double k1, double k2,
                                         double tp, double td1, double td2,
                                         double width) {
  PulseSchedule s;
  s.variant = PulseVariant::Tripod;
  s.pump = {omega0, tp, width};
  s.damp1 = {k1 * omega0, td1, width};
  s.damp2 = {k2 * omega0, td2, width};
  s.validate();
  return s;
}

double PulseSchedule::reference_amplitude() const {
  double a = std::max(pump.amplitude, damp1.amplitude);
  if (variant == PulseVariant::Tripod) a = std::max(a, damp2.amplitude);
  return a;
}

void PulseSchedule::validate() const {
  if (pump.amplitude < 0.0 || damp1.amplitude < 0.0 || damp2.amplitude < 0.0)
    throw ConfigError("pulse amplitudes must be non-negative");
  if (!(pump.width > 0.0)) throw ConfigError("pulse width must be positive");
  const double w = pump.width;
  const bool same = damp1.width == w &&
                    (variant == PulseVariant::Lambda || damp2.width == w);
  if (!same) throw ConfigError("all pulses must share one width");
  if (reference_amplitude() <= 0.0)
    throw ConfigError("schedule needs at least one nonzero pulse");
}

PulseValues eval_schedule(const PulseSchedule& s, double t) {
  PulseValues v;
  v.p = s.pump.eval(t);
  v.d1 = s.damp1.eval(t);
  if (s.variant == PulseVariant::Tripod) v.d2 = s.damp2.eval(t);
  return v;
}

LambdaAngles mixing_angles_lambda(double omega_p, double omega_d, double floor) {
  const double omega = std::hypot(omega_p, omega_d);
  if (omega <= std::max(floor, kPulseFloorAbs))
    throw DegeneratePulseError("total Rabi frequency below pulse floor");
  return {omega, omega_p / omega, omega_d / omega};
}

TripodAngles mixing_angles_tripod(double omega_p, double omega_d1,
                                  double omega_d2, double floor) {
  const double opd1 = std::hypot(omega_p, omega_d1);
  const double omega = std::hypot(opd1, omega_d2);
  if (omega <= std::max(floor, kPulseFloorAbs))
    throw DegeneratePulseError("total Rabi frequency below pulse floor");
  TripodAngles a;
  a.omega = omega;
  a.phi = std::atan2(omega_d2, opd1);
  if (opd1 == 0.0) {
    // pure d2 pulse: theta is arbitrary, any value gives the same transform
    a.theta_bright = 0.0;
    a.gimbal = true;
  } else {
    a.theta_bright = std::atan2(omega_p, omega_d1);
  }
  return a;
}

CMat TripodAngles::xi() const {
  const double cph = std::cos(phi), sph = std::sin(phi);
  const double cth = std::cos(theta_bright), sth = std::sin(theta_bright);
  CMat m(4);
  m(0, 0) = cph * sth; m(0, 1) = 0.0; m(0, 2) = cph * cth; m(0, 3) = sph;
  m(1, 0) = 0.0;       m(1, 1) = 1.0; m(1, 2) = 0.0;       m(1, 3) = 0.0;
  m(2, 0) = cth;       m(2, 1) = 0.0; m(2, 2) = -sth;      m(2, 3) = 0.0;
  m(3, 0) = sph * sth; m(3, 1) = 0.0; m(3, 2) = sph * cth; m(3, 3) = -cph;
  return m;
}

Complex alpha_lambda(const PulseSchedule& s, double t) {
  if (s.variant != PulseVariant::Lambda)
    throw DimensionError("alpha_lambda needs a lambda schedule");
  const PulseValues v = eval_schedule(s, t);
  const LambdaAngles ang = mixing_angles_lambda(v.p, v.d1, s.floor());
  const double w = s.width();
  // log-derivatives against dimensionless time t/T
  const double lp = s.pump.dlog(t) * w;
  const double ld = s.damp1.dlog(t) * w;
  const double om = ang.omega;
  const double dom = (v.p * v.p * lp + v.d1 * v.d1 * ld) / om;  // dOmega/dtau
  const double dxi_p = (lp * v.p * om - v.p * dom) / (om * om);
  const double dxi_d = (ld * v.d1 * om - v.d1 * dom) / (om * om);
  return kI * (dxi_p * ang.xi_d - dxi_d * ang.xi_p);
}

TripodAlphas alpha_tripod(const PulseSchedule& s, double t) {
  if (s.variant != PulseVariant::Tripod)
    throw DimensionError("alpha_tripod needs a tripod schedule");
  const PulseValues v = eval_schedule(s, t);
  const TripodAngles ang = mixing_angles_tripod(v.p, v.d1, v.d2, s.floor());
  const double opd1 = std::hypot(v.p, v.d1);
  if (opd1 <= kPulseFloorAbs)
    throw DegeneratePulseError("pump and first damp both vanish: xi derivatives undefined");
  const double w = s.width();
  const double lp = s.pump.dlog(t) * w;
  const double l1 = s.damp1.dlog(t) * w;
  const double l2 = s.damp2.dlog(t) * w;

  // dtheta/dtau and dphi/dtau from the Gaussian closed forms
  const double thdot = (lp - l1) * v.p * v.d1 / (opd1 * opd1);
  const double dopd1 = (v.p * v.p * lp + v.d1 * v.d1 * l1) / opd1;
  const double om2 = ang.omega * ang.omega;
  const double phidot = (l2 * v.d2 * opd1 - dopd1 * v.d2) / om2;

  const double cph = std::cos(ang.phi), sph = std::sin(ang.phi);
  const double cth = std::cos(ang.theta_bright), sth = std::sin(ang.theta_bright);

  // xi-row derivatives, then the contractions defining the couplings
  const double d11 = -phidot * sph * sth + thdot * cph * cth;
  const double d13 = -phidot * sph * cth - thdot * cph * sth;
  const double d14 = phidot * cph;
  const double d31 = -thdot * sth;
  const double d33 = -thdot * cth;

  TripodAlphas a;
  a.a13 = kI * (d11 * cth + d13 * (-sth));
  a.a14 = kI * (d11 * (sph * sth) + d13 * (sph * cth) + d14 * (-cph));
  a.a34 = kI * (d31 * (sph * sth) + d33 * (sph * cth));
  return a;
}

}  // namespace stirap
