#pragma once

#include <cmath>

#include "stirap/complexvec.hpp"
#include "stirap/errors.hpp"

namespace stirap {

// Mixing angles and couplings degenerate when the total Rabi frequency falls
// below a floor. Schedule-bound evaluation uses 1e-12 times the largest pulse
// amplitude; an absolute floor keeps squared frequencies representable.
inline constexpr double kPulseFloorRel = 1e-12;
inline constexpr double kPulseFloorAbs = 1e-150;

struct GaussianPulse {
  double amplitude = 0.0;  // peak value, >= 0
  double center = 0.0;
  double width = 1.0;      // > 0

  double eval(double t) const {
    const double x = (t - center) / width;
    return amplitude * std::exp(-x * x);
  }
  // d ln(value)/dt in raw time
  double dlog(double t) const { return -2.0 * (t - center) / (width * width); }
};

enum class PulseVariant { Lambda, Tripod };

/// Pump + damp pulse bundle for one system variant. All pulses share one
/// width; the dimensionless-time transforms rely on that.
struct PulseSchedule {
  PulseVariant variant = PulseVariant::Lambda;
  GaussianPulse pump;    // pump field
  GaussianPulse damp1;   // damp field (the only one for lambda)
  GaussianPulse damp2;   // second damp field, tripod only

  static PulseSchedule make_lambda(double omega0, double tp, double td, double width);
  static PulseSchedule make_tripod(double omega0, double k1, double k2, double tp,
                                   double td1, double td2, double width);

  int field_count() const { return variant == PulseVariant::Lambda ? 2 : 3; }
  double width() const { return pump.width; }
  double reference_amplitude() const;
  double floor() const {
    const double f = kPulseFloorRel * reference_amplitude();
    return f > kPulseFloorAbs ? f : kPulseFloorAbs;
  }
  void validate() const;
};

struct PulseValues {
  double p = 0.0;   // pump
  double d1 = 0.0;  // damp (lambda) / first damp (tripod)
  double d2 = 0.0;  // second damp, tripod only
};

PulseValues eval_schedule(const PulseSchedule& s, double t);

struct LambdaAngles {
  double omega;  // (p^2 + d^2)^(1/2)
  double xi_p;   // p / omega
  double xi_d;   // d / omega
};

LambdaAngles mixing_angles_lambda(double omega_p, double omega_d,
                                  double floor = kPulseFloorAbs);

struct TripodAngles {
  double omega;         // total Rabi frequency
  double phi;           // d2 = omega sin(phi)
  double theta_bright;  // p = omega cos(phi) sin(theta), d1 = omega cos(phi) cos(theta)
  bool gimbal = false;  // cos(phi) == 0; theta_bright pinned to 0 by convention

  // 4x4 transform to (B, e, D1, D2) from (a, e, g1, g2); real orthogonal
  CMat xi() const;
};

TripodAngles mixing_angles_tripod(double omega_p, double omega_d1, double omega_d2,
                                  double floor = kPulseFloorAbs);

// alpha couplings of the transformed systems. Purely imaginary; the xi
// derivatives are closed-form and taken against dimensionless time t/T.
Complex alpha_lambda(const PulseSchedule& s, double t);

struct TripodAlphas {
  Complex a13;  // bright <-> first dark
  Complex a14;  // bright <-> second dark
  Complex a34;  // dark <-> dark
};

TripodAlphas alpha_tripod(const PulseSchedule& s, double t);

}  // namespace stirap
