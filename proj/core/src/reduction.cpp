#include "stirap/reduction.hpp"

#include <cmath>

namespace stirap {

namespace {

void require_linear(const SystemParams& p, const char* what) {
  if (is_nonlinear(p.variant))
    throw DimensionError(std::string(what) + " is defined for the linear variants only");
}

}  // namespace

const char* level_name(ReductionLevel level) {
  switch (level) {
    case ReductionLevel::Full: return "full";
    case ReductionLevel::MinusExcited: return "minus_excited";
    case ReductionLevel::MinusExcitedAndBright: return "minus_bright";
  }
  return "?";
}

CVec to_bright_dark(const SystemParams& p, const PulseSchedule& s, double t,
                    const CVec& bare) {
  require_linear(p, "the bright/dark transform");
  const PulseValues v = eval_schedule(s, t);
  if (p.variant == Variant::LinearLambda) {
    const LambdaAngles a = mixing_angles_lambda(v.p, v.d1, s.floor());
    CVec bd(3);
    bd[0] = a.xi_p * bare[0] + a.xi_d * bare[2];
    bd[1] = bare[1];
    bd[2] = a.xi_d * bare[0] - a.xi_p * bare[2];
    return bd;
  }
  const TripodAngles a = mixing_angles_tripod(v.p, v.d1, v.d2, s.floor());
  return a.xi() * bare;
}

CVec from_bright_dark(const SystemParams& p, const PulseSchedule& s, double t,
                      const CVec& bd) {
  require_linear(p, "the bright/dark transform");
  const PulseValues v = eval_schedule(s, t);
  if (p.variant == Variant::LinearLambda) {
    const LambdaAngles a = mixing_angles_lambda(v.p, v.d1, s.floor());
    CVec bare(3);
    bare[0] = a.xi_p * bd[0] + a.xi_d * bd[2];
    bare[1] = bd[1];
    bare[2] = a.xi_d * bd[0] - a.xi_p * bd[2];
    return bare;
  }
  const TripodAngles a = mixing_angles_tripod(v.p, v.d1, v.d2, s.floor());
  return a.xi().transpose() * bd;
}

CVec bright_dark_rhs(const SystemParams& p, const PulseSchedule& s, double tau,
                     const CVec& bd) {
  require_linear(p, "the transformed system");
  const double tw = s.width();
  const double t = tau * tw;
  const PulseValues v = eval_schedule(s, t);
  const Complex be = -tw * p.b();
  if (p.variant == Variant::LinearLambda) {
    const LambdaAngles a = mixing_angles_lambda(v.p, v.d1, s.floor());
    const Complex alpha = alpha_lambda(s, t);
    CVec d(3);
    d[0] = -kI * (alpha * bd[2] + tw * a.omega * bd[1]);
    d[1] = -kI * (be * bd[1] + tw * a.omega * bd[0]);
    d[2] = -kI * (std::conj(alpha) * bd[0]);
    return d;
  }
  const TripodAngles a = mixing_angles_tripod(v.p, v.d1, v.d2, s.floor());
  const TripodAlphas al = alpha_tripod(s, t);
  CVec d(4);
  d[0] = -kI * (tw * a.omega * bd[1] + al.a13 * bd[2] + al.a14 * bd[3]);
  d[1] = -kI * (tw * a.omega * bd[0] + be * bd[1]);
  d[2] = -kI * (std::conj(al.a13) * bd[0] + al.a34 * bd[3]);
  d[3] = -kI * (std::conj(al.a14) * bd[0] + std::conj(al.a34) * bd[2]);
  return d;
}

CVec minus_excited_rhs(const SystemParams& p, const PulseSchedule& s, double time,
                       const CVec& y) {
  const Complex b = p.b();
  if (b == 0.0)
    throw ConfigError("adiabatic elimination undefined at gamma = delta = 0");
  if (!is_nonlinear(p.variant)) {
    // (B, D)/(B, D1, D2) in dimensionless time
    const double tw = s.width();
    const double t = time * tw;
    const PulseValues v = eval_schedule(s, t);
    if (p.variant == Variant::LinearLambda) {
      const LambdaAngles a = mixing_angles_lambda(v.p, v.d1, s.floor());
      const Complex alpha = alpha_lambda(s, t);
      CVec d(2);
      d[0] = -kI * (tw * a.omega * a.omega / b * y[0] + alpha * y[1]);
      d[1] = -kI * (std::conj(alpha) * y[0]);
      return d;
    }
    const TripodAngles a = mixing_angles_tripod(v.p, v.d1, v.d2, s.floor());
    const TripodAlphas al = alpha_tripod(s, t);
    CVec d(3);
    d[0] = -kI * (tw * a.omega * a.omega / b * y[0] + al.a13 * y[1] + al.a14 * y[2]);
    d[1] = -kI * (std::conj(al.a13) * y[0] + al.a34 * y[2]);
    d[2] = -kI * (std::conj(al.a14) * y[0] + std::conj(al.a34) * y[1]);
    return d;
  }
  // bare ground amplitudes in raw time, excited replaced by its fixed point
  const PulseValues v = eval_schedule(s, time);
  const Complex e = reconstruct_excited(p, s, time, y);
  if (p.variant == Variant::NonlinearLambda) {
    CVec d(2);
    d[0] = -kI * (v.p * std::conj(y[0]) * e);
    d[1] = -kI * (0.5 * v.d1 * e);
    return d;
  }
  CVec d(3);
  d[0] = -kI * (v.p * std::conj(y[0]) * e);
  d[1] = -kI * (0.5 * v.d1 * e);
  d[2] = -kI * (0.5 * v.d2 * e);
  return d;
}

Complex reconstruct_excited(const SystemParams& p, const PulseSchedule& s, double t,
                            const CVec& reduced) {
  const Complex b = p.b();
  if (b == 0.0)
    throw ConfigError("adiabatic elimination undefined at gamma = delta = 0");
  const PulseValues v = eval_schedule(s, t);
  switch (p.variant) {
    case Variant::LinearLambda: {
      const LambdaAngles a = mixing_angles_lambda(v.p, v.d1, s.floor());
      return a.omega / b * reduced[0];
    }
    case Variant::LinearTripod: {
      const TripodAngles a = mixing_angles_tripod(v.p, v.d1, v.d2, s.floor());
      return a.omega / b * reduced[0];
    }
    case Variant::NonlinearLambda:
      return (0.5 * v.p * reduced[0] * reduced[0] + 0.5 * v.d1 * reduced[1]) / b;
    case Variant::NonlinearTripod:
      return (0.5 * v.p * reduced[0] * reduced[0] + 0.5 * v.d1 * reduced[1] +
              0.5 * v.d2 * reduced[2]) / b;
  }
  return {};
}

CVec minus_bright_rhs(const SystemParams& p, const PulseSchedule& s, double tau,
                      const CVec& dark, const MinusBrightOptions& opt) {
  require_linear(p, "bright-state elimination");
  const Complex b = p.b();
  if (b == 0.0)
    throw ConfigError("adiabatic elimination undefined at gamma = delta = 0");
  const double tw = s.width();
  const double t = tau * tw;
  const PulseValues v = eval_schedule(s, t);
  if (p.variant == Variant::LinearLambda) {
    const LambdaAngles a = mixing_angles_lambda(v.p, v.d1, s.floor());
    const Complex alpha = alpha_lambda(s, t);
    CVec d(1);
    d[0] = -kI * (-std::norm(alpha) * b / (tw * a.omega * a.omega) * dark[0]);
    return d;
  }
  const TripodAngles a = mixing_angles_tripod(v.p, v.d1, v.d2, s.floor());
  const TripodAlphas al = alpha_tripod(s, t);
  const Complex g = opt.coupling_only ? Complex{} : b / (tw * a.omega * a.omega);
  CVec d(2);
  d[0] = -kI * ((-g * std::norm(al.a13)) * dark[0] +
                (al.a34 - g * std::conj(al.a13) * al.a14) * dark[1]);
  d[1] = -kI * ((std::conj(al.a34) - g * std::conj(al.a14) * al.a13) * dark[0] +
                (-g * std::norm(al.a14)) * dark[1]);
  return d;
}

Complex reconstruct_bright(const SystemParams& p, const PulseSchedule& s, double t,
                           const CVec& dark) {
  require_linear(p, "bright-state elimination");
  const Complex b = p.b();
  if (b == 0.0)
    throw ConfigError("adiabatic elimination undefined at gamma = delta = 0");
  const double tw = s.width();
  const PulseValues v = eval_schedule(s, t);
  if (p.variant == Variant::LinearLambda) {
    const LambdaAngles a = mixing_angles_lambda(v.p, v.d1, s.floor());
    const Complex alpha = alpha_lambda(s, t);
    return -alpha * b / (tw * a.omega * a.omega) * dark[0];
  }
  const TripodAngles a = mixing_angles_tripod(v.p, v.d1, v.d2, s.floor());
  const TripodAlphas al = alpha_tripod(s, t);
  return -b / (tw * a.omega * a.omega) * (al.a13 * dark[0] + al.a14 * dark[1]);
}

}  // namespace stirap
