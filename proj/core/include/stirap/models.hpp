#pragma once

#include <vector>

#include "stirap/complexvec.hpp"
#include "stirap/errors.hpp"
#include "stirap/pulses.hpp"

namespace stirap {

enum class Variant { LinearLambda, LinearTripod, NonlinearLambda, NonlinearTripod };

constexpr bool is_tripod(Variant v) {
  return v == Variant::LinearTripod || v == Variant::NonlinearTripod;
}
constexpr bool is_nonlinear(Variant v) {
  return v == Variant::NonlinearLambda || v == Variant::NonlinearTripod;
}
constexpr int dimension(Variant v) { return is_tripod(v) ? 4 : 3; }
// weight of the excited/ground molecular amplitudes in the norm
constexpr double molecular_weight(Variant v) { return is_nonlinear(v) ? 2.0 : 1.0; }
constexpr PulseVariant pulse_variant(Variant v) {
  return is_tripod(v) ? PulseVariant::Tripod : PulseVariant::Lambda;
}

struct SystemParams {
  Variant variant = Variant::LinearLambda;
  double gamma = 0.0;  // amplitude damping rate, >= 0
  double delta = 0.0;  // one-photon detuning

  Complex b() const { return {delta, gamma}; }  // the Delta + i*gamma block
  void validate() const {
    if (gamma < 0.0) throw ConfigError("loss rate gamma must be >= 0");
  }
};

// State layout: lambda (a, e, g); tripod (a, e, g1, g2). Raw (laboratory) time.
CVec bare_rhs(const SystemParams& p, const PulseSchedule& s, double t, const CVec& psi);

double total_norm(Variant v, const CVec& psi);

struct DarkStateSample {
  double t = 0.0;
  Complex a{}, e{}, g1{}, g2{};
  double u1 = 0.0, u2 = 0.0;  // manifold parameters (nonlinear tripod)
  bool flagged = false;       // outside the integrated manifold range

  double a_sq() const { return std::norm(a); }
};

/// Steady state of the nonlinear lambda system at given pulse values.
DarkStateSample dark_state_nonlinear_lambda(double omega_p, double omega_d);

struct ManifoldDerivs {
  double du1 = 0.0, du2 = 0.0;
};

inline constexpr double kManifoldFloorU2 = 1e-10;

// Flow of the dark-manifold parameters (raw time; the trajectory itself is
// reparametrization-invariant). The 2x2 linear system is triangular once the
// second equation is multiplied through by u2, which also removes the 1/u2.
ManifoldDerivs dark_manifold_rhs(const PulseSchedule& s, double t, double u1, double u2);

DarkStateSample dark_manifold_state(const PulseSchedule& s, double t, double u1, double u2);

/// Integrated dark-manifold trajectory. Before `start` the dark state is the
/// pinned atomic one (u1 = 0, u2 = pump/damp ratio, rescaled to unit norm);
/// after a floor halt the last value is frozen and samples are flagged.
struct ManifoldTrace {
  std::vector<double> t;
  std::vector<double> u1, u2;
  double start = 0.0;
  bool halted = false;
  double halt_time = 0.0;

  DarkStateSample sample(const PulseSchedule& s, double query) const;
  double a_sq(const PulseSchedule& s, double query) const { return sample(s, query).a_sq(); }
};

ManifoldTrace integrate_dark_manifold(const PulseSchedule& s, double t0, double t1,
                                      double step);

/// Hamiltonian-like matrix M of the linearized dynamics; the Jacobian is -iM.
/// Nonlinear variants require the dark state the linearization is taken at.
CMat linearization_matrix(const SystemParams& p, const PulseSchedule& s, double t,
                          const DarkStateSample* dark = nullptr);

inline CMat jacobian_from(const CMat& m) { return -kI * m; }

}  // namespace stirap
