#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "stirap/models.hpp"

namespace stirap {

/// Coefficients of the characteristic quadratic w^2 + b*w + c = 0 carrying
/// the non-zero Hamiltonian eigenvalues. c is real and <= 0 for every variant.
struct QuadraticCoefficients {
  Complex b{};
  double c = 0.0;

  Complex discriminant() const { return b * b - 4.0 * c; }
};

QuadraticCoefficients characteristic_coeffs(const SystemParams& p, const PulseSchedule& s,
                                            double t, const DarkStateSample* dark = nullptr);

/// Square root on the branch with non-negative real part; on the negative
/// real axis the result has non-negative imaginary part (the sign of a zero
/// imaginary input never leaks into the branch choice).
inline Complex principal_sqrt(Complex z) {
  if (z.imag() == 0.0) z = Complex{z.real(), 0.0};
  return std::sqrt(z);
}

/// Roots of w^2 + b*w + c = 0 via the principal square root (non-negative real
/// part; on the imaginary axis, non-negative imaginary part). Returned as
/// (-b + sqrt(D))/2 first.
std::pair<Complex, Complex> solve_characteristic(Complex b, Complex c);

struct EigenSample {
  double t = 0.0;
  int n = 0;                       // system dimension
  int zero_multiplicity = 0;       // 1 for lambda, 2 for tripod
  std::array<Complex, 4> lam{};    // Jacobian eigenvalues, continuity-labeled
  Complex discriminant{};
  bool flagged = false;            // dark-state source flagged at this time
};

// |psi_a^0|^2 as a function of time; only consulted for nonlinear variants.
using DarkDensity = std::function<double(double)>;

enum class DarkStateMode { Manifold, Substitution };

std::vector<EigenSample> eigen_trace(const SystemParams& p, const PulseSchedule& s,
                                     double t0, double t1, int samples,
                                     const DarkDensity& a_sq = {});

struct StageBoundaries {
  double t1 = 0.0;
  double t2 = 0.0;
};

/// Roots of Re D(t) = 0 bracketing the D > 0 interval. Coarse scan plus
/// bisection; errors if the sign does not change exactly twice.
StageBoundaries stage_boundaries(const SystemParams& p, const PulseSchedule& s,
                                 double t0, double t1, const DarkDensity& a_sq = {});
StageBoundaries stage_boundaries_of(const std::function<double(double)>& re_d,
                                    double t0, double t1);

struct Lambda2DEigen {
  Complex l1{}, l2{};  // Jacobian eigenvalues of the two-variable reduced system
  double d2 = 0.0;     // (T Omega^2 / gamma)^2 - 4 |alpha|^2
};

Lambda2DEigen reduced_lambda_2d_eigenvalues(const PulseSchedule& s, double t,
                                            double gamma, double delta = 0.0);

double reduced_lambda_1d_eigenvalue(const PulseSchedule& s, double t, double gamma);

struct TripodReduced2D {
  CMat h2{2};    // full two-dark-state Hamiltonian
  CMat h2_0{2};  // coupling part (off-diagonal alpha_34)
  CMat h2_1{2};  // negative Gram correction, Hermitian negative semidefinite
  Complex l1{}, l2{};  // Jacobian eigenvalues of h2
};

TripodReduced2D reduced_tripod_2d_matrix(const PulseSchedule& s, double t,
                                         double gamma, double delta);

struct DetuningSplit {
  Complex l3{}, l4{};
  double exact = 0.0;        // |D|^(1/2) sin(arg(D)/2)
  double approx = 0.0;       // Im D / (2 sqrt(Re D)); NaN when invalid
  bool approx_valid = false; // requires Re D > 0
};

DetuningSplit detuning_splitting(Complex b, double c);

}  // namespace stirap
