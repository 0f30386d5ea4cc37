#include "stirap/spectral.hpp"

#include <cmath>
#include <limits>

namespace stirap {

QuadraticCoefficients characteristic_coeffs(const SystemParams& p, const PulseSchedule& s,
                                            double t, const DarkStateSample* dark) {
  const PulseValues v = eval_schedule(s, t);
  QuadraticCoefficients q;
  q.b = p.b();
  switch (p.variant) {
    case Variant::LinearLambda:
      q.c = -(v.p * v.p + v.d1 * v.d1);
      break;
    case Variant::LinearTripod:
      q.c = -(v.p * v.p + v.d1 * v.d1 + v.d2 * v.d2);
      break;
    case Variant::NonlinearLambda: {
      if (dark == nullptr)
        throw MissingDarkStateError("nonlinear lambda coefficients need the dark state");
      q.c = -(v.d1 * v.d1 + 4.0 * v.p * v.p * dark->a_sq()) / 4.0;
      break;
    }
    case Variant::NonlinearTripod: {
      if (dark == nullptr)
        throw MissingDarkStateError("nonlinear tripod coefficients need the dark state");
      q.c = -(v.d1 * v.d1 + v.d2 * v.d2 + 4.0 * v.p * v.p * dark->a_sq()) / 4.0;
      break;
    }
  }
  return q;
}

std::pair<Complex, Complex> solve_characteristic(Complex b, Complex c) {
  const Complex root = principal_sqrt(b * b - 4.0 * c);
  return {0.5 * (-b + root), 0.5 * (-b - root)};
}

namespace {

double nl_lambda_density(const PulseSchedule& s, double t) {
  const PulseValues v = eval_schedule(s, t);
  return dark_state_nonlinear_lambda(v.p, v.d1).a_sq();
}

QuadraticCoefficients coeffs_at(const SystemParams& p, const PulseSchedule& s, double t,
                                const DarkDensity& a_sq, bool* flagged) {
  if (!is_nonlinear(p.variant)) return characteristic_coeffs(p, s, t);
  DarkStateSample dark;
  if (a_sq) {
    dark.a = std::sqrt(std::max(0.0, a_sq(t)));
  } else if (p.variant == Variant::NonlinearLambda) {
    dark.a = std::sqrt(nl_lambda_density(s, t));
  } else {
    throw MissingDarkStateError("nonlinear tripod trace needs a dark-state density source");
  }
  (void)flagged;
  return characteristic_coeffs(p, s, t, &dark);
}

}  // namespace

std::vector<EigenSample> eigen_trace(const SystemParams& p, const PulseSchedule& s,
                                     double t0, double t1, int samples,
                                     const DarkDensity& a_sq) {
  if (samples < 2) throw ConfigError("eigen trace needs at least two samples");
  if (!(t1 > t0)) throw ConfigError("eigen trace window must have t1 > t0");
  const int zeros = is_tripod(p.variant) ? 2 : 1;
  const int n = dimension(p.variant);

  std::vector<EigenSample> out;
  out.reserve(samples);
  Complex prev_hi{}, prev_lo{};
  for (int i = 0; i < samples; ++i) {
    const double t = t0 + (t1 - t0) * static_cast<double>(i) / (samples - 1);
    const QuadraticCoefficients q = coeffs_at(p, s, t, a_sq, nullptr);
    auto [wa, wb] = solve_characteristic(q.b, q.c);
    Complex la = -kI * wa;
    Complex lb = -kI * wb;
    if (i == 0) {
      // seed: higher real part first (the slow branch; the -gamma branch last)
      if (la.real() < lb.real()) std::swap(la, lb);
    } else {
      // continuity labeling; at exact degeneracy keep the previous order
      const double keep = std::abs(la - prev_hi) + std::abs(lb - prev_lo);
      const double swap = std::abs(lb - prev_hi) + std::abs(la - prev_lo);
      if (swap < keep) std::swap(la, lb);
    }
    prev_hi = la;
    prev_lo = lb;

    EigenSample e;
    e.t = t;
    e.n = n;
    e.zero_multiplicity = zeros;
    for (int z = 0; z < zeros; ++z) e.lam[z] = 0.0;
    e.lam[zeros] = la;
    e.lam[zeros + 1] = lb;
    e.discriminant = q.discriminant();
    out.push_back(e);
  }
  return out;
}

StageBoundaries stage_boundaries_of(const std::function<double(double)>& re_d,
                                    double t0, double t1) {
  if (!(t1 > t0)) throw ConfigError("boundary scan window must have t1 > t0");
  const int n = 2000;
  std::vector<double> ts(n + 1), vals(n + 1);
  double vmax = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    ts[i] = t0 + (t1 - t0) * static_cast<double>(i) / n;
    vals[i] = re_d(ts[i]);
    vmax = std::max(vmax, vals[i]);
  }
  std::vector<double> roots;
  for (int i = 0; i < n; ++i) {
    if (!(vals[i] == 0.0) && vals[i] * vals[i + 1] < 0.0) {
      double a = ts[i], b = ts[i + 1], fa = vals[i];
      while (b - a > 1e-6) {
        const double m = 0.5 * (a + b);
        const double fm = re_d(m);
        if (fa * fm <= 0.0) {
          b = m;
        } else {
          a = m;
          fa = fm;
        }
      }
      roots.push_back(0.5 * (a + b));
    } else if (vals[i] == 0.0) {
      roots.push_back(ts[i]);
    }
  }
  if (roots.size() < 2) {
    if (vmax < 0.0)
      throw BoundaryError("discriminant never positive: pulses too weak", t0);
    throw BoundaryError("discriminant does not change sign twice on the window", t0);
  }
  if (roots.size() > 2)
    throw BoundaryError("more than two discriminant sign changes on the window", t0);
  StageBoundaries sb{roots[0], roots[1]};
  if (!(re_d(0.5 * (sb.t1 + sb.t2)) > 0.0))
    throw BoundaryError("discriminant not positive between the boundaries", sb.t1);
  return sb;
}

StageBoundaries stage_boundaries(const SystemParams& p, const PulseSchedule& s,
                                 double t0, double t1, const DarkDensity& a_sq) {
  auto re_d = [&](double t) {
    return coeffs_at(p, s, t, a_sq, nullptr).discriminant().real();
  };
  return stage_boundaries_of(re_d, t0, t1);
}

Lambda2DEigen reduced_lambda_2d_eigenvalues(const PulseSchedule& s, double t,
                                            double gamma, double delta) {
  if (gamma == 0.0 && delta == 0.0)
    throw ConfigError("reduced two-variable eigenvalues need gamma > 0 or delta != 0");
  const PulseValues v = eval_schedule(s, t);
  const double om2 = v.p * v.p + v.d1 * v.d1;
  const Complex alpha = alpha_lambda(s, t);
  const Complex b{delta, gamma};
  const double tw = s.width();
  // eigenvalues of [[T Omega^2 / b, alpha], [alpha*, 0]]
  const Complex tr = tw * om2 / b;
  const Complex root = principal_sqrt(tr * tr + 4.0 * std::norm(alpha));
  Lambda2DEigen r;
  r.l1 = -kI * 0.5 * (tr + root);
  r.l2 = -kI * 0.5 * (tr - root);
  if (gamma > 0.0) {
    const double x = tw * om2 / gamma;
    r.d2 = x * x - 4.0 * std::norm(alpha);
  }
  return r;
}

double reduced_lambda_1d_eigenvalue(const PulseSchedule& s, double t, double gamma) {
  const PulseValues v = eval_schedule(s, t);
  const double om2 = v.p * v.p + v.d1 * v.d1;
  const double om = std::sqrt(om2);
  if (om <= s.floor())
    throw DegeneratePulseError("total Rabi frequency below pulse floor", t);
  const Complex alpha = alpha_lambda(s, t);
  return -std::norm(alpha) * gamma / (s.width() * om2);
}

TripodReduced2D reduced_tripod_2d_matrix(const PulseSchedule& s, double t,
                                         double gamma, double delta) {
  const PulseValues v = eval_schedule(s, t);
  const double om2 = v.p * v.p + v.d1 * v.d1 + v.d2 * v.d2;
  if (std::sqrt(om2) <= s.floor())
    throw DegeneratePulseError("total Rabi frequency below pulse floor", t);
  const TripodAlphas al = alpha_tripod(s, t);
  TripodReduced2D r;
  r.h2_0(0, 1) = al.a34;
  r.h2_0(1, 0) = std::conj(al.a34);
  r.h2_1(0, 0) = -std::norm(al.a13);
  r.h2_1(0, 1) = -std::conj(al.a13) * al.a14;
  r.h2_1(1, 0) = -std::conj(al.a14) * al.a13;
  r.h2_1(1, 1) = -std::norm(al.a14);
  const Complex g = Complex{delta, gamma} / (s.width() * om2);
  r.h2 = r.h2_0 + g * r.h2_1;
  const Complex tr = r.h2(0, 0) + r.h2(1, 1);
  const Complex det = r.h2(0, 0) * r.h2(1, 1) - r.h2(0, 1) * r.h2(1, 0);
  const Complex root = principal_sqrt(tr * tr - 4.0 * det);
  r.l1 = -kI * 0.5 * (tr + root);
  r.l2 = -kI * 0.5 * (tr - root);
  return r;
}

DetuningSplit detuning_splitting(Complex b, double c) {
  Complex d = b * b - 4.0 * c;
  if (d.imag() == 0.0) d = Complex{d.real(), 0.0};
  DetuningSplit out;
  auto [wa, wb] = solve_characteristic(b, Complex{c});
  out.l3 = -kI * wa;
  out.l4 = -kI * wb;
  out.exact = std::sqrt(std::abs(d)) * std::sin(0.5 * std::arg(d));
  if (d.real() > 0.0) {
    out.approx = d.imag() / (2.0 * std::sqrt(d.real()));
    out.approx_valid = true;
  } else {
    out.approx = std::numeric_limits<double>::quiet_NaN();
    out.approx_valid = false;
  }
  return out;
}

}  // namespace stirap
