#include <doctest.h>

#include <cmath>
#include <random>

#include "stirap/models.hpp"
#include "stirap/ode.hpp"

using namespace stirap;

namespace {

PulseSchedule peak_lambda(double omega_p, double omega_d) {
  PulseSchedule s;
  s.variant = PulseVariant::Lambda;
  s.pump = {omega_p, 0.0, 1.0};
  s.damp1 = {omega_d, 0.0, 1.0};
  return s;  // evaluate at t = 0 to see exactly (omega_p, omega_d)
}

PulseSchedule peak_tripod(double p, double d1, double d2) {
  PulseSchedule s;
  s.variant = PulseVariant::Tripod;
  s.pump = {p, 0.0, 1.0};
  s.damp1 = {d1, 0.0, 1.0};
  s.damp2 = {d2, 0.0, 1.0};
  return s;
}

PulseSchedule fig9_pulses() {
  return PulseSchedule::make_tripod(60.0, 0.75, 5.0, 10.7, 10.0, 8.5, 1.0);
}

// finite-difference dTheta_dark/dt and d[delta_p/(4 cos Theta)]/dt from raw
// pulse values (independent of the production log-derivative route)
double theta_dark_fd(const PulseSchedule& s, double t, double h) {
  auto th = [&](double tt) {
    const PulseValues v = eval_schedule(s, tt);
    return std::atan2(v.d2, v.d1);
  };
  return (th(t + h) - th(t - h)) / (2.0 * h);
}

double bcap_fd(const PulseSchedule& s, double t, double h) {
  auto bc = [&](double tt) {
    const PulseValues v = eval_schedule(s, tt);
    return std::hypot(v.d1, v.d2) / (4.0 * v.p);
  };
  return (bc(t + h) - bc(t - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("bare rhs matches the equations of motion") {
  SystemParams lin;
  lin.variant = Variant::LinearLambda;
  lin.gamma = 2.0;
  const CVec start{1.0, 0.0, 0.0};
  const CVec d = bare_rhs(lin, peak_lambda(5.0, 3.0), 0.0, start);
  CHECK(d[0] == Complex{0.0, 0.0});
  CHECK(std::abs(d[1] - Complex{0.0, -5.0}) <= 1e-15);
  CHECK(d[2] == Complex{0.0, 0.0});

  SystemParams nl;
  nl.variant = Variant::NonlinearLambda;
  nl.gamma = 2.0;
  const CVec dn = bare_rhs(nl, peak_lambda(4.0, 0.0), 0.0, start);
  CHECK(std::abs(dn[1] - Complex{0.0, -2.0}) <= 1e-15);

  for (Variant v : {Variant::LinearLambda, Variant::LinearTripod,
                    Variant::NonlinearLambda, Variant::NonlinearTripod}) {
    SystemParams p;
    p.variant = v;
    p.gamma = 1.0;
    const PulseSchedule s =
        is_tripod(v) ? peak_tripod(1.0, 2.0, 3.0) : peak_lambda(1.0, 2.0);
    const CVec zero(dimension(v));
    const CVec dz = bare_rhs(p, s, 0.3, zero);
    for (int i = 0; i < dz.size(); ++i) CHECK(dz[i] == Complex{0.0, 0.0});
  }
}

TEST_CASE("dimension mismatch is rejected") {
  SystemParams p;
  p.variant = Variant::LinearTripod;
  CHECK_THROWS_AS(bare_rhs(p, peak_tripod(1, 1, 1), 0.0, CVec{1.0, 0.0, 0.0}),
                  DimensionError);
  CHECK_THROWS_AS(total_norm(Variant::LinearLambda, CVec{1.0, 0.0, 0.0, 0.0}),
                  DimensionError);
}

TEST_CASE("variant norms") {
  CHECK(total_norm(Variant::NonlinearLambda, CVec{1.0, 0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(total_norm(Variant::NonlinearLambda, CVec{0.0, 0.0, 1.0 / std::sqrt(2.0)}) ==
        doctest::Approx(1.0));
  CHECK(total_norm(Variant::LinearTripod, CVec{0.5, 0.5, 0.5, 0.5}) == doctest::Approx(1.0));
}

TEST_CASE("nonlinear lambda dark state") {
  const DarkStateSample a = dark_state_nonlinear_lambda(0.0, 5.0);
  CHECK(a.a == Complex{1.0, 0.0});
  CHECK(a.g1 == Complex{0.0, 0.0});

  const DarkStateSample b = dark_state_nonlinear_lambda(5.0, 0.0);
  CHECK(std::abs(b.a) <= 1e-15);
  CHECK(b.g1.real() == doctest::Approx(-1.0 / std::sqrt(2.0)));

  const DarkStateSample c = dark_state_nonlinear_lambda(1.0, 1.0);
  CHECK(c.a.real() == doctest::Approx(std::sqrt(0.5)));
  CHECK(c.g1.real() == doctest::Approx(-0.5));

  CHECK_THROWS_AS(dark_state_nonlinear_lambda(0.0, 0.0), DegeneratePulseError);
}

TEST_CASE("dark state zeroes the nonlinear rhs") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> amp(0.0, 40.0);
  for (int i = 0; i < 400; ++i) {
    const double op = amp(rng), od = amp(rng);
    if (op + od <= 0.0) continue;
    const DarkStateSample d = dark_state_nonlinear_lambda(op, od);
    const double norm = std::norm(d.a) + 2.0 * std::norm(d.g1);
    CHECK(std::abs(norm - 1.0) <= 1e-12);
    // residual of the excited-state drive
    const double omega = std::hypot(op, od);
    const Complex drive = op * d.a * d.a + od * d.g1;
    CHECK(std::abs(drive) <= 1e-12 * std::max(omega, 1.0));
  }
}

TEST_CASE("manifold flow is stationary for frozen pulse shapes") {
  // all three centers coincide: the mixing angles and delta_p are constant
  const PulseSchedule s = PulseSchedule::make_tripod(10.0, 0.5, 2.0, 3.0, 3.0, 3.0, 1.0);
  const ManifoldDerivs d = dark_manifold_rhs(s, 2.0, 0.3, 0.4);
  CHECK(std::abs(d.du1) <= 1e-15);
  CHECK(std::abs(d.du2) <= 1e-15);
}

TEST_CASE("manifold flow against finite-difference coefficients") {
  const PulseSchedule s = fig9_pulses();
  // residual substitution into the two parameter equations with independent
  // finite-difference derivatives of Theta and delta_p/(4 cos Theta)
  for (double t : {8.0, 9.0, 10.0, 11.0, 12.0}) {
    const double u1 = 0.21, u2 = 0.37;
    const ManifoldDerivs d = dark_manifold_rhs(s, t, u1, u2);
    const double thdot = theta_dark_fd(s, t, 1e-6);
    const double bdot = bcap_fd(s, t, 1e-6);
    const PulseValues v = eval_schedule(s, t);
    const double bcap = std::hypot(v.d1, v.d2) / (4.0 * v.p);
    const double r1 = d.du1 + thdot * u2;
    const double r2 = d.du2 * (1.0 + bcap / u2) - thdot * u1 + bdot;
    CHECK(std::abs(r1) <= 1e-8);
    CHECK(std::abs(r2) <= 1e-7 * std::max(1.0, std::abs(bdot)));
  }
  // u1 = 0 read-off: du1 = -thdot * u2
  const double thdot = theta_dark_fd(s, 9.5, 1e-6);
  const ManifoldDerivs d = dark_manifold_rhs(s, 9.5, 0.0, 0.25);
  CHECK(d.du1 == doctest::Approx(-thdot * 0.25).epsilon(1e-7));
}

TEST_CASE("manifold rhs guards") {
  const PulseSchedule s = fig9_pulses();
  CHECK_THROWS_AS(dark_manifold_rhs(s, 9.0, 0.0, 1e-11), ManifoldSingularityError);
  CHECK_THROWS_AS(dark_manifold_rhs(s, 0.0, 0.0, 0.5), ManifoldSingularityError);
}

TEST_CASE("manifold state read-offs and residual") {
  const PulseSchedule flat = PulseSchedule::make_tripod(10.0, 1.0, 0.0, 3.8, 3.0, 0.0, 1.0);
  // second damp off: Theta_dark = 0
  const DarkStateSample d0 = dark_manifold_state(flat, 3.0, 0.13, 0.27);
  CHECK(d0.g1.real() == doctest::Approx(-0.27));
  CHECK(d0.g2.real() == doctest::Approx(-0.13));

  const PulseSchedule s = fig9_pulses();
  const DarkStateSample z = dark_manifold_state(s, 9.0, 0.0, 0.0);
  CHECK(std::abs(z.a) == 0.0);
  CHECK(std::abs(z.g1) == 0.0);
  CHECK(std::abs(z.g2) == 0.0);

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> par(0.0, 0.7);
  for (int i = 0; i < 200; ++i) {
    const double u1 = par(rng), u2 = par(rng);
    const DarkStateSample d = dark_manifold_state(s, 9.0, u1, u2);
    const PulseValues v = eval_schedule(s, 9.0);
    const double omega = std::sqrt(v.p * v.p + v.d1 * v.d1 + v.d2 * v.d2);
    const Complex resid = v.p * d.a * d.a + v.d1 * d.g1 + v.d2 * d.g2;
    CHECK(std::abs(resid) <= 1e-9 * omega);
  }
}

TEST_CASE("integrated manifold trajectory") {
  const PulseSchedule s = fig9_pulses();
  const ManifoldTrace tr = integrate_dark_manifold(s, 0.0, 20.0, 5e-4);
  // the guard halts the trace once the pump falls below the pulse floor,
  // well after the second stage boundary
  CHECK(tr.halted);
  CHECK(tr.halt_time > 15.0);
  CHECK(tr.start > 0.0);
  for (size_t i = 0; i < tr.t.size(); i += 50) {
    const DarkStateSample d = dark_manifold_state(s, tr.t[i], tr.u1[i], tr.u2[i]);
    const double norm = std::norm(d.a) + 2.0 * (std::norm(d.g1) + std::norm(d.g2));
    CHECK(std::abs(norm - 1.0) <= 1e-9);
    const PulseValues v = eval_schedule(s, tr.t[i]);
    const double omega = std::sqrt(v.p * v.p + v.d1 * v.d1 + v.d2 * v.d2);
    const Complex resid = v.p * d.a * d.a + v.d1 * d.g1 + v.d2 * d.g2;
    CHECK(std::abs(resid) <= 1e-6 * omega);
  }
  // pinned atomic dark state before the start, smooth value at the start
  CHECK(tr.a_sq(s, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tr.a_sq(s, tr.start) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("frozen flagged samples after a manifold halt") {
  const PulseSchedule s = fig9_pulses();
  ManifoldTrace tr;
  tr.start = 6.0;
  tr.t = {6.0, 6.5, 7.0};
  tr.u1 = {0.0, 0.01, 0.02};
  tr.u2 = {0.1, 0.2, 0.3};
  tr.halted = true;
  tr.halt_time = 7.0;
  const DarkStateSample d = tr.sample(s, 9.0);
  CHECK(d.flagged);
  CHECK(d.u1 == doctest::Approx(0.02));
}

TEST_CASE("linearization matrices") {
  SystemParams lin;
  lin.variant = Variant::LinearLambda;
  lin.gamma = 2.0;
  const CMat m = linearization_matrix(lin, peak_lambda(3.0, 4.0), 0.0);
  CHECK(m(1, 0) == Complex{3.0, 0.0});
  CHECK(m(1, 1) == Complex{0.0, -2.0});
  CHECK(m(1, 2) == Complex{4.0, 0.0});
  CHECK(m(0, 1) == Complex{3.0, 0.0});
  CHECK(m(2, 1) == Complex{4.0, 0.0});

  SystemParams nl;
  nl.variant = Variant::NonlinearLambda;
  nl.gamma = 2.0;
  DarkStateSample dark;
  dark.a = 1.0;
  const CMat mn = linearization_matrix(nl, peak_lambda(3.0, 4.0), 0.0, &dark);
  CHECK(mn(0, 1) == Complex{3.0, 0.0});
  CHECK(mn(1, 0) == Complex{3.0, 0.0});
  CHECK(mn(1, 2) == Complex{2.0, 0.0});

  CHECK_THROWS_AS(linearization_matrix(nl, peak_lambda(3.0, 4.0), 0.0),
                  MissingDarkStateError);

  SystemParams nt;
  nt.variant = Variant::NonlinearTripod;
  nt.gamma = 1.5;
  nt.delta = 0.5;
  DarkStateSample dt;
  dt.a = 0.0;
  const PulseSchedule far = PulseSchedule::make_tripod(60.0, 0.75, 5.0, 10.7, 10.0, 8.5, 1.0);
  const CMat mt = linearization_matrix(nt, far, 40.0, &dt);  // pulses off
  int nonzero = 0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (std::abs(mt(r, c)) > 0.0) ++nonzero;
  CHECK(nonzero == 1);
  CHECK(mt(1, 1) == Complex{-0.5, -1.5});
}

TEST_CASE("norm decay follows the excited population") {
  const PulseSchedule s = PulseSchedule::make_lambda(10.0, 3.8, 3.0, 1.0);
  SystemParams p;
  p.variant = Variant::LinearLambda;
  p.gamma = 2.0;
  IntegrationOptions opt;
  opt.step = 5e-4;
  opt.samples_per_unit = 400;
  opt.t0 = 0.0;
  opt.t1 = 8.0;
  auto rhs = [&](double t, const CVec& y) { return bare_rhs(p, s, t, y); };
  const TimeSeries<CVec> ts = integrate(rhs, CVec{1.0, 0.0, 0.0}, opt);
  // non-increasing within integration slack
  for (int i = 1; i < ts.size(); ++i) {
    const double dn = total_norm(p.variant, ts.y[i]) - total_norm(p.variant, ts.y[i - 1]);
    const double dt = ts.t[i] - ts.t[i - 1];
    CHECK(dn <= 1e-6 * dt);
  }
  // rate check at the excited-population peak: d(norm)/dt = -2 gamma |e|^2
  int ipk = 1;
  for (int i = 1; i + 1 < ts.size(); ++i)
    if (std::norm(ts.y[i][1]) > std::norm(ts.y[ipk][1])) ipk = i;
  const double dn = (total_norm(p.variant, ts.y[ipk + 1]) -
                     total_norm(p.variant, ts.y[ipk - 1])) /
                    (ts.t[ipk + 1] - ts.t[ipk - 1]);
  const double expected = -2.0 * p.gamma * std::norm(ts.y[ipk][1]);
  CHECK(dn == doctest::Approx(expected).epsilon(1e-3));
}

TEST_CASE("norm is conserved without losses") {
  for (Variant v : {Variant::LinearLambda, Variant::LinearTripod}) {
    SystemParams p;
    p.variant = v;
    p.gamma = 0.0;
    const PulseSchedule s =
        is_tripod(v) ? PulseSchedule::make_tripod(60.0, 0.75, 5.0, 10.7, 10.0, 8.5, 1.0)
                     : PulseSchedule::make_lambda(10.0, 3.8, 3.0, 1.0);
    IntegrationOptions opt;
    opt.step = 5e-4;
    opt.t0 = 0.0;
    opt.t1 = is_tripod(v) ? 20.0 : 8.0;
    CVec start(dimension(v));
    start[0] = 1.0;
    auto rhs = [&](double t, const CVec& y) { return bare_rhs(p, s, t, y); };
    const TimeSeries<CVec> ts = integrate(rhs, start, opt);
    for (int i = 0; i < ts.size(); ++i)
      CHECK(std::abs(total_norm(v, ts.y[i]) - 1.0) <= 1e-9);
  }
}
