#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

#include "stirap/runner.hpp"
#include "stirap/spectral.hpp"

using namespace stirap;

namespace {

PulseSchedule peak_lambda(double omega_p, double omega_d) {
  PulseSchedule s;
  s.variant = PulseVariant::Lambda;
  s.pump = {omega_p, 0.0, 1.0};
  s.damp1 = {omega_d, 0.0, 1.0};
  return s;
}

ScenarioConfig cfg(const std::string& name) { return preset(name); }

// direct numerical eigenvalues of the assembled Jacobian (test-side solver)
std::vector<Complex> jacobian_eigs(const CMat& m) {
  const int n = m.size();
  Eigen::MatrixXcd a(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a(r, c) = (-kI * m(r, c));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a);
  std::vector<Complex> out(n);
  for (int i = 0; i < n; ++i) out[i] = solver.eigenvalues()(i);
  return out;
}

DarkDensity density_for(const ScenarioConfig& c, const ManifoldTrace* tr) {
  return dark_density(c, tr, nullptr);
}

}  // namespace

TEST_CASE("characteristic coefficients per variant") {
  SystemParams lin;
  lin.variant = Variant::LinearLambda;
  lin.gamma = 2.0;
  const QuadraticCoefficients q = characteristic_coeffs(lin, peak_lambda(3.0, 4.0), 0.0);
  CHECK(q.b == Complex{0.0, 2.0});
  CHECK(q.c == doctest::Approx(-25.0));

  SystemParams nl;
  nl.variant = Variant::NonlinearLambda;
  nl.gamma = 2.0;
  DarkStateSample dark;
  dark.a = 1.0;
  const QuadraticCoefficients qn =
      characteristic_coeffs(nl, peak_lambda(3.0, 4.0), 0.0, &dark);
  CHECK(qn.c == doctest::Approx(-13.0));
  CHECK_THROWS_AS(characteristic_coeffs(nl, peak_lambda(3.0, 4.0), 0.0),
                  MissingDarkStateError);

  // pulses off: c = 0
  const QuadraticCoefficients q0 =
      characteristic_coeffs(lin, PulseSchedule::make_lambda(10.0, 3.8, 3.0, 1.0), 100.0);
  CHECK(q0.c == 0.0);
}

TEST_CASE("quadratic roots: limits and residuals") {
  {
    auto [w2, w3] = solve_characteristic({0.0, 2.0}, 0.0);
    CHECK(std::abs(w2) <= 1e-15);
    CHECK(std::abs(w3 - Complex{0.0, -2.0}) <= 1e-15);
  }
  {
    const Complex b{0.0, 2.0};
    const Complex c{-25.0, 0.0};
    auto [w2, w3] = solve_characteristic(b, c);
    for (Complex w : {w2, w3}) {
      const Complex resid = w * w + b * w + c;
      CHECK(std::abs(resid) <= 1e-12 * std::max(std::norm(b), std::abs(c)));
    }
    CHECK((-kI * w2).real() == doctest::Approx(-1.0));
    CHECK((-kI * w3).real() == doctest::Approx(-1.0));
    CHECK(w2.real() == doctest::Approx(std::sqrt(96.0) / 2));
  }
  {
    // negative discriminant: purely imaginary roots, split real parts of lambda
    const Complex b{0.0, 2.0};
    const Complex c{-0.25, 0.0};
    auto [w2, w3] = solve_characteristic(b, c);
    CHECK(std::abs(w2.real()) <= 1e-15);
    CHECK(std::abs(w3.real()) <= 1e-15);
    const double l2 = (-kI * w2).real(), l3 = (-kI * w3).real();
    CHECK(l2 + l3 == doctest::Approx(-2.0));
    CHECK(l2 > -0.2);
    CHECK(l3 < -1.8);
  }
}

TEST_CASE("Vieta residuals at sampled times") {
  struct Case {
    const char* name;
    ScenarioConfig config;
  };
  for (const char* name : {"fig2", "fig4", "fig6", "fig9"}) {
    const ScenarioConfig c = cfg(name);
    const PulseSchedule s = c.schedule();
    const SystemParams p = c.params();
    ManifoldTrace tr;
    if (c.variant == Variant::NonlinearTripod)
      tr = integrate_dark_manifold(s, c.t0, c.t1, c.effective_step());
    const DarkDensity dens =
        density_for(c, c.variant == Variant::NonlinearTripod ? &tr : nullptr);
    for (int i = 0; i <= 1000; ++i) {
      const double t = c.t0 + (c.t1 - c.t0) * i / 1000.0;
      DarkStateSample dark;
      const DarkStateSample* dp = nullptr;
      if (is_nonlinear(c.variant)) {
        dark.a = std::sqrt(std::max(0.0, dens(t)));
        dp = &dark;
      }
      const QuadraticCoefficients q = characteristic_coeffs(p, s, t, dp);
      auto [w2, w3] = solve_characteristic(q.b, q.c);
      const double scale = std::max({1.0, std::abs(q.b), std::abs(q.c)});
      CHECK(std::abs(w2 + w3 + q.b) <= 1e-10 * scale);
      CHECK(std::abs(w2 * w3 - q.c) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("closed forms match a direct eigendecomposition") {
  for (const char* name : {"fig2", "fig4", "fig6", "fig9"}) {
    const ScenarioConfig c = cfg(name);
    const PulseSchedule s = c.schedule();
    const SystemParams p = c.params();
    ManifoldTrace tr;
    if (c.variant == Variant::NonlinearTripod)
      tr = integrate_dark_manifold(s, c.t0, c.t1, c.effective_step());
    const DarkDensity dens =
        density_for(c, c.variant == Variant::NonlinearTripod ? &tr : nullptr);
    const int zeros = is_tripod(c.variant) ? 2 : 1;
    for (int i = 0; i <= 200; ++i) {
      const double t = c.t0 + (c.t1 - c.t0) * i / 200.0;
      DarkStateSample dark;
      const DarkStateSample* dp = nullptr;
      if (is_nonlinear(c.variant)) {
        dark.a = std::sqrt(std::max(0.0, dens(t)));
        dp = &dark;
      }
      const QuadraticCoefficients q = characteristic_coeffs(p, s, t, dp);
      auto [w2, w3] = solve_characteristic(q.b, q.c);
      std::vector<Complex> closed(zeros, 0.0);
      closed.push_back(-kI * w2);
      closed.push_back(-kI * w3);
      std::vector<Complex> numeric = jacobian_eigs(linearization_matrix(p, s, t, dp));
      // greedy nearest matching
      for (const Complex& lc : closed) {
        double best = 1e300;
        size_t at = 0;
        for (size_t k = 0; k < numeric.size(); ++k) {
          const double d = std::abs(numeric[k] - lc);
          if (d < best) {
            best = d;
            at = k;
          }
        }
        CHECK(best <= 1e-8);
        numeric.erase(numeric.begin() + at);
      }
    }
  }
}

TEST_CASE("stage boundaries reproduce the reference values") {
  const StageBoundaries b2 = stage_boundaries(cfg("fig2").params(), cfg("fig2").schedule(),
                                              0.0, 8.0);
  CHECK(std::abs(b2.t1 - 1.49) <= 0.01);
  CHECK(std::abs(b2.t2 - 5.32) <= 0.01);

  const StageBoundaries b4 = stage_boundaries(cfg("fig4").params(), cfg("fig4").schedule(),
                                              0.0, 20.0);
  CHECK(std::abs(b4.t1 - 6.12) <= 0.01);
  CHECK(std::abs(b4.t2 - 12.73) <= 0.01);
}

TEST_CASE("boundary error paths") {
  SystemParams p;
  p.variant = Variant::LinearLambda;
  p.gamma = 2.0;
  // too weak: max D < 0
  const PulseSchedule weak = PulseSchedule::make_lambda(0.5, 3.8, 3.0, 1.0);
  CHECK_THROWS_AS(stage_boundaries(p, weak, 0.0, 8.0), BoundaryError);
  // two separated pulses: four crossings
  const PulseSchedule split = PulseSchedule::make_lambda(10.0, 13.0, 3.0, 1.0);
  CHECK_THROWS_AS(stage_boundaries(p, split, 0.0, 16.0), BoundaryError);
}

TEST_CASE("eigen trace labeling and plateau") {
  const ScenarioConfig c = cfg("fig2");
  const std::vector<EigenSample> tr =
      eigen_trace(c.params(), c.schedule(), c.t0, c.t1, 2001);
  REQUIRE(tr.size() == 2001);
  const StageBoundaries b = stage_boundaries(c.params(), c.schedule(), c.t0, c.t1);
  for (const EigenSample& e : tr) {
    CHECK(e.zero_multiplicity == 1);
    CHECK(std::abs(e.lam[0]) == 0.0);
    if (e.t > b.t1 + 0.05 && e.t < b.t2 - 0.05) {
      CHECK(std::abs(e.lam[1].real() + 1.0) <= 1e-12);
      CHECK(std::abs(e.lam[2].real() + 1.0) <= 1e-12);
    }
  }
  // branch continuity: each jump stays below ten neighboring-slope spacings
  for (size_t i = 1; i + 2 < tr.size(); ++i) {
    const double dt = tr[i + 1].t - tr[i].t;
    for (int k = 1; k < 3; ++k) {
      const double jump = std::abs(tr[i + 1].lam[k] - tr[i].lam[k]);
      const double slope_l = std::abs(tr[i].lam[k] - tr[i - 1].lam[k]) / dt;
      const double slope_r = std::abs(tr[i + 2].lam[k] - tr[i + 1].lam[k]) / dt;
      const double allowed = 10.0 * std::max(slope_l, slope_r) * dt + 1e-12;
      CHECK(jump <= allowed);
    }
  }
}

TEST_CASE("eigen trace asymptotics") {
  // once every pulse is below 1e-6 of its amplitude the branches sit on the
  // loss-free and fully-damped values to 1e-6
  for (const char* name : {"fig2", "fig4"}) {
    const ScenarioConfig c = cfg(name);
    const std::vector<EigenSample> tr =
        eigen_trace(c.params(), c.schedule(), c.t0, c.t1, 401);
    const EigenSample& last = tr.back();
    CHECK(last.zero_multiplicity == (is_tripod(c.variant) ? 2 : 1));
    std::vector<double> re;
    for (int k = 0; k < last.n; ++k) re.push_back(last.lam[k].real());
    std::sort(re.begin(), re.end());
    CHECK(std::abs(re.front() + c.gamma) <= 1e-6);
    for (size_t k = 1; k < re.size(); ++k) CHECK(std::abs(re[k]) <= 1e-6);
  }
}

TEST_CASE("reduced lambda eigenvalues") {
  // simultaneous pulses: alpha = 0, eigenvalues (0, -T Omega^2 / gamma)
  const PulseSchedule sym = PulseSchedule::make_lambda(10.0, 3.0, 3.0, 1.0);
  const Lambda2DEigen e0 = reduced_lambda_2d_eigenvalues(sym, 3.0, 2.0);
  const double om2 = 200.0;  // both pulses at peak
  CHECK(std::abs(e0.l1) <= 1e-12 * om2);
  CHECK(e0.l2.real() == doctest::Approx(-om2 / 2.0));
  CHECK(reduced_lambda_1d_eigenvalue(sym, 2.0, 2.0) == 0.0);

  const ScenarioConfig c = cfg("fig2");
  const PulseSchedule s = c.schedule();
  // residual of the 2x2 characteristic polynomial: omega = i*lambda
  for (double t : {1.0, 2.5, 3.4, 4.5, 6.0}) {
    const Lambda2DEigen e = reduced_lambda_2d_eigenvalues(s, t, c.gamma);
    const PulseValues v = eval_schedule(s, t);
    const Complex tr = 1.0 * (v.p * v.p + v.d1 * v.d1) / Complex{0.0, c.gamma};
    const Complex det = -std::norm(alpha_lambda(s, t));
    for (Complex l : {e.l1, e.l2}) {
      const Complex w = kI * l;
      CHECK(std::abs(w * w - tr * w + det) <= 1e-10 * std::max(1.0, std::abs(tr * tr)));
    }
  }
  CHECK_THROWS_AS(reduced_lambda_2d_eigenvalues(s, 3.0, 0.0), ConfigError);

  // 1d eigenvalue: negative, small against gamma/2, magnitude recomputable
  const StageBoundaries b = stage_boundaries(c.params(), s, c.t0, c.t1);
  for (double x : {0.3, 0.5, 0.7}) {
    const double t = b.t1 + x * (b.t2 - b.t1);
    const double l = reduced_lambda_1d_eigenvalue(s, t, c.gamma);
    CHECK(l <= 0.0);
    CHECK(std::abs(l) < 0.5 * c.gamma / 2.0);
    const PulseValues v = eval_schedule(s, t);
    const double recompute =
        std::norm(alpha_lambda(s, t)) * c.gamma / (v.p * v.p + v.d1 * v.d1);
    CHECK(std::abs(l) == doctest::Approx(recompute).epsilon(1e-12));
  }
}

TEST_CASE("reduced lambda discriminant crossings") {
  const ScenarioConfig c = cfg("fig2");
  const PulseSchedule s = c.schedule();
  auto d2 = [&](double t) { return reduced_lambda_2d_eigenvalues(s, t, c.gamma).d2; };
  const StageBoundaries b = stage_boundaries_of(d2, 0.0, 8.0);
  CHECK(std::abs(b.t1 - 1.24) <= 0.01);
  CHECK(std::abs(b.t2 - 5.56) <= 0.01);
}

TEST_CASE("reduced tripod two-dark-state matrix") {
  const ScenarioConfig c = cfg("fig4");
  const PulseSchedule s = c.schedule();
  const StageBoundaries b = stage_boundaries(c.params(), s, c.t0, c.t1);

  bool crossed = false;
  double t_cross = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double t = b.t1 + (b.t2 - b.t1) * i / 2000.0;
    const TripodReduced2D r = reduced_tripod_2d_matrix(s, t, c.gamma, 0.0);
    // assembled matrix equals the two declared parts
    const PulseValues v = eval_schedule(s, t);
    const Complex g = Complex{0.0, c.gamma} / (v.p * v.p + v.d1 * v.d1 + v.d2 * v.d2);
    for (int rr = 0; rr < 2; ++rr)
      for (int cc = 0; cc < 2; ++cc)
        CHECK(std::abs(r.h2(rr, cc) - (r.h2_0(rr, cc) + g * r.h2_1(rr, cc))) <= 1e-14);
    // Gram correction: Hermitian, trace <= 0, det == 0 (rank one)
    CHECK(std::abs(r.h2_1(0, 1) - std::conj(r.h2_1(1, 0))) <= 1e-15);
    CHECK(r.h2_1(0, 0).real() <= 0.0);
    CHECK(r.h2_1(1, 1).real() <= 0.0);
    const Complex det = r.h2_1(0, 0) * r.h2_1(1, 1) - r.h2_1(0, 1) * r.h2_1(1, 0);
    CHECK(std::abs(det) <= 1e-12 * std::max(1.0, std::norm(r.h2_1(0, 0))));
    // eigenvalues satisfy the 2x2 characteristic equation
    const Complex tr = r.h2(0, 0) + r.h2(1, 1);
    const Complex dd = r.h2(0, 0) * r.h2(1, 1) - r.h2(0, 1) * r.h2(1, 0);
    for (Complex l : {r.l1, r.l2}) {
      const Complex w = kI * l;
      CHECK(std::abs(w * w - tr * w + dd) <= 1e-10);
    }
    // correction magnitude crosses the coupling before t2
    const double ratio = (c.gamma / (v.p * v.p + v.d1 * v.d1 + v.d2 * v.d2)) *
                         std::norm(alpha_tripod(s, t).a13) /
                         std::abs(alpha_tripod(s, t).a34);
    if (!crossed && ratio > 1.0) {
      crossed = true;
      t_cross = t;
    }
  }
  CHECK(crossed);
  CHECK(t_cross > 0.5 * (b.t1 + b.t2));
  CHECK(t_cross < b.t2);

  // coupling part alone has eigenvalues -i(+|a34|) and -i(-|a34|)
  const TripodReduced2D r = reduced_tripod_2d_matrix(s, 9.4, c.gamma, 0.0);
  const double a34 = std::abs(r.h2_0(0, 1));
  Eigen::Matrix2cd h0;
  h0 << r.h2_0(0, 0), r.h2_0(0, 1), r.h2_0(1, 0), r.h2_0(1, 1);
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(h0);
  std::vector<double> evs{es.eigenvalues()(0).real(), es.eigenvalues()(1).real()};
  std::sort(evs.begin(), evs.end());
  CHECK(evs[0] == doctest::Approx(-a34));
  CHECK(evs[1] == doctest::Approx(a34));
}

TEST_CASE("splitting with one-photon detuning") {
  const ScenarioConfig c = cfg("fig4");
  const PulseSchedule s = c.schedule();
  const double tmid = 0.5 * (6.12 + 12.73);
  const PulseValues v = eval_schedule(s, tmid);
  const double csum = -(v.p * v.p + v.d1 * v.d1 + v.d2 * v.d2);

  // Delta = 0 inside the plateau: no splitting at all
  const DetuningSplit d0 = detuning_splitting(Complex{0.0, 2.0}, csum);
  CHECK(d0.exact == 0.0);
  CHECK(d0.approx_valid);
  CHECK(d0.approx == 0.0);

  // gamma = 0: real parts coincide for any detuning
  const DetuningSplit dg = detuning_splitting(Complex{1.5, 0.0}, csum);
  CHECK(std::abs(dg.l3.real() - dg.l4.real()) <= 1e-14);
  CHECK(dg.exact == doctest::Approx(0.0));

  // small detuning: exact and approximate forms agree to 5%
  const DetuningSplit d = detuning_splitting(Complex{0.2, 2.0}, csum);
  CHECK(d.approx_valid);
  CHECK(std::abs(d.exact - d.approx) <= 0.05 * std::abs(d.exact));
  CHECK(d.l3.real() - d.l4.real() == doctest::Approx(d.exact).epsilon(1e-10));

  // negative real discriminant flags the approximation
  const DetuningSplit bad = detuning_splitting(Complex{0.1, 2.0}, -0.25);
  CHECK(!bad.approx_valid);
  CHECK(std::isnan(bad.approx));
  CHECK(std::isfinite(bad.exact));
}
