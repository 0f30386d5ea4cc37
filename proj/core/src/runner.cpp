#include "stirap/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace stirap {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// grid scan of the total Rabi frequency; used for window clipping and the
// stability clamp on the reduced systems
double omega_at(const PulseSchedule& s, double t) {
  const PulseValues v = eval_schedule(s, t);
  return std::sqrt(v.p * v.p + v.d1 * v.d1 + v.d2 * v.d2);
}

struct Window {
  double t0, t1;
};

Window clip_to_valid_pulses(const PulseSchedule& s, double t0, double t1) {
  const double floor = s.floor();
  const int n = 40000;
  double lo = t1, hi = t0;
  for (int i = 0; i <= n; ++i) {
    const double t = t0 + (t1 - t0) * static_cast<double>(i) / n;
    if (omega_at(s, t) > floor) {
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
  }
  if (!(hi > lo))
    throw DegeneratePulseError("no subwindow with pulses above the floor", t0);
  return {lo, hi};
}

// spectral-radius bound for the level's generator, sampled over the window;
// the fixed step is clamped to 2/rate so explicit RK4 stays stable
double level_rate_bound(const ScenarioConfig& c, ReductionLevel level, Window w) {
  const PulseSchedule s = c.schedule();
  const Complex b = c.params().b();
  const double tw = c.width;
  const int n = 4000;
  double rate = std::abs(b);
  for (int i = 0; i <= n; ++i) {
    const double t = w.t0 + (w.t1 - w.t0) * static_cast<double>(i) / n;
    const PulseValues v = eval_schedule(s, t);
    const double om2 = v.p * v.p + v.d1 * v.d1 + v.d2 * v.d2;
    double r = 0.0;
    switch (level) {
      case ReductionLevel::Full:
        // |omega| <= |b| + 2 sqrt(|c|), with |psi_a0|^2 <= 1 for nonlinear c
        r = std::abs(b) + 2.0 * std::sqrt(std::abs(om2));
        break;
      case ReductionLevel::MinusExcited:
        if (is_nonlinear(c.variant)) {
          r = (v.d1 * v.d1 + v.d2 * v.d2 + 4.0 * v.p * v.p) / (2.0 * std::abs(b));
        } else {
          double alpha_sum = 0.0;
          try {
            if (c.variant == Variant::LinearLambda) {
              alpha_sum = std::abs(alpha_lambda(s, t));
            } else {
              const TripodAlphas al = alpha_tripod(s, t);
              alpha_sum = std::abs(al.a13) + std::abs(al.a14) + std::abs(al.a34);
            }
          } catch (const DegeneratePulseError&) {
          }
          r = tw * om2 / std::abs(b) + 2.0 * alpha_sum;
        }
        break;
      case ReductionLevel::MinusExcitedAndBright: {
        try {
          if (c.variant == Variant::LinearLambda) {
            const Complex alpha = alpha_lambda(s, t);
            r = std::norm(alpha) * std::abs(b) / (tw * om2);
          } else {
            const TripodAlphas al = alpha_tripod(s, t);
            const double g = std::abs(b) / (tw * om2);
            r = 2.0 * std::abs(al.a34) +
                g * (std::norm(al.a13) + std::norm(al.a14) +
                     2.0 * std::abs(al.a13) * std::abs(al.a14));
          }
        } catch (const DegeneratePulseError&) {
        }
        break;
      }
    }
    rate = std::max(rate, r);
  }
  return rate;
}

std::vector<double> channel_row(Variant variant, const PulseSchedule& s, double t,
                                const CVec& bare, bool with_bright_dark) {
  const double w = molecular_weight(variant);
  std::vector<double> row;
  row.push_back(std::norm(bare[0]));
  row.push_back(w * std::norm(bare[1]));
  for (int i = 2; i < bare.size(); ++i) row.push_back(w * std::norm(bare[i]));
  if (!is_nonlinear(variant)) {
    if (with_bright_dark) {
      SystemParams p;
      p.variant = variant;
      try {
        const CVec bd = to_bright_dark(p, s, t, bare);
        row.push_back(std::norm(bd[0]));
        for (int i = 2; i < bd.size(); ++i) row.push_back(std::norm(bd[i]));
      } catch (const DegeneratePulseError&) {
        for (int i = 0; i < dimension(variant) - 1; ++i) row.push_back(kNaN);
      }
    } else {
      for (int i = 0; i < dimension(variant) - 1; ++i) row.push_back(kNaN);
    }
  }
  row.push_back(total_norm(variant, bare));
  return row;
}

ChannelSeries make_series(Variant v) {
  ChannelSeries cs;
  cs.names = population_channels(v);
  if (!is_nonlinear(v)) {
    cs.names.push_back("PB");
    if (is_tripod(v)) {
      cs.names.push_back("PD1");
      cs.names.push_back("PD2");
    } else {
      cs.names.push_back("PD");
    }
  }
  cs.names.push_back("norm");
  cs.cols.resize(cs.names.size());
  return cs;
}

void push_row(ChannelSeries& cs, double t, const std::vector<double>& row) {
  cs.t.push_back(t);
  for (size_t i = 0; i < row.size(); ++i) cs.cols[i].push_back(row[i]);
}

}  // namespace

std::vector<std::string> population_channels(Variant v) {
  if (is_tripod(v)) return {"Pa", "Pe", "Pg1", "Pg2"};
  return {"Pa", "Pe", "Pg"};
}

int ChannelSeries::col(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

double ChannelSeries::interp(int column, double query) const {
  const std::vector<double>& c = cols[column];
  if (t.empty()) throw Error("empty channel series");
  if (query <= t.front()) return c.front();
  if (query >= t.back()) return c.back();
  int lo = 0, hi = static_cast<int>(t.size()) - 1;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (t[mid] <= query ? lo : hi) = mid;
  }
  const double dt = t[hi] - t[lo];
  const double w = dt > 0.0 ? (query - t[lo]) / dt : 0.0;
  return c[lo] + w * (c[hi] - c[lo]);
}

double ComparisonReport::max_abs() const {
  double m = 0.0;
  for (const ChannelDiff& d : diffs) m = std::max(m, d.max_abs);
  return m;
}

ComparisonReport compare(const ChannelSeries& a, const ChannelSeries& b,
                         const std::vector<std::string>& channels, double tolerance) {
  if (a.t.empty() || b.t.empty()) throw ConfigError("cannot compare empty series");
  ComparisonReport r;
  r.tolerance = tolerance;
  r.overlap_t0 = std::max(a.t.front(), b.t.front());
  r.overlap_t1 = std::min(a.t.back(), b.t.back());
  if (!(r.overlap_t1 > r.overlap_t0))
    throw ConfigError("series windows are disjoint");

  std::vector<double> grid;
  for (double x : a.t)
    if (x >= r.overlap_t0 && x <= r.overlap_t1) grid.push_back(x);
  for (double x : b.t)
    if (x >= r.overlap_t0 && x <= r.overlap_t1) grid.push_back(x);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  for (const std::string& ch : channels) {
    const int ca = a.col(ch), cb = b.col(ch);
    if (ca < 0 || cb < 0) throw ConfigError("channel not present in both series: " + ch);
    ChannelDiff d;
    d.channel = ch;
    for (double x : grid) {
      const double va = a.interp(ca, x);
      const double vb = b.interp(cb, x);
      if (!std::isfinite(va) || !std::isfinite(vb)) continue;
      const double diff = std::abs(va - vb);
      if (diff > d.max_abs) {
        d.max_abs = diff;
        d.t_at_max = x;
      }
    }
    if (tolerance > 0.0 && d.max_abs > tolerance) r.pass = false;
    r.diffs.push_back(d);
  }
  return r;
}

DarkDensity dark_density(const ScenarioConfig& config, const ManifoldTrace* manifold,
                         const ChannelSeries* full) {
  if (config.variant == Variant::NonlinearLambda) {
    const PulseSchedule s = config.schedule();
    return [s](double t) {
      const PulseValues v = eval_schedule(s, t);
      return dark_state_nonlinear_lambda(v.p, v.d1).a_sq();
    };
  }
  if (config.variant != Variant::NonlinearTripod) return {};
  if (config.dark_mode == DarkStateMode::Manifold) {
    if (manifold == nullptr) throw MissingDarkStateError("manifold trace not available");
    const PulseSchedule s = config.schedule();
    ManifoldTrace copy = *manifold;
    return [s, copy](double t) { return copy.a_sq(s, t); };
  }
  if (full == nullptr || !full->has("Pa"))
    throw MissingDarkStateError("substitution mode needs the integrated full solution");
  ChannelSeries copy = *full;
  const int col = copy.col("Pa");
  return [copy, col](double t) { return copy.interp(col, t); };
}

namespace {

LevelRun run_full(const ScenarioConfig& c) {
  const PulseSchedule s = c.schedule();
  const SystemParams p = c.params();
  LevelRun lr;
  lr.level = ReductionLevel::Full;
  lr.t_begin = c.t0;
  lr.t_end = c.t1;
  const double rate = level_rate_bound(c, ReductionLevel::Full, {c.t0, c.t1});
  lr.step_used = std::min(c.effective_step(), 2.0 / rate);

  IntegrationOptions opt;
  opt.step = lr.step_used;
  opt.samples_per_unit = c.samples_per_unit;
  opt.t0 = c.t0;
  opt.t1 = c.t1;
  auto rhs = [&](double t, const CVec& y) { return bare_rhs(p, s, t, y); };
  const TimeSeries<CVec> ts = integrate(rhs, c.initial_state(), opt);

  lr.series = make_series(c.variant);
  for (int i = 0; i < ts.size(); ++i)
    push_row(lr.series, ts.t[i], channel_row(c.variant, s, ts.t[i], ts.y[i], true));
  return lr;
}

LevelRun run_minus_excited(const ScenarioConfig& c) {
  const PulseSchedule s = c.schedule();
  const SystemParams p = c.params();
  LevelRun lr;
  lr.level = ReductionLevel::MinusExcited;

  if (is_nonlinear(c.variant)) {
    lr.t_begin = c.t0;
    lr.t_end = c.t1;
    const double rate = level_rate_bound(c, ReductionLevel::MinusExcited, {c.t0, c.t1});
    lr.step_used = std::min(c.effective_step(), 2.0 / rate);
    IntegrationOptions opt;
    opt.step = lr.step_used;
    opt.samples_per_unit = c.samples_per_unit;
    opt.t0 = c.t0;
    opt.t1 = c.t1;
    const CVec init = c.initial_state();
    CVec y0(dimension(c.variant) - 1);
    y0[0] = init[0];
    for (int i = 2; i < init.size(); ++i) y0[i - 1] = init[i];
    lr.discarded_norm = molecular_weight(c.variant) * std::norm(init[1]);
    auto rhs = [&](double t, const CVec& y) { return minus_excited_rhs(p, s, t, y); };
    const TimeSeries<CVec> ts = integrate(rhs, y0, opt);
    lr.series = make_series(c.variant);
    for (int i = 0; i < ts.size(); ++i) {
      const double t = ts.t[i];
      const CVec& y = ts.y[i];
      CVec bare(dimension(c.variant));
      bare[0] = y[0];
      bare[1] = reconstruct_excited(p, s, t, y);
      for (int k = 1; k < y.size(); ++k) bare[k + 1] = y[k];
      std::vector<double> row = channel_row(c.variant, s, t, bare, true);
      // the norm channel reports the propagated variables (the reconstructed
      // excited amplitude is diagnostic), keeping it non-increasing
      double pn = std::norm(y[0]);
      for (int k = 1; k < y.size(); ++k) pn += 2.0 * std::norm(y[k]);
      row.back() = pn;
      push_row(lr.series, t, row);
    }
    return lr;
  }

  // linear variants: clip to the subwindow where the transform is defined,
  // map the initial state there (the bare dynamics outside is frozen), and
  // integrate in dimensionless time
  const Window w = clip_to_valid_pulses(s, c.t0, c.t1);
  lr.t_begin = w.t0;
  lr.t_end = w.t1;
  const double tw = c.width;
  const double rate = level_rate_bound(c, ReductionLevel::MinusExcited, w);
  const double step_tau = std::min(c.effective_step() / tw, 2.0 / rate);
  lr.step_used = step_tau * tw;

  const CVec bd0 = to_bright_dark(p, s, w.t0, c.initial_state());
  CVec y0(dimension(c.variant) - 1);
  y0[0] = bd0[0];
  for (int i = 2; i < bd0.size(); ++i) y0[i - 1] = bd0[i];
  lr.discarded_norm = std::norm(bd0[1]);

  IntegrationOptions opt;
  opt.step = step_tau;
  opt.samples_per_unit = c.samples_per_unit * tw;
  opt.t0 = w.t0 / tw;
  opt.t1 = w.t1 / tw;
  auto rhs = [&](double tau, const CVec& y) { return minus_excited_rhs(p, s, tau, y); };
  const TimeSeries<CVec> ts = integrate(rhs, y0, opt);

  lr.series = make_series(c.variant);
  for (int i = 0; i < ts.size(); ++i) {
    const double t = ts.t[i] * tw;
    const CVec& y = ts.y[i];
    CVec bd(dimension(c.variant));
    bd[0] = y[0];
    bd[1] = reconstruct_excited(p, s, t, y);
    for (int k = 1; k < y.size(); ++k) bd[k + 1] = y[k];
    const CVec bare = from_bright_dark(p, s, t, bd);
    std::vector<double> row = channel_row(c.variant, s, t, bare, false);
    // bright/dark populations directly from the reduced state; norm reports
    // the propagated variables only
    const int base = dimension(c.variant);
    row[base] = std::norm(bd[0]);
    for (int k = 2; k < bd.size(); ++k) row[base + k - 1] = std::norm(bd[k]);
    row.back() = y.norm2();
    push_row(lr.series, t, row);
  }
  return lr;
}

LevelRun run_minus_bright(const ScenarioConfig& c, const LevelRun& higher,
                          const StageBoundaries& sb) {
  const PulseSchedule s = c.schedule();
  const SystemParams p = c.params();
  LevelRun lr;
  lr.level = ReductionLevel::MinusExcitedAndBright;

  Window w{sb.t1, sb.t2};
  if (c.full_window_reduced) w = clip_to_valid_pulses(s, c.t0, c.t1);
  lr.t_begin = w.t0;
  lr.t_end = w.t1;

  const double tw = c.width;
  const double rate = level_rate_bound(c, ReductionLevel::MinusExcitedAndBright, w);
  const double step_tau = std::min(c.effective_step() / tw, 2.0 / rate);
  lr.step_used = step_tau * tw;

  // initial data pulled from the next-higher level at the handoff time; the
  // emitted series keep populations only, so the amplitudes are rebuilt by
  // re-integrating the higher level up to the handoff, then projecting off
  // the bright component (its norm is recorded as discarded)
  const int nd = is_tripod(c.variant) ? 2 : 1;
  CVec y0(nd);
  {
    CVec yh;
    const CVec bd0 = to_bright_dark(p, s, std::max(higher.t_begin, c.t0), c.initial_state());
    CVec z0(dimension(c.variant) - 1);
    z0[0] = bd0[0];
    for (int i = 2; i < bd0.size(); ++i) z0[i - 1] = bd0[i];
    if (w.t0 > higher.t_begin + 1e-12) {
      IntegrationOptions opt;
      opt.step = higher.step_used / tw;
      opt.samples_per_unit = 1e-9;  // keep only the endpoint
      opt.t0 = higher.t_begin / tw;
      opt.t1 = w.t0 / tw;
      auto rhs = [&](double tau, const CVec& y) { return minus_excited_rhs(p, s, tau, y); };
      yh = integrate(rhs, z0, opt).y.back();
    } else {
      yh = z0;
    }
    lr.discarded_norm = std::norm(yh[0]);
    for (int k = 0; k < nd; ++k) y0[k] = yh[k + 1];
  }

  IntegrationOptions opt;
  opt.step = step_tau;
  opt.samples_per_unit = c.samples_per_unit * tw;
  opt.t0 = w.t0 / tw;
  opt.t1 = w.t1 / tw;
  MinusBrightOptions mb;
  mb.coupling_only = c.coupling_only_2d;
  auto rhs = [&](double tau, const CVec& y) { return minus_bright_rhs(p, s, tau, y, mb); };
  const TimeSeries<CVec> ts = integrate(rhs, y0, opt);

  lr.series = make_series(c.variant);
  for (int i = 0; i < ts.size(); ++i) {
    const double t = ts.t[i] * tw;
    const CVec& y = ts.y[i];
    CVec bd(dimension(c.variant));
    bd[0] = reconstruct_bright(p, s, t, y);
    CVec reduced(dimension(c.variant) - 1);
    reduced[0] = bd[0];
    for (int k = 0; k < nd; ++k) reduced[k + 1] = y[k];
    bd[1] = reconstruct_excited(p, s, t, reduced);
    for (int k = 0; k < nd; ++k) bd[k + 2] = y[k];
    const CVec bare = from_bright_dark(p, s, t, bd);
    std::vector<double> row = channel_row(c.variant, s, t, bare, false);
    const int base = dimension(c.variant);
    row[base] = std::norm(bd[0]);
    for (int k = 2; k < bd.size(); ++k) row[base + k - 1] = std::norm(bd[k]);
    row.back() = y.norm2();
    push_row(lr.series, t, row);
  }
  return lr;
}

}  // namespace

const LevelRun* RunResult::find(ReductionLevel level) const {
  for (const LevelRun& lr : levels)
    if (lr.level == level) return &lr;
  return nullptr;
}

RunResult run_scenario(const ScenarioConfig& config) {
  config.validate();
  RunResult r;
  r.config = config;
  const PulseSchedule s = config.schedule();
  const SystemParams p = config.params();

  const bool wants_full = std::find(config.levels.begin(), config.levels.end(),
                                    ReductionLevel::Full) != config.levels.end();
  const bool need_full = wants_full ||
      (config.variant == Variant::NonlinearTripod &&
       config.dark_mode == DarkStateMode::Substitution);

  LevelRun full;
  if (need_full) full = run_full(config);

  if (config.variant == Variant::NonlinearTripod &&
      config.dark_mode == DarkStateMode::Manifold) {
    r.manifold = integrate_dark_manifold(s, config.t0, config.t1, config.effective_step());
  }

  const DarkDensity density =
      dark_density(config, r.manifold ? &*r.manifold : nullptr,
                   need_full ? &full.series : nullptr);

  try {
    r.boundaries = stage_boundaries(p, s, config.t0, config.t1, density);
  } catch (const BoundaryError&) {
    r.boundaries.reset();
  }

  LevelRun minus_excited;
  bool have_me = false;
  for (ReductionLevel level : config.levels) {
    switch (level) {
      case ReductionLevel::Full:
        r.levels.push_back(full);
        break;
      case ReductionLevel::MinusExcited:
        minus_excited = run_minus_excited(config);
        have_me = true;
        r.levels.push_back(minus_excited);
        break;
      case ReductionLevel::MinusExcitedAndBright: {
        if (!have_me) {
          minus_excited = run_minus_excited(config);
          have_me = true;
        }
        if (!r.boundaries && !config.full_window_reduced)
          throw BoundaryError("bright-state elimination needs stage boundaries", config.t0);
        StageBoundaries sb = r.boundaries ? *r.boundaries : StageBoundaries{};
        r.levels.push_back(run_minus_bright(config, minus_excited, sb));
        break;
      }
    }
  }

  // eigen trace over the full window, flagged beyond a manifold halt
  r.eigen = eigen_trace(p, s, config.t0, config.t1, config.eigen_samples, density);
  if (r.manifold && r.manifold->halted)
    for (EigenSample& e : r.eigen)
      if (e.t > r.manifold->halt_time) e.flagged = true;

  if (const LevelRun* f = r.find(ReductionLevel::Full)) {
    const int cn = f->series.col("norm");
    r.norm_loss = f->series.cols[cn].front() - f->series.cols[cn].back();
    for (const LevelRun& lr : r.levels) {
      if (lr.level == ReductionLevel::Full) continue;
      r.level_reports.emplace_back(
          level_name(lr.level),
          compare(f->series, lr.series, population_channels(config.variant)));
    }
  }
  return r;
}

void write_csv(const std::string& path, const ChannelSeries& s) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  out << "t";
  for (const std::string& n : s.names) out << "," << n;
  out << "\n";
  for (size_t i = 0; i < s.t.size(); ++i) {
    out << fmt17(s.t[i]);
    for (size_t k = 0; k < s.cols.size(); ++k) out << "," << fmt17(s.cols[k][i]);
    out << "\n";
  }
  if (!out) throw Error("write failed: " + path);
}

ChannelSeries read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty csv: " + path);
  ChannelSeries s;
  {
    std::stringstream ss(line);
    std::string name;
    bool first = true;
    while (std::getline(ss, name, ',')) {
      if (first) {
        if (name != "t") throw ConfigError("first csv column must be t: " + path);
        first = false;
      } else {
        s.names.push_back(name);
      }
    }
  }
  s.cols.resize(s.names.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    size_t k = 0;
    while (std::getline(ss, cell, ',')) {
      const double x = std::strtod(cell.c_str(), nullptr);
      if (k == 0) s.t.push_back(x);
      else if (k - 1 < s.cols.size()) s.cols[k - 1].push_back(x);
      ++k;
    }
    if (k != s.names.size() + 1)
      throw ConfigError("ragged csv row in " + path);
  }
  return s;
}

std::vector<std::string> write_artifacts(const RunResult& r, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::vector<std::string> written;
  const std::string base = out_dir + "/" + r.config.name;

  for (const LevelRun& lr : r.levels) {
    const std::string path = base + "_" + level_name(lr.level) + ".csv";
    write_csv(path, lr.series);
    written.push_back(path);
  }

  {
    ChannelSeries eig;
    const int n = r.eigen.empty() ? 0 : r.eigen.front().n;
    for (int i = 0; i < n; ++i) eig.names.push_back("ReL" + std::to_string(i + 1));
    for (int i = 0; i < n; ++i) eig.names.push_back("ImL" + std::to_string(i + 1));
    eig.names.push_back("D_re");
    eig.names.push_back("D_im");
    eig.cols.resize(eig.names.size());
    for (const EigenSample& e : r.eigen) {
      eig.t.push_back(e.t);
      for (int i = 0; i < n; ++i) eig.cols[i].push_back(e.lam[i].real());
      for (int i = 0; i < n; ++i) eig.cols[n + i].push_back(e.lam[i].imag());
      eig.cols[2 * n].push_back(e.discriminant.real());
      eig.cols[2 * n + 1].push_back(e.discriminant.imag());
    }
    const std::string path = base + "_eigentrace.csv";
    write_csv(path, eig);
    written.push_back(path);
  }

  // difference channels against the full run
  if (const LevelRun* f = r.find(ReductionLevel::Full)) {
    for (const LevelRun& lr : r.levels) {
      if (lr.level == ReductionLevel::Full) continue;
      ChannelSeries d;
      d.names = population_channels(r.config.variant);
      d.cols.resize(d.names.size());
      for (size_t i = 0; i < lr.series.t.size(); ++i) {
        const double t = lr.series.t[i];
        if (t < f->series.t.front() || t > f->series.t.back()) continue;
        d.t.push_back(t);
        for (size_t k = 0; k < d.names.size(); ++k) {
          const int ca = f->series.col(d.names[k]);
          const int cb = lr.series.col(d.names[k]);
          d.cols[k].push_back(lr.series.cols[cb][i] - f->series.interp(ca, t));
        }
      }
      const std::string path = base + "_diff_" + level_name(lr.level) + ".csv";
      write_csv(path, d);
      written.push_back(path);
    }
  }

  {
    const std::string path = base + "_report.txt";
    std::ofstream out(path);
    out << "scenario: " << r.config.name << "\n";
    out << "window: [" << fmt17(r.config.t0) << ", " << fmt17(r.config.t1) << "]\n";
    if (r.boundaries)
      out << "stage boundaries: t1 = " << fmt17(r.boundaries->t1)
          << "  t2 = " << fmt17(r.boundaries->t2) << "\n";
    else
      out << "stage boundaries: not available on this window\n";
    if (r.manifold) {
      out << "manifold start: " << fmt17(r.manifold->start) << "\n";
      if (r.manifold->halted)
        out << "manifold halted at: " << fmt17(r.manifold->halt_time) << "\n";
    }
    out << "norm loss (full run): " << fmt17(r.norm_loss) << "\n";
    for (const LevelRun& lr : r.levels) {
      out << "level " << level_name(lr.level) << ": window [" << fmt17(lr.t_begin)
          << ", " << fmt17(lr.t_end) << "], step " << fmt17(lr.step_used)
          << ", discarded norm " << fmt17(lr.discarded_norm) << "\n";
    }
    for (const auto& [name, rep] : r.level_reports) {
      out << "max |full - " << name << "|";
      for (const ChannelDiff& d : rep.diffs)
        out << "  " << d.channel << ": " << fmt17(d.max_abs) << " at t = "
            << fmt17(d.t_at_max);
      out << "\n";
    }
    written.push_back(path);
  }
  return written;
}

}  // namespace stirap
