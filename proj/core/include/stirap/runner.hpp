#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stirap/ode.hpp"
#include "stirap/scenario.hpp"

namespace stirap {

/// Column-oriented sampled channels (a parsed/emitted CSV).
struct ChannelSeries {
  std::vector<std::string> names;  // channel names, excluding the leading t
  std::vector<double> t;
  std::vector<std::vector<double>> cols;

  int col(const std::string& name) const;
  bool has(const std::string& name) const { return col(name) >= 0; }
  /// Linear interpolation; clamps outside the sampled range.
  double interp(int column, double query) const;
};

struct LevelRun {
  ReductionLevel level = ReductionLevel::Full;
  ChannelSeries series;
  double t_begin = 0.0, t_end = 0.0;  // actual window (clipped if needed)
  double step_used = 0.0;
  double discarded_norm = 0.0;  // norm projected away at a level handoff
};

struct ChannelDiff {
  std::string channel;
  double max_abs = 0.0;
  double t_at_max = 0.0;
};

struct ComparisonReport {
  std::vector<ChannelDiff> diffs;
  double overlap_t0 = 0.0, overlap_t1 = 0.0;
  double tolerance = 0.0;  // <= 0 means none declared
  bool pass = true;
  double max_abs() const;
};

/// Per-channel max |a-b| over the window overlap on the union grid
/// (linear interpolation; non-finite samples are skipped).
ComparisonReport compare(const ChannelSeries& a, const ChannelSeries& b,
                         const std::vector<std::string>& channels,
                         double tolerance = 0.0);

struct RunResult {
  ScenarioConfig config;
  std::vector<LevelRun> levels;
  std::vector<EigenSample> eigen;
  std::optional<StageBoundaries> boundaries;
  std::optional<ManifoldTrace> manifold;
  double norm_loss = 0.0;
  // Full-vs-reduced population differences, one entry per reduced level
  std::vector<std::pair<std::string, ComparisonReport>> level_reports;

  const LevelRun* find(ReductionLevel level) const;
};

RunResult run_scenario(const ScenarioConfig& config);

/// Deterministic artifacts: one CSV per level, an eigen-trace CSV, difference
/// CSVs against the full run, and a plain-text report.
std::vector<std::string> write_artifacts(const RunResult& r, const std::string& out_dir);

ChannelSeries read_csv(const std::string& path);
void write_csv(const std::string& path, const ChannelSeries& s);

std::vector<std::string> population_channels(Variant v);

/// Dark-state density |psi_a0(t)|^2 used by eigen traces and boundaries.
DarkDensity dark_density(const ScenarioConfig& config, const ManifoldTrace* manifold,
                         const ChannelSeries* full);

}  // namespace stirap
