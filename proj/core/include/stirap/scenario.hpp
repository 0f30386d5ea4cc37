#pragma once

#include <string>
#include <vector>

#include "stirap/models.hpp"
#include "stirap/reduction.hpp"
#include "stirap/spectral.hpp"

namespace stirap {

/// One fully specified numerical experiment: variant, pulses, loss/detuning,
/// window, initial state, requested reduction levels, integration options.
struct ScenarioConfig {
  std::string name = "custom";
  Variant variant = Variant::LinearLambda;

  double omega0 = 0.0;
  double k1 = 1.0, k2 = 1.0;  // damp amplitude factors (tripod)
  double tp = 0.0;
  double td1 = 0.0;           // the damp center for lambda variants
  double td2 = 0.0;
  double width = 1.0;

  double gamma = 0.0;
  double delta = 0.0;

  double t0 = 0.0;
  double t1 = 0.0;
  double step = 0.0;              // 0 -> width/2000
  double samples_per_unit = 200.0;
  int eigen_samples = 2001;

  std::vector<double> initial;    // real amplitudes; empty -> (1, 0, ...)
  std::vector<ReductionLevel> levels{ReductionLevel::Full};
  DarkStateMode dark_mode = DarkStateMode::Manifold;
  bool coupling_only_2d = false;  // tripod minus-bright: drop the Gram correction
  bool full_window_reduced = false;  // ignore the (t1, t2) clipping for minus-bright

  PulseSchedule schedule() const;
  SystemParams params() const;
  double effective_step() const { return step > 0.0 ? step : width / 2000.0; }
  CVec initial_state() const;
  void validate() const;
};

/// Built-in reference scenarios fig2..fig12 (see README for the parameter table).
ScenarioConfig preset(const std::string& name);
std::vector<std::string> preset_names();

/// Flat `key = value` config file ('#' comments). Keys match the README table.
ScenarioConfig load_config_file(const std::string& path);

/// Resolve a CLI argument: preset name first, config-file path otherwise.
ScenarioConfig resolve_scenario(const std::string& name_or_path);

std::vector<ReductionLevel> parse_levels(const std::string& csv);

}  // namespace stirap
