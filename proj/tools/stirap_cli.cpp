#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stirap/runner.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitCompare = 4;

struct CommonOpts {
  std::string out_dir = "out";
  double step = -1.0;
  std::string levels;
  std::string dark_mode;
  double detuning = std::numeric_limits<double>::quiet_NaN();
  std::string window;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option("--step", o.step, "integration step");
  cmd->add_option("--levels", o.levels,
                  "comma list of full,minus-excited,minus-bright");
  cmd->add_option("--darkstate-mode", o.dark_mode, "manifold|substitution");
  cmd->add_option("--detuning", o.detuning, "one-photon detuning override");
  cmd->add_option("--window", o.window, "integration window as t0:t1");
}

stirap::ScenarioConfig apply_common(stirap::ScenarioConfig c, const CommonOpts& o) {
  if (o.step > 0.0) c.step = o.step;
  if (!o.levels.empty()) c.levels = stirap::parse_levels(o.levels);
  if (!o.dark_mode.empty()) {
    if (o.dark_mode == "manifold") c.dark_mode = stirap::DarkStateMode::Manifold;
    else if (o.dark_mode == "substitution") c.dark_mode = stirap::DarkStateMode::Substitution;
    else throw stirap::ConfigError("darkstate-mode must be manifold or substitution");
  }
  if (!std::isnan(o.detuning)) c.delta = o.detuning;
  if (!o.window.empty()) {
    const size_t colon = o.window.find(':');
    if (colon == std::string::npos)
      throw stirap::ConfigError("window must be given as t0:t1");
    c.t0 = std::stod(o.window.substr(0, colon));
    c.t1 = std::stod(o.window.substr(colon + 1));
  }
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"STIRAP stability toolkit: simulation, eigenvalue traces, "
               "stage boundaries and exact-vs-reduced comparisons"};
  app.require_subcommand(1);

  std::string scenario_arg;
  CommonOpts opts;

  CLI::App* sim = app.add_subcommand("simulate", "integrate a scenario and write CSVs");
  sim->add_option("scenario", scenario_arg, "preset name or config file")->required();
  add_common(sim, opts);

  CLI::App* eig = app.add_subcommand("eigentrace", "write the eigenvalue trace CSV");
  eig->add_option("scenario", scenario_arg, "preset name or config file")->required();
  add_common(eig, opts);

  CLI::App* bnd = app.add_subcommand("boundaries", "print the stage boundaries t1 t2");
  bnd->add_option("scenario", scenario_arg, "preset name or config file")->required();
  add_common(bnd, opts);

  std::string file_a, file_b, channels_arg;
  double tol = 0.0;
  bool do_assert = false;
  CLI::App* cmp = app.add_subcommand("compare", "max per-channel difference of two CSVs");
  cmp->add_option("file-a", file_a)->required();
  cmp->add_option("file-b", file_b)->required();
  cmp->add_option("--channels", channels_arg, "comma list of channel names")->required();
  cmp->add_option("--tol", tol, "tolerance for pass/fail");
  cmp->add_flag("--assert", do_assert, "exit 4 when a channel exceeds --tol");

  CLI::App* lst = app.add_subcommand("presets", "list built-in scenarios");

  CLI11_PARSE(app, argc, argv);

  try {
    if (lst->parsed()) {
      for (const std::string& name : stirap::preset_names()) {
        const stirap::ScenarioConfig c = stirap::preset(name);
        std::printf("%-6s variant=%d omega0=%g tp=%g gamma=%g window=[%g,%g]\n",
                    name.c_str(), static_cast<int>(c.variant), c.omega0, c.tp,
                    c.gamma, c.t0, c.t1);
      }
      return 0;
    }
    if (cmp->parsed()) {
      const stirap::ChannelSeries a = stirap::read_csv(file_a);
      const stirap::ChannelSeries b = stirap::read_csv(file_b);
      std::vector<std::string> channels;
      std::stringstream ss(channels_arg);
      std::string item;
      while (std::getline(ss, item, ',')) channels.push_back(item);
      const stirap::ComparisonReport r = stirap::compare(a, b, channels, tol);
      for (const stirap::ChannelDiff& d : r.diffs)
        std::printf("%s: max |a-b| = %.17g at t = %.17g\n", d.channel.c_str(),
                    d.max_abs, d.t_at_max);
      if (do_assert && !r.pass) {
        std::fprintf(stderr, "comparison exceeded tolerance %.17g\n", tol);
        return kExitCompare;
      }
      return 0;
    }

    stirap::ScenarioConfig config =
        apply_common(stirap::resolve_scenario(scenario_arg), opts);

    if (bnd->parsed()) {
      stirap::RunResult r;
      // boundaries only: avoid level integrations unless substitution needs them
      config.levels = {stirap::ReductionLevel::Full};
      if (config.variant != stirap::Variant::NonlinearTripod ||
          config.dark_mode != stirap::DarkStateMode::Substitution)
        config.levels.clear();
      r = stirap::run_scenario(config);
      if (!r.boundaries) {
        std::fprintf(stderr, "no stage boundaries on this window\n");
        return kExitNumerical;
      }
      std::printf("t1 = %.6f\nt2 = %.6f\n", r.boundaries->t1, r.boundaries->t2);
      return 0;
    }

    if (eig->parsed()) {
      config.levels.clear();
      if (config.variant == stirap::Variant::NonlinearTripod &&
          config.dark_mode == stirap::DarkStateMode::Substitution)
        config.levels = {stirap::ReductionLevel::Full};
      const stirap::RunResult r = stirap::run_scenario(config);
      stirap::RunResult only;
      only.config = r.config;
      only.eigen = r.eigen;
      only.boundaries = r.boundaries;
      only.manifold = r.manifold;
      const auto files = stirap::write_artifacts(only, opts.out_dir);
      for (const std::string& f : files) std::printf("%s\n", f.c_str());
      return 0;
    }

    // simulate
    const stirap::RunResult r = stirap::run_scenario(config);
    const auto files = stirap::write_artifacts(r, opts.out_dir);
    for (const std::string& f : files) std::printf("%s\n", f.c_str());
    return 0;
  } catch (const stirap::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const stirap::NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s (t = %g)\n", e.what(), e.t);
    return kExitNumerical;
  } catch (const stirap::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
