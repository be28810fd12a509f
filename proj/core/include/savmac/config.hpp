/// @file config.hpp
/// @brief Run configuration: flat key=value files, experiment presets,
/// validation.

#pragma once

#include <string>
#include <vector>

#include "savmac/model.hpp"

namespace savmac {

enum class ExperimentKind { converge, square_bubble, buoyant_bubble, custom };

enum class InitialCondition {
  trig,    ///< Z = cos(pi x) cos(pi y) with the matching polynomial velocity
  square,  ///< Z = +1 inside an axis-aligned square, -1 outside, U = 0
  circle,  ///< tanh profile, Z = -1 inside the circle (light phase), U = 0
};

struct RunConfig {
  Params params;
  int nx = 16, ny = 16;
  double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
  ExperimentKind experiment = ExperimentKind::custom;
  InitialCondition ic = InitialCondition::trig;
  double square_side = 0.4;
  double bubble_radius = 0.15;
  double bubble_cx = 0.5;
  double bubble_cy = 0.25;
  std::string out_dir = "out";
  int snapshot_every = 0;  ///< steps between snapshots; 0 disables
  std::vector<int> levels = {10, 20};  ///< inverse spacings for converge
  bool full_tables = false;  ///< converge: T = 0.1 and levels up to 1/80
  bool full_scale = false;   ///< bubbles: 100^2 cells and the long horizon
  bool write_vtk = false;

  StaggeredGrid make_grid() const {
    return StaggeredGrid(nx, ny, x_lo, x_hi, y_lo, y_hi);
  }
};

/// Baseline parameters for each experiment; user keys override on top.
RunConfig preset(ExperimentKind experiment);

/// Parses a flat key=value file ('#' comments).  Unknown keys are a
/// ParseError; invalid values a ValidationError.  The `experiment` key, when
/// present, selects the preset the remaining keys are applied over.
RunConfig load_config(const std::string& path);

/// Applies one key=value pair; exposed for CLI overrides.
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value,
               int line = 0);

/// Positivity, grid sanity, integer step count, dyadic level nesting.
void validate(const RunConfig& cfg);

std::string to_string(ExperimentKind e);
std::string to_string(InitialCondition ic);
std::string to_string(StepMode m);

}  // namespace savmac
