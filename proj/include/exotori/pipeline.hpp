#pragma once

// Staged verification scenarios. Each stage either applies an explicit
// unitary / orthogonal map (checked for group membership) or runs an
// explicit Lagrangian path whose flux must vanish.

#include <string>
#include <vector>

#include "exotori/numkernel.hpp"
#include "exotori/report.hpp"

namespace exotori {

struct RunConfig {
  std::string scenario = "sanity";
  double r2 = 0.25;
  int grid = 64;            // torus grid per direction
  int time_samples = 33;    // samples of t in [0, 1], endpoints included
  int curve_samples = 256;  // alignment resolution of curve isotopies
  int hausdorff_grid = 128;
  double tol_flux = 1e-8;
  unsigned seed = 0;
  bool plots = false;
};

const std::vector<std::string>& scenario_names();

/// PreconditionError naming the offending field.
void validate(const RunConfig& cfg);

struct PlotFile {
  std::string name;  // relative file name
  std::string csv;
};

struct PipelineResult {
  VerificationReport report;
  std::vector<PlotFile> plots;
};

/// Runs one scenario. Construction failures abort the run and leave the
/// checks gathered so far in a report marked as aborted.
PipelineResult run_stage_pipeline(const RunConfig& cfg);

}  // namespace exotori
