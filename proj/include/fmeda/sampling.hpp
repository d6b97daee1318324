#pragma once

// Statistical fault-injection campaign sizing.
//
//   n = N / (1 + e^2 (N - 1) / (t^2 p (1 - p)))
//
// rounded up and capped at N. p = 0.5 maximizes n and is the default.

#include <cstdint>

#include "fmeda/confidence.hpp"
#include "fmeda/model.hpp"

namespace fmeda {

struct SampleSizePlan {
  std::uint64_t population = 0;
  double proportion = 0.5;
  double margin = 0.0;
  ConfidenceLevel confidence = ConfidenceLevel::P95;
  double cutoff = 0.0;
  std::uint64_t sample_size = 0;
  double unrounded = 0.0;  // n before ceiling and cap
};

/// Throws ParameterError unless population >= 1, margin and proportion in (0,1).
SampleSizePlan sample_size(std::uint64_t population, double margin, ConfidenceLevel confidence,
                           double proportion = 0.5);

/// sigma_DC = e / t: the margin is read as a t-sigma half-width.
/// margin must lie in [0,1).
double margin_to_sigma(double margin, ConfidenceLevel confidence);
double margin_to_sigma(double margin, double confidence_level);

/// Fills sigma_dc from the campaign margin for every fault-simulation row
/// whose sigma_dc is zero. Other rows are returned unchanged.
FmedaTable apply_faultsim_sigmas(FmedaTable table);

}  // namespace fmeda
