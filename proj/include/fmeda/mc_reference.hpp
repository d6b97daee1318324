#pragma once

// Serial reference for the Monte Carlo sampler. Same batch seeding and the
// same draws as estimate_sigma, but stores every sample and computes the
// standard deviation in two passes. Used to cross-check the parallel kernel
// and as the benchmark baseline.

#include <span>

#include "fmeda/mc_oracle.hpp"

namespace fmeda::reference {

McEstimate estimate_sigma_serial(std::span<const ModeInputs> modes, double lambda_tot, MetricKind metric,
                                 const McConfig& config);

}  // namespace fmeda::reference
