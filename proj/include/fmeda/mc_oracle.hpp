#pragma once

// Monte Carlo check of the analytic propagation.
//
// Each sample perturbs every input with nonzero sigma by an independent
// Normal(nominal, sigma) draw, holds lambda_tot at its nominal value, and
// evaluates the metric. The empirical standard deviation (n-1 denominator)
// is compared with the closed-form sigma.
//
// Samples are processed in fixed-size batches, each with its own generator
// seeded from (seed, batch index). Batch moments are merged in batch order,
// so the result is bit-identical for any thread count.

#include <cstdint>
#include <span>
#include <string>

#include "fmeda/metrics.hpp"
#include "fmeda/model.hpp"

namespace fmeda {

struct McConfig {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  bool truncate = true;  // clamp coverages to [0,1] and rates to [0,inf)
};

inline constexpr std::uint64_t kMinVerdictSamples = 1000;
inline constexpr std::uint64_t kMcBatchSize = 8192;
inline constexpr double kSpfmTolerance = 0.03;
inline constexpr double kLfmTolerance = 0.05;
inline constexpr double kTruncationWarningRate = 0.001;

/// Generator recipe, reported with every verdict.
inline constexpr const char* kMcRngName = "mt19937_64 per batch, splitmix64 batch seeding, Marsaglia polar normals";

/// Running mean / sum of squared deviations of a sample stream.
struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) noexcept;
  /// Merge another stream (Chan et al. pairwise update).
  void merge(const Moments& other) noexcept;
  double sample_stddev() const noexcept;
};

struct McEstimate {
  MetricKind metric = MetricKind::SPFM;
  Moments moments;
  std::uint64_t draws = 0;      // individual input draws
  std::uint64_t clamped = 0;    // draws pulled back to a physical bound
  std::uint64_t undefined = 0;  // samples where the metric had no value (LFM only)

  double empirical_sigma() const noexcept { return moments.sample_stddev(); }
  double truncation_rate() const noexcept {
    return draws == 0 ? 0.0 : static_cast<double>(clamped) / static_cast<double>(draws);
  }
};

struct McVerdict {
  MetricKind metric = MetricKind::SPFM;
  double empirical_sigma = 0.0;
  double analytic_sigma = 0.0;
  double relative_gap = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double truncation_rate = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string rng = kMcRngName;
  std::string warning;  // non-empty if truncation may bias the comparison
};

/// OpenMP-parallel sampler. Deterministic in (modes, lambda_tot, metric, config).
McEstimate estimate_sigma(std::span<const ModeInputs> modes, double lambda_tot, MetricKind metric,
                          const McConfig& config);

/// relative_gap = |empirical - analytic| / analytic (0 when both are zero).
McVerdict judge(const McEstimate& estimate, double analytic_sigma, double tolerance, const McConfig& config);

/// Full check against the closed form. Throws ParameterError if
/// config.samples < kMinVerdictSamples, ValidationError on invalid tables.
McVerdict mc_sigma_spfm(const FmedaTable& table, const McConfig& config, double tolerance = kSpfmTolerance);
/// Throws UndefinedMetricError where LFM is undefined.
McVerdict mc_sigma_lfm(const FmedaTable& table, const McConfig& config, double tolerance = kLfmTolerance);

namespace detail {

std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t batch) noexcept;

}  // namespace detail

}  // namespace fmeda
