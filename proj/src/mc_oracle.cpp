#include "fmeda/mc_oracle.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fmeda/detail/sample_stream.hpp"
#include "fmeda/uncertainty.hpp"

namespace fmeda {

void Moments::add(double x) noexcept {
  ++count;
  const double delta = x - mean;
  mean += delta / static_cast<double>(count);
  m2 += delta * (x - mean);
}

void Moments::merge(const Moments& other) noexcept {
  if (other.count == 0) return;
  if (count == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count);
  const double nb = static_cast<double>(other.count);
  const double n = na + nb;
  const double delta = other.mean - mean;
  mean += delta * nb / n;
  m2 += other.m2 + delta * delta * na * nb / n;
  count += other.count;
}

double Moments::sample_stddev() const noexcept {
  if (count < 2) return 0.0;
  return std::sqrt(m2 / static_cast<double>(count - 1));
}

namespace detail {

std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t batch) noexcept {
  // splitmix64 finalizer over (seed, batch)
  std::uint64_t z = seed + (batch + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

namespace {

struct BatchResult {
  Moments moments;
  detail::DrawCounters counters;
  std::uint64_t undefined = 0;
};

}  // namespace

McEstimate estimate_sigma(std::span<const ModeInputs> modes, double lambda_tot, MetricKind metric,
                          const McConfig& config) {
  const std::uint64_t batches = (config.samples + kMcBatchSize - 1) / kMcBatchSize;
  std::vector<BatchResult> results(batches);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(batches); ++b) {
    const auto batch = static_cast<std::uint64_t>(b);
    const std::uint64_t begin = batch * kMcBatchSize;
    const std::uint64_t end = std::min(begin + kMcBatchSize, config.samples);
    detail::Perturber perturb(detail::batch_seed(config.seed, batch), config.truncate);
    BatchResult& out = results[batch];
    for (std::uint64_t s = begin; s < end; ++s) {
      double value = 0.0;
      if (detail::sample_metric(modes, lambda_tot, metric, perturb, out.counters, value)) {
        out.moments.add(value);
      } else {
        ++out.undefined;
      }
    }
  }

  McEstimate estimate;
  estimate.metric = metric;
  for (const auto& r : results) {
    estimate.moments.merge(r.moments);
    estimate.draws += r.counters.draws;
    estimate.clamped += r.counters.clamped;
    estimate.undefined += r.undefined;
  }
  return estimate;
}

McVerdict judge(const McEstimate& estimate, double analytic_sigma, double tolerance, const McConfig& config) {
  McVerdict v;
  v.metric = estimate.metric;
  v.empirical_sigma = estimate.empirical_sigma();
  v.analytic_sigma = analytic_sigma;
  v.tolerance = tolerance;
  v.truncation_rate = estimate.truncation_rate();
  v.samples = config.samples;
  v.seed = config.seed;
  const double gap = std::abs(v.empirical_sigma - analytic_sigma);
  if (analytic_sigma > 0.0) {
    v.relative_gap = gap / analytic_sigma;
  } else {
    v.relative_gap = gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  v.pass = v.relative_gap <= tolerance;
  if (v.truncation_rate >= kTruncationWarningRate) {
    char pct[32];
    std::snprintf(pct, sizeof pct, "%.3g%%", v.truncation_rate * 100.0);
    v.warning = std::string("boundary truncation clamped ") + pct + " of draws; the comparison may be biased";
  }
  if (estimate.undefined > 0) {
    if (!v.warning.empty()) v.warning += "; ";
    v.warning += std::to_string(estimate.undefined) + " sample(s) had an undefined metric and were skipped";
  }
  return v;
}

namespace {

void require_samples(const McConfig& config) {
  if (config.samples < kMinVerdictSamples) {
    throw ParameterError("Monte Carlo verdicts need at least " + std::to_string(kMinVerdictSamples) +
                         " samples, got " + std::to_string(config.samples));
  }
}

}  // namespace

McVerdict mc_sigma_spfm(const FmedaTable& table, const McConfig& config, double tolerance) {
  require_samples(config);
  const double total = total_lambda(table);
  const auto modes = flatten(table);
  const auto estimate = estimate_sigma(modes, total, MetricKind::SPFM, config);
  return judge(estimate, sigma_spfm(modes, total, PropagationMode::Full), tolerance, config);
}

McVerdict mc_sigma_lfm(const FmedaTable& table, const McConfig& config, double tolerance) {
  require_samples(config);
  const double total = total_lambda(table);
  const auto modes = flatten(table);
  const double analytic = sigma_lfm(modes, total, PropagationMode::Full);
  const auto estimate = estimate_sigma(modes, total, MetricKind::LFM, config);
  return judge(estimate, analytic, tolerance, config);
}

}  // namespace fmeda
