#pragma once

// Per-batch draw machinery shared by the parallel sampler and the serial
// reference, so both see exactly the same perturbations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>

#include "fmeda/metrics.hpp"
#include "fmeda/model.hpp"

namespace fmeda::detail {

/// Standard normals by the Marsaglia polar method on top of mt19937_64.
/// Uses only sqrt and log, not std::normal_distribution, whose output is
/// implementation-defined.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    has_spare_ = true;
    return u * factor;
  }

 private:
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct DrawCounters {
  std::uint64_t draws = 0;
  std::uint64_t clamped = 0;
};

class Perturber {
 public:
  Perturber(std::uint64_t seed, bool truncate) : normals_(seed), truncate_(truncate) {}

  double coverage(double nominal, double sigma, DrawCounters& c) {
    if (!(sigma > 0.0)) return nominal;
    double x = nominal + sigma * normals_.next();
    ++c.draws;
    if (truncate_ && (x < 0.0 || x > 1.0)) {
      x = std::clamp(x, 0.0, 1.0);
      ++c.clamped;
    }
    return x;
  }

  double rate(double nominal, double sigma, DrawCounters& c) {
    if (!(sigma > 0.0)) return nominal;
    double x = nominal + sigma * normals_.next();
    ++c.draws;
    if (truncate_ && x < 0.0) {
      x = 0.0;
      ++c.clamped;
    }
    return x;
  }

 private:
  NormalStream normals_;
  bool truncate_;
};

/// Draws one perturbed table and evaluates the metric with lambda_tot fixed.
/// Returns false if the metric is undefined for this draw.
inline bool sample_metric(std::span<const ModeInputs> modes, double lambda_tot, MetricKind metric,
                          Perturber& perturb, DrawCounters& counters, double& value) {
  double residual = 0.0;
  double latent = 0.0;
  for (const auto& m : modes) {
    const double dc = perturb.coverage(m.dc, m.sigma_dc, counters);
    const double lambda = perturb.rate(m.lambda, m.sigma_lambda, counters);
    const double undetected = (1.0 - dc) * lambda;
    residual += undetected;
    if (metric == MetricKind::LFM) {
      const double dc_latent = perturb.coverage(m.dc_latent, m.sigma_dc_latent, counters);
      latent += (1.0 - dc_latent) * (lambda - undetected);
    }
  }
  if (metric == MetricKind::SPFM) {
    value = 1.0 - residual / lambda_tot;
    return true;
  }
  const double pool = lambda_tot - residual;
  if (!(pool > 0.0)) return false;
  value = 1.0 - latent / pool;
  return true;
}

}  // namespace fmeda::detail
