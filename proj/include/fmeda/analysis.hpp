#pragma once

// One full pass over a table: nominal metrics, sigma in all three
// propagation modes, intervals, EII attribution and the integrity-level
// verdict.

#include <optional>
#include <string>
#include <vector>

#include "fmeda/confidence.hpp"
#include "fmeda/eii.hpp"
#include "fmeda/metrics.hpp"
#include "fmeda/model.hpp"
#include "fmeda/uncertainty.hpp"

namespace fmeda {

struct SigmaSet {
  double full = 0.0;
  double dc_only = 0.0;
  double lambda_only = 0.0;

  double select(PropagationMode mode) const noexcept;
};

struct MetricReport {
  MetricKind kind = MetricKind::SPFM;
  double value = 0.0;
  SigmaSet sigma;
  double sigma_selected = 0.0;  // sigma for the configured mode; drives interval and verdict
  Interval interval;
  std::optional<double> threshold;
  std::optional<Verdict> verdict;
};

struct ModeReport {
  std::string id;
  std::string name;
  std::string part;
  std::string subpart;
  ModeInputs inputs;
  double eii_dc_percent = 0.0;
  double eii_lambda_percent = 0.0;
  double eii_total_percent = 0.0;
};

struct AnalysisOptions {
  PropagationMode mode = PropagationMode::Full;
  ConfidenceLevel confidence = ConfidenceLevel::P95;
  std::optional<Asil> asil;             // overrides the table's own target
  std::optional<double> spfm_threshold;  // overrides the level default
  std::optional<double> lfm_threshold;
  bool apply_faultsim_sigmas = true;
};

struct AnalysisResult {
  double lambda_tot = 0.0;
  PropagationMode mode = PropagationMode::Full;
  ConfidenceLevel confidence = ConfidenceLevel::P95;
  double k = 0.0;
  MetricReport spfm;
  std::optional<MetricReport> lfm;  // nullopt where LFM is undefined
  std::string lfm_note;
  EiiTable eii;
  std::vector<ModeReport> modes;
  std::optional<Asil> asil_target;
  std::optional<Verdict> verdict;  // worst of the per-metric verdicts
};

struct AsilVerdict {
  Verdict spfm = Verdict::PassRobust;
  Verdict lfm = Verdict::PassRobust;
  Verdict overall = Verdict::PassRobust;
};

/// Per-metric three-state verdict at the result's own k. An undefined LFM
/// fails any LFM target.
AsilVerdict asil_verdict(const AnalysisResult& result, Asil target);
AsilVerdict asil_verdict(const AnalysisResult& result, const MetricThresholds& thresholds);

/// Throws ValidationError on an invalid table.
AnalysisResult analyze(const FmedaTable& table, const AnalysisOptions& options = {});

}  // namespace fmeda
