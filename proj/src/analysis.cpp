#include "fmeda/analysis.hpp"

#include "fmeda/sampling.hpp"

namespace fmeda {

double SigmaSet::select(PropagationMode mode) const noexcept {
  switch (mode) {
    case PropagationMode::Full:
      return full;
    case PropagationMode::DcOnly:
      return dc_only;
    case PropagationMode::LambdaOnly:
      return lambda_only;
  }
  return full;
}

AsilVerdict asil_verdict(const AnalysisResult& result, const MetricThresholds& thresholds) {
  AsilVerdict v;
  if (thresholds.spfm) {
    v.spfm = classify(result.spfm.value, result.spfm.sigma_selected, result.k, *thresholds.spfm);
  }
  if (thresholds.lfm) {
    v.lfm = result.lfm ? classify(result.lfm->value, result.lfm->sigma_selected, result.k, *thresholds.lfm)
                       : Verdict::Fail;
  }
  v.overall = worst(v.spfm, v.lfm);
  return v;
}

AsilVerdict asil_verdict(const AnalysisResult& result, Asil target) {
  return asil_verdict(result, default_thresholds(target));
}

namespace {

template <typename SigmaFn>
MetricReport report_metric(MetricKind kind, double value, SigmaFn sigma_of, const AnalysisOptions& options) {
  MetricReport r;
  r.kind = kind;
  r.value = value;
  r.sigma.full = sigma_of(PropagationMode::Full);
  r.sigma.dc_only = sigma_of(PropagationMode::DcOnly);
  r.sigma.lambda_only = sigma_of(PropagationMode::LambdaOnly);
  r.sigma_selected = r.sigma.select(options.mode);
  r.interval = confidence_interval(value, r.sigma_selected, options.confidence);
  return r;
}

}  // namespace

AnalysisResult analyze(const FmedaTable& input, const AnalysisOptions& options) {
  const FmedaTable table = options.apply_faultsim_sigmas ? apply_faultsim_sigmas(input) : input;
  const double total = total_lambda(table);
  const auto modes = flatten(table);
  const auto refs = rows(table);

  AnalysisResult result;
  result.lambda_tot = total;
  result.mode = options.mode;
  result.confidence = options.confidence;
  result.k = cutoff(options.confidence);

  result.spfm = report_metric(
      MetricKind::SPFM, spfm(modes, total),
      [&](PropagationMode m) { return sigma_spfm(modes, total, m); }, options);
  if (latent_pool(modes, total) > 0.0) {
    result.lfm = report_metric(
        MetricKind::LFM, lfm(modes, total),
        [&](PropagationMode m) { return sigma_lfm(modes, total, m); }, options);
  } else {
    result.lfm_note = "LFM undefined: every failure mode is a residual fault";
  }

  result.eii = eii_table(table);
  result.modes.reserve(refs.size());
  for (std::size_t i = 0; i < refs.size(); ++i) {
    ModeReport m;
    m.id = refs[i].row->id;
    m.name = refs[i].row->name;
    m.part = refs[i].part->name;
    m.subpart = refs[i].subpart->name;
    m.inputs = modes[i];
    result.modes.push_back(std::move(m));
  }
  for (const auto& e : result.eii.entries) {
    auto& m = result.modes[e.row_index];
    (e.input == InputKind::DC ? m.eii_dc_percent : m.eii_lambda_percent) += e.percent;
    m.eii_total_percent += e.percent;
  }

  result.asil_target = options.asil ? options.asil : table.asil_target;
  // Explicit thresholds are judged even without an integrity level.
  if (result.asil_target || options.spfm_threshold || options.lfm_threshold) {
    MetricThresholds thresholds = result.asil_target ? default_thresholds(*result.asil_target) : MetricThresholds{};
    if (options.spfm_threshold) thresholds.spfm = options.spfm_threshold;
    if (options.lfm_threshold) thresholds.lfm = options.lfm_threshold;
    const AsilVerdict v = asil_verdict(result, thresholds);
    result.spfm.threshold = thresholds.spfm;
    if (thresholds.spfm) result.spfm.verdict = v.spfm;
    if (result.lfm) {
      result.lfm->threshold = thresholds.lfm;
      if (thresholds.lfm) result.lfm->verdict = v.lfm;
    }
    result.verdict = v.overall;
  }
  return result;
}

}  // namespace fmeda
