#include <doctest.h>

#include "fmeda/analysis.hpp"
#include "fmeda/metrics.hpp"
#include "support/random_tables.hpp"

using namespace fmeda;

namespace {

FmedaTable table_of(const std::vector<ModeInputs>& modes) {
  Subpart sub{"S", std::nullopt, FmdMode::DirectLambda, {}};
  for (std::size_t i = 0; i < modes.size(); ++i) {
    FailureModeRow r;
    r.name = "FM" + std::to_string(i + 1);
    r.id = default_id("P", "S", r.name);
    r.lambda_fm = modes[i].lambda;
    r.sigma_lambda_fm = modes[i].sigma_lambda;
    r.dc = modes[i].dc;
    r.sigma_dc = modes[i].sigma_dc;
    r.dc_latent = modes[i].dc_latent;
    r.sigma_dc_latent = modes[i].sigma_dc_latent;
    sub.failure_modes.push_back(r);
  }
  FmedaTable t;
  t.parts.push_back(Part{"P", {std::move(sub)}});
  return t;
}

ModeInputs mode(double lambda, double dc, double dc_latent = 0.0) {
  ModeInputs m;
  m.lambda = lambda;
  m.dc = dc;
  m.dc_latent = dc_latent;
  return m;
}

}  // namespace

TEST_CASE("spfm examples") {
  CHECK(spfm(table_of({mode(100, 1.0)})).value == 1.0);
  CHECK(spfm(table_of({mode(100, 0.0)})).value == 0.0);
  CHECK(spfm(table_of({mode(50, 0.90), mode(50, 0.99)})).value == doctest::Approx(0.945).epsilon(1e-14));
  CHECK(spfm(table_of({mode(50, 0.90)})).kind == MetricKind::SPFM);
}

TEST_CASE("spfm with zero total is undefined") {
  const std::vector<ModeInputs> none;
  CHECK_THROWS_AS(spfm(none, 0.0), UndefinedMetricError);
}

TEST_CASE("lfm examples") {
  CHECK(lfm(table_of({mode(50, 0.9, 1.0), mode(50, 0.5, 1.0)})).value == 1.0);
  CHECK(lfm(table_of({mode(100, 0.9, 0.0)})).value == doctest::Approx(0.0).epsilon(1e-15));
  // 1 - (0.4*45 + 0.2*49.5) / 94.5
  CHECK(lfm(table_of({mode(50, 0.9, 0.6), mode(50, 0.99, 0.8)})).value ==
        doctest::Approx(1.0 - 27.9 / 94.5).epsilon(1e-14));
  CHECK(lfm(table_of({mode(50, 0.9, 0.6), mode(50, 0.99, 0.8)})).value == doctest::Approx(0.704762).epsilon(1e-6));
}

TEST_CASE("lfm with every fault residual is undefined") {
  CHECK_THROWS_AS(lfm(table_of({mode(50, 0.0), mode(50, 0.0)})), UndefinedMetricError);
}

TEST_CASE("verdict examples") {
  CHECK(classify(0.95, 0.0, 1.96, 0.90) == Verdict::PassRobust);
  CHECK(classify(0.905, 0.0053, 1.96, 0.90) == Verdict::PassFragile);
  CHECK(classify(0.88, 0.0, 1.96, 0.90) == Verdict::Fail);
  CHECK(classify(0.88, 0.5, 1.96, 0.90) == Verdict::Fail);
  CHECK(worst(Verdict::PassRobust, Verdict::PassFragile) == Verdict::PassFragile);
  CHECK(worst(Verdict::Fail, Verdict::PassFragile) == Verdict::Fail);
}

TEST_CASE("default thresholds per integrity level") {
  CHECK(default_thresholds(Asil::B).spfm == 0.90);
  CHECK(default_thresholds(Asil::B).lfm == 0.60);
  CHECK(default_thresholds(Asil::C).spfm == 0.97);
  CHECK(default_thresholds(Asil::C).lfm == 0.80);
  CHECK(default_thresholds(Asil::D).spfm == 0.99);
  CHECK(default_thresholds(Asil::D).lfm == 0.90);
  CHECK_FALSE(default_thresholds(Asil::A).spfm.has_value());
}

TEST_CASE("asil_verdict on analysis results") {
  auto t = table_of({mode(50, 0.9, 0.6), mode(50, 0.99, 0.8)});
  t.parts[0].subparts[0].failure_modes[0].sigma_dc = 0.02;
  t.parts[0].subparts[0].failure_modes[1].sigma_dc = 0.001;
  const auto result = analyze(t);
  CHECK(asil_verdict(result, Asil::B).overall == Verdict::PassRobust);
  CHECK(asil_verdict(result, Asil::C).spfm == Verdict::Fail);
  CHECK(asil_verdict(result, Asil::A).overall == Verdict::PassRobust);

  // 0.945 - 1.96 * 0.0100125 = 0.92538 < 0.93
  MetricThresholds tight{0.93, std::nullopt};
  CHECK(asil_verdict(result, tight).spfm == Verdict::PassFragile);
}

TEST_CASE("property: splitting a failure mode leaves SPFM unchanged") {
  testing::TableGenerator gen(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = gen.table(testing::acceptance_shape());
    auto modes = flatten(t);
    const double total = total_lambda(t);
    const double before = spfm(modes, total);
    const std::size_t i = static_cast<std::size_t>(gen.integer(0, static_cast<int>(modes.size()) - 1));
    const double share = gen.uniform(0.0, 1.0);
    ModeInputs extra = modes[i];
    extra.lambda = modes[i].lambda * (1.0 - share);
    modes[i].lambda *= share;
    modes.push_back(extra);
    CHECK(spfm(modes, total) == doctest::Approx(before).epsilon(1e-12));
  }
}

TEST_CASE("property: SPFM is monotone in DC and in uncovered rate") {
  testing::TableGenerator gen(22);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = gen.table(testing::acceptance_shape());
    const auto modes = flatten(t);
    const double total = total_lambda(t);
    const double base = spfm(modes, total);
    for (std::size_t i = 0; i < modes.size(); ++i) {
      auto up = modes;
      up[i].dc = std::min(1.0, up[i].dc + 0.01);
      CHECK(spfm(up, total) >= base - 1e-15);

      // Adding uncovered rate to a mode lowers SPFM.
      auto grown = modes;
      ModeInputs uncovered;
      uncovered.lambda = 1.0;
      grown.push_back(uncovered);
      CHECK(spfm(grown, total + 1.0) <= base + 1e-15);
    }
  }
}

TEST_CASE("property: constant DC gives SPFM equal to that constant") {
  testing::TableGenerator gen(23);
  for (int trial = 0; trial < 100; ++trial) {
    auto t = gen.table(testing::acceptance_shape());
    const double c = gen.uniform(0.0, 1.0);
    for (auto& p : t.parts)
      for (auto& s : p.subparts)
        for (auto& r : s.failure_modes) r.dc = c;
    CHECK(spfm(t).value == doctest::Approx(c).epsilon(1e-13));
  }
}

TEST_CASE("structure: LFM over the detected pool mirrors SPFM over the total") {
  // LFM treats DC_i * lambda_i as the rates and DC_latent as the coverage; on
  // tables where lambda_tot equals the detected pool this is SPFM's formula.
  testing::TableGenerator gen(24);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = gen.table(testing::acceptance_shape());
    const auto modes = flatten(t);
    const double total = total_lambda(t);
    std::vector<ModeInputs> pooled;
    double pool = 0.0;
    for (const auto& m : modes) {
      ModeInputs p;
      p.lambda = m.dc * m.lambda;
      p.dc = m.dc_latent;
      pooled.push_back(p);
      pool += p.lambda;
    }
    CHECK(lfm(modes, total) == doctest::Approx(spfm(pooled, pool)).epsilon(1e-10));
  }
}
