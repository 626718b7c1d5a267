#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qsl/sweep.hpp"

using namespace qsl;

namespace {
constexpr double kPi = std::numbers::pi;

bool tables_equal(const SweepTable& a, const SweepTable& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto& x = a.rows[i];
    const auto& y = b.rows[i];
    if (x.value != y.value || x.chi != y.chi || x.p_tau != y.p_tau ||
        x.qslt_ohmic != y.qslt_ohmic ||
        x.qslt_super_ohmic != y.qslt_super_ohmic || x.flags != y.flags)
      return false;
  }
  return true;
}
}  // namespace

TEST_CASE("preset: pinned fields") {
  CHECK(preset(PresetTag::fig1).fixed.packet.W == 4.0);
  CHECK(preset(PresetTag::fig1).fixed.window.delta_tau == 1.0);
  CHECK(preset(PresetTag::fig1).fixed.packet.theta == doctest::Approx(kPi / 4.0));
  CHECK(preset(PresetTag::fig2a).fixed.packet.K == 100.0);
  CHECK(preset(PresetTag::fig2a).fixed.packet.W == 30.0);
  CHECK(preset(PresetTag::fig2b).fixed.packet.K == 0.01);
  CHECK(preset(PresetTag::fig3a).fixed.packet.K == 100.0);
  CHECK(preset(PresetTag::fig3b).fixed.packet.K == 0.01);
  CHECK(std::isinf(preset(PresetTag::fig3a).fixed.packet.alpha));
  CHECK(preset(PresetTag::fig1).fixed.super_ohmic.n == 2.0);
  CHECK_FALSE(parse_preset("fig9"));
  CHECK(parse_preset("fig2b") == PresetTag::fig2b);
}

TEST_CASE("preset curves: fig1 has three packet variants, figs2-3 four taus") {
  const auto fig1 = preset_curves(PresetTag::fig1);
  REQUIRE(fig1.size() == 3);
  CHECK(fig1[0].fixed.packet.alpha == 0.0);
  CHECK(std::isinf(fig1[1].fixed.packet.alpha));
  CHECK(fig1[1].fixed.packet.K == 100.0);
  CHECK(fig1[2].fixed.packet.K == 0.01);

  const auto fig2 = preset_curves(PresetTag::fig2a);
  REQUIRE(fig2.size() == 4);
  CHECK(fig2[0].fixed.window.tau == 0.0);
  CHECK(fig2[1].fixed.window.tau == 0.5);
  CHECK(fig2[2].fixed.window.tau == 1.0);
  CHECK(std::isinf(fig2[3].fixed.window.tau));
  CHECK(std::isinf(fig2[0].grid.back()));
}

TEST_CASE("run_sweep: fig1 alpha=0 curve starts at QSLT = 1") {
  SweepSpec spec = preset(PresetTag::fig1);
  spec.grid = {0.0, 0.5, 1.0};
  const SweepTable t = run_sweep(spec);
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0].value == 0.0);
  CHECK(t.rows[0].chi == 0.0);
  CHECK(std::abs(t.rows[0].qslt_ohmic - 1.0) < 1e-9);
  CHECK(std::abs(t.rows[2].qslt_ohmic - 0.5) < 1e-9);
  for (const auto& r : t.rows) {
    CHECK(r.ok);
    CHECK(r.flags.substr(0, 2) == "ML");
    CHECK(r.flags.find("xcheck") == std::string::npos);
    CHECK(r.qslt_ohmic >= 0.0);
    CHECK(r.qslt_super_ohmic >= 0.0);
  }
}

TEST_CASE("run_sweep: deterministic across thread counts") {
  SweepSpec spec = preset(PresetTag::fig2b);
  spec.grid = {0.0, 1.0, 2.0, 4.0, 8.0, kInfinity};
  const SweepTable one = run_sweep(spec, {}, 1);
  const SweepTable four = run_sweep(spec, {}, 4);
  const SweepTable again = run_sweep(spec, {}, 4);
  CHECK(tables_equal(one, four));
  CHECK(tables_equal(four, again));
}

TEST_CASE("run_sweep: tau = inf curve uses the limit path") {
  SweepSpec spec = preset(PresetTag::fig2b);
  spec.fixed.window.tau = kInfinity;
  spec.grid = {0.0, 2.0};
  const SweepTable t = run_sweep(spec);
  // Ohmic p_inf = 0, super-Ohmic p_inf = e^{-eta}
  CHECK(t.rows[0].p_tau == 0.0);
  CHECK(t.rows[0].qslt_ohmic == 0.0);
  CHECK(std::abs(t.rows[0].qslt_super_ohmic - std::exp(-1.0)) < 1e-8);
}

TEST_CASE("run_sweep: convergence failure flags the row instead of aborting") {
  SweepSpec spec = preset(PresetTag::fig2a);
  spec.grid = {0.0, 1.0};
  // unreachable tolerance: chi quadrature cannot satisfy it in budget
  const SweepTable t = run_sweep(spec, Tolerance{1e-300, 0.0});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0].ok);  // alpha = 0 short-circuits to exact zero
  CHECK_FALSE(t.rows[1].ok);
  CHECK(t.rows[1].flags.find("err:") != std::string::npos);
}

TEST_CASE("run_sweep: validation") {
  SweepSpec spec = preset(PresetTag::fig1);
  spec.grid = {1.0, 1.0};
  CHECK_THROWS_AS(run_sweep(spec), std::domain_error);
  spec.grid = {};
  CHECK_THROWS_AS(run_sweep(spec), std::domain_error);
  spec.grid = {0.0, kInfinity};  // inf only valid for alpha sweeps
  CHECK_THROWS_AS(run_sweep(spec), std::domain_error);
}

TEST_CASE("run_preset: chi column shared across curves") {
  // spot-check on a thinned fig2b: all four curves see identical chi values
  auto curves = preset_curves(PresetTag::fig2b);
  for (auto& c : curves) c.grid = {0.0, 3.0, kInfinity};
  std::vector<SweepTable> tables;
  for (const auto& c : curves) tables.push_back(run_sweep(c));
  for (std::size_t i = 1; i < tables.size(); ++i)
    for (std::size_t r = 0; r < tables[0].rows.size(); ++r)
      CHECK(tables[i].rows[r].chi == tables[0].rows[r].chi);
}
