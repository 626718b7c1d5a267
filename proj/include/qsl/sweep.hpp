#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsl/qslt.hpp"

namespace qsl {

enum class SweepVariable { tau, alpha, width };

const char* sweep_variable_name(SweepVariable v);
std::optional<SweepVariable> parse_sweep_variable(std::string_view name);

/// Fixed parameter bundle of a sweep: one Ohmic and one super-Ohmic bath,
/// the boosted packet, and the driving window.
struct SweepParams {
  DephasingSpec ohmic{1.0, 1.0, 1.0};
  DephasingSpec super_ohmic{1.0, 1.0, 2.0};
  BoostedPacketSpec packet;
  EvolutionWindow window;
};

enum class PresetTag { fig1, fig2a, fig2b, fig3a, fig3b };

const char* preset_name(PresetTag tag);
std::optional<PresetTag> parse_preset(std::string_view name);

struct SweepSpec {
  SweepVariable variable = SweepVariable::tau;
  std::vector<double> grid;  // strictly increasing; +inf allowed as last point
  SweepParams fixed;
  std::optional<PresetTag> preset;
  std::string curve_label;  // figure-curve identifier, empty for ad-hoc sweeps

  void validate() const;
};

struct SweepRow {
  double value = 0.0;
  double chi = 0.0;
  double p_tau = 0.0;  // Ohmic-bath decoherence factor at tau
  double qslt_ohmic = 0.0;
  double qslt_super_ohmic = 0.0;
  std::string flags = "ML";
  bool ok = true;
};

struct SweepTable {
  SweepSpec spec;
  Tolerance tol;
  std::string version;  // code version the table was produced with
  std::vector<SweepRow> rows;
};

/// Evaluates the Markovian QSLT at every grid point; finite Markovian windows
/// are cross-checked against the quadrature closed form and any mismatch or
/// per-row failure lands in the row's flags instead of aborting the sweep.
/// Output is identical for any thread count.
SweepTable run_sweep(const SweepSpec& spec, Tolerance tol = {}, int threads = 1);

/// Canonical sweep of a figure preset (its first curve).
SweepSpec preset(PresetTag tag);

/// Every curve of the figure, one SweepSpec per curve.
std::vector<SweepSpec> preset_curves(PresetTag tag);

/// Runs all curves of a preset, sharing the chi column between curves that
/// differ only in their window.
std::vector<SweepTable> run_preset(PresetTag tag, Tolerance tol = {},
                                   int threads = 1);

}  // namespace qsl
