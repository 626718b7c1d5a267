#include "qsl/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "qsl/version.hpp"

namespace qsl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kXcheckTol = 1e-9;

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

/// Static block partition of [0, n) over `threads` workers; row i is written
/// only by its owner, so the assembled table is order- and thread-count
/// independent.
template <typename Fn>
void parallel_rows(std::size_t n, int threads, const Fn& fn) {
  const int workers = std::max(1, threads);
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const std::size_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::size_t lo = static_cast<std::size_t>(w) * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

struct ChiEntry {
  double value = 0.0;
  std::string error;  // empty when the evaluation succeeded
};

ChiEntry chi_entry(const BoostedPacketSpec& packet, Tolerance tol) {
  try {
    return {chi(packet, tol).value, {}};
  } catch (const ConvergenceError&) {
    return {std::nan(""), "err:chi-convergence"};
  } catch (const std::exception&) {
    return {std::nan(""), "err:chi-invalid"};
  }
}

BoostedPacketSpec packet_at(const SweepSpec& spec, double v) {
  BoostedPacketSpec p = spec.fixed.packet;
  if (spec.variable == SweepVariable::alpha) p.alpha = v;
  if (spec.variable == SweepVariable::width) p.W = v;
  return p;
}

EvolutionWindow window_at(const SweepSpec& spec, double v) {
  EvolutionWindow w = spec.fixed.window;
  if (spec.variable == SweepVariable::tau) w.tau = v;
  return w;
}

// chi per grid point; a single evaluation broadcast for tau sweeps.
std::vector<ChiEntry> chi_column(const SweepSpec& spec, Tolerance tol,
                                 int threads) {
  const std::size_t n = spec.grid.size();
  std::vector<ChiEntry> col(n);
  if (spec.variable == SweepVariable::tau) {
    const ChiEntry e = chi_entry(spec.fixed.packet, tol);
    std::fill(col.begin(), col.end(), e);
    return col;
  }
  parallel_rows(n, threads, [&](std::size_t i) {
    col[i] = chi_entry(packet_at(spec, spec.grid[i]), tol);
  });
  return col;
}

SweepRow evaluate_row(const SweepSpec& spec, double v, const ChiEntry& chi_e) {
  SweepRow row;
  row.value = v;
  if (!chi_e.error.empty()) {
    row.chi = chi_e.value;
    row.flags = chi_e.error;
    row.ok = false;
    return row;
  }
  row.chi = chi_e.value;

  const EvolutionWindow win = window_at(spec, v);
  const BoostedPacketSpec packet = packet_at(spec, v);
  const double theta = packet.theta;

  try {
    const double p_oh = decoherence_factor(spec.fixed.ohmic, win.tau);
    const double p_so = decoherence_factor(spec.fixed.super_ohmic, win.tau);
    row.p_tau = p_oh;
    row.qslt_ohmic = markovian_qslt(p_oh, win.delta_tau, row.chi, theta);
    row.qslt_super_ohmic = markovian_qslt(p_so, win.delta_tau, row.chi, theta);

    if (!std::isinf(win.tau)) {
      const double t_end = win.tau + win.delta_tau;
      const std::pair<const DephasingSpec*, double> baths[2] = {
          {&spec.fixed.ohmic, row.qslt_ohmic},
          {&spec.fixed.super_ohmic, row.qslt_super_ohmic}};
      for (const auto& [bath, closed] : baths) {
        if (!is_markovian_window(*bath, win.tau, t_end)) {
          row.flags += ";nonmarkovian";
          continue;
        }
        if (closed == 0.0) continue;  // degenerate numerator, nothing to check
        QsltProblem prob{*bath, packet, win};
        const double q = relativistic_qslt(prob, row.chi);
        if (!(std::abs(q - closed) <= kXcheckTol * std::max(closed, 1.0)))
          row.flags += ";xcheck";
      }
    }
  } catch (const ConvergenceError&) {
    row.flags = "err:convergence";
    row.ok = false;
  } catch (const std::exception&) {
    row.flags = "err:invalid";
    row.ok = false;
  }
  return row;
}

SweepTable run_sweep_cached(const SweepSpec& spec, Tolerance tol, int threads,
                            const std::vector<ChiEntry>* chi_cache) {
  spec.validate();
  tol.validate();
  SweepTable table;
  table.spec = spec;
  table.tol = tol;
  table.version = kVersion;
  const std::vector<ChiEntry> col =
      chi_cache ? *chi_cache : chi_column(spec, tol, threads);
  table.rows.resize(spec.grid.size());
  parallel_rows(spec.grid.size(), threads, [&](std::size_t i) {
    table.rows[i] = evaluate_row(spec, spec.grid[i], col[i]);
  });
  return table;
}

SweepSpec base_fig_spec(PresetTag tag) {
  SweepSpec s;
  s.preset = tag;
  s.fixed.ohmic = {1.0, 1.0, 1.0};
  s.fixed.super_ohmic = {1.0, 1.0, 2.0};
  s.fixed.packet.theta = kPi / 4.0;
  s.fixed.window = {0.0, 1.0};
  switch (tag) {
    case PresetTag::fig1:
      s.variable = SweepVariable::tau;
      s.grid = linspace(0.0, 10.0, 201);
      s.fixed.packet.K = 100.0;
      s.fixed.packet.W = 4.0;
      s.fixed.packet.alpha = 0.0;
      s.curve_label = "alpha=0";
      break;
    case PresetTag::fig2a:
    case PresetTag::fig2b:
      s.variable = SweepVariable::alpha;
      s.grid = linspace(0.0, 12.0, 200);
      s.grid.push_back(kInfinity);
      s.fixed.packet.K = tag == PresetTag::fig2a ? 100.0 : 0.01;
      s.fixed.packet.W = 30.0;
      s.curve_label = "tau=0";
      break;
    case PresetTag::fig3a:
    case PresetTag::fig3b:
      s.variable = SweepVariable::width;
      s.grid.resize(201);
      for (std::size_t i = 0; i < 201; ++i)
        s.grid[i] = 60.0 * static_cast<double>(i + 1) / 201.0;
      s.fixed.packet.K = tag == PresetTag::fig3a ? 100.0 : 0.01;
      s.fixed.packet.alpha = kInfinity;
      s.curve_label = "tau=0";
      break;
  }
  return s;
}

}  // namespace

const char* sweep_variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::tau: return "tau";
    case SweepVariable::alpha: return "alpha";
    case SweepVariable::width: return "width";
  }
  return "?";
}

std::optional<SweepVariable> parse_sweep_variable(std::string_view name) {
  if (name == "tau") return SweepVariable::tau;
  if (name == "alpha") return SweepVariable::alpha;
  if (name == "width") return SweepVariable::width;
  return std::nullopt;
}

const char* preset_name(PresetTag tag) {
  switch (tag) {
    case PresetTag::fig1: return "fig1";
    case PresetTag::fig2a: return "fig2a";
    case PresetTag::fig2b: return "fig2b";
    case PresetTag::fig3a: return "fig3a";
    case PresetTag::fig3b: return "fig3b";
  }
  return "?";
}

std::optional<PresetTag> parse_preset(std::string_view name) {
  if (name == "fig1") return PresetTag::fig1;
  if (name == "fig2a") return PresetTag::fig2a;
  if (name == "fig2b") return PresetTag::fig2b;
  if (name == "fig3a") return PresetTag::fig3a;
  if (name == "fig3b") return PresetTag::fig3b;
  return std::nullopt;
}

void SweepSpec::validate() const {
  if (grid.empty()) throw std::domain_error("SweepSpec: empty grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::domain_error("SweepSpec: grid must be strictly increasing");
  if (std::isinf(grid.back()) && variable != SweepVariable::alpha)
    throw std::domain_error("SweepSpec: +inf grid point only valid for alpha");
  fixed.ohmic.validate();
  fixed.super_ohmic.validate();
  fixed.packet.validate();
  fixed.window.validate();
  if (variable == SweepVariable::tau) {
    for (double v : grid)
      if (!(v >= 0.0)) throw std::domain_error("SweepSpec: tau grid must be >= 0");
  } else if (variable == SweepVariable::width) {
    for (double v : grid)
      if (!(v > 0.0)) throw std::domain_error("SweepSpec: width grid must be > 0");
  } else {
    for (double v : grid)
      if (!(v >= 0.0)) throw std::domain_error("SweepSpec: alpha grid must be >= 0");
  }
}

SweepTable run_sweep(const SweepSpec& spec, Tolerance tol, int threads) {
  return run_sweep_cached(spec, tol, threads, nullptr);
}

SweepSpec preset(PresetTag tag) { return base_fig_spec(tag); }

std::vector<SweepSpec> preset_curves(PresetTag tag) {
  std::vector<SweepSpec> curves;
  if (tag == PresetTag::fig1) {
    SweepSpec s = base_fig_spec(tag);
    curves.push_back(s);  // alpha = 0
    s.fixed.packet.alpha = kInfinity;
    s.fixed.packet.K = 100.0;
    s.curve_label = "alpha=inf K=100";
    curves.push_back(s);
    s.fixed.packet.K = 0.01;
    s.curve_label = "alpha=inf K=0.01";
    curves.push_back(s);
    return curves;
  }
  const double taus[4] = {0.0, 0.5, 1.0, kInfinity};
  const char* labels[4] = {"tau=0", "tau=0.5", "tau=1", "tau=inf"};
  for (int i = 0; i < 4; ++i) {
    SweepSpec s = base_fig_spec(tag);
    s.fixed.window.tau = taus[i];
    s.curve_label = labels[i];
    curves.push_back(s);
  }
  return curves;
}

std::vector<SweepTable> run_preset(PresetTag tag, Tolerance tol, int threads) {
  const std::vector<SweepSpec> curves = preset_curves(tag);
  std::vector<SweepTable> tables;
  tables.reserve(curves.size());
  if (tag == PresetTag::fig1) {
    for (const auto& c : curves) tables.push_back(run_sweep(c, tol, threads));
    return tables;
  }
  // figs 2-3: curves differ only in tau, so the chi column is shared
  const std::vector<ChiEntry> col = chi_column(curves.front(), tol, threads);
  for (const auto& c : curves)
    tables.push_back(run_sweep_cached(c, tol, threads, &col));
  return tables;
}

}  // namespace qsl
