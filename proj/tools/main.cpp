// qsl: quantum-speed-limit times for a boosted spin-1/2 Gaussian wavepacket
// under Ohmic-like pure dephasing. Subcommands:
//   compute  one parameter point -> one record
//   sweep    parameter sweep or figure preset -> CSV/JSON table

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsl/mc.hpp"
#include "qsl/sweep.hpp"
#include "qsl/version.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_extended(const std::string& s, const char* what) {
  if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity") return qsl::kInfinity;
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw CLI::ValidationError(std::string(what) + ": cannot parse '" + s + "'");
  }
}

struct CommonOpts {
  double ohmicity = 1.0;
  double eta = 1.0;
  double omega_c = 1.0;
  std::string alpha_str = "0";
  double K = 100.0;
  double W = 4.0;
  double theta = std::numbers::pi / 4.0;
  std::optional<double> theta_deg;
  std::string tau_str = "0";
  double delta_tau = 1.0;
  double tol_rel = 1e-8;
  double tol_abs = 1e-12;
  std::size_t mc_samples = 0;  // 0 -> chi by quadrature
  std::uint64_t seed = 12345;
  int threads = 1;
  std::string format = "csv";
  std::string out_path;
};

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--ohmicity", o.ohmicity, "Bath Ohmicity exponent n (1=Ohmic, 2=super-Ohmic)");
  cmd->add_option("--eta", o.eta, "Dimensionless bath coupling");
  cmd->add_option("--omega-c", o.omega_c, "Bath cutoff frequency");
  cmd->add_option("--alpha", o.alpha_str, "Rapidity magnitude (number or 'inf')");
  cmd->add_option("--K", o.K, "Normalized mean momentum k/m");
  cmd->add_option("--W", o.W, "Normalized wavepacket width w/m");
  auto* th = cmd->add_option("--theta", o.theta, "Coherence angle in radians, [0, pi/4]");
  cmd->add_option("--theta-deg", o.theta_deg, "Coherence angle in degrees")->excludes(th);
  cmd->add_option("--tau", o.tau_str, "Initial time (number or 'inf')");
  cmd->add_option("--delta-tau", o.delta_tau, "Driving time > 0");
  cmd->add_option("--tol-rel", o.tol_rel, "Relative quadrature tolerance");
  cmd->add_option("--tol-abs", o.tol_abs, "Absolute quadrature tolerance");
  cmd->add_option("--mc-samples", o.mc_samples,
                  "Evaluate chi by Monte Carlo with this many samples (0 = quadrature)");
  cmd->add_option("--seed", o.seed, "Seed for the Monte-Carlo chi path");
  cmd->add_option("--threads", o.threads, "Worker threads for sweeps");
  cmd->add_option("--format", o.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out_path, "Write output to PATH instead of stdout");
}

struct ResolvedParams {
  qsl::DephasingSpec bath;
  qsl::BoostedPacketSpec packet;
  qsl::EvolutionWindow window;
  qsl::Tolerance tol;
};

ResolvedParams resolve(const CommonOpts& o) {
  ResolvedParams r;
  r.bath = {o.eta, o.omega_c, o.ohmicity};
  r.packet.theta = o.theta_deg ? *o.theta_deg * std::numbers::pi / 180.0 : o.theta;
  r.packet.K = o.K;
  r.packet.W = o.W;
  r.packet.alpha = parse_extended(o.alpha_str, "--alpha");
  r.window.tau = parse_extended(o.tau_str, "--tau");
  r.window.delta_tau = o.delta_tau;
  r.tol = {o.tol_rel, o.tol_abs};
  r.bath.validate();
  r.packet.validate();
  r.window.validate();
  r.tol.validate();
  return r;
}

qsl::ChiResult eval_chi(const ResolvedParams& p, const CommonOpts& o) {
  if (o.mc_samples > 0) return qsl::chi_mc_oracle(p.packet, o.mc_samples, o.seed);
  return qsl::chi(p.packet, p.tol);
}

std::ostream& open_sink(const CommonOpts& o, std::ofstream& file) {
  if (o.out_path.empty()) return std::cout;
  file.open(o.out_path, std::ios::binary);
  if (!file) throw CLI::ValidationError("--out: cannot open '" + o.out_path + "'");
  return file;
}

void print_params_comments(std::ostream& os, const ResolvedParams& p,
                           const std::optional<qsl::PresetTag>& preset) {
  os << "# qsl " << qsl::kVersion << "\n";
  if (preset) os << "# preset: " << qsl::preset_name(*preset) << "\n";
  os << "# bath: eta=" << fmt17(p.bath.eta) << " omega_c=" << fmt17(p.bath.omega_c)
     << " n=" << fmt17(p.bath.n) << "\n";
  os << "# packet: K=" << fmt17(p.packet.K) << " W=" << fmt17(p.packet.W)
     << " theta=" << fmt17(p.packet.theta) << " alpha=" << fmt17(p.packet.alpha)
     << "\n";
  os << "# window: tau=" << fmt17(p.window.tau)
     << " delta_tau=" << fmt17(p.window.delta_tau) << "\n";
  os << "# tol: rel=" << fmt17(p.tol.rel) << " abs=" << fmt17(p.tol.abs) << "\n";
  if (!p.bath.in_validated_regime())
    os << "# warning: ohmicity n=" << fmt17(p.bath.n)
       << " outside the validated range [1, 2]\n";
}

int run_compute(const CommonOpts& o) {
  const ResolvedParams p = resolve(o);
  const qsl::ChiResult chi_r = eval_chi(p, o);

  const double t_end = p.window.tau + p.window.delta_tau;
  const double p_tau = qsl::decoherence_factor(p.bath, p.window.tau);
  const double p_t = qsl::decoherence_factor(p.bath, t_end);

  double value;
  if (std::isinf(p.window.tau) ||
      qsl::is_markovian_window(p.bath, p.window.tau, t_end)) {
    value = qsl::markovian_qslt(p_tau, p.window.delta_tau, chi_r.value,
                                p.packet.theta);
  } else {
    qsl::QsltProblem prob{p.bath, p.packet, p.window};
    value = qsl::unified_qslt(prob, chi_r.value).value;
  }

  std::ofstream file;
  std::ostream& os = open_sink(o, file);
  if (o.format == "json") {
    json j{{"version", qsl::kVersion},
           {"chi", chi_r.value},
           {"chi_method", qsl::chi_method_name(chi_r.method)},
           {"p_tau", p_tau},
           {"p_t", p_t},
           {"qslt", value},
           {"active_bound", "ML"},
           {"tol_rel", p.tol.rel},
           {"tol_abs", p.tol.abs}};
    if (!p.bath.in_validated_regime())
      j["warnings"] = json::array({"ohmicity outside validated range [1, 2]"});
    os << j.dump(2) << "\n";
  } else {
    print_params_comments(os, p, std::nullopt);
    os << "chi,p_tau,p_t,qslt,active_bound,tol_rel,tol_abs\n";
    os << fmt17(chi_r.value) << ',' << fmt17(p_tau) << ',' << fmt17(p_t) << ','
       << fmt17(value) << ",ML," << fmt17(p.tol.rel) << ',' << fmt17(p.tol.abs)
       << "\n";
  }
  return kExitOk;
}

void print_table_csv(std::ostream& os, const qsl::SweepTable& t, bool header) {
  if (!t.spec.curve_label.empty()) os << "# curve: " << t.spec.curve_label << "\n";
  if (header)
    os << "var,value,chi,p_tau,qslt_ohmic,qslt_superohmic,flags\n";
  const char* var = qsl::sweep_variable_name(t.spec.variable);
  for (const auto& r : t.rows) {
    os << var << ',' << fmt17(r.value) << ',' << fmt17(r.chi) << ','
       << fmt17(r.p_tau) << ',' << fmt17(r.qslt_ohmic) << ','
       << fmt17(r.qslt_super_ohmic) << ',' << r.flags << "\n";
  }
}

json table_json(const qsl::SweepTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back(json{{"value", r.value},
                        {"chi", r.chi},
                        {"p_tau", r.p_tau},
                        {"qslt_ohmic", r.qslt_ohmic},
                        {"qslt_superohmic", r.qslt_super_ohmic},
                        {"flags", r.flags}});
  return json{{"curve", t.spec.curve_label},
              {"var", qsl::sweep_variable_name(t.spec.variable)},
              {"params",
               {{"ohmic", {{"eta", t.spec.fixed.ohmic.eta},
                           {"omega_c", t.spec.fixed.ohmic.omega_c},
                           {"n", t.spec.fixed.ohmic.n}}},
                {"super_ohmic", {{"eta", t.spec.fixed.super_ohmic.eta},
                                 {"omega_c", t.spec.fixed.super_ohmic.omega_c},
                                 {"n", t.spec.fixed.super_ohmic.n}}},
                {"K", t.spec.fixed.packet.K},
                {"W", t.spec.fixed.packet.W},
                {"theta", t.spec.fixed.packet.theta},
                {"alpha", t.spec.fixed.packet.alpha},
                {"tau", t.spec.fixed.window.tau},
                {"delta_tau", t.spec.fixed.window.delta_tau}}},
              {"rows", rows}};
}

struct SweepOpts {
  CommonOpts common;
  std::string var;
  double from = 0.0;
  double to = 1.0;
  std::size_t points = 0;
  std::string preset_str;
};

int run_sweep_cmd(const SweepOpts& so) {
  const CommonOpts& o = so.common;
  std::vector<qsl::SweepTable> tables;
  std::optional<qsl::PresetTag> preset_tag;

  if (!so.preset_str.empty()) {
    preset_tag = qsl::parse_preset(so.preset_str);
    if (!preset_tag)
      throw CLI::ValidationError("--preset: unknown preset '" + so.preset_str + "'");
    qsl::Tolerance tol{o.tol_rel, o.tol_abs};
    tables = qsl::run_preset(*preset_tag, tol, o.threads);
  } else {
    const auto var = qsl::parse_sweep_variable(so.var);
    if (!var)
      throw CLI::ValidationError("--var: expected tau, alpha or width");
    if (so.points < 2) throw CLI::ValidationError("--points: need at least 2");
    const ResolvedParams p = resolve(o);
    qsl::SweepSpec spec;
    spec.variable = *var;
    spec.fixed.ohmic = p.bath;
    spec.fixed.super_ohmic = {p.bath.eta, p.bath.omega_c, 2.0};
    spec.fixed.packet = p.packet;
    spec.fixed.window = p.window;
    spec.grid.resize(so.points);
    for (std::size_t i = 0; i < so.points; ++i)
      spec.grid[i] = so.from + (so.to - so.from) * static_cast<double>(i) /
                                   static_cast<double>(so.points - 1);
    tables.push_back(qsl::run_sweep(spec, p.tol, o.threads));
  }

  bool any_ok = false;
  for (const auto& t : tables)
    for (const auto& r : t.rows) any_ok |= r.ok;

  std::ofstream file;
  std::ostream& os = open_sink(o, file);
  if (o.format == "json") {
    json j{{"version", qsl::kVersion}, {"curves", json::array()}};
    if (preset_tag) j["preset"] = qsl::preset_name(*preset_tag);
    j["tol"] = {{"rel", o.tol_rel}, {"abs", o.tol_abs}};
    for (const auto& t : tables) j["curves"].push_back(table_json(t));
    os << j.dump(2) << "\n";
  } else {
    const auto& front = tables.front().spec;
    ResolvedParams echo;
    echo.bath = front.fixed.ohmic;
    echo.packet = front.fixed.packet;
    echo.window = front.fixed.window;
    echo.tol = {o.tol_rel, o.tol_abs};
    print_params_comments(os, echo, preset_tag);
    os << "# super_ohmic: eta=" << fmt17(front.fixed.super_ohmic.eta)
       << " omega_c=" << fmt17(front.fixed.super_ohmic.omega_c)
       << " n=" << fmt17(front.fixed.super_ohmic.n) << "\n";
    bool header = true;
    for (const auto& t : tables) {
      print_table_csv(os, t, header);
      header = false;
    }
  }
  return any_ok ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-speed-limit times of a boosted wavepacket under dephasing"};
  app.require_subcommand(1);

  CommonOpts compute_opts;
  CLI::App* compute = app.add_subcommand("compute", "Evaluate one parameter point");
  add_common_flags(compute, compute_opts);

  SweepOpts sweep_opts;
  CLI::App* sweep = app.add_subcommand("sweep", "Sweep a parameter or run a figure preset");
  add_common_flags(sweep, sweep_opts.common);
  sweep->add_option("--var", sweep_opts.var, "Swept variable: tau, alpha or width");
  sweep->add_option("--from", sweep_opts.from, "Grid start");
  sweep->add_option("--to", sweep_opts.to, "Grid end");
  sweep->add_option("--points", sweep_opts.points, "Grid size");
  sweep->add_option("--preset", sweep_opts.preset_str,
                    "Figure preset: fig1, fig2a, fig2b, fig3a, fig3b");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compute->parsed()) return run_compute(compute_opts);
    return run_sweep_cmd(sweep_opts);
  } catch (const qsl::ConvergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
