#include "specsplit/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "specsplit/diagnostics.hpp"
#include "specsplit/errors.hpp"

namespace specsplit {

using nlohmann::json;

namespace {

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> opt_double(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

// JSON has no infinity; lambda = +inf (no cutoff) is written as the string "inf".
json number(double v) { return std::isfinite(v) ? json(v) : json(format_double(v)); }

double from_number(const json& j) {
  if (j.is_string()) return j.get<std::string>() == "inf" ? INFINITY : NAN;
  return j.get<double>();
}

}  // namespace

std::string report_csv(const ConvergenceReport& report) {
  std::string out = "stepper,tau,lambda,err_L2_final,err_L2_sup,err_H1_final,err_H1_sup,mass_drift,energy_drift\n";
  for (const auto& r : report.runs) {
    out += r.stepper + "," + format_double(r.tau) + "," + format_double(r.lambda) + "," + cell(r.err_L2_final) +
           "," + cell(r.err_L2_sup) + "," + cell(r.err_H1_final) + "," + cell(r.err_H1_sup) + "," +
           cell(r.mass_drift) + "," + cell(r.energy_drift) + "\n";
  }
  return out;
}

json report_json(const ConvergenceReport& report) {
  json j;
  json cfg = json::object();
  for (const auto& [k, v] : report.config) cfg[k] = v;
  j["config"] = cfg;
  j["seed"] = report.seed;
  j["reference"] = {{"tau", report.reference_tau},
                    {"self_check", report.reference_self_check},
                    {"mass_drift", report.reference_mass_drift},
                    {"energy_drift", report.reference_energy_drift}};
  json runs = json::array();
  for (const auto& r : report.runs) {
    runs.push_back({{"stepper", r.stepper},
                    {"lambda_rule", r.lambda_rule},
                    {"tau", r.tau},
                    {"lambda", number(r.lambda)},
                    {"status", r.status},
                    {"err_L2_final", opt(r.err_L2_final)},
                    {"err_L2_sup", opt(r.err_L2_sup)},
                    {"err_H1_final", opt(r.err_H1_final)},
                    {"err_H1_sup", opt(r.err_H1_sup)},
                    {"mass_drift", opt(r.mass_drift)},
                    {"energy_drift", opt(r.energy_drift)},
                    {"blowup_step", r.blowup_step ? json(*r.blowup_step) : json(nullptr)}});
  }
  j["runs"] = runs;
  json fits = json::array();
  for (const auto& f : report.fits) {
    json fj = {{"stepper", f.stepper}, {"lambda_rule", f.lambda_rule}, {"norm", f.norm}, {"note", f.note}};
    if (f.fit) {
      fj["fit"] = {{"slope", f.fit->slope},
                   {"intercept", f.fit->intercept},
                   {"r_squared", f.fit->r_squared},
                   {"points", f.fit->points},
                   {"excluded", f.fit->excluded}};
    } else {
      fj["fit"] = nullptr;
    }
    fj["window_tau_max"] = opt(f.window_tau_max);
    fits.push_back(fj);
  }
  j["fits"] = fits;
  return j;
}

ConvergenceReport report_from_json(const json& j) {
  ConvergenceReport report;
  // The echo is written as a sorted object; restore it in the canonical field order.
  ExperimentConfig defaults;
  for (const auto& [key, value] : config_entries(defaults)) {
    if (j.at("config").contains(key)) report.config.emplace_back(key, j.at("config").at(key).get<std::string>());
  }
  report.seed = j.at("seed").get<std::uint64_t>();
  const auto& ref = j.at("reference");
  report.reference_tau = ref.at("tau").get<double>();
  report.reference_self_check = ref.at("self_check").get<double>();
  report.reference_mass_drift = ref.at("mass_drift").get<double>();
  report.reference_energy_drift = ref.at("energy_drift").get<double>();
  for (const auto& rj : j.at("runs")) {
    RunRecord r;
    r.stepper = rj.at("stepper").get<std::string>();
    r.lambda_rule = rj.at("lambda_rule").get<std::string>();
    r.tau = rj.at("tau").get<double>();
    r.lambda = from_number(rj.at("lambda"));
    r.status = rj.at("status").get<std::string>();
    r.err_L2_final = opt_double(rj.at("err_L2_final"));
    r.err_L2_sup = opt_double(rj.at("err_L2_sup"));
    r.err_H1_final = opt_double(rj.at("err_H1_final"));
    r.err_H1_sup = opt_double(rj.at("err_H1_sup"));
    r.mass_drift = opt_double(rj.at("mass_drift"));
    r.energy_drift = opt_double(rj.at("energy_drift"));
    if (!rj.at("blowup_step").is_null()) r.blowup_step = rj.at("blowup_step").get<std::size_t>();
    report.runs.push_back(std::move(r));
  }
  for (const auto& fj : j.at("fits")) {
    SchemeFit f;
    f.stepper = fj.at("stepper").get<std::string>();
    f.lambda_rule = fj.at("lambda_rule").get<std::string>();
    f.norm = fj.at("norm").get<std::string>();
    f.note = fj.at("note").get<std::string>();
    if (!fj.at("fit").is_null()) {
      const auto& g = fj.at("fit");
      f.fit = FitResult{g.at("slope").get<double>(), g.at("intercept").get<double>(), g.at("r_squared").get<double>(),
                        g.at("points").get<std::size_t>(), g.at("excluded").get<std::size_t>()};
    }
    f.window_tau_max = opt_double(fj.at("window_tau_max"));
    report.fits.push_back(std::move(f));
  }
  return report;
}

void write_file(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  std::error_code ec;
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write", path);
  out << contents;
  if (!out) throw IoError("write failed", path);
}

std::string emit_report(const ConvergenceReport& report, ReportFormat format, const std::string& dir) {
  if (format == ReportFormat::csv) {
    const std::string path = dir + "/convergence.csv";
    write_file(path, report_csv(report));
    return path;
  }
  const std::string path = dir + "/convergence.json";
  write_file(path, report_json(report).dump(2) + "\n");
  return path;
}

std::string probe_csv(const ProbeReport& report) {
  std::string out = "lambda,t_or_pq,trial,ratio\n";
  for (const auto& r : report.rows)
    out += format_double(r.lambda) + "," + r.t_or_pq + "," + std::to_string(r.trial) + "," + format_double(r.ratio) +
           "\n";
  return out;
}

std::string trajectory_text(const Trajectory& traj) {
  std::string out;
  for (const auto& s : traj.snapshots) {
    const double shift = s.state.hamiltonian()->gauge_shift();
    const cplx gauge = std::polar(1.0, shift * s.time);
    out += std::to_string(s.step) + " " + format_double(s.time);
    for (const auto& z : s.state.values()) {
      const cplx v = gauge * z;
      out += " " + format_double(v.real()) + " " + format_double(v.imag());
    }
    out += "\n";
  }
  return out;
}

json trajectory_sidecar(const Trajectory& traj, const Problem& problem, const ExperimentConfig& cfg) {
  json j;
  json echo = json::object();
  for (const auto& [k, v] : config_entries(cfg)) echo[k] = v;
  j["config"] = echo;
  j["stepper"] = to_string(traj.stepper);
  j["tau"] = traj.tau;
  j["lambda"] = number(traj.lambda);
  j["stride"] = traj.stride;
  j["gauge_shift"] = problem.hamiltonian->gauge_shift();
  j["mass"] = traj.mass;
  json times = json::array(), energies = json::array();
  for (const auto& s : traj.snapshots) {
    times.push_back(s.time);
    energies.push_back(energy(s.state, problem));
  }
  j["snapshot_times"] = times;
  j["energy"] = energies;
  return j;
}

}  // namespace specsplit
