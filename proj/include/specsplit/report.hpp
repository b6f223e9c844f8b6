#pragma once

#include <string>

#include <json.hpp>

#include "specsplit/config.hpp"
#include "specsplit/flows.hpp"
#include "specsplit/probes.hpp"
#include "specsplit/study.hpp"

namespace specsplit {

/// stepper,tau,lambda,err_L2_final,err_L2_sup,err_H1_final,err_H1_sup,mass_drift,energy_drift
/// Missing values (blown-up runs) are empty cells.
std::string report_csv(const ConvergenceReport& report);
nlohmann::json report_json(const ConvergenceReport& report);
ConvergenceReport report_from_json(const nlohmann::json& j);

enum class ReportFormat { csv, json };
/// Writes <dir>/convergence.csv or <dir>/convergence.json; returns the path.
std::string emit_report(const ConvergenceReport& report, ReportFormat format, const std::string& dir);

/// lambda,t_or_pq,trial,ratio
std::string probe_csv(const ProbeReport& report);

/// One line per snapshot: n t re_0 im_0 re_1 im_1 ... Values are un-gauged,
/// i.e. multiplied by exp(i * gauge_shift * t).
std::string trajectory_text(const Trajectory& traj);
nlohmann::json trajectory_sidecar(const Trajectory& traj, const Problem& problem, const ExperimentConfig& cfg);

/// Creates parent directories as needed; IoError on failure.
void write_file(const std::string& path, const std::string& contents);

}  // namespace specsplit
