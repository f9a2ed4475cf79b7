#pragma once

#include <string>
#include <vector>

#include "banditlab/harness.hpp"

namespace banditlab::harness {

enum class OutputFormat { kCsv, kJson, kBoth };

OutputFormat parse_format(const std::string& name);

// Writes run_NNN.csv per replication (format csv/both) and summary.json
// (format json/both) under out_dir. UTF-8, LF line endings, 12 significant
// digits, so identical experiments diff byte-identically.
// CSV header:
//   t,arm,opt_arm,gap_regret,realized_regret,cum_regret,s_chosen,e_mu,
//   e_theta,saturated_played,x_t,y_t
void emit_output(const std::vector<RunResult>& results,
                 const ExperimentConfig& cfg, OutputFormat format,
                 const std::string& out_dir);

void emit_scaling(const ScalingReport& report, const ExperimentConfig& cfg,
                  const std::string& out_dir);

void emit_audit(const diag::AuditReport& report, const std::string& out_dir);

// Reads a run_NNN.csv back into the scalar fields of a trace (for the audit
// verb over stored traces).
std::vector<diag::StepTrace> load_trace_csv(const std::string& path);

// All run_*.csv files under a directory, sorted by name.
std::vector<std::vector<diag::StepTrace>> load_traces(const std::string& dir);

}  // namespace banditlab::harness
