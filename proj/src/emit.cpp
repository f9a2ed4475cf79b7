#include "banditlab/emit.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "banditlab/errors.hpp"

namespace banditlab::harness {

namespace fs = std::filesystem;
using nlohmann::json;

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::kCsv;
    if (name == "json") return OutputFormat::kJson;
    if (name == "both") return OutputFormat::kBoth;
    throw ConfigError("unknown output format '" + name + "'");
}

namespace {

constexpr char kCsvHeader[] =
    "t,arm,opt_arm,gap_regret,realized_regret,cum_regret,s_chosen,e_mu,"
    "e_theta,saturated_played,x_t,y_t";

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);  // binary: LF on every platform
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

void write_run_csv(const RunResult& run, const fs::path& path) {
    std::ofstream out = open_out(path);
    out << kCsvHeader << '\n';
    for (const diag::StepTrace& s : run.trace) {
        out << s.t << ',' << s.chosen << ',' << s.optimal << ','
            << fmt(s.gap_regret) << ',' << fmt(s.realized_regret) << ','
            << fmt(s.cum_regret) << ',' << fmt(s.s_chosen) << ','
            << (s.e_mu ? 1 : 0) << ',' << (s.e_theta ? 1 : 0) << ','
            << (s.saturated_played ? 1 : 0) << ',' << fmt(s.x_t) << ','
            << fmt(s.y_t) << '\n';
    }
}

json bound_to_json(const diag::BoundReport& b) {
    return json{{"s_sum", b.s_sum},
                {"s_sum_cap", b.s_sum_cap},
                {"theorem_envelope", b.theorem_envelope},
                {"cum_regret", b.cum_regret},
                {"x_bound_ok", b.x_bound_ok},
                {"telescope_ok", b.telescope_ok},
                {"optimal_unsaturated_ok", b.optimal_unsaturated_ok},
                {"s_sum_ok", b.s_sum_ok},
                {"lemma10_ok", b.lemma10_ok}};
}

json round_stats_to_json(const std::vector<diag::RoundStat>& stats) {
    json arr = json::array();
    for (const auto& s : stats) {
        arr.push_back(json{{"t", s.t},
                           {"frequency", s.frequency},
                           {"threshold", s.threshold},
                           {"samples", s.samples},
                           {"ok", s.ok}});
    }
    return arr;
}

}  // namespace

void emit_output(const std::vector<RunResult>& results,
                 const ExperimentConfig& cfg, OutputFormat format,
                 const std::string& out_dir) {
    if (results.empty()) throw ConfigError("emit_output: no results");
    fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir);

    if (format != OutputFormat::kJson) {
        for (const RunResult& run : results) {
            char name[32];
            std::snprintf(name, sizeof(name), "run_%03d.csv",
                          run.replication_index);
            write_run_csv(run, dir / name);
        }
    }
    if (format != OutputFormat::kCsv) {
        json summary;
        summary["schema_version"] = cfg.schema_version;
        summary["config"] = json::parse(cfg.to_json());
        summary["config_digest"] = cfg.digest();
        summary["master_seed"] = cfg.master_seed;
        json reps = json::array();
        for (const RunResult& run : results) {
            // no wall-clock here: every byte of output must be a pure
            // function of (config, master seed)
            reps.push_back(json{{"replication", run.replication_index},
                                {"bound_report", bound_to_json(run.bound)}});
        }
        summary["replications"] = reps;
        std::ofstream out = open_out(dir / "summary.json");
        out << summary.dump(2) << '\n';
    }
}

void emit_scaling(const ScalingReport& report, const ExperimentConfig& cfg,
                  const std::string& out_dir) {
    fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir);

    std::ofstream csv = open_out(dir / "scaling.csv");
    csv << "d,T,mean_regret,median_regret,stddev\n";
    for (const ScalingCell& c : report.cells) {
        csv << c.d << ',' << c.horizon << ',' << fmt(c.mean_regret) << ','
            << fmt(c.median_regret) << ',' << fmt(c.stddev) << '\n';
    }

    json j;
    j["config_digest"] = cfg.digest();
    json cells = json::array();
    for (const ScalingCell& c : report.cells) {
        cells.push_back(json{{"d", c.d},
                             {"T", c.horizon},
                             {"mean_regret", c.mean_regret},
                             {"median_regret", c.median_regret},
                             {"stddev", c.stddev},
                             {"final_regrets", c.final_regrets}});
    }
    j["cells"] = cells;
    json fits = json::array();
    for (const ScalingFit& f : report.fits) {
        fits.push_back(json{{"d", f.d},
                            {"beta", f.beta},
                            {"beta_low", f.beta_low},
                            {"beta_high", f.beta_high},
                            {"log_intercept", f.log_intercept}});
    }
    j["fits"] = fits;
    std::ofstream out = open_out(dir / "scaling.json");
    out << j.dump(2) << '\n';
}

void emit_audit(const diag::AuditReport& report, const std::string& out_dir) {
    fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir);

    json j;
    j["replications"] = report.replications;
    j["e_mu_ever_fail_fraction"] = report.e_mu_ever_fail_fraction;
    j["e_mu_threshold"] = report.e_mu_threshold;
    j["e_mu_ok"] = report.e_mu_ok;
    j["e_theta"] = round_stats_to_json(report.e_theta);
    j["unsaturated"] = round_stats_to_json(report.unsaturated);
    j["x_drift"] = round_stats_to_json(report.x_drift);
    j["pass"] = report.pass;
    std::ofstream out = open_out(dir / "audit.json");
    out << j.dump(2) << '\n';
}

std::vector<diag::StepTrace> load_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read trace file: " + path);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw DataError("unexpected CSV header in " + path);
    std::vector<diag::StepTrace> trace;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (cells.size() != 12)
            throw DataError("bad CSV row in " + path + ": " + line);
        diag::StepTrace s;
        s.t = std::stol(cells[0]);
        s.chosen = std::stoi(cells[1]);
        s.optimal = std::stoi(cells[2]);
        s.gap_regret = std::stod(cells[3]);
        s.realized_regret = std::stod(cells[4]);
        s.cum_regret = std::stod(cells[5]);
        s.s_chosen = std::stod(cells[6]);
        s.e_mu = cells[7] == "1";
        s.e_theta = cells[8] == "1";
        s.saturated_played = cells[9] == "1";
        s.x_t = std::stod(cells[10]);
        s.y_t = std::stod(cells[11]);
        trace.push_back(s);
    }
    return trace;
}

std::vector<std::vector<diag::StepTrace>> load_traces(const std::string& dir) {
    std::vector<fs::path> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("run_", 0) == 0 && entry.path().extension() == ".csv")
            files.push_back(entry.path());
    }
    if (ec) throw IoError("cannot list trace directory: " + dir);
    std::sort(files.begin(), files.end());
    std::vector<std::vector<diag::StepTrace>> traces;
    traces.reserve(files.size());
    for (const fs::path& f : files) traces.push_back(load_trace_csv(f.string()));
    return traces;
}

}  // namespace banditlab::harness
