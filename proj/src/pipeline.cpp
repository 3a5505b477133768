#include "fatigue/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <json.hpp>

#include "fatigue/io.hpp"

namespace fatigue {

namespace {

const char* class_key(OverloadClass c) {
    switch (c) {
        case OverloadClass::A: return "A";
        case OverloadClass::B: return "B";
        case OverloadClass::C: return "C";
        case OverloadClass::D: return "D";
    }
    return "?";
}

}  // namespace

CaseReport run_case(const LoadHistory& load, const PipelineConfig& config,
                    const std::optional<CorrectionModel>& model) {
    CaseReport report;
    report.label = load.label;
    report.source = io::source_name(load.source);
    report.stats = compute_statistics(load);

    const ReversalSequence reversals = find_reversals(load);
    if (reversals.size() < 2) throw std::runtime_error("run_case: no cycle content in load");
    report.n_reversals = reversals.size();

    const RainflowSet rainflow = rainflow_count(reversals);
    const std::vector<double> sigma_ar = mean_stress_correct(rainflow, config.walker);
    report.n_cycles = rainflow.total_count();

    const OverloadSet overloads = identify_overloads(reversals, rainflow, sigma_ar);
    for (const auto& rec : overloads.records) ++report.overload_counts[class_key(rec.cls)];

    const RetardedAmplitudeSeries retarded =
        apply_retardation(rainflow, sigma_ar, overloads, config.retardation);

    if (!overloads.empty()) {
        report.overload_moments =
            overload_moments(overloads, config.overload_amplitude_scale).moments;
    }
    report.lambda_ol_raw = model ? evaluate_lambda(*model, report.overload_moments) : 1.0;
    report.lambda_ol = clamp_lambda(report.lambda_ol_raw);

    report.nu_peak = count_rates(load).nu_peak;

    std::vector<double> counts;
    counts.reserve(rainflow.cycles.size());
    for (const auto& c : rainflow.cycles) counts.push_back(c.count);

    report.ctf["miner"] = miner_life_discrete(sigma_ar, counts, config.sn).ctf;
    report.ctf["retarded"] = miner_life_discrete(retarded.sigma_rar, counts, config.sn).ctf;
    report.ctf["retarded_corrected"] =
        corrected_life_discrete(retarded.sigma_rar, counts, config.sn, report.lambda_ol).ctf;
    report.ctf["spectral_baseline"] =
        spectral_baseline_life(load, config.sn, config.spectral).ctf;

    if (config.run_simulator) {
        const SimResult sim =
            simulate(reversals, config.geometry, config.growth, config.closure, config.sim);
        report.ctf["simulated"] = sim.ctf;
    }
    return report;
}

void write_case_report(const std::filesystem::path& path, const CaseReport& report) {
    nlohmann::json j{
        {"schema_version", CaseReport::kSchemaVersion},
        {"label", report.label},
        {"source", report.source},
        {"stats",
         {{"mean", report.stats.mean},
          {"std", report.stats.std},
          {"rms", report.stats.rms},
          {"skewness", report.stats.skewness},
          {"kurtosis", report.stats.kurtosis},
          {"higher_moments_valid", report.stats.higher_moments_valid}}},
        {"n_reversals", report.n_reversals},
        {"n_cycles", report.n_cycles},
        {"overload_counts", report.overload_counts},
        {"overload_moments", report.overload_moments},
        {"nu_peak", report.nu_peak},
        {"lambda_ol_raw", report.lambda_ol_raw},
        {"lambda_ol", report.lambda_ol},
        {"ctf", report.ctf}};
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << j.dump(2) << '\n';
}

CaseReport read_case_report(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    const auto j = nlohmann::json::parse(in);
    if (j.at("schema_version").get<int>() != CaseReport::kSchemaVersion)
        throw std::runtime_error("case report: unsupported schema version");

    CaseReport r;
    r.label = j.at("label");
    r.source = j.at("source");
    const auto& s = j.at("stats");
    r.stats.mean = s.at("mean");
    r.stats.std = s.at("std");
    r.stats.rms = s.at("rms");
    r.stats.skewness = s.at("skewness");
    r.stats.kurtosis = s.at("kurtosis");
    r.stats.higher_moments_valid = s.at("higher_moments_valid");
    r.n_reversals = j.at("n_reversals");
    r.n_cycles = j.at("n_cycles");
    r.overload_counts = j.at("overload_counts").get<std::map<std::string, std::size_t>>();
    const auto m = j.at("overload_moments").get<std::vector<double>>();
    std::copy(m.begin(), m.end(), r.overload_moments.begin());
    r.nu_peak = j.at("nu_peak");
    r.lambda_ol_raw = j.at("lambda_ol_raw");
    r.lambda_ol = j.at("lambda_ol");
    r.ctf = j.at("ctf").get<std::map<std::string, double>>();
    return r;
}

RetardationParams calibrate_retardation(const std::vector<LoadHistory>& loads,
                                        const std::vector<double>& simulated_ctfs,
                                        const PipelineConfig& config,
                                        const std::vector<double>& rho_grid,
                                        const std::vector<double>& nc_grid) {
    if (loads.size() != simulated_ctfs.size() || loads.empty())
        throw std::invalid_argument("calibrate_retardation: inconsistent inputs");

    // precompute the counting stage once per load
    struct Prepared {
        RainflowSet rainflow;
        std::vector<double> sigma_ar;
        OverloadSet overloads;
        std::vector<double> counts;
    };
    std::vector<Prepared> prep;
    for (const auto& load : loads) {
        Prepared p;
        const auto reversals = find_reversals(load);
        p.rainflow = rainflow_count(reversals);
        p.sigma_ar = mean_stress_correct(p.rainflow, config.walker);
        p.overloads = identify_overloads(reversals, p.rainflow, p.sigma_ar);
        for (const auto& c : p.rainflow.cycles) p.counts.push_back(c.count);
        prep.push_back(std::move(p));
    }

    RetardationParams best = config.retardation;
    double best_err = std::numeric_limits<double>::infinity();
    for (double rho : rho_grid) {
        for (double nc : nc_grid) {
            RetardationParams params = config.retardation;
            params.rho_ol = rho;
            params.n_c = nc;
            double err = 0.0;
            for (std::size_t i = 0; i < prep.size(); ++i) {
                const auto retarded =
                    apply_retardation(prep[i].rainflow, prep[i].sigma_ar, prep[i].overloads, params);
                const double ctf =
                    miner_life_discrete(retarded.sigma_rar, prep[i].counts, config.sn).ctf;
                err += std::abs(std::log(ctf / simulated_ctfs[i]));
            }
            if (err < best_err) {
                best_err = err;
                best = params;
            }
        }
    }
    return best;
}

std::vector<TrainingRow> training_rows_from_reports(const std::vector<CaseReport>& reports) {
    std::vector<TrainingRow> rows;
    for (const auto& r : reports) {
        const auto sim = r.ctf.find("simulated");
        const auto ret = r.ctf.find("retarded");
        if (sim == r.ctf.end() || ret == r.ctf.end() || sim->second <= 0.0) continue;
        rows.push_back({r.overload_moments, ret->second / sim->second});
    }
    return rows;
}

}  // namespace fatigue
