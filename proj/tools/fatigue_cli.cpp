// Batch pipeline driver: generate loads, build surrogates, count cycles,
// apply retardation, estimate and simulate fatigue life, fit the overload
// rate correction model.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "fatigue/chaotic.hpp"
#include "fatigue/io.hpp"
#include "fatigue/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

struct CliOptions {
    std::string config_path;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    unsigned jobs = 1;
};

json load_config(const CliOptions& opt) {
    if (opt.config_path.empty()) return json::object();
    std::ifstream in(opt.config_path);
    if (!in) throw std::invalid_argument("config file not found: " + opt.config_path);
    return json::parse(in);
}

fatigue::PipelineConfig pipeline_config(const json& j) {
    fatigue::PipelineConfig cfg;
    if (j.contains("walker")) {
        cfg.walker.gamma = j["walker"].value("gamma", cfg.walker.gamma);
        if (j["walker"].value("operand", std::string{"mean"}) == "amplitude")
            cfg.walker.operand = fatigue::WalkerOperand::amplitude;
    }
    if (j.contains("retardation")) {
        const auto& r = j["retardation"];
        cfg.retardation.rho_ol = r.value("rho_ol", cfg.retardation.rho_ol);
        cfg.retardation.n_c = r.value("n_c", cfg.retardation.n_c);
        cfg.retardation.r = r.value("r", cfg.retardation.r);
    }
    if (j.contains("sn")) {
        cfg.sn.k = j["sn"].value("k", cfg.sn.k);
        cfg.sn.C = j["sn"].value("C", cfg.sn.C);
    }
    if (j.contains("geometry")) {
        const auto& g = j["geometry"];
        cfg.geometry.width = g.value("width", cfg.geometry.width);
        cfg.geometry.initial_a = g.value("initial_a", cfg.geometry.initial_a);
        cfg.geometry.final_a = g.value("final_a", cfg.geometry.final_a);
    }
    if (j.contains("growth")) {
        const auto& g = j["growth"];
        cfg.growth.paris.c = g.value("paris_c", cfg.growth.paris.c);
        cfg.growth.paris.m = g.value("paris_m", cfg.growth.paris.m);
        cfg.growth.delta_k_ic = g.value("delta_k_ic", cfg.growth.delta_k_ic);
    }
    if (j.contains("closure")) cfg.closure.c_f0 = j["closure"].value("c_f0", cfg.closure.c_f0);
    if (j.contains("sim")) {
        const auto& s = j["sim"];
        cfg.sim.r_h = s.value("r_h", cfg.sim.r_h);
        cfg.sim.k_op_relax_cycles = s.value("k_op_relax_cycles", cfg.sim.k_op_relax_cycles);
        cfg.sim.max_cycles = s.value("max_cycles", cfg.sim.max_cycles);
    }
    cfg.run_simulator = j.value("run_simulator", cfg.run_simulator);
    return cfg;
}

void for_each_parallel(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::mutex err_mutex;
    std::exception_ptr first_error;
    for (unsigned t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

int cmd_generate(const CliOptions& opt, const std::vector<std::string>& labels,
                 std::size_t n_samples, std::size_t n_segments, std::size_t segment_len) {
    fs::create_directories(opt.out_dir);
    for (const auto& label : labels) {
        const auto load = fatigue::generate_chaotic_load(label, n_samples, 25.0, 70.0, opt.seed);
        fatigue::io::write_load_csv(fs::path(opt.out_dir) / (label + ".csv"), load, opt.seed);
        if (n_segments > 0) {
            const auto segs = fatigue::select_segments(load, n_segments, segment_len, opt.seed);
            for (std::size_t i = 0; i < segs.size(); ++i)
                fatigue::io::write_load_csv(
                    fs::path(opt.out_dir) / (label + "_seg" + std::to_string(i) + ".csv"),
                    segs[i], opt.seed);
        }
        std::cout << "wrote " << label << " (" << load.size() << " samples)\n";
    }
    return 0;
}

int cmd_surrogate(const CliOptions& opt, const std::vector<std::string>& inputs,
                  const json& cfg_json) {
    fs::create_directories(opt.out_dir);
    fatigue::SurrogateConfig scfg;
    if (cfg_json.contains("surrogate")) {
        const auto& s = cfg_json["surrogate"];
        scfg.max_iterations = s.value("max_iterations", scfg.max_iterations);
        scfg.psd_tolerance = s.value("psd_tolerance", scfg.psd_tolerance);
    }
    scfg.seed = opt.seed;
    for (const auto& input : inputs) {
        const auto load = fatigue::io::read_load_csv(input);
        const auto result = fatigue::generate_surrogate(load, scfg);
        fatigue::io::write_load_csv(
            fs::path(opt.out_dir) / (result.amplitude_matched.label + ".csv"),
            result.amplitude_matched, opt.seed);
        std::cout << result.amplitude_matched.label << ": iterations="
                  << result.iterations_used << " psd_error=" << result.final_psd_error
                  << (result.converged ? "" : " (not converged)") << '\n';
    }
    return 0;
}

int run_case_files(const CliOptions& opt, const std::vector<std::string>& inputs,
                   const json& cfg_json, const std::string& model_path, bool simulate) {
    fs::create_directories(opt.out_dir);
    auto cfg = pipeline_config(cfg_json);
    cfg.run_simulator = simulate;
    std::optional<fatigue::CorrectionModel> model;
    if (!model_path.empty()) model = fatigue::io::read_correction_model(model_path);

    for_each_parallel(inputs.size(), opt.jobs, [&](std::size_t i) {
        const auto load = fatigue::io::read_load_csv(inputs[i]);
        const auto report = fatigue::run_case(load, cfg, model);
        const auto stem = fs::path(inputs[i]).stem().string();
        fatigue::write_case_report(fs::path(opt.out_dir) / (stem + ".report.json"), report);
    });
    std::cout << "wrote " << inputs.size() << " case report(s) to " << opt.out_dir << '\n';
    return 0;
}

int cmd_count(const CliOptions& opt, const std::vector<std::string>& inputs, const json& cfg_json) {
    fs::create_directories(opt.out_dir);
    const auto cfg = pipeline_config(cfg_json);
    for (const auto& input : inputs) {
        const auto load = fatigue::io::read_load_csv(input);
        const auto reversals = fatigue::find_reversals(load);
        const auto rainflow = fatigue::rainflow_count(reversals);
        const auto stem = fs::path(input).stem().string();
        fatigue::io::write_rainflow_csv(fs::path(opt.out_dir) / (stem + ".rainflow.csv"), rainflow);
        const auto sigma_ar = fatigue::mean_stress_correct(rainflow, cfg.walker);
        const auto overloads = fatigue::identify_overloads(reversals, rainflow, sigma_ar);
        fatigue::io::write_overloads_csv(fs::path(opt.out_dir) / (stem + ".overloads.csv"),
                                         overloads);
        std::cout << stem << ": " << rainflow.cycles.size() << " cycles, " << overloads.size()
                  << " overloads\n";
    }
    return 0;
}

int cmd_retard(const CliOptions& opt, const std::vector<std::string>& inputs, const json& cfg_json) {
    fs::create_directories(opt.out_dir);
    const auto cfg = pipeline_config(cfg_json);
    for (const auto& input : inputs) {
        const auto load = fatigue::io::read_load_csv(input);
        const auto reversals = fatigue::find_reversals(load);
        const auto rainflow = fatigue::rainflow_count(reversals);
        const auto sigma_ar = fatigue::mean_stress_correct(rainflow, cfg.walker);
        const auto overloads = fatigue::identify_overloads(reversals, rainflow, sigma_ar);
        const auto retarded =
            fatigue::apply_retardation(rainflow, sigma_ar, overloads, cfg.retardation);
        const auto stem = fs::path(input).stem().string();
        fatigue::io::write_retarded_csv(fs::path(opt.out_dir) / (stem + ".retarded.csv"),
                                        rainflow, retarded);

        fatigue::PdfConfig pdf_cfg = cfg.pdf;
        fatigue::io::write_pdf_csv(fs::path(opt.out_dir) / (stem + ".pdf_ar.csv"),
                                   fatigue::estimate_pdf(sigma_ar, pdf_cfg));
        fatigue::io::write_pdf_csv(fs::path(opt.out_dir) / (stem + ".pdf_rar.csv"),
                                   fatigue::estimate_pdf(retarded.sigma_rar, pdf_cfg));
        std::cout << stem << ": retarded series written\n";
    }
    return 0;
}

int cmd_fit(const CliOptions& opt, const std::vector<std::string>& report_paths,
            const std::string& model_out) {
    std::vector<fatigue::CaseReport> reports;
    for (const auto& p : report_paths) reports.push_back(fatigue::read_case_report(p));
    const auto rows = fatigue::training_rows_from_reports(reports);
    if (rows.size() < fatigue::kCorrectionFeatures)
        throw std::length_error("fit: need >= 11 usable case reports, have " +
                                std::to_string(rows.size()));
    const auto model = fatigue::fit_correction(rows);

    // hash of the training inputs for provenance
    std::size_t h = rows.size();
    for (const auto& row : rows)
        for (double v : {row.moments[0], row.moments[1], row.moments[2], row.moments[3],
                         row.lambda_target})
            h ^= std::hash<double>{}(v) + 0x9e3779b9 + (h << 6) + (h >> 2);
    std::ostringstream hash_hex;
    hash_hex << std::hex << h;

    fs::create_directories(fs::path(model_out).parent_path().empty()
                               ? fs::path(".")
                               : fs::path(model_out).parent_path());
    fatigue::io::write_correction_model(model_out, model, hash_hex.str());
    std::cout << "fitted correction model on " << rows.size() << " rows -> " << model_out << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fatigue life estimation under statistically similar variable amplitude loading"};
    app.require_subcommand(1);

    CliOptions opt;
    app.add_option("--config", opt.config_path, "JSON configuration file");
    app.add_option("--seed", opt.seed, "RNG seed");
    app.add_option("--out", opt.out_dir, "output directory");
    app.add_option("--jobs", opt.jobs, "parallel case workers");

    // generate
    auto* gen = app.add_subcommand("generate", "generate chaotic load histories");
    std::vector<std::string> gen_labels{"D1", "D2", "L1", "L3"};
    std::size_t gen_samples = 1 << 18, gen_segments = 0, gen_seglen = 1 << 15;
    gen->add_option("--cases", gen_labels, "case labels (D1 D2 L1 L3)");
    gen->add_option("--samples", gen_samples, "samples per case");
    gen->add_option("--segments", gen_segments, "number of random segments (0: none)");
    gen->add_option("--segment-len", gen_seglen, "segment length");

    // file-list subcommands
    std::vector<std::string> inputs;
    auto add_inputs = [&](CLI::App* sub) {
        sub->add_option("inputs", inputs, "load CSV files")->required();
    };
    auto* surr = app.add_subcommand("surrogate", "generate IAAFT surrogates");
    add_inputs(surr);
    auto* count = app.add_subcommand("count", "rainflow counting and overload identification");
    add_inputs(count);
    auto* retard = app.add_subcommand("retard", "retarded amplitude series and PDFs");
    add_inputs(retard);
    auto* estimate = app.add_subcommand("estimate", "life estimation without the simulator");
    add_inputs(estimate);
    auto* simulate = app.add_subcommand("simulate", "full pipeline including the FCP simulator");
    add_inputs(simulate);
    auto* pipeline = app.add_subcommand("pipeline", "full pipeline (alias of simulate)");
    add_inputs(pipeline);
    std::string model_path;
    for (auto* sub : {estimate, simulate, pipeline})
        sub->add_option("--model", model_path, "correction model JSON");

    // fit
    auto* fit = app.add_subcommand("fit", "fit the overload rate correction model");
    std::vector<std::string> report_paths;
    std::string model_out = "correction_model.json";
    fit->add_option("reports", report_paths, "case report JSON files")->required();
    fit->add_option("--model-out", model_out, "output model path");

    CLI11_PARSE(app, argc, argv);

    try {
        const json cfg_json = load_config(opt);
        if (gen->parsed()) return cmd_generate(opt, gen_labels, gen_samples, gen_segments, gen_seglen);
        if (surr->parsed()) return cmd_surrogate(opt, inputs, cfg_json);
        if (count->parsed()) return cmd_count(opt, inputs, cfg_json);
        if (retard->parsed()) return cmd_retard(opt, inputs, cfg_json);
        if (estimate->parsed()) return run_case_files(opt, inputs, cfg_json, model_path, false);
        if (simulate->parsed() || pipeline->parsed())
            return run_case_files(opt, inputs, cfg_json, model_path, true);
        if (fit->parsed()) return cmd_fit(opt, report_paths, model_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::length_error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return 0;
}
