#include "fatigue/io.hpp"

#include <fstream>
#include <json.hpp>

namespace fatigue::io {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out.precision(17);
    return out;
}

const char* class_name(OverloadClass c) {
    switch (c) {
        case OverloadClass::A: return "A";
        case OverloadClass::B: return "B";
        case OverloadClass::C: return "C";
        case OverloadClass::D: return "D";
    }
    return "?";
}

}  // namespace

std::string source_name(LoadSource source) {
    switch (source) {
        case LoadSource::chaotic: return "chaotic";
        case LoadSource::surrogate: return "surrogate";
        case LoadSource::external: return "external";
    }
    return "external";
}

LoadSource source_from_name(const std::string& name) {
    if (name == "chaotic") return LoadSource::chaotic;
    if (name == "surrogate") return LoadSource::surrogate;
    if (name == "external") return LoadSource::external;
    throw std::invalid_argument("unknown load source: " + name);
}

void write_load_csv(const std::filesystem::path& path, const LoadHistory& load,
                    std::uint64_t seed) {
    auto out = open_out(path);
    out << "index,stress_mpa\n";
    for (std::size_t i = 0; i < load.size(); ++i) out << i << ',' << load.samples[i] << '\n';

    nlohmann::json meta{{"label", load.label},
                        {"dt", load.dt},
                        {"source", source_name(load.source)},
                        {"seed", seed}};
    auto meta_path = path;
    meta_path += ".meta.json";
    open_out(meta_path) << meta.dump(2) << '\n';
}

LoadHistory read_load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());

    LoadHistory load;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("malformed load CSV row: " + line);
        load.samples.push_back(std::stod(line.substr(comma + 1)));
    }
    if (load.samples.empty()) throw std::runtime_error("empty load CSV: " + path.string());

    auto meta_path = path;
    meta_path += ".meta.json";
    if (std::ifstream meta_in(meta_path); meta_in) {
        const auto meta = nlohmann::json::parse(meta_in);
        load.label = meta.value("label", std::string{});
        load.dt = meta.value("dt", 1.0);
        load.source = source_from_name(meta.value("source", std::string{"external"}));
    }
    return load;
}

void write_rainflow_csv(const std::filesystem::path& path, const RainflowSet& set) {
    auto out = open_out(path);
    out << "onset_idx,end_idx,range_mpa,mean_mpa,count\n";
    for (const auto& c : set.cycles)
        out << c.onset_index << ',' << c.end_index << ',' << c.range << ',' << c.mean << ','
            << c.count << '\n';
}

void write_overloads_csv(const std::filesystem::path& path, const OverloadSet& set) {
    auto out = open_out(path);
    out << "reversal_idx,class,sigma_ol_mpa,alpha\n";
    for (const auto& r : set.records)
        out << r.reversal_index << ',' << class_name(r.cls) << ',' << r.sigma_ol << ','
            << r.alpha << '\n';
}

void write_retarded_csv(const std::filesystem::path& path, const RainflowSet& set,
                        const RetardedAmplitudeSeries& series) {
    auto out = open_out(path);
    out << "onset_idx,sigma_ar_mpa,sigma_rar_mpa\n";
    for (std::size_t i = 0; i < set.cycles.size(); ++i)
        out << set.cycles[i].onset_index << ',' << series.sigma_ar[i] << ','
            << series.sigma_rar[i] << '\n';
}

void write_pdf_csv(const std::filesystem::path& path, const AmplitudePdf& pdf) {
    auto out = open_out(path);
    out << "sigma_mpa,density_per_mpa\n";
    for (std::size_t b = 0; b < pdf.density.size(); ++b)
        out << 0.5 * (pdf.bin_edges[b] + pdf.bin_edges[b + 1]) << ',' << pdf.density[b] << '\n';
}

void write_correction_model(const std::filesystem::path& path, const CorrectionModel& model,
                            const std::string& training_hash) {
    nlohmann::json j{{"feature_spec", "poly2-linear-interactions"},
                     {"beta", model.beta},
                     {"training_hash", training_hash}};
    open_out(path) << j.dump(2) << '\n';
}

CorrectionModel read_correction_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    const auto j = nlohmann::json::parse(in);
    const auto beta = j.at("beta").get<std::vector<double>>();
    if (beta.size() != kCorrectionFeatures)
        throw std::runtime_error("correction model: expected 11 coefficients");
    CorrectionModel model;
    std::copy(beta.begin(), beta.end(), model.beta.begin());
    return model;
}

}  // namespace fatigue::io
