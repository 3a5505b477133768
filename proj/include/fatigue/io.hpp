#pragma once

#include <filesystem>
#include <string>

#include "fatigue/correction.hpp"
#include "fatigue/life.hpp"
#include "fatigue/load_history.hpp"
#include "fatigue/overload.hpp"
#include "fatigue/rainflow.hpp"

namespace fatigue::io {

/// CSV `index,stress_mpa` plus a metadata sidecar `<path>.meta.json`
/// holding {label, dt, source, seed}.
void write_load_csv(const std::filesystem::path& path, const LoadHistory& load,
                    std::uint64_t seed);
LoadHistory read_load_csv(const std::filesystem::path& path);

/// CSV `onset_idx,end_idx,range_mpa,mean_mpa,count`.
void write_rainflow_csv(const std::filesystem::path& path, const RainflowSet& set);

/// CSV `reversal_idx,class,sigma_ol_mpa,alpha`.
void write_overloads_csv(const std::filesystem::path& path, const OverloadSet& set);

/// CSV `onset_idx,sigma_ar_mpa,sigma_rar_mpa`, aligned with the rainflow export.
void write_retarded_csv(const std::filesystem::path& path, const RainflowSet& set,
                        const RetardedAmplitudeSeries& series);

/// CSV `sigma_mpa,density_per_mpa` (bin midpoints).
void write_pdf_csv(const std::filesystem::path& path, const AmplitudePdf& pdf);

void write_correction_model(const std::filesystem::path& path, const CorrectionModel& model,
                            const std::string& training_hash);
CorrectionModel read_correction_model(const std::filesystem::path& path);

std::string source_name(LoadSource source);
LoadSource source_from_name(const std::string& name);

}  // namespace fatigue::io
