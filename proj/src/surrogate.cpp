#include "fatigue/surrogate.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <random>

namespace fatigue {

namespace {

std::mutex fftw_plan_mutex;  // FFTW planning is not thread-safe

std::vector<std::complex<double>> rfft(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> spec(n / 2 + 1);
    std::vector<double> in(x);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                    reinterpret_cast<fftw_complex*>(spec.data()), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fftw_destroy_plan(plan);
    }
    return spec;
}

std::vector<double> irfft(std::vector<std::complex<double>> spec, std::size_t n) {
    std::vector<double> out(n);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        plan = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                    reinterpret_cast<fftw_complex*>(spec.data()), out.data(),
                                    FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fftw_destroy_plan(plan);
    }
    for (double& v : out) v /= static_cast<double>(n);
    return out;
}

}  // namespace

std::vector<double> spectral_magnitudes(const std::vector<double>& x) {
    const auto spec = rfft(x);
    std::vector<double> mag(spec.size());
    std::transform(spec.begin(), spec.end(), mag.begin(),
                   [](const std::complex<double>& c) { return std::abs(c); });
    return mag;
}

double psd_error(const std::vector<double>& mag_a, const std::vector<double>& mag_b) {
    if (mag_a.size() != mag_b.size()) throw std::invalid_argument("psd_error: length mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t k = 1; k < mag_a.size(); ++k) {  // DC excluded
        num += (mag_a[k] - mag_b[k]) * (mag_a[k] - mag_b[k]);
        den += mag_b[k] * mag_b[k];
    }
    return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

LoadHistory random_permutation(const LoadHistory& load, std::uint64_t seed) {
    if (load.samples.empty()) throw std::invalid_argument("random_permutation: empty input");
    LoadHistory out = load;
    std::mt19937_64 rng(seed);
    std::shuffle(out.samples.begin(), out.samples.end(), rng);
    return out;
}

std::vector<double> spectral_match(const std::vector<double>& candidate,
                                   const std::vector<double>& reference_magnitudes) {
    const std::size_t n = candidate.size();
    if (reference_magnitudes.size() != n / 2 + 1)
        throw std::invalid_argument("spectral_match: length mismatch");
    auto spec = rfft(candidate);
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const double mag = std::abs(spec[k]);
        if (mag > 0.0) {
            spec[k] *= reference_magnitudes[k] / mag;
        } else {
            spec[k] = {reference_magnitudes[k], 0.0};  // zero bin: arbitrary zero phase
        }
    }
    // DC and (for even n) Nyquist must stay real for a real output
    spec.front() = {std::copysign(reference_magnitudes.front(), spec.front().real()), 0.0};
    if (n % 2 == 0) spec.back() = {std::copysign(reference_magnitudes.back(), spec.back().real()), 0.0};
    return irfft(std::move(spec), n);
}

std::vector<double> amplitude_match(const std::vector<double>& candidate,
                                    const std::vector<double>& reference) {
    if (candidate.size() != reference.size())
        throw std::invalid_argument("amplitude_match: length mismatch");
    const std::size_t n = candidate.size();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return candidate[a] < candidate[b]; });

    std::vector<double> sorted_ref(reference);
    std::sort(sorted_ref.begin(), sorted_ref.end());

    std::vector<double> out(n);
    for (std::size_t r = 0; r < n; ++r) out[order[r]] = sorted_ref[r];
    return out;
}

SurrogateResult generate_surrogate(const LoadHistory& load, const SurrogateConfig& config) {
    if (load.size() < 4) throw std::invalid_argument("generate_surrogate: need >= 4 samples");
    if (config.max_iterations < 1 || config.psd_tolerance <= 0.0)
        throw std::invalid_argument("generate_surrogate: bad config");

    const auto ref_mag = spectral_magnitudes(load.samples);

    SurrogateResult result;
    std::vector<double> xp = random_permutation(load, config.seed).samples;
    std::vector<double> xf;

    for (std::size_t it = 1; it <= config.max_iterations; ++it) {
        xf = spectral_match(xp, ref_mag);
        xp = amplitude_match(xf, load.samples);
        result.iterations_used = it;
        result.final_psd_error = psd_error(spectral_magnitudes(xp), ref_mag);
        if (result.final_psd_error < config.psd_tolerance) {
            result.converged = true;
            break;
        }
    }

    result.amplitude_matched = {std::move(xp), load.dt, load.label + "s", LoadSource::surrogate};
    result.frequency_matched = {std::move(xf), load.dt, load.label + "sf", LoadSource::surrogate};
    return result;
}

}  // namespace fatigue
