#include "fatigue/life.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fatigue/surrogate.hpp"  // spectral_magnitudes

namespace fatigue {

namespace {

double integrate_weighted(const AmplitudePdf& pdf, double k) {
    double integral = 0.0;
    for (std::size_t b = 0; b + 1 < pdf.bin_edges.size(); ++b) {
        const double mid = 0.5 * (pdf.bin_edges[b] + pdf.bin_edges[b + 1]);
        const double width = pdf.bin_edges[b + 1] - pdf.bin_edges[b];
        integral += std::pow(mid, k) * pdf.density[b] * width;
    }
    return integral;
}

}  // namespace

AmplitudePdf estimate_pdf(const std::vector<double>& amplitudes, const PdfConfig& config) {
    if (amplitudes.empty()) throw std::invalid_argument("estimate_pdf: empty input");
    if (config.bins < 1) throw std::invalid_argument("estimate_pdf: bins >= 1 required");

    const double max_amp = *std::max_element(amplitudes.begin(), amplitudes.end());
    const double hi = max_amp > 0.0 ? max_amp : 1.0;
    const double width = hi / static_cast<double>(config.bins);

    AmplitudePdf pdf;
    pdf.estimator = config.estimator;
    pdf.bin_edges.resize(config.bins + 1);
    for (std::size_t b = 0; b <= config.bins; ++b)
        pdf.bin_edges[b] = width * static_cast<double>(b);
    pdf.density.assign(config.bins, 0.0);

    if (config.estimator == PdfEstimator::histogram) {
        const double n = static_cast<double>(amplitudes.size());
        for (double a : amplitudes) {
            auto b = static_cast<std::size_t>(a / width);
            if (b >= config.bins) b = config.bins - 1;
            pdf.density[b] += 1.0 / (n * width);
        }
    } else {
        double h = config.kde_bandwidth;
        if (h <= 0.0) {
            // Silverman
            const double n = static_cast<double>(amplitudes.size());
            const double mean =
                std::accumulate(amplitudes.begin(), amplitudes.end(), 0.0) / n;
            double m2 = 0.0;
            for (double a : amplitudes) m2 += (a - mean) * (a - mean);
            const double sd = std::sqrt(m2 / n);
            h = 1.06 * sd * std::pow(n, -0.2);
            if (h <= 0.0) h = 0.1 * width + 1e-12;
        }
        const double norm = 1.0 / (std::sqrt(2.0 * M_PI) * h * static_cast<double>(amplitudes.size()));
        for (std::size_t b = 0; b < config.bins; ++b) {
            const double mid = 0.5 * (pdf.bin_edges[b] + pdf.bin_edges[b + 1]);
            double d = 0.0;
            for (double a : amplitudes) {
                const double u = (mid - a) / h;
                d += std::exp(-0.5 * u * u);
            }
            pdf.density[b] = norm * d;
        }
        // renormalize over the truncated support [0, max]
        double mass = 0.0;
        for (double d : pdf.density) mass += d * width;
        if (mass > 0.0)
            for (double& d : pdf.density) d /= mass;
    }
    return pdf;
}

double total_variation_distance(const std::vector<double>& a, const std::vector<double>& b,
                                std::size_t bins) {
    if (a.empty() || b.empty()) throw std::invalid_argument("total_variation_distance: empty input");
    const double hi = std::max(*std::max_element(a.begin(), a.end()),
                               *std::max_element(b.begin(), b.end()));
    const double width = (hi > 0.0 ? hi : 1.0) / static_cast<double>(bins);
    std::vector<double> pa(bins, 0.0), pb(bins, 0.0);
    auto fill = [&](const std::vector<double>& x, std::vector<double>& p) {
        for (double v : x) {
            auto k = static_cast<std::size_t>(std::max(0.0, v) / width);
            if (k >= bins) k = bins - 1;
            p[k] += 1.0 / static_cast<double>(x.size());
        }
    };
    fill(a, pa);
    fill(b, pb);
    double tv = 0.0;
    for (std::size_t k = 0; k < bins; ++k) tv += std::abs(pa[k] - pb[k]);
    return 0.5 * tv;
}

LifeEstimate miner_life(const AmplitudePdf& pdf, const SnCurve& sn, const RateEstimates& rate) {
    const double integral = integrate_weighted(pdf, sn.k);
    LifeEstimate est;
    est.method = LifeMethod::miner;
    if (integral <= 0.0) {
        est.infinite_life = true;
        return est;
    }
    est.damage_per_block = rate.nu_upcross * integral / sn.C;
    est.ctf = sn.C / integral;
    return est;
}

LifeEstimate miner_life_discrete(const std::vector<double>& amplitudes,
                                 const std::vector<double>& counts, const SnCurve& sn) {
    if (amplitudes.size() != counts.size())
        throw std::invalid_argument("miner_life_discrete: size mismatch");
    double damage = 0.0, cycles = 0.0;
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        damage += counts[i] * std::pow(amplitudes[i], sn.k) / sn.C;
        cycles += counts[i];
    }
    LifeEstimate est;
    est.method = LifeMethod::miner;
    est.damage_per_block = damage;
    if (damage <= 0.0) {
        est.infinite_life = true;
        return est;
    }
    est.ctf = cycles / damage;
    return est;
}

LifeEstimate corrected_life(const AmplitudePdf& pdf_rar, const SnCurve& sn,
                            const RateEstimates& rate, double lambda_ol) {
    if (lambda_ol <= 0.0) throw std::invalid_argument("corrected_life: lambda_ol > 0 required");
    const double integral = integrate_weighted(pdf_rar, sn.k);
    LifeEstimate est;
    est.method = LifeMethod::retarded_corrected;
    if (integral <= 0.0) {
        est.infinite_life = true;
        return est;
    }
    est.damage_per_block = lambda_ol * rate.nu_peak * integral / sn.C;
    est.ctf = sn.C / (lambda_ol * integral);
    return est;
}

LifeEstimate corrected_life_discrete(const std::vector<double>& amplitudes,
                                     const std::vector<double>& counts, const SnCurve& sn,
                                     double lambda_ol) {
    if (lambda_ol <= 0.0)
        throw std::invalid_argument("corrected_life_discrete: lambda_ol > 0 required");
    LifeEstimate est = miner_life_discrete(amplitudes, counts, sn);
    est.method = LifeMethod::retarded_corrected;
    est.damage_per_block *= lambda_ol;
    if (!est.infinite_life) est.ctf /= lambda_ol;
    return est;
}

RateEstimates count_rates(const LoadHistory& load) {
    const auto& x = load.samples;
    if (x.size() < 3) throw std::invalid_argument("count_rates: need >= 3 samples");

    RateEstimates r;
    int prev_dir = 0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double d = x[i] - x[i - 1];
        if (d == 0.0) continue;
        const int dir = d > 0.0 ? 1 : -1;
        if (prev_dir == 1 && dir == -1) r.nu_peak += 1.0;
        prev_dir = dir;
    }
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    for (std::size_t i = 1; i < x.size(); ++i)
        if (x[i - 1] < mean && x[i] >= mean) r.nu_upcross += 1.0;
    return r;
}

LifeEstimate spectral_baseline_life(const LoadHistory& load, const SnCurve& sn,
                                    const SpectralConfig& config) {
    const auto& x = load.samples;
    const std::size_t nseg = std::min(config.segment_length, x.size());
    if (nseg < 8) throw std::invalid_argument("spectral_baseline_life: series too short");

    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());

    // Welch: Hann window, 50% overlap
    std::vector<double> window(nseg);
    for (std::size_t i = 0; i < nseg; ++i)
        window[i] = 0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(i) /
                                          static_cast<double>(nseg - 1)));

    std::vector<double> psd(nseg / 2 + 1, 0.0);
    std::size_t n_blocks = 0;
    std::vector<double> seg(nseg);
    for (std::size_t start = 0; start + nseg <= x.size(); start += nseg / 2) {
        for (std::size_t i = 0; i < nseg; ++i) seg[i] = (x[start + i] - mean) * window[i];
        const auto mag = spectral_magnitudes(seg);
        for (std::size_t k = 0; k < psd.size(); ++k) psd[k] += mag[k] * mag[k];
        ++n_blocks;
    }
    if (n_blocks == 0) throw std::invalid_argument("spectral_baseline_life: no full segment");

    // Shape from Welch; the absolute scale is anchored so that m0 equals the
    // signal variance.
    std::vector<double> freq(psd.size());
    const double df = 1.0 / (static_cast<double>(nseg) * load.dt);
    for (std::size_t k = 0; k < psd.size(); ++k) freq[k] = df * static_cast<double>(k);

    double raw0 = 0.0, raw2 = 0.0, raw4 = 0.0;
    for (std::size_t k = 0; k < psd.size(); ++k) {
        raw0 += psd[k];
        raw2 += psd[k] * freq[k] * freq[k];
        raw4 += psd[k] * freq[k] * freq[k] * freq[k] * freq[k];
    }
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= static_cast<double>(x.size());
    if (raw0 <= 0.0 || raw2 <= 0.0 || var <= 0.0)
        throw std::domain_error("spectral_baseline_life: degenerate spectrum");

    const double m0 = var;
    const double m2 = var * raw2 / raw0;
    const double m4 = var * raw4 / raw0;

    const double block_time = static_cast<double>(x.size()) * load.dt;
    const double nu_up_block = std::sqrt(m2 / m0) * block_time;
    const double nu_peak_block = std::sqrt(m4 / m2) * block_time;

    double amp_moment = std::pow(2.0 * m0, sn.k / 2.0);  // equivalent amplitude sqrt(2 m0)
    if (config.amplitude_model == SpectralAmplitudeModel::rayleigh)
        amp_moment *= std::tgamma(1.0 + sn.k / 2.0);

    LifeEstimate est;
    est.method = LifeMethod::spectral_baseline;
    est.damage_per_block = nu_up_block * amp_moment / sn.C;
    // cycles-to-failure counts peaks; for narrow-band loads nu_p == nu_up
    est.ctf = nu_peak_block / est.damage_per_block;
    return est;
}

}  // namespace fatigue
