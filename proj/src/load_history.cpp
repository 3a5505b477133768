#include "fatigue/load_history.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace fatigue {

LoadStatistics compute_statistics(const LoadHistory& load) {
    const auto& x = load.samples;
    if (x.size() < 2) throw std::invalid_argument("compute_statistics: need >= 2 samples");

    const double n = static_cast<double>(x.size());
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;

    double m2 = 0.0, m3 = 0.0, m4 = 0.0, sq = 0.0;
    for (double v : x) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
        sq += v * v;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;

    LoadStatistics s;
    s.mean = mean;
    s.std = std::sqrt(m2);
    s.rms = std::sqrt(sq / n);
    if (s.std > 0.0) {
        s.skewness = m3 / (m2 * s.std);
        s.kurtosis = m4 / (m2 * m2);
        s.higher_moments_valid = true;
    }
    return s;
}

LoadHistory normalize_to_stress(const std::vector<double>& raw, double target_mean,
                                double target_std, const std::string& label, double dt,
                                LoadSource source) {
    if (raw.size() < 2) throw std::invalid_argument("normalize_to_stress: need >= 2 samples");
    const double n = static_cast<double>(raw.size());
    const double mean = std::accumulate(raw.begin(), raw.end(), 0.0) / n;
    double m2 = 0.0;
    for (double v : raw) m2 += (v - mean) * (v - mean);
    const double std_dev = std::sqrt(m2 / n);
    if (std_dev == 0.0) throw std::domain_error("normalize_to_stress: zero-variance input");

    LoadHistory out;
    out.samples.resize(raw.size());
    const double scale = target_std / std_dev;
    std::transform(raw.begin(), raw.end(), out.samples.begin(),
                   [&](double v) { return target_mean + scale * (v - mean); });
    out.dt = dt;
    out.label = label;
    out.source = source;
    return out;
}

std::vector<LoadHistory> select_segments(const LoadHistory& load, std::size_t n_segments,
                                         std::size_t segment_len, std::uint64_t seed) {
    if (n_segments < 1) throw std::invalid_argument("select_segments: n_segments >= 1");
    if (segment_len == 0 || segment_len > load.size())
        throw std::invalid_argument("select_segments: segment_len out of range");
    const std::size_t n_offsets = load.size() - segment_len + 1;
    if (n_segments > n_offsets)
        throw std::length_error("select_segments: not enough data for requested unique segments");

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> offsets;
    if (n_offsets <= 4 * n_segments) {
        offsets.resize(n_offsets);
        std::iota(offsets.begin(), offsets.end(), std::size_t{0});
        std::shuffle(offsets.begin(), offsets.end(), rng);
        offsets.resize(n_segments);
    } else {
        // rejection sampling; cheap at these densities
        std::uniform_int_distribution<std::size_t> dist(0, n_offsets - 1);
        while (offsets.size() < n_segments) {
            const std::size_t o = dist(rng);
            if (std::find(offsets.begin(), offsets.end(), o) == offsets.end())
                offsets.push_back(o);
        }
    }

    std::vector<LoadHistory> segments;
    segments.reserve(n_segments);
    for (std::size_t i = 0; i < n_segments; ++i) {
        LoadHistory seg;
        seg.samples.assign(load.samples.begin() + static_cast<std::ptrdiff_t>(offsets[i]),
                           load.samples.begin() + static_cast<std::ptrdiff_t>(offsets[i] + segment_len));
        seg.dt = load.dt;
        seg.label = load.label + "#" + std::to_string(i);
        seg.source = load.source;
        segments.push_back(std::move(seg));
    }
    return segments;
}

}  // namespace fatigue
