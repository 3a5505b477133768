#include "fatigue/correction.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace fatigue {

CorrectionModel paper_correction_model() {
    CorrectionModel m;
    m.beta = {-27.4, 2.83, 5.82, -11.5, -1.13, -0.468, -1.45, 0.224, 0.907, -0.745, 9.69};
    return m;
}

std::array<double, kCorrectionFeatures> correction_features(const std::array<double, 4>& m) {
    return {1.0,  m[0],        m[1],        m[2],        m[3],        m[0] * m[1],
            m[0] * m[2], m[0] * m[3], m[1] * m[2], m[1] * m[3], m[2] * m[3]};
}

std::vector<OverloadStatistics::RateEntry> overload_rate_curve(const OverloadSet& overloads,
                                                               std::size_t n_levels) {
    if (overloads.size() < 2)
        throw std::invalid_argument("overload_rate_curve: need >= 2 overloads");
    if (n_levels < 1) throw std::invalid_argument("overload_rate_curve: n_levels >= 1");

    double lo = overloads.records.front().sigma_ol, hi = lo;
    for (const auto& r : overloads.records) {
        lo = std::min(lo, r.sigma_ol);
        hi = std::max(hi, r.sigma_ol);
    }
    const double width = (hi > lo ? hi - lo : 1.0) / static_cast<double>(n_levels);

    // per level: reversal indices of member overloads, in occurrence order
    std::vector<std::vector<std::size_t>> members(n_levels);
    for (const auto& r : overloads.records) {
        auto k = static_cast<std::size_t>((r.sigma_ol - lo) / width);
        if (k >= n_levels) k = n_levels - 1;
        members[k].push_back(r.reversal_index);
    }

    std::vector<OverloadStatistics::RateEntry> curve;
    for (std::size_t k = 0; k < n_levels; ++k) {
        if (members[k].size() < 2) continue;  // mean gap undefined
        double gap_sum = 0.0;
        for (std::size_t j = 1; j < members[k].size(); ++j)
            gap_sum += static_cast<double>(members[k][j] - members[k][j - 1]);
        const double mean_gap = gap_sum / static_cast<double>(members[k].size() - 1);
        curve.push_back({lo + width * (static_cast<double>(k) + 0.5), 1.0 / mean_gap});
    }
    return curve;
}

OverloadStatistics overload_moments(const OverloadSet& overloads, double amplitude_scale,
                                    std::size_t n_levels) {
    if (overloads.empty()) throw std::invalid_argument("overload_moments: empty set");
    OverloadStatistics stats;
    const double n = static_cast<double>(overloads.size());
    for (const auto& r : overloads.records) {
        const double s = r.sigma_ol / amplitude_scale;
        double p = 1.0;
        for (std::size_t order = 0; order < 4; ++order) {
            p *= s;
            stats.moments[order] += p / n;
        }
    }
    if (overloads.size() >= 2) stats.nu_ol_curve = overload_rate_curve(overloads, n_levels);
    return stats;
}

double evaluate_lambda(const CorrectionModel& model, const std::array<double, 4>& moments) {
    const auto f = correction_features(moments);
    double lambda = 0.0;
    for (std::size_t i = 0; i < kCorrectionFeatures; ++i) lambda += model.beta[i] * f[i];
    return lambda;
}

double lambda_from_paper(const std::array<double, 4>& moments) {
    return evaluate_lambda(paper_correction_model(), moments);
}

double clamp_lambda(double lambda, double lo, double hi) {
    return std::clamp(lambda, lo, hi);
}

CorrectionModel fit_correction(const std::vector<TrainingRow>& training) {
    if (training.size() < kCorrectionFeatures)
        throw std::invalid_argument("fit_correction: need >= 11 training rows");

    Eigen::MatrixXd M(training.size(), kCorrectionFeatures);
    Eigen::VectorXd y(training.size());
    for (std::size_t i = 0; i < training.size(); ++i) {
        const auto f = correction_features(training[i].moments);
        for (std::size_t j = 0; j < kCorrectionFeatures; ++j)
            M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = f[j];
        y(static_cast<Eigen::Index>(i)) = training[i].lambda_target;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double cond = svd.singularValues()(0) /
                        svd.singularValues()(svd.singularValues().size() - 1);
    svd.setThreshold(1e-10);
    if (svd.rank() < static_cast<Eigen::Index>(kCorrectionFeatures))
        throw SingularFitError("fit_correction: rank-deficient design matrix", cond);

    const Eigen::VectorXd beta = svd.solve(y);
    CorrectionModel model;
    for (std::size_t j = 0; j < kCorrectionFeatures; ++j)
        model.beta[j] = beta(static_cast<Eigen::Index>(j));
    return model;
}

}  // namespace fatigue
