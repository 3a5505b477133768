#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "fatigue/correction.hpp"

using namespace fatigue;

TEST_CASE("published polynomial spot values") {
    CHECK(lambda_from_paper({0.0, 0.0, 0.0, 0.0}) == doctest::Approx(-27.4));
    CHECK(lambda_from_paper({1.0, 0.0, 0.0, 0.0}) == doctest::Approx(-27.4 + 2.83));
    CHECK(lambda_from_paper({1.0, 1.0, 1.0, 1.0}) == doctest::Approx(-23.222));
    // independent evaluation at an arbitrary point
    const std::array<double, 4> m{0.3, 0.7, -0.2, 1.4};
    const double expect = -27.4 + 2.83 * 0.3 + 5.82 * 0.7 - 11.5 * (-0.2) - 1.13 * 1.4 -
                          0.468 * 0.3 * 0.7 - 1.45 * 0.3 * (-0.2) + 0.224 * 0.3 * 1.4 +
                          0.907 * 0.7 * (-0.2) - 0.745 * 0.7 * 1.4 + 9.69 * (-0.2) * 1.4;
    CHECK(lambda_from_paper(m) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("feature vector layout") {
    const auto f = correction_features({2.0, 3.0, 5.0, 7.0});
    CHECK(f[0] == 1.0);
    CHECK(f[1] == 2.0);
    CHECK(f[2] == 3.0);
    CHECK(f[3] == 5.0);
    CHECK(f[4] == 7.0);
    CHECK(f[5] == 6.0);    // m1 m2
    CHECK(f[6] == 10.0);   // m1 m3
    CHECK(f[7] == 14.0);   // m1 m4
    CHECK(f[8] == 15.0);   // m2 m3
    CHECK(f[9] == 21.0);   // m2 m4
    CHECK(f[10] == 35.0);  // m3 m4
}

TEST_CASE("lambda clamp guards the pipeline range") {
    CHECK(clamp_lambda(-3.0) == 0.05);
    CHECK(clamp_lambda(1.7) == 1.7);
    CHECK(clamp_lambda(100.0) == 20.0);
    CHECK(clamp_lambda(0.5, 1.0, 2.0) == 1.0);
}

namespace {

OverloadSet make_set(const std::vector<std::pair<std::size_t, double>>& entries) {
    OverloadSet set;
    for (auto [idx, sol] : entries) {
        OverloadRecord r;
        r.reversal_index = idx;
        r.sigma_ol = sol;
        set.records.push_back(r);
    }
    return set;
}

}  // namespace

TEST_CASE("overload moments are raw moments of the scaled amplitudes") {
    const auto set = make_set({{0, 70.0}, {10, 140.0}, {20, 35.0}});
    const auto stats = overload_moments(set, 70.0, 4);
    // scaled amplitudes: 1, 2, 0.5
    CHECK(stats.moments[0] == doctest::Approx((1.0 + 2.0 + 0.5) / 3.0));
    CHECK(stats.moments[1] == doctest::Approx((1.0 + 4.0 + 0.25) / 3.0));
    CHECK(stats.moments[2] == doctest::Approx((1.0 + 8.0 + 0.125) / 3.0));
    CHECK(stats.moments[3] == doctest::Approx((1.0 + 16.0 + 0.0625) / 3.0));
    CHECK_THROWS_AS(overload_moments(OverloadSet{}, 70.0, 4), std::invalid_argument);
}

TEST_CASE("occurrence-rate curve inverts the mean reversal gap per level") {
    // two well separated amplitude clusters
    const auto set = make_set({{0, 10.0}, {100, 10.5}, {300, 10.2}, {40, 90.0}, {640, 90.5}});
    auto sorted = set;
    std::sort(sorted.records.begin(), sorted.records.end(),
              [](const auto& a, const auto& b) { return a.reversal_index < b.reversal_index; });
    const auto curve = overload_rate_curve(sorted, 2);
    REQUIRE(curve.size() == 2);
    // low cluster: gaps 100 and 200 -> mean 150
    CHECK(curve[0].nu_ol == doctest::Approx(1.0 / 150.0));
    // high cluster: single gap 600
    CHECK(curve[1].nu_ol == doctest::Approx(1.0 / 600.0));
    CHECK(curve[0].sigma_ol_mid < curve[1].sigma_ol_mid);

    SUBCASE("levels with fewer than two members are dropped") {
        const auto sparse = overload_rate_curve(sorted, 64);
        for (const auto& e : sparse) CHECK(e.nu_ol > 0.0);
        CHECK(sparse.size() <= 2);
    }
    CHECK_THROWS_AS(overload_rate_curve(make_set({{0, 1.0}}), 4), std::invalid_argument);
}

TEST_CASE("least squares recovers a planted coefficient vector") {
    CorrectionModel planted;
    for (std::size_t j = 0; j < kCorrectionFeatures; ++j)
        planted.beta[j] = std::sin(static_cast<double>(j) + 1.0) * 4.0;

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 2.0);
    std::vector<TrainingRow> rows(60);
    for (auto& row : rows) {
        for (auto& m : row.moments) m = u(rng);
        row.lambda_target = evaluate_lambda(planted, row.moments);
    }

    const auto fitted = fit_correction(rows);
    for (std::size_t j = 0; j < kCorrectionFeatures; ++j)
        CHECK(fitted.beta[j] == doctest::Approx(planted.beta[j]).epsilon(1e-8));
}

TEST_CASE("degenerate designs raise a singular fit error") {
    std::vector<TrainingRow> rows(20);
    for (auto& row : rows) {
        row.moments = {1.0, 2.0, 3.0, 4.0};  // identical -> rank 1
        row.lambda_target = 5.0;
    }
    CHECK_THROWS_AS(fit_correction(rows), SingularFitError);
    try {
        fit_correction(rows);
    } catch (const SingularFitError& e) {
        CHECK(e.condition_number > 1e10);
    }
    CHECK_THROWS_AS(fit_correction(std::vector<TrainingRow>(5)), std::invalid_argument);
}
