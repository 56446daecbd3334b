#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "disprate/common.hpp"
#include "disprate/scaling.hpp"

using namespace disprate;
using scaling::ScalingSample;

TEST_CASE("fit_loglog_slope: exact power laws") {
    std::vector<ScalingSample> lin = {{1.0, 2.0}, {2.0, 4.0}, {4.0, 8.0}};
    auto fit = scaling::fit_loglog_slope(lin);
    CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fit.max_residual <= 1e-12);
    CHECK(fit.sample_count == 3);

    std::vector<ScalingSample> quad = {{1.0, 1.0}, {2.0, 4.0}, {4.0, 16.0}};
    fit = scaling::fit_loglog_slope(quad);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(fit.max_residual <= 1e-12);

    std::vector<ScalingSample> constant = {{1.0, 0.7}, {2.0, 0.7}, {4.0, 0.7}};
    fit = scaling::fit_loglog_slope(constant);
    CHECK(fit.slope == doctest::Approx(0.0));
}

TEST_CASE("fit_loglog_slope: errors") {
    std::vector<ScalingSample> one = {{1.0, 2.0}};
    CHECK_THROWS_AS(scaling::fit_loglog_slope(one), std::invalid_argument);
    std::vector<ScalingSample> nonpos = {{1.0, 2.0}, {2.0, -1.0}};
    CHECK_THROWS_AS(scaling::fit_loglog_slope(nonpos), std::domain_error);
    std::vector<ScalingSample> dup = {{2.0, 2.0}, {2.0, 3.0}, {4.0, 5.0}};
    CHECK_THROWS_AS(scaling::fit_loglog_slope(dup), std::invalid_argument);
}

TEST_CASE("fit invariances: rescaling shifts only the intercept, order irrelevant") {
    std::vector<ScalingSample> base = {{1.0, 3.0}, {2.0, 5.0}, {4.0, 17.0}, {8.0, 31.0}};
    const auto fit0 = scaling::fit_loglog_slope(base);

    std::vector<ScalingSample> doubled = base;
    for (auto& s : doubled) s.value *= 2.0;
    const auto fit2 = scaling::fit_loglog_slope(doubled);
    CHECK(fit2.slope == doctest::Approx(fit0.slope).epsilon(1e-13));
    CHECK(fit2.intercept == doctest::Approx(fit0.intercept + 1.0).epsilon(1e-12));
    CHECK(fit2.max_residual == doctest::Approx(fit0.max_residual).epsilon(1e-10));

    std::vector<ScalingSample> shuffled = base;
    std::mt19937 rng(4);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto fits = scaling::fit_loglog_slope(shuffled);
    CHECK(fits.slope == doctest::Approx(fit0.slope).epsilon(1e-13));
    CHECK(fits.intercept == doctest::Approx(fit0.intercept).epsilon(1e-13));
}

TEST_CASE("sweep_lambda: degenerate delta=0 slope is flat") {
    std::vector<double> lambdas = {128.0, 256.0, 512.0, 1024.0};
    const auto res = scaling::sweep_lambda(2.0, 0.0, 1.0, lambdas, kPi / 6.0, 256);
    CHECK(res.predicted == 0.0);
    CHECK(res.skipped_lambdas.empty());
    REQUIRE(res.samples.size() == 4);
    CHECK(std::abs(res.fit.slope) <= 0.05);

    CHECK_THROWS_AS(scaling::sweep_lambda(2.0, 0.0, 1.0, std::vector<double>{128.0, 256.0}, kPi / 6.0, 256),
                    std::invalid_argument);
}

TEST_CASE("sweep_bands: small smoke sweep keeps random below extremizer") {
    std::vector<int> ks = {4, 5, 6};
    const auto res = scaling::sweep_bands(2.0, 0.0, ks, 8, 1);
    CHECK(res.skipped_k.empty());
    REQUIRE(res.extremizer_samples.size() == 3);
    REQUIRE(res.random_samples.size() == 3);
    CHECK(res.predicted == doctest::Approx(0.25));
    CHECK(res.random_fit.slope <= res.extremizer_fit.slope + 0.1);

    CHECK_THROWS_AS(scaling::sweep_bands(2.0, 0.0, ks, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(scaling::sweep_bands(2.0, 0.0, std::vector<int>{5, 4}, 8, 1), std::invalid_argument);
}
