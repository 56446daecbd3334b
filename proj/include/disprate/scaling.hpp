#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "disprate/common.hpp"

namespace disprate::scaling {

struct ScalingSample {
    double parameter = 0.0;  // lambda or 2^k, > 0
    double value = 0.0;      // > 0
};

struct ScalingFit {
    double slope = 0.0;      // in log2/log2 units
    double intercept = 0.0;  // log2 value at log2 parameter = 0
    double max_residual = 0.0;
    int sample_count = 0;
};

// Ordinary least squares on (log2 parameter, log2 value).
// Throws std::domain_error on nonpositive data, and a degenerate-fit
// error when all parameters coincide.
ScalingFit fit_loglog_slope(std::span<const ScalingSample> samples);

struct LambdaSweepResult {
    ScalingFit fit;
    double predicted = 0.0;  // [a(1+eps)-2eps] * delta
    std::vector<ScalingSample> samples;
    std::vector<double> skipped_lambdas;  // failed calibration, excluded
};

// verify_lower_bound per lambda; fits sup|R| against lambda.
LambdaSweepResult sweep_lambda(double a, double delta, double epsilon,
                               std::span<const double> lambda_list, double phase_budget, int x_count);

struct BandSweepResult {
    ScalingFit extremizer_fit;
    ScalingFit random_fit;
    double predicted = 0.0;
    double embedding_epsilon = 0.0;
    std::vector<ScalingSample> extremizer_samples;
    std::vector<ScalingSample> random_samples;
    std::vector<int> skipped_k;
};

// For each k: ||sup_{0<t<1}|R_delta^a .| ||_{L2(B)} / ||.||_{L2} for the
// band-embedded bump family (lambda^(1+eps) = 2^k) and for the max over
// seeded random band profiles; fits both against 2^k.
BandSweepResult sweep_bands(double a, double delta, std::span<const int> k_list, int trials,
                            std::uint64_t seed);

}  // namespace disprate::scaling
