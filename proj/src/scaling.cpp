#include "disprate/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "disprate/counterexample.hpp"
#include "disprate/maximal.hpp"

namespace disprate::scaling {

ScalingFit fit_loglog_slope(std::span<const ScalingSample> samples) {
    const std::size_t n = samples.size();
    if (n < 2) throw std::invalid_argument("fit_loglog_slope: need at least 2 samples");

    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(samples[i].parameter > 0.0) || !(samples[i].value > 0.0))
            throw std::domain_error("fit_loglog_slope: parameters and values must be positive");
        xs[i] = std::log2(samples[i].parameter);
        ys[i] = std::log2(samples[i].value);
    }
    std::vector<double> sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("fit_loglog_slope: duplicate parameters give a degenerate fit");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }

    ScalingFit fit;
    fit.sample_count = static_cast<int>(n);
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < n; ++i)
        fit.max_residual = std::max(fit.max_residual, std::abs(ys[i] - (fit.slope * xs[i] + fit.intercept)));
    return fit;
}

LambdaSweepResult sweep_lambda(double a, double delta, double epsilon,
                               std::span<const double> lambda_list, double phase_budget, int x_count) {
    if (lambda_list.size() < 4) throw std::invalid_argument("sweep_lambda: need at least 4 lambdas");

    LambdaSweepResult res;
    res.predicted = (a * (1.0 + epsilon) - 2.0 * epsilon) * delta;
    for (double lambda : lambda_list) {
        try {
            const counterexample::CounterexampleSpec spec =
                counterexample::calibrated_spec(a, lambda, epsilon, phase_budget);
            const counterexample::LowerBoundReport rep =
                counterexample::verify_lower_bound(spec, delta, x_count);
            res.samples.push_back({lambda, rep.sup_ratio});
        } catch (const calibration_error&) {
            res.skipped_lambdas.push_back(lambda);
        }
    }
    if (res.samples.size() >= 2) res.fit = fit_loglog_slope(res.samples);
    return res;
}

namespace {

// epsilon of the band embedding lambda^(1+eps) = 2^k, chosen per branch of
// the predicted exponent: eps = 1 reads the max(delta, 1/4) branch, small
// eps the (a-1)delta + delta branch; for a < 1 the admissible range is
// eps < a/(2-a) and 0.2 gives the cleanest desk-scale fit.
double embedding_epsilon(double a, double delta) {
    if (a > 1.0) return (delta <= 0.25) ? 1.0 : 0.125;
    return 0.2;
}

}  // namespace

BandSweepResult sweep_bands(double a, double delta, std::span<const int> k_list, int trials,
                            std::uint64_t seed) {
    if (trials < 8) throw std::invalid_argument("sweep_bands: need trials >= 8");
    if (k_list.size() < 2) throw std::invalid_argument("sweep_bands: need at least 2 band indices");
    for (std::size_t i = 1; i < k_list.size(); ++i)
        if (k_list[i] <= k_list[i - 1])
            throw std::invalid_argument("sweep_bands: k_list must be strictly increasing");

    BandSweepResult res;
    res.embedding_epsilon = embedding_epsilon(a, delta);
    res.predicted = (a > 1.0) ? (a - 1.0) * delta + std::max(delta, 0.25)
                              : a * std::max(delta, 0.25);

    const std::vector<double> ball = maximal::unit_ball_grid();
    const double dx = ball[1] - ball[0];
    const double deltas[1] = {delta};
    const maximal::ScanOptions opts{.samples_per_window = 32, .i1_octaves = 6, .refine_evals = 2};

    for (int k : k_list) {
        const double band_center = std::exp2(double(k));
        const double lambda = std::pow(band_center, 1.0 / (1.0 + res.embedding_epsilon));
        const std::vector<double> times = maximal::build_scan_times(a, k, opts);

        bool k_ok = true;
        double extremizer_ratio = 0.0;
        try {
            const spectral::FrequencyGrid grid(band_center - lambda, band_center + lambda, 2049);
            const spectral::SpectralProfile f =
                counterexample::fractional_profile(lambda, res.embedding_epsilon, grid);
            maximal::check_band_limited(f, k);
            const auto sup = maximal::scan_time_sup(f, a, maximal::ScanKind::difference_ratio, deltas,
                                                    ball, times, opts.refine_evals);
            extremizer_ratio =
                maximal::l2_norm_grid(sup[0].sup, dx, true) / spectral::sobolev_norm(f, 0.0);
        } catch (const std::exception&) {
            k_ok = false;
        }
        if (!k_ok) {
            res.skipped_k.push_back(k);
            continue;
        }
        res.extremizer_samples.push_back({band_center, extremizer_ratio});

        double random_ratio = 0.0;
        for (int trial = 0; trial < trials; ++trial) {
            const spectral::SpectralProfile f = spectral::random_band_profile(
                k, derive_seed(seed, 0x62616e6473ULL, static_cast<std::uint64_t>(trial)));
            const auto sup = maximal::scan_time_sup(f, a, maximal::ScanKind::difference_ratio, deltas,
                                                    ball, times, opts.refine_evals);
            random_ratio = std::max(
                random_ratio, maximal::l2_norm_grid(sup[0].sup, dx, true) / spectral::sobolev_norm(f, 0.0));
        }
        res.random_samples.push_back({band_center, random_ratio});
    }

    if (res.extremizer_samples.size() >= 2) res.extremizer_fit = fit_loglog_slope(res.extremizer_samples);
    if (res.random_samples.size() >= 2) res.random_fit = fit_loglog_slope(res.random_samples);
    return res;
}

}  // namespace disprate::scaling
