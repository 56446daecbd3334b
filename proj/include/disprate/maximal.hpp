#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "disprate/common.hpp"
#include "disprate/propagator.hpp"
#include "disprate/spectral.hpp"

namespace disprate::maximal {

// A time interval inside [0, 1] with a sampling density. Degenerate
// windows (t_lo == t_hi) are allowed: a single-time evaluation.
struct TimeWindow {
    double t_lo = 0.0;
    double t_hi = 1.0;
    int samples_per_window = 32;

    TimeWindow(double lo, double hi, int samples);
};

enum class Regime { I1, I2, I3 };

struct MaximalScanResult {
    std::vector<double> x_grid;
    std::vector<double> sup_values;   // sup_t |R_delta^a f(x, t)| (discrete lower estimate)
    std::vector<double> argmax_t;
    std::vector<Regime> regime;
};

struct ScanOptions {
    int samples_per_window = 32;  // log-uniform points per dyadic window
    int i1_octaves = 6;           // octaves scanned below t = 2^(-ak)
    int refine_evals = 8;         // golden-section evaluations at each argmax
    double t_min_override = 0.0;  // > 0: drop samples below
    double t_max_override = 0.0;  // > 0: drop samples above
};

// Scan time set: geometric samples per octave covering
//   I1 = (0, 2^(-ak)], I2 = (2^(-ak), 2^((1-a)k)), I3 = [2^((1-a)k), 1)
// (I3 empty for a <= 1). Sorted ascending, deduplicated; the sets nest
// when samples_per_window goes m -> 2m-1.
std::vector<double> build_scan_times(double a, int k, const ScanOptions& opts);

enum class ScanKind {
    propagate,        // score |S^a f(x,t)|
    difference_ratio  // score |S^a f - f|(x,t) / t^delta
};

struct SupField {
    std::vector<double> sup;
    std::vector<double> argmax_t;
};

// Discrete time-sup of the field over `times` at every x, one output per
// delta (single output for ScanKind::propagate). The profile is evaluated
// as the exact tone sum on its own grid. Lower estimate of the true sup;
// `refine_evals` extra evaluations polish each argmax.
std::vector<SupField> scan_time_sup(const spectral::SpectralProfile& f, double a, ScanKind kind,
                                    std::span<const double> deltas, std::span<const double> x_grid,
                                    std::span<const double> times, int refine_evals);

// Throws std::invalid_argument unless every nonzero sample of f lies in
// the open annulus {2^(k-1) < |xi| < 2^(k+1)} (k >= 1).
void check_band_limited(const spectral::SpectralProfile& f, int k);

// Dyadic-time maximal scan of |R_delta^a f| for a band-k profile.
MaximalScanResult time_maximal_scan(const spectral::SpectralProfile& f,
                                    const propagator::EvolutionParams& params, int k,
                                    std::span<const double> x_grid, const ScanOptions& opts = {});

// L^2 bound for the regime-I1 sup from the power-series expansion of the
// multiplier: 2^(ak delta) * sum_j m_j / j! with
// m_j = ((1/2pi) int (|xi| 2^-k)^(2aj) |fhat|^2)^(1/2), truncated when the
// terms fall below 1e-16 of the running sum.
double taylor_tail_bound(const spectral::SpectralProfile& f, const propagator::EvolutionParams& params,
                         int k);

enum class ProbeMode { local_quarter, window, global_cowling };

struct NormReport {
    double measured_ratio = 0.0;  // max over trials of output norm / input norm
    int k = 0;
    int trials = 0;
    double constant_fit = 0.0;  // measured_ratio / cited k- and J-dependent factor
};

// Empirical operator-norm probe over seeded random band profiles.
//   local_quarter:  ||sup_{0<t<1}|S^a f|||_{L2(B)}      / ||f||_{H^{1/4}}
//   window:         ||sup_{t in J}|S^a f|||_{L2(window)} / ||f||_{L2},
//                   constant_fit divides by 1 + |J|^{1/4} 2^{ka/4}
//   global_cowling: ||sup_{0<t<1}|R_delta^a f|||_{L2(window)} / ||f||_{H^{a delta}},
//                   requires delta in (1/2, 1)
NormReport opnorm_probe(ProbeMode mode, int k, const std::optional<TimeWindow>& J,
                        const propagator::EvolutionParams& params, int trials, std::uint64_t seed,
                        const ScanOptions& opts = ScanOptions{.refine_evals = 2});

// Grid measure of {x in [-1,1] : values(x) > alpha}; cell width 2/count.
double weak_level_measure(std::span<const double> values, double alpha);

// x-grids and norms shared by the probes and sweeps.
std::vector<double> unit_ball_grid(int count = 4096);
// One full x-period of the profile's tone sum (rectangle-rule grid), on
// which the discrete Plancherel identity is exact.
std::vector<double> period_grid(const spectral::SpectralProfile& f, int count = 4096);
// sqrt(trapezoid of values^2) on a uniform grid with spacing dx.
double l2_norm_grid(std::span<const double> values, double dx, bool trapezoid_ends);

}  // namespace disprate::maximal
