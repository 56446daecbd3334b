#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "disprate/common.hpp"
#include "disprate/propagator.hpp"
#include "disprate/scaling.hpp"
#include "disprate/spectral.hpp"

namespace disprate::counterexample {

// Parameters of the frequency-bump extremizer family and its time sequence.
// c0 == 0 marks "not yet calibrated"; operations that sample the interval
// I_{lambda,eps} = [-c0 lambda^-(1-eps), -c0 lambda^-(1-eps)/2] require c0 > 0.
struct CounterexampleSpec {
    double a = 2.0;
    double lambda = 256.0;
    double epsilon = 1.0;
    double gamma = 2.0;
    double c0 = 0.0;

    CounterexampleSpec(double a_, double lambda_, double epsilon_, double gamma_, double c0_ = 0.0);

    // gamma = 2(a-1) for a > 1 (the sharp choice); for a < 1 gamma must be
    // supplied subject to epsilon*(gamma+2-a) < a.
    static CounterexampleSpec with_default_gamma(double a, double lambda, double epsilon,
                                                 double c0 = 0.0);

    double center() const { return std::pow(lambda, 1.0 + epsilon); }
    double interval_lo() const { return -c0 * std::pow(lambda, epsilon - 1.0); }
    double interval_hi() const { return interval_lo() / 2.0; }
};

struct TimeSequence {
    double gamma = 2.0;
    double t(long long n) const;                                  // n^-gamma
    double gap_exponent() const { return (gamma + 1.0) / gamma; }  // beta
};

// t_n = n^-gamma; n >= 1.
double time_sequence(double gamma, long long n);

struct PhaseErrorBreakdown {
    double e1 = 0.0;
    double e2 = 0.0;
    double e3_bound = 0.0;
    double total_phase_residual = 0.0;
};

struct RadialSpec {
    double lambda = 1024.0;
    double epsilon = 0.25;  // in (0, 1/2)
    int n_dim = 3;          // 1 or 3

    RadialSpec(double lambda_, double epsilon_, int n_dim_);
};

// fhat(xi) = (1/lambda) phi((xi - lambda^(1+eps))/lambda), independent of
// the CounterexampleSpec admissibility checks (used by the band embedding).
spectral::SpectralProfile fractional_profile(double lambda, double epsilon,
                                             const spectral::FrequencyGrid& grid,
                                             const spectral::BumpSpec& bump = {});

// Same profile with the spec's validation and grid-coverage checks
// (support exactly [lambda^(1+eps)-lambda, lambda^(1+eps)+lambda], >= 2^10
// points across it).
spectral::SpectralProfile build_fractional_family(const CounterexampleSpec& spec,
                                                  const spectral::FrequencyGrid& grid);

// The unique n with x in (-a t_n L, -a t_{n+1} L], L = lambda^((a-1)(1+eps)).
// Requires x in I_{lambda,eps}.
long long select_time_index(double x, const CounterexampleSpec& spec);

// E1 = xi (lambda x + a t lambda^(a(1+eps)-eps)),
// E2 = (a(a-1)/2) t lambda^(a(1+eps)-2eps) xi^2,
// e3_bound = |t| lambda^(a(1+eps)-3eps) K_a with K_a the computed maximum
// third-derivative factor of (1+u)^a on |u| <= lambda^-eps.
// total_phase_residual is the exact remainder |Phi - leading - E1 - E2|.
PhaseErrorBreakdown phase_error_terms(double xi, double x, double t, const CounterexampleSpec& spec);

// Largest c0 (bisection, certified by a dense re-check) such that
// max over x in I, |xi| <= 1 of |E1| + |E2| + e3_bound at t = t_{n(x)}
// stays within phase_budget. Throws calibration_error when no
// c0 >= 2^-20 works.
double calibrate_c0(double a, double lambda, double epsilon, double gamma, double phase_budget);

// Convenience: parameter set with default gamma and calibrated c0.
CounterexampleSpec calibrated_spec(double a, double lambda, double epsilon,
                                   double phase_budget = kPi / 6.0);

struct LowerBoundReport {
    double fraction_passing = 0.0;  // share of sampled x with |S^a f| >= 1/(4pi)
    double min_abs_field = 0.0;     // min over x of |S^a f(x, t_n(x))|
    double sup_ratio = 0.0;         // sup over x of |R_delta^a f(x, t_n(x))|
    double max_abs_f = 0.0;         // max |f(x)| on I (Schwartz-decay smallness)
    double l2_norm = 0.0;
    double hs_norm = 0.0;
    double s_used = 0.0;
    double t_min = 0.0, t_max = 0.0;
    int x_count = 0;
};

LowerBoundReport verify_lower_bound(const CounterexampleSpec& spec, double delta, int x_count);

// ghat(xi) = lambda^-(n+1)/2 phi((|xi| - lambda^(1+eps))/lambda), radial in r.
spectral::SpectralProfile build_radial_family(const RadialSpec& spec,
                                              const spectral::FrequencyGrid& grid);

// H^s norm with the radial measure omega_{n-1} r^(n-1) dr.
double radial_sobolev_norm(const spectral::SpectralProfile& g, double s, int n_dim);

// The unique n with r in (t_{n+1}, t_n], t_n = n^-2. The displayed bracket
// with t_n decreasing is empty as written; this nonempty orientation is
// used and flagged in reports. Requires 0 < r <= 1.
long long select_radial_time_index(double r);

struct WaveReport {
    double r_exponent = 0.0;  // fitted slope of log|R| vs log r (expect -((n-1)/2+delta))
    double r_fit_residual = 0.0;
    // annulus mean of |R| r^((n-1)/2+delta): the lambda-scaling series value.
    // The mean (not the max) is used because the oscillating secondary term
    // averages out instead of always interfering constructively.
    double normalized_level = 0.0;
    double g_smallness = 0.0;  // max_r |g(x)| / (lambda^(eps(n-1)/2) r^-(n-1)/2)
    double lambda = 0.0, epsilon = 0.0, delta = 0.0;
    int n_dim = 0;
    int r_count = 0;
};

WaveReport verify_wave_lower_bound(const RadialSpec& spec, double delta, int r_count = 128);

struct ExponentPrediction {
    double sufficient_s = 0.0;  // convergence rate delta holds for s above this
    bool sufficient_strict = true;
    double necessary_s = 0.0;  // and fails below this (non-strict)
};

// a>1: (a-1)delta + max(delta, 1/4); 0<a<1: a max(delta, 1/4);
// a=1: max(1/2, delta), strict at the 1/2 branch.
ExponentPrediction predicted_exponent(double a, double delta);

// The bound on s implied by one admissible epsilon:
//   ([a(1+eps)-2eps] delta + eps/2) / (1+eps).
// Admissible range: eps in (0,1] for a>1; eps in (0, a/(2-a)) for a<1
// (the gamma->0+ supremum of eps(gamma+2-a) < a).
double sharpness_bound(double a, double delta, double epsilon);

// Evaluates [a(1+eps)-2eps] delta <= (1+eps) s - eps/2.
bool sharpness_relation(double a, double delta, double s, double epsilon);

}  // namespace disprate::counterexample
