#include "disprate/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace disprate::counterexample {

namespace {

constexpr double kLambdaFloor = 64.0;  // 2^6

// Remainder of (1+u)^a beyond its quadratic Taylor polynomial,
// sum_{j>=3} C(a,j) u^j, |u| < 1. Evaluated as a series to avoid the
// catastrophic cancellation of the direct subtraction.
double binomial_remainder(double a, double u) {
    if (u == 0.0) return 0.0;
    double coeff = a * (a - 1.0) * (a - 2.0) / 6.0;
    double upow = u * u * u;
    double sum = 0.0;
    for (int j = 3; j < 4000; ++j) {
        const double term = coeff * upow;
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum) + 1e-300) break;
        coeff *= (a - double(j)) / double(j + 1);
        upow *= u;
    }
    return sum;
}

}  // namespace

CounterexampleSpec::CounterexampleSpec(double a_, double lambda_, double epsilon_, double gamma_,
                                       double c0_)
    : a(a_), lambda(lambda_), epsilon(epsilon_), gamma(gamma_), c0(c0_) {
    if (!(a > 0.0) || a == 1.0) throw std::domain_error("CounterexampleSpec: a must be > 0 and != 1");
    if (!(lambda >= kLambdaFloor)) throw std::domain_error("CounterexampleSpec: lambda must be >= 2^6");
    if (!(epsilon > 0.0 && epsilon <= 1.0))
        throw std::domain_error("CounterexampleSpec: epsilon must be in (0, 1]");
    if (!(gamma > 0.0)) throw std::domain_error("CounterexampleSpec: gamma must be > 0");
    if (a > 1.0 && std::abs(gamma - 2.0 * (a - 1.0)) > 1e-12)
        throw std::domain_error("CounterexampleSpec: gamma must equal 2(a-1) for a > 1");
    if (a < 1.0 && !(epsilon * (gamma + 2.0 - a) < a))
        throw std::domain_error("CounterexampleSpec: need epsilon*(gamma+2-a) < a for a < 1");
    if (c0 < 0.0) throw std::domain_error("CounterexampleSpec: c0 must be >= 0");
}

CounterexampleSpec CounterexampleSpec::with_default_gamma(double a, double lambda, double epsilon,
                                                          double c0) {
    double gamma;
    if (a > 1.0) {
        gamma = 2.0 * (a - 1.0);
    } else {
        // any gamma with epsilon*(gamma+2-a) < a works; halve the slack
        const double gamma_max = a / epsilon - 2.0 + a;
        if (!(gamma_max > 0.0))
            throw std::domain_error("with_default_gamma: epsilon too large for a < 1");
        gamma = 0.5 * gamma_max;
    }
    return CounterexampleSpec(a, lambda, epsilon, gamma, c0);
}

double TimeSequence::t(long long n) const { return time_sequence(gamma, n); }

double time_sequence(double gamma, long long n) {
    if (n < 1) throw std::domain_error("time_sequence: n must be >= 1");
    return std::pow(double(n), -gamma);
}

spectral::SpectralProfile fractional_profile(double lambda, double epsilon,
                                             const spectral::FrequencyGrid& grid,
                                             const spectral::BumpSpec& bump) {
    const spectral::PlateauBump phi = spectral::analytic_unit_bump(bump);
    const double c = std::pow(lambda, 1.0 + epsilon);
    spectral::SpectralProfile out{grid, std::vector<cplx>(static_cast<std::size_t>(grid.count)),
                                  c - lambda, c + lambda};
    for (int i = 0; i < grid.count; ++i)
        out.values[static_cast<std::size_t>(i)] = cplx{phi((grid.point(i) - c) / lambda) / lambda, 0.0};
    return out;
}

spectral::SpectralProfile build_fractional_family(const CounterexampleSpec& spec,
                                                  const spectral::FrequencyGrid& grid) {
    const double c = spec.center();
    if (grid.xi_min > c - spec.lambda || grid.xi_max < c + spec.lambda)
        throw std::domain_error("build_fractional_family: grid does not cover the family support");
    if (2.0 * spec.lambda / grid.spacing() < 1024.0)
        throw std::domain_error("build_fractional_family: fewer than 2^10 points across the support");
    return fractional_profile(spec.lambda, spec.epsilon, grid);
}

long long select_time_index(double x, const CounterexampleSpec& spec) {
    if (!(spec.c0 > 0.0)) throw std::domain_error("select_time_index: c0 is not calibrated");
    const double lo = spec.interval_lo();
    const double hi = spec.interval_hi();
    const double slack = 1e-12 * std::abs(lo);
    if (!(x >= lo - slack && x <= hi + slack))
        throw std::domain_error("select_time_index: x outside I_{lambda,eps}");

    const double big_l = std::pow(spec.lambda, (spec.a - 1.0) * (1.0 + spec.epsilon));
    const double u = -x / (spec.a * big_l);
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("select_time_index: x maps outside the n >= 1 time bracket");
    const double nf = std::pow(u, -1.0 / spec.gamma);
    if (!(nf < 4e18)) throw std::range_error("select_time_index: time index overflows");

    long long n = static_cast<long long>(std::ceil(nf)) - 1;
    // enforce t_{n+1} <= u < t_n against rounding of the closed form
    while (n > 1 && !(u < time_sequence(spec.gamma, n))) --n;
    while (!(time_sequence(spec.gamma, n + 1) <= u)) ++n;
    if (n < 1) throw std::domain_error("select_time_index: no admissible index");
    return n;
}

PhaseErrorBreakdown phase_error_terms(double xi, double x, double t, const CounterexampleSpec& spec) {
    const double a = spec.a, eps = spec.epsilon, lam = spec.lambda;
    const double la = std::pow(lam, a * (1.0 + eps));
    const double m = std::pow(lam, -eps);

    PhaseErrorBreakdown out;
    out.e1 = xi * (lam * x + a * t * la * m);
    out.e2 = 0.5 * a * (a - 1.0) * t * la * m * m * xi * xi;

    const double lead = std::abs(a * (a - 1.0) * (a - 2.0)) / 6.0;
    const double k_a = lead * std::max(std::pow(1.0 - m, a - 3.0), std::pow(1.0 + m, a - 3.0));
    out.e3_bound = std::abs(t) * la * m * m * m * k_a;

    out.total_phase_residual = std::abs(t * la * binomial_remainder(a, m * xi));
    return out;
}

double calibrate_c0(double a, double lambda, double epsilon, double gamma, double phase_budget) {
    if (!(phase_budget > 0.0 && phase_budget <= kPi / 3.0))
        throw std::domain_error("calibrate_c0: phase_budget must be in (0, pi/3]");

    const auto budget_usage = [&](const CounterexampleSpec& spec) {
        constexpr int kSamples = 512;
        const double lo = spec.interval_lo();
        const double hi = spec.interval_hi();
        double worst = 0.0;
        for (int i = 0; i < kSamples; ++i) {
            const double x = lo + (hi - lo) * double(i) / double(kSamples - 1);
            const double t = time_sequence(gamma, select_time_index(x, spec));
            const PhaseErrorBreakdown pe = phase_error_terms(1.0, x, t, spec);
            worst = std::max(worst, std::abs(pe.e1) + std::abs(pe.e2) + pe.e3_bound);
        }
        return worst;
    };
    const auto feasible = [&](double c0) {
        return budget_usage(CounterexampleSpec(a, lambda, epsilon, gamma, c0)) <= phase_budget;
    };

    const double c0_floor = std::exp2(-20.0);
    double lo = c0_floor, hi = 4.0;
    if (!feasible(lo))
        throw calibration_error("calibrate_c0: no c0 >= 2^-20 satisfies the phase budget");
    if (feasible(hi)) return hi;
    for (int it = 0; it < 80; ++it) {
        const double mid = std::sqrt(lo * hi);  // geometric bisection, c0 spans decades
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
}

CounterexampleSpec calibrated_spec(double a, double lambda, double epsilon, double phase_budget) {
    CounterexampleSpec spec = CounterexampleSpec::with_default_gamma(a, lambda, epsilon);
    spec.c0 = calibrate_c0(a, lambda, epsilon, spec.gamma, phase_budget);
    return spec;
}

LowerBoundReport verify_lower_bound(const CounterexampleSpec& spec, double delta, int x_count) {
    if (!(spec.c0 > 0.0)) throw std::domain_error("verify_lower_bound: c0 is not calibrated");
    if (x_count < 256) throw std::domain_error("verify_lower_bound: need x_count >= 2^8");
    const propagator::EvolutionParams params(spec.a, delta);

    const double lo = spec.interval_lo();
    const double hi = spec.interval_hi();
    std::vector<double> xs(static_cast<std::size_t>(x_count));
    std::vector<double> ts(static_cast<std::size_t>(x_count));
    double t_max = 0.0, t_min = 1.0;
    for (int i = 0; i < x_count; ++i) {
        xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * double(i) / double(x_count - 1);
        const long long n = select_time_index(xs[static_cast<std::size_t>(i)], spec);
        ts[static_cast<std::size_t>(i)] = time_sequence(spec.gamma, n);
        t_max = std::max(t_max, ts[static_cast<std::size_t>(i)]);
        t_min = std::min(t_min, ts[static_cast<std::size_t>(i)]);
    }

    const double c = spec.center();
    const double x_max = std::abs(lo);
    const double xi_pow = (spec.a >= 1.0) ? std::pow(c + spec.lambda, spec.a - 1.0)
                                          : std::pow(c - spec.lambda, spec.a - 1.0);
    const double speed = x_max + t_max * spec.a * xi_pow;
    // 4x the refusal contract: the trapezoid aliasing tail of the chirped
    // integrand is ~1e-4 at the bare pi/4 step and falls off at sixth order
    const int count =
        std::max(1025, 4 * static_cast<int>(std::ceil(2.0 * spec.lambda * speed / (kPi / 4.0))) + 2);
    if (count > (1 << 23))
        throw resolution_error("verify_lower_bound: required frequency resolution too large");
    const spectral::FrequencyGrid grid(c - spec.lambda, c + spec.lambda, count);
    const spectral::SpectralProfile f = build_fractional_family(spec, grid);

    LowerBoundReport rep;
    rep.x_count = x_count;
    rep.t_min = t_min;
    rep.t_max = t_max;
    rep.min_abs_field = 1e300;
    const double threshold = 1.0 / (4.0 * kPi);
    int passing = 0;
    for (int i = 0; i < x_count; ++i) {
        const double x = xs[static_cast<std::size_t>(i)];
        const double t = ts[static_cast<std::size_t>(i)];
        const std::span<const double> xone(&x, 1);
        const double abs_s = std::abs(propagator::evolve(f, spec.a, t, xone).values[0]);
        const double abs_r = std::abs(propagator::ratio_field(f, params, t, xone).values[0]);
        const double abs_f = std::abs(spectral::synthesize(f, xone)[0]);
        if (abs_s >= threshold) ++passing;
        rep.min_abs_field = std::min(rep.min_abs_field, abs_s);
        rep.sup_ratio = std::max(rep.sup_ratio, abs_r);
        rep.max_abs_f = std::max(rep.max_abs_f, abs_f);
    }
    rep.fraction_passing = double(passing) / double(x_count);
    rep.l2_norm = spectral::sobolev_norm(f, 0.0);
    rep.s_used = predicted_exponent(spec.a, delta).necessary_s;
    rep.hs_norm = spectral::sobolev_norm(f, rep.s_used);
    return rep;
}

RadialSpec::RadialSpec(double lambda_, double epsilon_, int n_dim_)
    : lambda(lambda_), epsilon(epsilon_), n_dim(n_dim_) {
    if (!(lambda >= kLambdaFloor)) throw std::domain_error("RadialSpec: lambda must be >= 2^6");
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw std::domain_error("RadialSpec: epsilon must be in (0, 1/2)");
    if (n_dim != 1 && n_dim != 3) throw std::domain_error("RadialSpec: n_dim must be 1 or 3");
}

spectral::SpectralProfile build_radial_family(const RadialSpec& spec,
                                              const spectral::FrequencyGrid& grid) {
    const double c = std::pow(spec.lambda, 1.0 + spec.epsilon);
    if (grid.xi_min > c - spec.lambda || grid.xi_max < c + spec.lambda)
        throw std::domain_error("build_radial_family: grid does not cover the family support");
    if (2.0 * spec.lambda / grid.spacing() < 1024.0)
        throw std::domain_error("build_radial_family: fewer than 2^10 points across the support");
    if (grid.xi_min < 0.0)
        throw std::domain_error("build_radial_family: radial grid must satisfy r >= 0");

    const spectral::PlateauBump phi = spectral::analytic_unit_bump({});
    const double amp = std::pow(spec.lambda, -0.5 * double(spec.n_dim + 1));
    spectral::SpectralProfile out{grid, std::vector<cplx>(static_cast<std::size_t>(grid.count)),
                                  c - spec.lambda, c + spec.lambda};
    for (int i = 0; i < grid.count; ++i)
        out.values[static_cast<std::size_t>(i)] =
            cplx{amp * phi((grid.point(i) - c) / spec.lambda), 0.0};
    return out;
}

double radial_sobolev_norm(const spectral::SpectralProfile& g, double s, int n_dim) {
    if (n_dim != 1 && n_dim != 3) throw std::domain_error("radial_sobolev_norm: n_dim must be 1 or 3");
    const double sphere_area = (n_dim == 1) ? 2.0 : 4.0 * kPi;
    const double norm = (n_dim == 1) ? kTwoPi : kTwoPi * kTwoPi * kTwoPi;
    std::vector<double> terms(static_cast<std::size_t>(g.grid.count));
    for (int i = 0; i < g.grid.count; ++i) {
        const double r = g.grid.point(i);
        const double mag = std::norm(g.values[static_cast<std::size_t>(i)]);
        const double meas = (n_dim == 1) ? 1.0 : r * r;
        terms[static_cast<std::size_t>(i)] =
            (mag == 0.0) ? 0.0
                         : spectral::trapezoid_weight(i, g.grid.count) * std::pow(1.0 + r * r, s) * mag * meas;
    }
    return std::sqrt(sphere_area / norm * g.grid.spacing() * pairwise_sum(terms));
}

long long select_radial_time_index(double r) {
    if (!(r > 0.0 && r <= 1.0)) throw std::domain_error("select_radial_time_index: need 0 < r <= 1");
    const double nf = 1.0 / std::sqrt(r);
    if (!(nf < 4e18)) throw std::range_error("select_radial_time_index: time index overflows");
    long long n = static_cast<long long>(std::floor(nf));
    // enforce t_{n+1} < r <= t_n, t_n = n^-2
    while (n > 1 && !(r <= time_sequence(2.0, n))) --n;
    while (!(r > time_sequence(2.0, n + 1))) ++n;
    return n;
}

WaveReport verify_wave_lower_bound(const RadialSpec& spec, double delta, int r_count) {
    if (!(delta >= 0.0 && delta < 1.0)) throw std::domain_error("verify_wave_lower_bound: delta in [0,1)");
    if (r_count < 8) throw std::domain_error("verify_wave_lower_bound: need r_count >= 8");

    const double annulus_r = std::pow(spec.lambda, spec.epsilon - 1.0);
    const double r_lo = 0.5 * annulus_r;
    const double r_hi = std::min(1.0, 2.0 * annulus_r);
    const double c = std::pow(spec.lambda, 1.0 + spec.epsilon);

    const double speed = 2.0 * r_hi + r_hi;  // t ~ r plus the sphere-factor phase
    const int count =
        std::max(1025, 4 * static_cast<int>(std::ceil(2.0 * spec.lambda * speed / (kPi / 4.0))) + 2);
    const spectral::FrequencyGrid grid(c - spec.lambda, c + spec.lambda, count);
    const spectral::SpectralProfile g = build_radial_family(spec, grid);

    const double power = 0.5 * double(spec.n_dim - 1);  // (n-1)/2
    WaveReport rep;
    rep.lambda = spec.lambda;
    rep.epsilon = spec.epsilon;
    rep.delta = delta;
    rep.n_dim = spec.n_dim;
    rep.r_count = r_count;

    std::vector<scaling::ScalingSample> samples;
    samples.reserve(static_cast<std::size_t>(r_count));
    std::vector<double> levels(static_cast<std::size_t>(r_count));
    for (int i = 0; i < r_count; ++i) {
        const double r = r_lo * std::pow(r_hi / r_lo, double(i) / double(r_count - 1));
        const long long n = select_radial_time_index(r);
        const double t = time_sequence(2.0, n);
        const std::span<const double> rone(&r, 1);
        const cplx s_val = propagator::evolve_radial(g, spec.n_dim, t, rone).values[0];
        const cplx g_val = propagator::evolve_radial(g, spec.n_dim, 0.0, rone).values[0];
        const double ratio = std::abs(s_val - g_val) / std::pow(t, delta);
        samples.push_back({r, ratio});
        levels[static_cast<std::size_t>(i)] = ratio * std::pow(r, power + delta);
        const double g_scale = std::pow(spec.lambda, spec.epsilon * power) * std::pow(r, -power);
        rep.g_smallness = std::max(rep.g_smallness, std::abs(g_val) / g_scale);
    }
    rep.normalized_level = pairwise_sum(levels) / double(r_count);
    const scaling::ScalingFit fit = scaling::fit_loglog_slope(samples);
    rep.r_exponent = fit.slope;
    rep.r_fit_residual = fit.max_residual;
    return rep;
}

ExponentPrediction predicted_exponent(double a, double delta) {
    if (!(a > 0.0)) throw std::domain_error("predicted_exponent: a must be > 0");
    if (!(delta >= 0.0 && delta < 1.0)) throw std::domain_error("predicted_exponent: delta in [0,1)");
    ExponentPrediction p;
    if (a > 1.0) {
        p.sufficient_s = p.necessary_s = (a - 1.0) * delta + std::max(delta, 0.25);
        p.sufficient_strict = true;
    } else if (a < 1.0) {
        p.sufficient_s = p.necessary_s = a * std::max(delta, 0.25);
        p.sufficient_strict = true;
    } else {
        p.sufficient_s = p.necessary_s = std::max(0.5, delta);
        p.sufficient_strict = delta <= 0.5;  // the s > 1/2 branch is strict
    }
    return p;
}

namespace {

void check_sharpness_epsilon(double a, double epsilon) {
    if (a == 1.0) throw std::domain_error("sharpness_bound: a = 1 is handled by predicted_exponent");
    if (a > 1.0) {
        if (!(epsilon > 0.0 && epsilon <= 1.0))
            throw std::domain_error("sharpness_bound: epsilon must be in (0, 1] for a > 1");
    } else {
        if (!(epsilon > 0.0 && epsilon < a / (2.0 - a)))
            throw std::domain_error("sharpness_bound: epsilon must be in (0, a/(2-a)) for a < 1");
    }
}

}  // namespace

double sharpness_bound(double a, double delta, double epsilon) {
    check_sharpness_epsilon(a, epsilon);
    return ((a * (1.0 + epsilon) - 2.0 * epsilon) * delta + 0.5 * epsilon) / (1.0 + epsilon);
}

bool sharpness_relation(double a, double delta, double s, double epsilon) {
    check_sharpness_epsilon(a, epsilon);
    return (a * (1.0 + epsilon) - 2.0 * epsilon) * delta <= (1.0 + epsilon) * s - 0.5 * epsilon;
}

}  // namespace disprate::counterexample
