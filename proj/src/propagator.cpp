#include "disprate/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace disprate::propagator {

namespace {

struct SupportAbsRange {
    double lo;  // min |xi| over the support hull
    double hi;  // max |xi|
};

SupportAbsRange support_abs_range(const spectral::SpectralProfile& f) {
    const double lo = f.support_lo, hi = f.support_hi;
    const double abs_hi = std::max(std::abs(lo), std::abs(hi));
    const double abs_lo = (lo <= 0.0 && hi >= 0.0) ? 0.0 : std::min(std::abs(lo), std::abs(hi));
    return {abs_lo, abs_hi};
}

// Max of |d/dxi (x xi + t |xi|^a)| = x_max + t a |xi|^(a-1) over the support.
double max_phase_speed(const spectral::SpectralProfile& f, double a, double t_max, double x_max) {
    const SupportAbsRange r = support_abs_range(f);
    double freq_factor = 0.0;
    if (t_max > 0.0) {
        if (a >= 1.0) {
            freq_factor = (r.hi == 0.0) ? 0.0 : std::pow(r.hi, a - 1.0);
        } else {
            if (r.lo == 0.0)
                throw std::domain_error(
                    "required_freq_samples: support touches xi=0 with a<1 (unbounded phase derivative)");
            freq_factor = std::pow(r.lo, a - 1.0);
        }
    }
    return x_max + t_max * a * freq_factor;
}

void check_resolved(const spectral::SpectralProfile& f, double a, double t_max, double x_max) {
    const double speed = max_phase_speed(f, a, t_max, x_max);
    if (speed > 0.0 && f.grid.spacing() > (kPi / 4.0) / speed)
        throw resolution_error("evolve: frequency grid too coarse for requested (x, t) range");
}

}  // namespace

EvolutionParams::EvolutionParams(double a_, double delta_) : a(a_), delta(delta_) {
    if (!(a > 0.0)) throw std::domain_error("EvolutionParams: a must be > 0");
    if (!(delta >= 0.0 && delta < 1.0)) throw std::domain_error("EvolutionParams: delta must be in [0, 1)");
}

int required_freq_samples(const spectral::SpectralProfile& f, double a, double t_max, double x_max) {
    if (!(a > 0.0)) throw std::domain_error("required_freq_samples: a must be > 0");
    if (t_max < 0.0 || x_max < 0.0)
        throw std::domain_error("required_freq_samples: t_max and x_max must be >= 0");
    const double speed = max_phase_speed(f, a, t_max, x_max);
    const double range = f.grid.xi_max - f.grid.xi_min;
    if (speed == 0.0) return 2;
    const double max_spacing = (kPi / 4.0) / speed;
    return std::max(2, static_cast<int>(std::ceil(range / max_spacing)) + 1);
}

FieldSample evolve(const spectral::SpectralProfile& f, double a, double t, std::span<const double> x_grid) {
    if (!(a > 0.0)) throw std::domain_error("evolve: a must be > 0");
    if (t < 0.0) throw std::domain_error("evolve: t must be >= 0");
    double x_max = 0.0;
    for (double x : x_grid) x_max = std::max(x_max, std::abs(x));
    check_resolved(f, a, t, x_max);

    const int n = f.grid.count;
    const double scale = f.grid.spacing() / kTwoPi;
    std::vector<double> omega(static_cast<std::size_t>(n), 0.0);
    if (t != 0.0)
        for (int i = 0; i < n; ++i) omega[static_cast<std::size_t>(i)] = std::pow(std::abs(f.grid.point(i)), a);

    FieldSample out;
    out.t = t;
    out.x_grid.assign(x_grid.begin(), x_grid.end());
    out.values.resize(x_grid.size());
    std::vector<cplx> terms(static_cast<std::size_t>(n));
    for (std::size_t m = 0; m < x_grid.size(); ++m) {
        const double x = x_grid[m];
        for (int i = 0; i < n; ++i) {
            const cplx v = f.values[static_cast<std::size_t>(i)];
            if (v == cplx{0.0, 0.0}) {
                terms[static_cast<std::size_t>(i)] = cplx{0.0, 0.0};
                continue;
            }
            const double phase = x * f.grid.point(i) + t * omega[static_cast<std::size_t>(i)];
            terms[static_cast<std::size_t>(i)] =
                spectral::trapezoid_weight(i, n) * v * cplx{std::cos(phase), std::sin(phase)};
        }
        out.values[m] = scale * pairwise_sum(terms);
    }
    return out;
}

FieldSample ratio_field(const spectral::SpectralProfile& f, const EvolutionParams& params, double t,
                        std::span<const double> x_grid) {
    if (!(t > 0.0)) throw std::domain_error("ratio_field: t must be > 0");
    double x_max = 0.0;
    for (double x : x_grid) x_max = std::max(x_max, std::abs(x));
    check_resolved(f, params.a, t, x_max);

    const int n = f.grid.count;
    const double scale = f.grid.spacing() / kTwoPi / std::pow(t, params.delta);
    std::vector<cplx> mult(static_cast<std::size_t>(n), cplx{0.0, 0.0});
    for (int i = 0; i < n; ++i) {
        const cplx v = f.values[static_cast<std::size_t>(i)];
        if (v == cplx{0.0, 0.0}) continue;
        const double theta = t * std::pow(std::abs(f.grid.point(i)), params.a);
        mult[static_cast<std::size_t>(i)] = spectral::trapezoid_weight(i, n) * v * stable_phase_difference(theta);
    }

    FieldSample out;
    out.t = t;
    out.x_grid.assign(x_grid.begin(), x_grid.end());
    out.values.resize(x_grid.size());
    std::vector<cplx> terms(static_cast<std::size_t>(n));
    for (std::size_t m = 0; m < x_grid.size(); ++m) {
        const double x = x_grid[m];
        for (int i = 0; i < n; ++i) {
            if (mult[static_cast<std::size_t>(i)] == cplx{0.0, 0.0}) {
                terms[static_cast<std::size_t>(i)] = cplx{0.0, 0.0};
                continue;
            }
            const double phase = x * f.grid.point(i);
            terms[static_cast<std::size_t>(i)] = mult[static_cast<std::size_t>(i)] * cplx{std::cos(phase), std::sin(phase)};
        }
        out.values[m] = scale * pairwise_sum(terms);
    }
    return out;
}

FieldSample evolve_radial(const spectral::SpectralProfile& g, int n_dim, double t,
                          std::span<const double> r_grid) {
    if (n_dim != 1 && n_dim != 3) throw std::domain_error("evolve_radial: only n_dim in {1, 3} is supported");
    if (g.support_lo < 0.0)
        throw std::domain_error("evolve_radial: radial profile must be supported in r >= 0");
    double x_max = 0.0;
    for (double r : r_grid) x_max = std::max(x_max, std::abs(r));
    const double speed = std::abs(t) + x_max;
    if (speed > 0.0 && g.grid.spacing() > (kPi / 4.0) / speed)
        throw resolution_error("evolve_radial: radial grid too coarse for requested (|x|, t) range");

    const int n = g.grid.count;
    const double norm = (n_dim == 1) ? 1.0 / kTwoPi : 1.0 / (kTwoPi * kTwoPi * kTwoPi);
    const double scale = norm * g.grid.spacing();

    FieldSample out;
    out.t = t;
    out.x_grid.assign(r_grid.begin(), r_grid.end());
    out.values.resize(r_grid.size());
    std::vector<cplx> terms(static_cast<std::size_t>(n));
    for (std::size_t m = 0; m < r_grid.size(); ++m) {
        const double ax = std::abs(r_grid[m]);
        for (int i = 0; i < n; ++i) {
            const cplx v = g.values[static_cast<std::size_t>(i)];
            if (v == cplx{0.0, 0.0}) {
                terms[static_cast<std::size_t>(i)] = cplx{0.0, 0.0};
                continue;
            }
            const double r = g.grid.point(i);
            const double z = r * ax;
            double sphere, radial_meas;
            if (n_dim == 1) {
                sphere = 2.0 * std::cos(z);
                radial_meas = 1.0;
            } else {
                sphere = 4.0 * kPi * ((z == 0.0) ? 1.0 : std::sin(z) / z);
                radial_meas = r * r;
            }
            const double phase = t * r;
            terms[static_cast<std::size_t>(i)] = spectral::trapezoid_weight(i, n) * v * sphere * radial_meas *
                                                 cplx{std::cos(phase), std::sin(phase)};
        }
        out.values[m] = scale * pairwise_sum(terms);
    }
    return out;
}

}  // namespace disprate::propagator
