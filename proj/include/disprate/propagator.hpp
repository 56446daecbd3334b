#pragma once

#include <span>
#include <vector>

#include "disprate/common.hpp"
#include "disprate/spectral.hpp"

namespace disprate::propagator {

struct EvolutionParams {
    double a = 2.0;      // dispersion exponent, > 0
    double delta = 0.0;  // rate exponent, in [0, 1)

    EvolutionParams(double a_, double delta_);
};

struct FieldSample {
    std::vector<double> x_grid;
    std::vector<cplx> values;
    double t = 0.0;
};

// e^(i theta) - 1 evaluated as 2i sin(theta/2) e^(i theta/2); no
// cancellation for small theta.
inline cplx stable_phase_difference(double theta) {
    const double s = std::sin(0.5 * theta);
    const double c = std::cos(0.5 * theta);
    return cplx{-2.0 * s * s, 2.0 * s * c};
}

// Smallest grid count keeping the phase x*xi + t|xi|^a below pi/4 change
// per frequency step for |x| <= x_max, 0 <= t <= t_max. For a < 1 the
// derivative bound uses the support's minimum |xi| (and a support touching
// xi = 0 is rejected: unbounded phase derivative).
int required_freq_samples(const spectral::SpectralProfile& f, double a, double t_max, double x_max);

// S^a f(x, t) = (1/2pi) * trapezoid of e^(i(x xi + t|xi|^a)) fhat(xi).
// Refuses (resolution_error) when the profile grid is under-resolved.
// At t = 0 this is the same quadrature as spectral::synthesize.
FieldSample evolve(const spectral::SpectralProfile& f, double a, double t, std::span<const double> x_grid);

// R_delta^a f(x, t) = (S^a f - f)/t^delta, computed with the
// cancellation-stable multiplier. Requires t > 0.
FieldSample ratio_field(const spectral::SpectralProfile& f, const EvolutionParams& params, double t,
                        std::span<const double> x_grid);

// Radial wave evolution with exact sphere factors:
//   n=1: (1/2pi)   * int ghat(r) e^(itr) 2 cos(r|x|) dr
//   n=3: (1/2pi)^3 * int ghat(r) e^(itr) 4pi sin(r|x|)/(r|x|) r^2 dr
// (limit value 4pi at |x| -> 0). Only n_dim in {1, 3} is supported.
FieldSample evolve_radial(const spectral::SpectralProfile& g, int n_dim, double t,
                          std::span<const double> r_grid);

}  // namespace disprate::propagator
