#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "disprate/common.hpp"
#include "disprate/scaling.hpp"
#include "disprate/spectral.hpp"

using namespace disprate;
using spectral::FrequencyGrid;
using spectral::SpectralProfile;

namespace {

double trapz(const SpectralProfile& f) {
    std::vector<double> terms(static_cast<std::size_t>(f.grid.count));
    for (int i = 0; i < f.grid.count; ++i)
        terms[static_cast<std::size_t>(i)] =
            spectral::trapezoid_weight(i, f.grid.count) * f.values[static_cast<std::size_t>(i)].real();
    return f.grid.spacing() * pairwise_sum(terms);
}

std::uint64_t mix(std::uint64_t s) { return splitmix64(s); }

}  // namespace

TEST_CASE("make_bump: unit integral, plateau, support") {
    FrequencyGrid grid(-2.0, 2.0, 4097);
    const SpectralProfile phi = spectral::make_bump({}, grid);

    CHECK(std::abs(trapz(phi) - 1.0) <= 1e-10);

    // outside the support
    int i15 = static_cast<int>(std::round((1.5 - grid.xi_min) / grid.spacing()));
    CHECK(phi.values[static_cast<std::size_t>(i15)] == cplx{0.0, 0.0});
    CHECK(phi.support_hi < 1.0 + 1e-12);
    CHECK(phi.support_lo > -1.0 - 1e-12);

    // plateau value is exactly 1, everything within [0, 1]
    double maxv = 0.0;
    for (const cplx& v : phi.values) {
        CHECK(v.imag() == 0.0);
        CHECK(v.real() >= 0.0);
        CHECK(v.real() <= 1.0);
        maxv = std::max(maxv, v.real());
    }
    CHECK(maxv == 1.0);
}

TEST_CASE("make_bump: infeasible plateau raises calibration error") {
    FrequencyGrid grid(-2.0, 2.0, 2049);
    CHECK_THROWS_AS(spectral::make_bump({.plateau_halfwidth = 0.6}, grid), calibration_error);
    CHECK_THROWS_AS(spectral::make_bump({}, FrequencyGrid(-0.5, 0.5, 64)), std::invalid_argument);
}

TEST_CASE("bump smoothness: derivatives continuous across panel joints") {
    // The regions outside the edge are flat, so C^(order-1) continuity at the
    // joints is equivalent to derivatives 1..order-1 of the edge vanishing
    // there. Check that a centered finite difference straddling each joint is
    // tiny compared to the same derivative's magnitude inside the edge.
    const spectral::PlateauBump phi = spectral::analytic_unit_bump({.plateau_halfwidth = 0.35,
                                                                    .smoothstep_order = 5});
    const double fd_h = 1e-3;
    const auto fd = [&](double center, int der) {
        double acc = 0.0;
        for (int j = 0; j <= der; ++j) {
            const double binom = std::round(std::tgamma(der + 1.0) /
                                            (std::tgamma(j + 1.0) * std::tgamma(der - j + 1.0)));
            const double sign = ((der - j) % 2 == 0) ? 1.0 : -1.0;
            acc += sign * binom * phi(center + (double(j) - 0.5 * der) * fd_h);
        }
        return acc / std::pow(fd_h, der);
    };
    const double joints[] = {phi.plateau_halfwidth(), phi.support_radius()};
    const double mid = phi.plateau_halfwidth() + 0.5 * phi.edge_width();
    for (int der = 1; der <= 4; ++der) {
        double scale = 0.0;
        for (int i = -8; i <= 8; ++i)
            scale = std::max(scale, std::abs(fd(mid + 0.05 * i * phi.edge_width(), der)));
        REQUIRE(scale > 0.0);
        for (double joint : joints) CHECK(std::abs(fd(joint, der)) <= 0.05 * scale);
    }
}

TEST_CASE("band_window: partition of unity and supports") {
    double sum = 0.0;
    for (int k = 0; k <= 20; ++k) sum += spectral::band_window(k, 37.0);
    CHECK(std::abs(sum - 1.0) <= 1e-12);

    CHECK(spectral::band_window(5, 1.0) == 0.0);
    CHECK(spectral::band_window(0, 0.0) == 1.0);

    // property: 1e4 random xi in [-2^15, 2^15]
    std::uint64_t state = 17;
    for (int trial = 0; trial < 10000; ++trial) {
        const double u = double(mix(state += trial) >> 11) * 0x1.0p-53;
        const double xi = (2.0 * u - 1.0) * 32768.0;
        double s = 0.0;
        for (int k = 0; k <= 20; ++k) s += spectral::band_window(k, xi);
        REQUIRE(std::abs(s - 1.0) <= 1e-12);
    }

    // window k >= 1 vanishes outside the annulus
    for (int k = 1; k <= 8; ++k) {
        CHECK(spectral::band_window(k, std::ldexp(1.0, k - 1)) == 0.0);
        CHECK(spectral::band_window(k, std::ldexp(1.0, k + 1)) == 0.0);
        CHECK(spectral::band_window(k, std::ldexp(1.5, k)) > 0.0);
    }
}

TEST_CASE("project_band: disjoint support, partition reconstruction, idempotence") {
    // profile supported in [0.2, 0.5] vs band 3
    FrequencyGrid grid(-1.0, 1.0, 513);
    SpectralProfile f{grid, std::vector<cplx>(513, cplx{0.0, 0.0}), 0.0, 0.0};
    for (int i = 0; i < 513; ++i) {
        const double xi = grid.point(i);
        if (xi >= 0.2 && xi <= 0.5) f.values[static_cast<std::size_t>(i)] = cplx{1.0, 0.5};
    }
    spectral::retighten_support(f);
    CHECK(spectral::project_band(f, 3).is_zero());

    // sum over bands reconstructs a wide profile pointwise
    FrequencyGrid wide(-40.0, 40.0, 2049);
    SpectralProfile g{wide, std::vector<cplx>(2049, cplx{0.0, 0.0}), 0.0, 0.0};
    std::uint64_t state = 99;
    for (int i = 0; i < 2049; ++i)
        g.values[static_cast<std::size_t>(i)] = cplx{double(mix(state) >> 11) * 0x1.0p-53, 0.1};
    spectral::retighten_support(g);
    std::vector<cplx> acc(2049, cplx{0.0, 0.0});
    for (int k = 0; k <= 8; ++k) {
        const SpectralProfile part = spectral::project_band(g, k);
        for (int i = 0; i < 2049; ++i) acc[static_cast<std::size_t>(i)] += part.values[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < 2049; ++i)
        REQUIRE(std::abs(acc[static_cast<std::size_t>(i)] - g.values[static_cast<std::size_t>(i)]) <= 1e-12);

    // smoothed bump on [6, 7] equals its band-3 projection where the window is 1
    FrequencyGrid bg(0.0, 20.0, 2049);
    SpectralProfile h{bg, std::vector<cplx>(2049, cplx{0.0, 0.0}), 0.0, 0.0};
    const spectral::PlateauBump bump = spectral::analytic_unit_bump({});
    for (int i = 0; i < 2049; ++i)
        h.values[static_cast<std::size_t>(i)] = cplx{bump((bg.point(i) - 6.5) * 2.0), 0.0};
    spectral::retighten_support(h);
    const SpectralProfile proj = spectral::project_band(h, 3);
    for (int i = 0; i < 2049; ++i) {
        const double xi = bg.point(i);
        if (spectral::band_window(3, xi) == 1.0)
            REQUIRE(proj.values[static_cast<std::size_t>(i)] == h.values[static_cast<std::size_t>(i)]);
    }

    // idempotence on the full-window region
    const SpectralProfile twice = spectral::project_band(proj, 3);
    for (int i = 0; i < 2049; ++i) {
        const double xi = bg.point(i);
        if (spectral::band_window(3, xi) == 1.0)
            REQUIRE(twice.values[static_cast<std::size_t>(i)] == proj.values[static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("sobolev_norm: basics and monotonicity") {
    FrequencyGrid grid(-2.0, 2.0, 257);
    SpectralProfile zero{grid, std::vector<cplx>(257, cplx{0.0, 0.0}), 0.0, 0.0};
    CHECK(spectral::sobolev_norm(zero, 1.3) == 0.0);

    const SpectralProfile f = spectral::random_band_profile(4, 7);
    // s = 0 equals the plain L^2 quadrature of fhat / sqrt(2 pi)
    std::vector<double> terms(static_cast<std::size_t>(f.grid.count));
    for (int i = 0; i < f.grid.count; ++i)
        terms[static_cast<std::size_t>(i)] = spectral::trapezoid_weight(i, f.grid.count) *
                                             std::norm(f.values[static_cast<std::size_t>(i)]);
    const double direct = std::sqrt(f.grid.spacing() * pairwise_sum(terms) / kTwoPi);
    CHECK(spectral::sobolev_norm(f, 0.0) == doctest::Approx(direct).epsilon(1e-14));

    // monotone in s for support in |xi| >= 1
    double prev = spectral::sobolev_norm(f, -0.5);
    for (double s : {0.0, 0.25, 0.5, 1.0, 2.0}) {
        const double cur = spectral::sobolev_norm(f, s);
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("synthesize: mollifier limit, symmetry, Plancherel") {
    // narrow bump of mass 2pi at xi0 = 8 -> f(0) ~ 1
    const double w = std::exp2(-8.0);
    FrequencyGrid grid(8.0 - w, 8.0 + w, 513);
    SpectralProfile f{grid, std::vector<cplx>(513, cplx{0.0, 0.0}), 0.0, 0.0};
    const spectral::PlateauBump bump = spectral::analytic_unit_bump({});
    for (int i = 0; i < 513; ++i)
        f.values[static_cast<std::size_t>(i)] = cplx{kTwoPi / w * bump((grid.point(i) - 8.0) / w), 0.0};
    spectral::retighten_support(f);
    const double x0 = 0.0;
    const auto at0 = spectral::synthesize(f, std::span<const double>(&x0, 1));
    CHECK(std::abs(at0[0] - cplx{1.0, 0.0}) <= 1e-6);

    // real even fhat -> real output
    FrequencyGrid sg(-2.0, 2.0, 1025);
    const SpectralProfile even = spectral::make_bump({}, sg);
    std::vector<double> xs = {0.3, -1.7, 4.0};
    for (const cplx v : spectral::synthesize(even, xs)) CHECK(std::abs(v.imag()) <= 1e-12);

    // Plancherel against sobolev_norm(.,0) on a wide window (wide bump, fast decay)
    const double bw = 0.25;
    const double x_half = 220.0;
    const int nx = 4097;
    std::vector<double> xg(nx);
    for (int i = 0; i < nx; ++i) xg[static_cast<std::size_t>(i)] = -x_half + 2.0 * x_half * i / (nx - 1);
    {
        // a 65-node grid has spacing 7.8e-3 > (pi/4)/220: refused
        FrequencyGrid coarse(8.0 - bw, 8.0 + bw, 65);
        SpectralProfile pc{coarse, std::vector<cplx>(65, cplx{1.0, 0.0}), 8.0 - bw, 8.0 + bw};
        REQUIRE_THROWS_AS(spectral::synthesize(pc, xg), resolution_error);
    }

    FrequencyGrid pg2(8.0 - bw, 8.0 + bw, 2049);
    SpectralProfile p2{pg2, std::vector<cplx>(2049, cplx{0.0, 0.0}), 0.0, 0.0};
    for (int i = 0; i < 2049; ++i)
        p2.values[static_cast<std::size_t>(i)] = cplx{bump((pg2.point(i) - 8.0) / bw), 0.0};
    spectral::retighten_support(p2);
    const auto field = spectral::synthesize(p2, xg);
    std::vector<double> sq(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) sq[i] = std::norm(field[i]);
    double l2x = 0.0;
    {
        std::vector<double> terms(sq.size());
        for (int i = 0; i < nx; ++i)
            terms[static_cast<std::size_t>(i)] = spectral::trapezoid_weight(i, nx) * sq[static_cast<std::size_t>(i)];
        l2x = std::sqrt((2.0 * x_half / (nx - 1)) * pairwise_sum(terms));
    }
    const double plancherel = spectral::sobolev_norm(p2, 0.0);
    CHECK(std::abs(l2x - plancherel) <= 1e-6 * plancherel);
}

TEST_CASE("random_band_profile: determinism, shaping, normalization") {
    const SpectralProfile f1 = spectral::random_band_profile(5, 42);
    const SpectralProfile f2 = spectral::random_band_profile(5, 42);
    REQUIRE(f1.values.size() == f2.values.size());
    for (std::size_t i = 0; i < f1.values.size(); ++i) REQUIRE(f1.values[i] == f2.values[i]);

    const SpectralProfile g = spectral::random_band_profile(5, 43);
    bool differs = false;
    for (std::size_t i = 0; i < f1.values.size(); ++i) differs = differs || (f1.values[i] != g.values[i]);
    CHECK(differs);

    for (int i = 0; i < f1.grid.count; ++i) {
        if (f1.values[static_cast<std::size_t>(i)] == cplx{0.0, 0.0}) continue;
        const double axi = std::abs(f1.grid.point(i));
        REQUIRE(axi > 16.0);
        REQUIRE(axi < 64.0);
    }
    CHECK(std::abs(spectral::sobolev_norm(f1, 0.0) - 1.0) <= 1e-12);
}

TEST_CASE("family H^s norm scales like lambda^((1+eps)s - 1/2)") {
    // frequency bump fhat = phi((xi - lambda^2)/lambda)/lambda, eps = 1
    const double s = 0.5, eps = 1.0;
    std::vector<scaling::ScalingSample> samples;
    for (int e = 8; e <= 12; ++e) {
        const double lambda = std::exp2(double(e));
        const double c = std::pow(lambda, 1.0 + eps);
        FrequencyGrid grid(c - lambda, c + lambda, 2049);
        SpectralProfile f{grid, std::vector<cplx>(2049, cplx{0.0, 0.0}), 0.0, 0.0};
        const spectral::PlateauBump bump = spectral::analytic_unit_bump({});
        for (int i = 0; i < 2049; ++i)
            f.values[static_cast<std::size_t>(i)] = cplx{bump((grid.point(i) - c) / lambda) / lambda, 0.0};
        spectral::retighten_support(f);
        samples.push_back({lambda, spectral::sobolev_norm(f, s)});
    }
    const auto fit = scaling::fit_loglog_slope(samples);
    CHECK(std::abs(fit.slope - ((1.0 + eps) * s - 0.5)) <= 0.05);
}
