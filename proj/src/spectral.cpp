#include "disprate/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace disprate::spectral {

namespace {

double binomial(int n, int r) {
    double v = 1.0;
    for (int i = 1; i <= r; ++i) v = v * double(n - r + i) / double(i);
    return v;
}

// Generalized smoothstep S_N on [0,1]: S_N(0)=0, S_N(1)=1, first N
// derivatives vanish at both ends, and S_N(x) + S_N(1-x) = 1.
std::vector<double> smoothstep_coeffs(int n_vanishing) {
    const int N = n_vanishing;
    std::vector<double> c(static_cast<std::size_t>(N) + 1);
    for (int m = 0; m <= N; ++m) {
        // coefficient of x^(N+1+m)
        c[m] = (m % 2 == 0 ? 1.0 : -1.0) * binomial(N + m, m) * binomial(2 * N + 1, N - m);
    }
    return c;
}

double eval_poly_rising(const std::vector<double>& c, int n_vanishing, double x) {
    // sum_m c[m] x^(N+1+m), Horner in the tail then multiply by x^(N+1)
    double tail = 0.0;
    for (int m = static_cast<int>(c.size()) - 1; m >= 0; --m) tail = tail * x + c[m];
    double lead = 1.0;
    for (int i = 0; i < n_vanishing + 1; ++i) lead *= x;
    return lead * tail;
}

}  // namespace

FrequencyGrid::FrequencyGrid(double lo, double hi, int n) : xi_min(lo), xi_max(hi), count(n) {
    if (!(lo < hi)) throw std::invalid_argument("FrequencyGrid: xi_min must be < xi_max");
    if (n < 2) throw std::invalid_argument("FrequencyGrid: count must be >= 2");
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("FrequencyGrid: bounds must be finite");
}

bool SpectralProfile::is_zero() const {
    for (const cplx& v : values)
        if (v != cplx{0.0, 0.0}) return false;
    return true;
}

void retighten_support(SpectralProfile& f) {
    int first = -1, last = -1;
    for (int i = 0; i < f.grid.count; ++i) {
        if (f.values[static_cast<std::size_t>(i)] != cplx{0.0, 0.0}) {
            if (first < 0) first = i;
            last = i;
        }
    }
    if (first < 0) {
        f.support_lo = f.support_hi = f.grid.xi_min;
    } else {
        f.support_lo = f.grid.point(first);
        f.support_hi = f.grid.point(last);
    }
}

PlateauBump::PlateauBump(double plateau_halfwidth, double edge_width, int order)
    : h_(plateau_halfwidth), w_(edge_width), order_(order) {
    if (!(h_ > 0.0) || !(w_ > 0.0)) throw std::invalid_argument("PlateauBump: widths must be positive");
    if (order_ < 3) throw std::invalid_argument("PlateauBump: smoothstep order must be >= 3");
    coeffs_ = smoothstep_coeffs(order_ - 1);
}

double PlateauBump::operator()(double u) const {
    const double au = std::abs(u);
    if (au <= h_) return 1.0;
    if (au >= h_ + w_) return 0.0;
    return eval_poly_rising(coeffs_, order_ - 1, (h_ + w_ - au) / w_);
}

PlateauBump analytic_unit_bump(const BumpSpec& spec) {
    const double h = spec.plateau_halfwidth;
    if (!(h > 0.0) || h >= 0.5)
        throw calibration_error("analytic_unit_bump: plateau halfwidth must be in (0, 1/2)");
    // Edge mass is exactly w/2 by smoothstep symmetry, so 2h + w = 1.
    return PlateauBump(h, 1.0 - 2.0 * h, spec.smoothstep_order);
}

SpectralProfile make_bump(const BumpSpec& spec, const FrequencyGrid& grid) {
    if (grid.xi_min > -1.0 || grid.xi_max < 1.0)
        throw std::invalid_argument("make_bump: grid must cover [-1, 1]");
    const double h = spec.plateau_halfwidth;
    if (!(h > 0.0) || !(h < 1.0)) throw std::invalid_argument("make_bump: plateau halfwidth must be in (0,1)");
    if (spec.smoothstep_order < 3) throw std::invalid_argument("make_bump: smoothstep order must be >= 3");

    const auto integral_for = [&](double w) {
        PlateauBump bump(h, w, spec.smoothstep_order);
        std::vector<double> terms(static_cast<std::size_t>(grid.count));
        for (int i = 0; i < grid.count; ++i)
            terms[static_cast<std::size_t>(i)] = trapezoid_weight(i, grid.count) * bump(grid.point(i));
        return grid.spacing() * pairwise_sum(terms);
    };

    double w_hi = 1.0 - h;  // widest edge keeping the support inside [-1,1]
    if (h >= 0.5 || integral_for(w_hi) < 1.0)
        throw calibration_error("make_bump: no edge width reaches unit integral for this plateau");

    double lo = 1e-12, hi = w_hi;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double val = integral_for(mid);
        if (std::abs(val - 1.0) <= 1e-13) {
            lo = hi = mid;
            break;
        }
        (val < 1.0 ? lo : hi) = mid;
    }
    const double w = 0.5 * (lo + hi);
    if (integral_for(w) < 1.0 - 1e-10 || integral_for(w) > 1.0 + 1e-10)
        throw calibration_error("make_bump: edge-width bisection failed to reach unit integral");

    PlateauBump bump(h, w, spec.smoothstep_order);
    SpectralProfile out{grid, {}, -(h + w), h + w};
    out.values.resize(static_cast<std::size_t>(grid.count));
    for (int i = 0; i < grid.count; ++i) out.values[static_cast<std::size_t>(i)] = cplx{bump(grid.point(i)), 0.0};
    retighten_support(out);
    return out;
}

namespace {

// Radial cutoff: 1 for r <= 1.1, 0 for r >= 1.9, cosine-squared smoothstep
// in between. The interior plateau of each window is nonempty because the
// transition is narrower than one octave.
double lp_cutoff(double r) {
    constexpr double r0 = 1.1;
    constexpr double r1 = 1.9;
    if (r <= r0) return 1.0;
    if (r >= r1) return 0.0;
    const double u = (r - r0) / (r1 - r0);
    const double s = u * u * (3.0 - 2.0 * u);
    const double c = std::cos(0.5 * kPi * s);
    return c * c;
}

}  // namespace

double band_window(int k, double xi) {
    if (k < 0) throw std::invalid_argument("band_window: k must be >= 0");
    const double r = std::abs(xi);
    if (k == 0) return lp_cutoff(r);
    return lp_cutoff(std::ldexp(r, -k)) - lp_cutoff(std::ldexp(r, -k + 1));
}

SpectralProfile project_band(const SpectralProfile& f, int k) {
    SpectralProfile out = f;
    for (int i = 0; i < f.grid.count; ++i) {
        const double w = band_window(k, f.grid.point(i));
        out.values[static_cast<std::size_t>(i)] = (w == 0.0) ? cplx{0.0, 0.0} : w * f.values[static_cast<std::size_t>(i)];
    }
    retighten_support(out);
    return out;
}

double sobolev_norm(const SpectralProfile& f, double s) {
    if (!std::isfinite(s)) throw std::invalid_argument("sobolev_norm: s must be finite");
    std::vector<double> terms(static_cast<std::size_t>(f.grid.count));
    for (int i = 0; i < f.grid.count; ++i) {
        const double xi = f.grid.point(i);
        const double m = std::norm(f.values[static_cast<std::size_t>(i)]);
        terms[static_cast<std::size_t>(i)] =
            (m == 0.0) ? 0.0 : trapezoid_weight(i, f.grid.count) * std::pow(1.0 + xi * xi, s) * m;
    }
    return std::sqrt(f.grid.spacing() / kTwoPi * pairwise_sum(terms));
}

std::vector<cplx> synthesize(const SpectralProfile& f, std::span<const double> x_grid) {
    double x_max = 0.0;
    for (double x : x_grid) x_max = std::max(x_max, std::abs(x));
    if (x_max > 0.0 && f.grid.spacing() > (kPi / 4.0) / x_max)
        throw resolution_error("synthesize: frequency grid too coarse for requested |x| range");

    const int n = f.grid.count;
    const double scale = f.grid.spacing() / kTwoPi;
    std::vector<cplx> out(x_grid.size());
    std::vector<cplx> terms(static_cast<std::size_t>(n));
    for (std::size_t m = 0; m < x_grid.size(); ++m) {
        const double x = x_grid[m];
        for (int i = 0; i < n; ++i) {
            const cplx v = f.values[static_cast<std::size_t>(i)];
            if (v == cplx{0.0, 0.0}) {
                terms[static_cast<std::size_t>(i)] = cplx{0.0, 0.0};
                continue;
            }
            const double phase = x * f.grid.point(i);
            terms[static_cast<std::size_t>(i)] =
                trapezoid_weight(i, n) * v * cplx{std::cos(phase), std::sin(phase)};
        }
        out[m] = scale * pairwise_sum(terms);
    }
    return out;
}

namespace {

// Box-Muller on splitmix64 bits; bit-reproducible across platforms
// (std::normal_distribution is implementation-defined).
struct GaussianStream {
    std::uint64_t state;
    double cached = 0.0;
    bool has_cached = false;

    explicit GaussianStream(std::uint64_t seed) : state(seed) {
        for (int i = 0; i < 4; ++i) splitmix64(state);  // warm up
    }

    double uniform01() { return double(splitmix64(state) >> 11) * 0x1.0p-53; }

    double next() {
        if (has_cached) {
            has_cached = false;
            return cached;
        }
        double u1 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        cached = r * std::sin(kTwoPi * u2);
        has_cached = true;
        return r * std::cos(kTwoPi * u2);
    }
};

}  // namespace

SpectralProfile random_band_profile(int k, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("random_band_profile: k must be >= 1");
    if (k > 12) throw std::invalid_argument("random_band_profile: k > 12 exceeds the node budget");
    // fixed spacing 1/2 for every k: the tone sum's x-period (4 pi) and the
    // pointwise amplitude scale are then k-uniform, so band sweeps compare
    // like with like
    const double edge = std::ldexp(1.0, k + 1);
    const int count = (1 << (k + 3)) + 1;
    FrequencyGrid grid(-edge, edge, count);
    SpectralProfile out{grid, std::vector<cplx>(static_cast<std::size_t>(count), cplx{0.0, 0.0}), 0.0, 0.0};

    GaussianStream gauss(derive_seed(seed, 0x62616e64ULL, static_cast<std::uint64_t>(k)));
    for (int i = 0; i < grid.count; ++i) {
        const double w = band_window(k, grid.point(i));
        // consume the stream at every node so the draw sequence is
        // independent of the window layout
        const double re = gauss.next();
        const double im = gauss.next();
        if (w > 0.0) out.values[static_cast<std::size_t>(i)] = w * cplx{re, im};
    }
    retighten_support(out);
    const double norm = sobolev_norm(out, 0.0);
    for (cplx& v : out.values) v /= norm;
    return out;
}

}  // namespace disprate::spectral
