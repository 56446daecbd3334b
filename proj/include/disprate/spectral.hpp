#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "disprate/common.hpp"

namespace disprate::spectral {

// Uniform frequency grid on [xi_min, xi_max].
struct FrequencyGrid {
    double xi_min = 0.0;
    double xi_max = 0.0;
    int count = 0;

    FrequencyGrid(double lo, double hi, int n);

    double spacing() const { return (xi_max - xi_min) / (count - 1); }
    double point(int i) const { return xi_min + spacing() * i; }
};

// A compactly supported frequency-side density sampled on a uniform grid.
// `support_lo/hi` is the closed hull of the nonzero samples; values vanish
// outside it (a two-sided annulus keeps the hull but zeroes the gap).
struct SpectralProfile {
    FrequencyGrid grid;
    std::vector<cplx> values;
    double support_lo = 0.0;
    double support_hi = 0.0;

    bool is_zero() const;
};

// Recompute the tight support hull from the nonzero samples.
void retighten_support(SpectralProfile& f);

// Plateau bump: 1 on [-h,h], polynomial smoothstep edges of width w,
// support [-(h+w), h+w]. The edge uses the generalized smoothstep with
// `order-1` vanishing derivatives at both joints, so the bump is C^(order-1).
class PlateauBump {
  public:
    PlateauBump(double plateau_halfwidth, double edge_width, int order);

    double operator()(double u) const;

    double plateau_halfwidth() const { return h_; }
    double edge_width() const { return w_; }
    double support_radius() const { return h_ + w_; }
    int order() const { return order_; }

  private:
    double h_;
    double w_;
    int order_;
    std::vector<double> coeffs_;  // smoothstep monomial coefficients, degree N+1..2N+1
};

struct BumpSpec {
    double plateau_halfwidth = 0.35;  // in (0, 1/2) for a feasible unit integral
    int smoothstep_order = 5;         // bump is C^(order-1)
};

// Exact-integral bump (edge width 1-2h, exact by smoothstep symmetry).
PlateauBump analytic_unit_bump(const BumpSpec& spec);

// Bump sampled on `grid`, edge width calibrated by bisection so the
// trapezoid integral on that grid is 1 (within 1e-12).
// Throws calibration_error when no edge width can reach integral 1,
// std::invalid_argument when the grid does not cover [-1,1].
SpectralProfile make_bump(const BumpSpec& spec, const FrequencyGrid& grid);

// Smooth Littlewood-Paley partition of unity. Window 0 equals 1 for
// |xi| <= 1.1 and vanishes for |xi| >= 1.9; window k >= 1 is supported in
// {2^(k-1) < |xi| < 2^(k+1)}. The sum over k telescopes to exactly 1.
double band_window(int k, double xi);

// Pointwise multiply by band_window(k, .); support retightened.
SpectralProfile project_band(const SpectralProfile& f, int k);

// ((1/2pi) * trapezoid of (1+xi^2)^s |f(xi)|^2)^(1/2).
double sobolev_norm(const SpectralProfile& f, double s);

// f(x) = (1/2pi) * trapezoid of e^(i x xi) fhat(xi).
// Refuses (resolution_error) when grid spacing exceeds (pi/4)/max|x|.
std::vector<cplx> synthesize(const SpectralProfile& f, std::span<const double> x_grid);

// Complex Gaussian samples shaped by band_window(k, .), unit L^2 norm,
// bit-reproducible per seed. Grid spans [-2^(k+1), 2^(k+1)] with 2049 nodes.
SpectralProfile random_band_profile(int k, std::uint64_t seed);

// Trapezoid weight of node i on an N-node grid (0.5 at the grid ends).
inline double trapezoid_weight(int i, int count) {
    return (i == 0 || i == count - 1) ? 0.5 : 1.0;
}

}  // namespace disprate::spectral
