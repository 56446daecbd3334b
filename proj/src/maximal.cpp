#include "disprate/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace disprate::maximal {

TimeWindow::TimeWindow(double lo, double hi, int samples) : t_lo(lo), t_hi(hi), samples_per_window(samples) {
    if (!(t_lo >= 0.0 && t_lo <= t_hi && t_hi <= 1.0))
        throw std::invalid_argument("TimeWindow: need 0 <= t_lo <= t_hi <= 1");
    if (samples_per_window < 1) throw std::invalid_argument("TimeWindow: samples_per_window must be >= 1");
}

void check_band_limited(const spectral::SpectralProfile& f, int k) {
    if (k < 1) throw std::invalid_argument("check_band_limited: k must be >= 1");
    const double lo = std::ldexp(1.0, k - 1);
    const double hi = std::ldexp(1.0, k + 1);
    for (int i = 0; i < f.grid.count; ++i) {
        if (f.values[static_cast<std::size_t>(i)] == cplx{0.0, 0.0}) continue;
        const double axi = std::abs(f.grid.point(i));
        if (!(axi > lo && axi < hi))
            throw std::invalid_argument("profile is not band-limited to the annulus A(2^k)");
    }
}

std::vector<double> build_scan_times(double a, int k, const ScanOptions& opts) {
    const int spw = std::max(2, opts.samples_per_window);
    const double b1 = std::exp2(-a * k);
    const double b2 = (a > 1.0) ? std::exp2((1.0 - a) * k) : 1.0;

    std::vector<double> ts;
    const auto add_window = [&](double lo, double hi) {
        if (!(hi > lo)) return;
        const double ratio = hi / lo;
        for (int i = 0; i < spw; ++i) {
            if (i == 0)
                ts.push_back(lo);
            else if (i == spw - 1)
                ts.push_back(hi);
            else
                ts.push_back(lo * std::pow(ratio, double(i) / double(spw - 1)));
        }
    };

    for (int oct = opts.i1_octaves; oct >= 1; --oct)
        add_window(std::ldexp(b1, -oct), std::ldexp(b1, -oct + 1));
    double w = b1;
    while (w < b2 * (1.0 - 1e-12)) {
        const double hi = std::min(2.0 * w, b2);
        add_window(w, hi);
        w = hi;
    }
    if (a > 1.0) {
        w = b2;
        while (w < 1.0 - 1e-12) {
            const double hi = std::min(2.0 * w, 1.0);
            add_window(w, hi);
            w = hi;
        }
    }

    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    if (opts.t_min_override > 0.0)
        ts.erase(std::remove_if(ts.begin(), ts.end(), [&](double t) { return t < opts.t_min_override; }),
                 ts.end());
    if (opts.t_max_override > 0.0)
        ts.erase(std::remove_if(ts.begin(), ts.end(), [&](double t) { return t > opts.t_max_override; }),
                 ts.end());
    return ts;
}

namespace {

struct ToneSet {
    std::vector<double> xi;
    std::vector<double> omega;
    std::vector<cplx> coeff;  // profile value * trapezoid weight * dxi / 2pi
};

ToneSet make_tones(const spectral::SpectralProfile& f, double a) {
    ToneSet ts;
    const int n = f.grid.count;
    const double scale = f.grid.spacing() / kTwoPi;
    for (int i = 0; i < n; ++i) {
        const cplx v = f.values[static_cast<std::size_t>(i)];
        if (v == cplx{0.0, 0.0}) continue;
        const double x = f.grid.point(i);
        ts.xi.push_back(x);
        ts.omega.push_back(std::pow(std::abs(x), a));
        ts.coeff.push_back(scale * spectral::trapezoid_weight(i, n) * v);
    }
    return ts;
}

inline cplx time_multiplier(ScanKind kind, double theta) {
    if (kind == ScanKind::propagate) return cplx{std::cos(theta), std::sin(theta)};
    return propagator::stable_phase_difference(theta);
}

}  // namespace

std::vector<SupField> scan_time_sup(const spectral::SpectralProfile& f, double a, ScanKind kind,
                                    std::span<const double> deltas, std::span<const double> x_grid,
                                    std::span<const double> times, int refine_evals) {
    const ToneSet tones = make_tones(f, a);
    const std::size_t nj = tones.xi.size();
    const std::size_t nt = times.size();
    const std::size_t nx = x_grid.size();
    const std::size_t nd = (kind == ScanKind::propagate) ? 1 : deltas.size();
    if (nt == 0) throw std::invalid_argument("scan_time_sup: empty time set");
    if (nd == 0) throw std::invalid_argument("scan_time_sup: empty delta set");

    // Time multipliers, shared across all x.
    std::vector<cplx> mult(nt * nj);
    for (std::size_t ti = 0; ti < nt; ++ti)
        for (std::size_t j = 0; j < nj; ++j)
            mult[ti * nj + j] = time_multiplier(kind, times[ti] * tones.omega[j]);

    // Per-delta score weights t^-delta (1 for the propagate kind).
    std::vector<double> tpow(nd * nt, 1.0);
    if (kind == ScanKind::difference_ratio)
        for (std::size_t d = 0; d < nd; ++d)
            for (std::size_t ti = 0; ti < nt; ++ti)
                tpow[d * nt + ti] = (deltas[d] == 0.0) ? 1.0 : std::pow(times[ti], -deltas[d]);

    std::vector<SupField> out(nd);
    for (auto& sf : out) {
        sf.sup.assign(nx, 0.0);
        sf.argmax_t.assign(nx, times[0]);
    }

#pragma omp parallel
    {
        std::vector<cplx> uc(nj);  // e^(i x xi_j) * coeff_j
        std::vector<double> best(nd), best_t(nd);
        std::vector<std::size_t> best_i(nd);

#pragma omp for schedule(static)
        for (std::ptrdiff_t mi = 0; mi < static_cast<std::ptrdiff_t>(nx); ++mi) {
            const double x = x_grid[static_cast<std::size_t>(mi)];
            for (std::size_t j = 0; j < nj; ++j) {
                const double ph = x * tones.xi[j];
                uc[j] = cplx{std::cos(ph), std::sin(ph)} * tones.coeff[j];
            }

            std::fill(best.begin(), best.end(), -1.0);
            for (std::size_t ti = 0; ti < nt; ++ti) {
                const cplx* v = &mult[ti * nj];
                double ar = 0.0, ai = 0.0;
                for (std::size_t j = 0; j < nj; ++j) {
                    const double ur = uc[j].real(), ui = uc[j].imag();
                    const double vr = v[j].real(), vi = v[j].imag();
                    ar += ur * vr - ui * vi;
                    ai += ur * vi + ui * vr;
                }
                const double av = std::sqrt(ar * ar + ai * ai);
                for (std::size_t d = 0; d < nd; ++d) {
                    const double score = av * tpow[d * nt + ti];
                    if (score > best[d]) {
                        best[d] = score;
                        best_t[d] = times[ti];
                        best_i[d] = ti;
                    }
                }
            }

            if (refine_evals > 0) {
                const auto eval_score = [&](double t, double delta) {
                    cplx acc{0.0, 0.0};
                    for (std::size_t j = 0; j < nj; ++j)
                        acc += uc[j] * time_multiplier(kind, t * tones.omega[j]);
                    const double w = (kind == ScanKind::difference_ratio && delta != 0.0)
                                         ? std::pow(t, -delta)
                                         : 1.0;
                    return std::abs(acc) * w;
                };
                constexpr double kGolden = 0.6180339887498949;
                for (std::size_t d = 0; d < nd; ++d) {
                    const double delta = (kind == ScanKind::propagate) ? 0.0 : deltas[d];
                    const std::size_t bi = best_i[d];
                    double lo = (bi == 0) ? times[0] : times[bi - 1];
                    double hi = (bi + 1 < nt) ? times[bi + 1] : times[nt - 1];
                    if (!(hi > lo)) continue;
                    double x1 = hi - kGolden * (hi - lo);
                    double x2 = lo + kGolden * (hi - lo);
                    double f1 = eval_score(x1, delta);
                    double f2 = eval_score(x2, delta);
                    for (int it = 2; it < refine_evals; ++it) {
                        if (f1 < f2) {
                            lo = x1;
                            x1 = x2;
                            f1 = f2;
                            x2 = lo + kGolden * (hi - lo);
                            f2 = eval_score(x2, delta);
                        } else {
                            hi = x2;
                            x2 = x1;
                            f2 = f1;
                            x1 = hi - kGolden * (hi - lo);
                            f1 = eval_score(x1, delta);
                        }
                    }
                    if (f1 > best[d]) {
                        best[d] = f1;
                        best_t[d] = x1;
                    }
                    if (f2 > best[d]) {
                        best[d] = f2;
                        best_t[d] = x2;
                    }
                }
            }

            for (std::size_t d = 0; d < nd; ++d) {
                out[d].sup[static_cast<std::size_t>(mi)] = best[d];
                out[d].argmax_t[static_cast<std::size_t>(mi)] = best_t[d];
            }
        }
    }
    return out;
}

MaximalScanResult time_maximal_scan(const spectral::SpectralProfile& f,
                                    const propagator::EvolutionParams& params, int k,
                                    std::span<const double> x_grid, const ScanOptions& opts) {
    check_band_limited(f, k);
    const std::vector<double> times = build_scan_times(params.a, k, opts);
    const double deltas[1] = {params.delta};
    std::vector<SupField> fields =
        scan_time_sup(f, params.a, ScanKind::difference_ratio, deltas, x_grid, times, opts.refine_evals);

    const double b1 = std::exp2(-params.a * k);
    const double b2 = (params.a > 1.0) ? std::exp2((1.0 - params.a) * k) : 1.0;

    MaximalScanResult res;
    res.x_grid.assign(x_grid.begin(), x_grid.end());
    res.sup_values = std::move(fields[0].sup);
    res.argmax_t = std::move(fields[0].argmax_t);
    res.regime.resize(x_grid.size());
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        const double t = res.argmax_t[i];
        if (t <= b1 * (1.0 + 1e-12))
            res.regime[i] = Regime::I1;
        else if (params.a > 1.0 && t >= b2 * (1.0 - 1e-12))
            res.regime[i] = Regime::I3;
        else
            res.regime[i] = Regime::I2;
    }
    return res;
}

double taylor_tail_bound(const spectral::SpectralProfile& f, const propagator::EvolutionParams& params,
                         int k) {
    check_band_limited(f, k);
    const int n = f.grid.count;
    const double dxi = f.grid.spacing();

    // cur_i starts as the |fhat|^2 quadrature terms; each j-step multiplies
    // by (|xi| 2^-k)^(2a), so sqrt(sum cur) = m_j.
    std::vector<double> cur(static_cast<std::size_t>(n), 0.0);
    std::vector<double> step(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        const cplx v = f.values[static_cast<std::size_t>(i)];
        if (v == cplx{0.0, 0.0}) continue;
        const double u = std::abs(f.grid.point(i)) * std::exp2(double(-k));
        cur[static_cast<std::size_t>(i)] = spectral::trapezoid_weight(i, n) * std::norm(v) * dxi / kTwoPi;
        step[static_cast<std::size_t>(i)] = std::pow(u, 2.0 * params.a);
    }

    double sum = 0.0;
    double inv_fact = 1.0;
    for (int j = 1; j <= 200; ++j) {
        inv_fact /= double(j);
        for (int i = 0; i < n; ++i) cur[static_cast<std::size_t>(i)] *= step[static_cast<std::size_t>(i)];
        const double m_j = std::sqrt(pairwise_sum(cur));
        const double term = m_j * inv_fact;
        sum += term;
        if (term <= 1e-16 * sum) break;
    }
    return std::exp2(params.a * double(k) * params.delta) * sum;
}

double weak_level_measure(std::span<const double> values, double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("weak_level_measure: alpha must be > 0");
    if (values.empty()) throw std::invalid_argument("weak_level_measure: empty sample array");
    std::size_t count = 0;
    for (double v : values)
        if (v > alpha) ++count;
    return 2.0 * double(count) / double(values.size());
}

std::vector<double> unit_ball_grid(int count) {
    std::vector<double> g(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = -1.0 + 2.0 * double(i) / double(count - 1);
    return g;
}

std::vector<double> period_grid(const spectral::SpectralProfile& f, int count) {
    const double period = kTwoPi / f.grid.spacing();
    std::vector<double> g(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        g[static_cast<std::size_t>(i)] = -0.5 * period + period * double(i) / double(count);
    return g;
}

double l2_norm_grid(std::span<const double> values, double dx, bool trapezoid_ends) {
    std::vector<double> terms(values.size());
    const int n = static_cast<int>(values.size());
    for (int i = 0; i < n; ++i) {
        const double w = trapezoid_ends ? spectral::trapezoid_weight(i, n) : 1.0;
        terms[static_cast<std::size_t>(i)] = w * values[static_cast<std::size_t>(i)] * values[static_cast<std::size_t>(i)];
    }
    return std::sqrt(dx * pairwise_sum(terms));
}

NormReport opnorm_probe(ProbeMode mode, int k, const std::optional<TimeWindow>& J,
                        const propagator::EvolutionParams& params, int trials, std::uint64_t seed,
                        const ScanOptions& opts) {
    if (trials < 1) throw std::domain_error("opnorm_probe: trials must be >= 1");
    if (mode == ProbeMode::global_cowling && !(params.delta > 0.5 && params.delta < 1.0))
        throw std::domain_error("opnorm_probe: global_cowling requires delta in (1/2, 1)");
    if (mode == ProbeMode::window && !J.has_value())
        throw std::domain_error("opnorm_probe: window mode requires a time window");

    const ScanKind kind = (mode == ProbeMode::global_cowling) ? ScanKind::difference_ratio
                                                              : ScanKind::propagate;
    const double deltas[1] = {params.delta};

    double measured = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        const spectral::SpectralProfile f =
            spectral::random_band_profile(k, derive_seed(seed, static_cast<std::uint64_t>(mode), static_cast<std::uint64_t>(trial)));
        check_band_limited(f, k);

        std::vector<double> times;
        std::vector<double> xg;
        bool trapezoid_ends;
        if (mode == ProbeMode::local_quarter) {
            times = build_scan_times(params.a, k, opts);
            xg = unit_ball_grid();
            trapezoid_ends = true;
        } else if (mode == ProbeMode::window) {
            const int m = J->samples_per_window;
            if (J->t_hi == J->t_lo || m == 1) {
                times.push_back(J->t_lo);
            } else {
                for (int i = 0; i < m; ++i)
                    times.push_back(J->t_lo + (J->t_hi - J->t_lo) * double(i) / double(m - 1));
            }
            xg = period_grid(f);
            trapezoid_ends = false;
        } else {
            times = build_scan_times(params.a, k, opts);
            xg = period_grid(f);
            trapezoid_ends = false;
        }

        const std::vector<SupField> sf =
            scan_time_sup(f, params.a, kind, deltas, xg, times, opts.refine_evals);
        const double dx = xg[1] - xg[0];
        const double out_norm = l2_norm_grid(sf[0].sup, dx, trapezoid_ends);

        double in_norm;
        if (mode == ProbeMode::local_quarter)
            in_norm = spectral::sobolev_norm(f, 0.25);
        else if (mode == ProbeMode::window)
            in_norm = spectral::sobolev_norm(f, 0.0);
        else
            in_norm = spectral::sobolev_norm(f, params.a * params.delta);

        measured = std::max(measured, out_norm / in_norm);
    }

    double factor = 1.0;
    if (mode == ProbeMode::window)
        factor = 1.0 + std::pow(J->t_hi - J->t_lo, 0.25) * std::exp2(double(k) * params.a / 4.0);

    return NormReport{measured, k, trials, measured / factor};
}

}  // namespace disprate::maximal
