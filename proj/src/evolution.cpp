#include "qsl/evolution.hpp"

#include "qsl/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

} // namespace

std::complex<double> overlap(const PureState& state, double t) {
    const auto& e = state.spectrum().energies();
    const auto& p = state.weights();
    double re = 0.0, im = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) {
        if (p[n] == 0.0) continue;
        const double angle = -kTwoPi * e[n] * t;
        re += p[n] * std::cos(angle);
        im += p[n] * std::sin(angle);
    }
    return {re, im};
}

PureState evolve(const PureState& state, double t) {
    const auto& e = state.spectrum().energies();
    std::vector<double> phases = state.phases();
    for (std::size_t n = 0; n < phases.size(); ++n) {
        phases[n] -= kTwoPi * e[n] * t;
    }
    return PureState(state.spectrum(), state.weights(), std::move(phases));
}

std::optional<double> first_orthogonality_time(const PureState& state,
                                               const FirstZeroOptions& opts) {
    if (!(opts.delta > 0.0) || !(opts.delta <= 0.5)) {
        throw std::invalid_argument("first-zero search: delta must be in (0, 0.5]");
    }
    if (opts.grid_refine < 1) {
        throw std::invalid_argument("first-zero search: grid_refine must be >= 1");
    }
    const EnergyStats stats = energy_stats(state);
    if (stats.e_max_used <= 0.0) {
        return std::nullopt; // eigenstate: |S| == 1 for all t
    }
    double t_max = opts.t_max;
    if (t_max <= 0.0) t_max = 50.0 / (4.0 * stats.mean);
    if (!std::isfinite(t_max) || t_max <= 0.0) {
        throw std::invalid_argument("first-zero search: t_max must be positive");
    }

    // |S| can dip on the scale 1/E_span, so the scan step must resolve it.
    const double step =
        1.0 / (20.0 * stats.e_max_used * static_cast<double>(opts.grid_refine));
    const auto excess = [&](double t) {
        return std::abs(overlap(state, t)) - opts.delta;
    };

    double t_prev = 0.0;
    for (std::size_t k = 1;; ++k) {
        double t = static_cast<double>(k) * step;
        if (t > t_max) t = t_max;
        if (excess(t) <= 0.0) {
            // Bisect [t_prev, t] down to 1e-12 relative width; keep the
            // endpoint where |S| <= delta holds.
            double lo = t_prev, hi = t;
            for (int iter = 0; iter < 200 && hi - lo > 1e-12 * hi; ++iter) {
                const double mid = 0.5 * (lo + hi);
                if (excess(mid) <= 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return hi;
        }
        if (t >= t_max) return std::nullopt;
        t_prev = t;
    }
}

std::optional<double> first_orthogonality_time(const PureState& state,
                                               double delta, double t_max) {
    FirstZeroOptions opts;
    opts.delta = delta;
    opts.t_max = t_max;
    return first_orthogonality_time(state, opts);
}

BoundReport bounds(const PureState& state, std::optional<std::size_t> cycle_N) {
    const EnergyStats stats = energy_stats(state);
    BoundReport report;
    if (stats.mean > 0.0) {
        report.ml_time = 1.0 / (4.0 * stats.mean);
    } else {
        report.notes.push_back("mean energy is zero: 1/(4E) bound undefined");
    }
    if (stats.stddev > 0.0) {
        report.mt_time = 1.0 / (4.0 * stats.stddev);
    } else {
        report.notes.push_back("energy spread is zero: 1/(4dE) bound undefined");
    }
    if (cycle_N) {
        const auto N = *cycle_N;
        if (N < 2) {
            throw std::invalid_argument("bounds: cycle length must be at least 2");
        }
        const double frac =
            static_cast<double>(N - 1) / static_cast<double>(N);
        if (stats.mean > 0.0) {
            report.cycle_time = frac / (2.0 * stats.mean);
        }
        if (stats.e_max_used > 0.0) {
            report.emax_time = frac / stats.e_max_used;
        }
    }
    return report;
}

double reim_gap(const PureState& state, double t) {
    if (t < 0.0) {
        throw std::invalid_argument("reim gap: defined for t >= 0 only");
    }
    const std::complex<double> s = overlap(state, t);
    const double mean = energy_stats(state).mean;
    return s.real() - (1.0 - 4.0 * mean * t + (2.0 / std::numbers::pi) * s.imag());
}

OverlapTrace trace(const PureState& state, double t0, double t1,
                   std::size_t points) {
    if (points < 2) {
        throw std::invalid_argument("trace: need at least two sample points");
    }
    if (!(t1 > t0)) {
        throw std::invalid_argument("trace: need t1 > t0");
    }
    OverlapTrace out;
    out.times.reserve(points);
    out.re.reserve(points);
    out.im.reserve(points);
    out.mag.reserve(points);
    const double dt = (t1 - t0) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        const double t =
            (i + 1 == points) ? t1 : t0 + dt * static_cast<double>(i);
        const std::complex<double> s = overlap(state, t);
        out.times.push_back(t);
        out.re.push_back(s.real());
        out.im.push_back(s.imag());
        out.mag.push_back(std::abs(s));
    }
    return out;
}

std::vector<std::pair<std::string, double>> achievability_ratios(const BoundReport& report) {
    std::vector<std::pair<std::string, double>> ratios;
    if (!report.measured_tau) return ratios;
    const double tau = *report.measured_tau;
    if (report.cycle_time) ratios.emplace_back("cycle", tau / *report.cycle_time);
    if (report.emax_time) ratios.emplace_back("emax", tau / *report.emax_time);
    if (report.ml_time) ratios.emplace_back("ml", tau / *report.ml_time);
    if (report.mt_time) ratios.emplace_back("mt", tau / *report.mt_time);
    return ratios;
}

} // namespace qsl
