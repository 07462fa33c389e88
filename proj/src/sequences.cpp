#include "qsl/sequences.hpp"

#include "qsl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCycleTolerance = 1e-12;
constexpr double kResidualFloor = 1e-13;

} // namespace

std::complex<double> gram_offset(const PureState& state, double step, long k) {
    const auto& e = state.spectrum().energies();
    const auto& p = state.weights();
    double re = 0.0, im = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) {
        if (p[n] == 0.0) continue;
        const double angle = kTwoPi * e[n] * step * static_cast<double>(k);
        re += p[n] * std::cos(angle);
        im += p[n] * std::sin(angle);
    }
    return {re, im};
}

GramReport gram(const PureState& state, double step, std::size_t count) {
    if (count < 2) {
        throw std::invalid_argument("gram: need at least two sequence states");
    }
    if (!(step > 0.0)) {
        throw std::invalid_argument("gram: step must be positive");
    }
    GramReport report;
    report.size = count;
    report.step = step;
    report.entries.resize(count * count);
    for (std::size_t row = 0; row < count; ++row) {
        for (std::size_t col = 0; col < count; ++col) {
            const long k = static_cast<long>(row) - static_cast<long>(col);
            const std::complex<double> g = gram_offset(state, step, k);
            report.entries[row * count + col] = g;
            if (row != col) {
                report.max_offdiag = std::max(report.max_offdiag, std::abs(g));
            }
        }
    }
    return report;
}

namespace {

// Floating-point gcd by Euclid; tol guards against rounding residue.
double float_gcd(double a, double b, double tol) {
    while (b > tol) {
        const double r = std::fmod(a, b);
        a = b;
        b = (r > tol && b - r > tol) ? r : 0.0;
    }
    return a;
}

} // namespace

LadderWeights ladder_weights(const PureState& state, std::optional<double> eps1) {
    const auto& e = state.spectrum().energies();
    const auto& p = state.weights();

    double step = 0.0;
    if (eps1) {
        if (!(*eps1 > 0.0)) {
            throw std::invalid_argument("ladder weights: eps1 must be positive");
        }
        step = *eps1;
    } else {
        const double tol = 1e-9 * std::max(1.0, e.back());
        for (std::size_t n = 0; n < p.size(); ++n) {
            if (p[n] == 0.0 || e[n] <= 0.0) continue;
            step = (step == 0.0) ? e[n] : float_gcd(std::max(step, e[n]),
                                                    std::min(step, e[n]), tol);
        }
        if (step <= tol) {
            throw std::invalid_argument(
                "ladder weights: cannot infer a ladder step; pass eps1 explicitly");
        }
    }

    LadderWeights out;
    out.eps1 = step;
    for (std::size_t n = 0; n < p.size(); ++n) {
        if (p[n] == 0.0) continue;
        const double ratio = e[n] / step;
        const double rounded = std::round(ratio);
        if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
            throw std::invalid_argument(
                "ladder weights: occupied energy " + std::to_string(e[n]) +
                " is not a multiple of the ladder step " + std::to_string(step));
        }
        const auto idx = static_cast<std::size_t>(rounded);
        if (idx >= out.weights.size()) out.weights.resize(idx + 1, 0.0);
        out.weights[idx] += p[n]; // degenerate levels fold onto one rung
    }
    if (out.weights.empty()) out.weights.assign(1, 1.0); // all weight on rung 0
    return out;
}

std::vector<double> aggregate_d_weights(const std::vector<double>& weights,
                                        std::size_t N) {
    if (N < 1) {
        throw std::invalid_argument("fold weights: N must be at least 1");
    }
    std::vector<double> d(N, 0.0);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        d[i % N] += weights[i];
    }
    return d;
}

std::vector<double> aggregate_d_weights(const PureState& state, std::size_t N,
                                        std::optional<double> eps1) {
    return aggregate_d_weights(ladder_weights(state, eps1).weights, N);
}

CycleCheck exact_cycle_check(const std::vector<double>& weights, std::size_t N) {
    CycleCheck check;
    check.d_weights = aggregate_d_weights(weights, N);
    const double target = 1.0 / static_cast<double>(N);
    for (std::size_t n = 0; n < N; ++n) {
        const double dev = std::abs(check.d_weights[n] - target);
        check.max_deviation = std::max(check.max_deviation, dev);
        if (dev > kCycleTolerance) check.offending.push_back(n);
    }
    check.is_cycle = check.offending.empty();
    return check;
}

CycleCheck exact_cycle_check(const PureState& state, std::size_t N,
                             std::optional<double> eps1) {
    return exact_cycle_check(ladder_weights(state, eps1).weights, N);
}

CycleFloor cycle_energy_floor(const LadderWeights& ladder, std::size_t N) {
    const CycleCheck check = exact_cycle_check(ladder.weights, N);
    if (!check.is_cycle) {
        throw std::invalid_argument(
            "cycle energy floor: state is not an exact N-cycle (max fold-weight "
            "deviation " + std::to_string(check.max_deviation) + ")");
    }
    CycleFloor result;
    result.floor = ladder.eps1 * static_cast<double>(N - 1) / 2.0;
    for (std::size_t n = 0; n < ladder.weights.size(); ++n) {
        result.mean += ladder.weights[n] * ladder.eps1 * static_cast<double>(n);
    }
    if (result.mean < result.floor - 1e-12 * std::max(1.0, result.floor)) {
        throw AssertionFailure(
            "cycle energy floor violated: mean " + std::to_string(result.mean) +
            " below floor " + std::to_string(result.floor));
    }
    result.equality =
        (result.mean - result.floor) <= 1e-12 * std::max(1.0, result.floor);
    return result;
}

double sum_delta_sq(const Spectrum& spectrum, std::size_t N) {
    if (N < 1 || spectrum.size() < N + 1) {
        throw std::invalid_argument("sum_delta_sq: spectrum must have at least N+1 levels");
    }
    const auto& e = spectrum.energies();
    const double e_top = e[N];
    if (!(e_top > 0.0)) {
        throw std::invalid_argument("sum_delta_sq: E_N must be positive");
    }
    double acc = 0.0;
    for (std::size_t n = 0; n < N; ++n) {
        const double d = (e[n + 1] - e[n]) / e_top;
        acc += d * d;
    }
    return acc;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("fit_line: need two equal-length samples");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) {
        throw std::invalid_argument("fit_line: degenerate abscissae");
    }
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0.0, ss_tot = 0.0;
    const double y_mean = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
        ss_tot += (y[i] - y_mean) * (y[i] - y_mean);
    }
    fit.r2 = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

namespace {

ScalingReport fit_scaling(const std::vector<std::size_t>& N_list,
                          const std::vector<double>& values,
                          double target_exponent) {
    ScalingReport report;
    report.target_exponent = target_exponent;
    std::vector<double> log_n, log_v;
    for (std::size_t i = 0; i < N_list.size(); ++i) {
        report.samples.emplace_back(static_cast<double>(N_list[i]), values[i]);
        if (values[i] <= kResidualFloor) {
            report.degenerate = true;
            continue;
        }
        log_n.push_back(std::log(static_cast<double>(N_list[i])));
        log_v.push_back(std::log(values[i]));
    }
    if (log_n.size() >= 2) {
        const LineFit fit = fit_line(log_n, log_v);
        report.exponent_fit = fit.slope;
        report.r2 = fit.r2;
    } else {
        report.degenerate = true;
    }
    return report;
}

void check_n_list(const std::vector<std::size_t>& N_list) {
    if (N_list.size() < 4) {
        throw std::invalid_argument("scaling: need at least four N values");
    }
    for (std::size_t i = 1; i < N_list.size(); ++i) {
        if (N_list[i] <= N_list[i - 1]) {
            throw std::invalid_argument("scaling: N values must be strictly increasing");
        }
    }
}

} // namespace

ScalingReport residual_scaling(double c, long k,
                               const std::vector<std::size_t>& N_list) {
    if (k == 0) {
        throw std::invalid_argument("residual scaling: offset k must be nonzero");
    }
    check_n_list(N_list);
    std::vector<double> values;
    for (const std::size_t N : N_list) {
        const Spectrum spectrum = Spectrum::power_law(N + 1, c, 1.0);
        const PureState state = PureState::interval_weighted(spectrum, N);
        const double step = 1.0 / spectrum.energy(N);
        values.push_back(std::abs(gram_offset(state, step, k)));
    }
    return fit_scaling(N_list, values, -2.0 * c);
}

ScalingReport deltasq_scaling(double c, const std::vector<std::size_t>& N_list) {
    check_n_list(N_list);
    std::vector<double> values;
    for (const std::size_t N : N_list) {
        values.push_back(sum_delta_sq(Spectrum::power_law(N + 1, c, 1.0), N));
    }
    return fit_scaling(N_list, values, -2.0 * c);
}

} // namespace qsl
