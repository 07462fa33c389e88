#include "qsl/state.hpp"

#include "qsl/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace qsl {

namespace {

constexpr double kWeightCutoff = 1e-15;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
    double w = std::fmod(theta, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

} // namespace

PureState::PureState(Spectrum spectrum, std::vector<double> weights,
                     std::vector<double> phases)
    : spectrum_(std::move(spectrum)),
      weights_(std::move(weights)),
      phases_(std::move(phases)) {
    const std::size_t n = spectrum_.size();
    if (weights_.size() != n) {
        throw std::invalid_argument("state: weight count " +
                                    std::to_string(weights_.size()) +
                                    " does not match spectrum size " +
                                    std::to_string(n));
    }
    if (phases_.empty()) {
        phases_.assign(n, 0.0);
    } else if (phases_.size() != n) {
        throw std::invalid_argument("state: phase count does not match spectrum size");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(weights_[i]) || weights_[i] < 0.0) {
            throw std::invalid_argument("state: weight at index " + std::to_string(i) +
                                        " must be finite and nonnegative");
        }
        if (!std::isfinite(phases_[i])) {
            throw std::invalid_argument("state: non-finite phase at index " +
                                        std::to_string(i));
        }
        if (weights_[i] < kWeightCutoff) weights_[i] = 0.0;
        total += weights_[i];
    }
    if (total <= 0.0) {
        throw std::invalid_argument("state: weights must not all be zero");
    }
    for (std::size_t i = 0; i < n; ++i) {
        weights_[i] /= total;
        phases_[i] = wrap_angle(phases_[i]);
    }
}

PureState PureState::two_level(double E) {
    if (!(E > 0.0) || !std::isfinite(E)) {
        throw std::invalid_argument("two-level state: energy must be positive");
    }
    return PureState(Spectrum::from_list({0.0, 2.0 * E}), {0.5, 0.5});
}

PureState PureState::uniform_cycle(std::size_t N, double eps1) {
    if (N < 2) {
        throw std::invalid_argument("uniform cycle: need at least two levels");
    }
    std::vector<double> weights(N, 1.0 / static_cast<double>(N));
    return PureState(Spectrum::harmonic(N, eps1), std::move(weights));
}

PureState PureState::interval_weighted(const Spectrum& spectrum, std::size_t N) {
    if (N < 1 || spectrum.size() < N + 1) {
        throw std::invalid_argument(
            "interval-weighted state: spectrum must have at least N+1 levels");
    }
    const auto& e = spectrum.energies();
    const double e_top = e[N];
    if (!(e_top > 0.0)) {
        throw std::invalid_argument(
            "interval-weighted state: top level energy must be positive "
            "(all-degenerate spectrum rejected)");
    }
    std::vector<double> weights(spectrum.size(), 0.0);
    for (std::size_t n = 0; n < N; ++n) {
        weights[n] = (e[n + 1] - e[n]) / e_top;
    }
    return PureState(spectrum, std::move(weights));
}

PureState PureState::big_delta(double E, double eps, std::size_t n) {
    if (!(E > 0.0) || !(eps > 0.0)) {
        throw std::invalid_argument("big-delta state: E and eps must be positive");
    }
    if (!(eps < 2.0 * E)) {
        throw std::invalid_argument("big-delta state: requires eps < 2E");
    }
    if (n < 1) {
        throw std::invalid_argument("big-delta state: n must be at least 1");
    }
    // Pair weights solve 2a^2 + 2b^2 = 1 and a^2*eps + b^2*(2n+1)*eps = E.
    const double b2 = (E / eps - 0.5) / (2.0 * static_cast<double>(n));
    const double a2 = 0.5 - b2;
    if (!(a2 > 0.0)) {
        std::size_t min_n = static_cast<std::size_t>(std::floor(E / eps - 0.5)) + 1;
        while (!((2.0 * static_cast<double>(min_n) + 1.0) * eps / 2.0 > E)) ++min_n;
        throw std::invalid_argument(
            "big-delta state: second pair mean energy (2n+1)*eps/2 must exceed E; "
            "smallest feasible n is " + std::to_string(min_n));
    }
    const double dn = static_cast<double>(n);
    std::vector<double> energies = {0.0, eps, dn * eps, (dn + 1.0) * eps};
    return PureState(Spectrum::from_list(std::move(energies)), {a2, a2, b2, b2});
}

PureState PureState::eigenstate(double E) {
    if (!(E >= 0.0) || !std::isfinite(E)) {
        throw std::invalid_argument("eigenstate: energy must be nonnegative");
    }
    if (E == 0.0) {
        return PureState(Spectrum::from_list({0.0}), {1.0});
    }
    return PureState(Spectrum::from_list({0.0, E}), {0.0, 1.0});
}

EnergyStats energy_stats(const PureState& state) {
    const auto& e = state.spectrum().energies();
    const auto& p = state.weights();
    EnergyStats stats;
    double second_moment = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) {
        if (p[n] == 0.0) continue;
        stats.mean += p[n] * e[n];
        second_moment += p[n] * e[n] * e[n];
        if (e[n] > stats.e_max_used) stats.e_max_used = e[n];
    }
    stats.stddev = std::sqrt(std::max(0.0, second_moment - stats.mean * stats.mean));
    return stats;
}

std::complex<double> inner_product(const PureState& a, const PureState& b) {
    if (a.spectrum().energies() != b.spectrum().energies()) {
        throw std::invalid_argument("inner product: states live on different spectra");
    }
    std::complex<double> acc = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) {
        const double amp = std::sqrt(a.weights()[n] * b.weights()[n]);
        if (amp == 0.0) continue;
        acc += amp * std::polar(1.0, b.phases()[n] - a.phases()[n]);
    }
    return acc;
}

PureState sample_fixed_energy(const Spectrum& spectrum, double E,
                              std::uint64_t seed) {
    const auto& e = spectrum.energies();
    const double e_min = e.front();
    const double e_max = e.back();
    if (!(E > e_min) || !(E < e_max)) {
        throw std::invalid_argument(
            "fixed-energy sampler: target energy must lie strictly inside the "
            "spectrum hull (" + std::to_string(e_min) + ", " +
            std::to_string(e_max) + ")");
    }
    Rng rng(seed);
    const std::size_t n = e.size();
    std::vector<double> q(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        q[i] = rng.exponential();
        total += q[i];
    }
    double mean_q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        q[i] /= total;
        mean_q += q[i] * e[i];
    }
    // Mix toward the extreme level on the other side of the constraint
    // plane; the convex combination lands on it exactly.
    if (mean_q != E) {
        const std::size_t anchor = (mean_q < E) ? n - 1 : 0;
        const double e_anchor = e[anchor];
        const double lambda = (E - e_anchor) / (mean_q - e_anchor);
        for (std::size_t i = 0; i < n; ++i) q[i] *= lambda;
        q[anchor] += 1.0 - lambda;
    }
    PureState state(spectrum, std::move(q));
    const double achieved = energy_stats(state).mean;
    if (std::abs(achieved - E) > 1e-9 * std::max(1.0, std::abs(E))) {
        throw std::runtime_error("fixed-energy sampler: constraint drifted beyond 1e-9");
    }
    return state;
}

} // namespace qsl
