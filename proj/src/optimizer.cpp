#include "qsl/optimizer.hpp"

#include "qsl/errors.hpp"
#include "qsl/evolution.hpp"
#include "qsl/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qsl {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Exact last-resort repair: mix toward a point mass on the extreme level on
// the far side of the energy plane. One step, always lands on the feasible
// set. Assumes w is already on the simplex.
void fix_mean_by_mixing(std::vector<double>& w, const std::vector<double>& energies,
                        double E_target) {
    const double mean = dot(w, energies);
    if (mean == E_target) return;
    std::size_t anchor;
    if (mean < E_target) {
        anchor = static_cast<std::size_t>(
            std::max_element(energies.begin(), energies.end()) - energies.begin());
    } else {
        anchor = static_cast<std::size_t>(
            std::min_element(energies.begin(), energies.end()) - energies.begin());
    }
    const double e_a = energies[anchor];
    const double denom = e_a - mean;
    if (denom == 0.0) return;
    const double t = std::clamp((E_target - mean) / denom, 0.0, 1.0);
    for (double& x : w) x *= 1.0 - t;
    w[anchor] += t;
}

} // namespace

std::vector<double> project_to_energy_simplex(std::vector<double> raw,
                                              const std::vector<double>& energies,
                                              double E_target) {
    const std::size_t n = energies.size();
    if (raw.size() != n)
        throw std::invalid_argument("project_to_energy_simplex: size mismatch");

    // Centered energy direction: sums to zero, so adding it never breaks
    // normalization, and it is the steepest direction for the mean.
    std::vector<double> u(n);
    const double e_avg = std::accumulate(energies.begin(), energies.end(), 0.0) /
                         static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = energies[i] - e_avg;
    const double uu = dot(u, u);

    for (int iter = 0; iter < 64; ++iter) {
        for (double& x : raw)
            if (!(x > 0.0)) x = 0.0; // also catches NaN
        double s = std::accumulate(raw.begin(), raw.end(), 0.0);
        if (s <= 0.0) {
            std::fill(raw.begin(), raw.end(), 1.0 / static_cast<double>(n));
            s = 1.0;
        }
        for (double& x : raw) x /= s;
        if (uu <= 0.0) break; // single distinct level; nothing to shift
        const double lambda = (E_target - dot(raw, energies)) / uu;
        for (std::size_t i = 0; i < n; ++i) raw[i] += lambda * u[i];
        const double lo = *std::min_element(raw.begin(), raw.end());
        if (lo >= 0.0) break;
    }

    for (double& x : raw)
        if (!(x > 0.0)) x = 0.0;
    double s = std::accumulate(raw.begin(), raw.end(), 0.0);
    for (double& x : raw) x /= s;
    fix_mean_by_mixing(raw, energies, E_target);
    return raw;
}

OptimizationResult minimize_tau(const Spectrum& spectrum, double E,
                                const OptimizeOptions& opts) {
    const std::vector<double>& energies = spectrum.energies();
    if (!(E > energies.front() && E < energies.back()))
        throw std::invalid_argument(
            "minimize_tau: target energy must lie strictly inside the spectrum hull");
    if (opts.budget < 1)
        throw std::invalid_argument("minimize_tau: budget must be at least 1");
    if (opts.restarts < 1)
        throw std::invalid_argument("minimize_tau: restarts must be at least 1");
    if (!(opts.delta > 0.0 && opts.delta <= 0.5))
        throw std::invalid_argument("minimize_tau: delta must lie in (0, 0.5]");

    const double t_max = opts.t_max > 0.0 ? opts.t_max : 50.0 / (4.0 * E);
    const std::size_t n = energies.size();
    std::size_t evals = 0;

    // When no candidate time exists inside the horizon the objective would
    // be flat at t_max, stranding the simplex on a plateau. Grading the
    // plateau by the closest approach of |S| to zero keeps a descent
    // direction toward states that do reach (approximate) orthogonality.
    auto closest_approach = [&](const PureState& state) {
        const EnergyStats stats = energy_stats(state);
        if (stats.e_max_used <= 0.0) return 1.0;
        const double step = 1.0 / (20.0 * stats.e_max_used);
        double lowest = 1.0;
        for (double t = step; t <= t_max; t += step)
            lowest = std::min(lowest, std::abs(overlap(state, t)));
        return lowest;
    };

    auto objective = [&](const std::vector<double>& w) {
        ++evals;
        PureState state(spectrum, w);
        FirstZeroOptions fz;
        fz.delta = opts.delta;
        fz.t_max = t_max;
        auto tau = first_orthogonality_time(state, fz);
        return tau ? *tau : t_max + closest_approach(state);
    };

    const std::size_t per_restart =
        std::max<std::size_t>(1, opts.budget / opts.restarts);

    std::vector<double> best_w;
    double best_f = 0.0;
    bool converged = false;

    // Deterministic seeding: every straddling two-level state. The fastest
    // known states are of this family, and when the spectrum offers a pair
    // whose midpoint is E this already sits on the optimum; the restarts
    // below then have to beat it.
    for (std::size_t i = 0; i < n; ++i) {
        if (!(energies[i] < E)) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!(energies[j] > E)) continue;
            std::vector<double> w(n, 0.0);
            w[i] = (energies[j] - E) / (energies[j] - energies[i]);
            w[j] = 1.0 - w[i];
            const double f = objective(w);
            if (best_w.empty() || f < best_f) {
                best_f = f;
                best_w = std::move(w);
            }
        }
    }

    for (std::size_t restart = 0; restart < opts.restarts; ++restart) {
        if (evals >= opts.budget && restart > 0) break;
        Rng rng(Rng::derive(opts.seed, restart));

        // Initial simplex: n+1 feasible random points.
        std::vector<std::vector<double>> simplex;
        std::vector<double> fvals;
        for (std::size_t i = 0; i <= n; ++i) {
            PureState s = sample_fixed_energy(
                spectrum, E, Rng::derive(opts.seed, restart * 1000 + i + 1));
            simplex.push_back(s.weights());
            fvals.push_back(objective(simplex.back()));
        }

        const std::size_t restart_cap = evals + per_restart;
        bool flat = false;
        while (evals < restart_cap && evals < opts.budget + n + 1) {
            // Order: best first.
            std::vector<std::size_t> order(simplex.size());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
            {
                std::vector<std::vector<double>> s2;
                std::vector<double> f2;
                for (std::size_t idx : order) {
                    s2.push_back(std::move(simplex[idx]));
                    f2.push_back(fvals[idx]);
                }
                simplex = std::move(s2);
                fvals = std::move(f2);
            }

            if (fvals.back() - fvals.front() <= 1e-10 * std::max(1.0, fvals.front())) {
                flat = true;
                break;
            }

            // Centroid of all but the worst.
            std::vector<double> centroid(n, 0.0);
            for (std::size_t i = 0; i + 1 < simplex.size(); ++i)
                for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
            for (double& c : centroid) c /= static_cast<double>(simplex.size() - 1);

            auto blend = [&](const std::vector<double>& a, const std::vector<double>& b,
                             double coeff) {
                // a + coeff * (a - b), projected to feasibility
                std::vector<double> out(n);
                for (std::size_t j = 0; j < n; ++j) out[j] = a[j] + coeff * (a[j] - b[j]);
                return project_to_energy_simplex(std::move(out), energies, E);
            };

            const std::vector<double>& worst = simplex.back();
            std::vector<double> reflected = blend(centroid, worst, 1.0);
            const double f_reflected = objective(reflected);

            if (f_reflected < fvals.front()) {
                std::vector<double> expanded = blend(centroid, worst, 2.0);
                const double f_expanded = objective(expanded);
                if (f_expanded < f_reflected) {
                    simplex.back() = std::move(expanded);
                    fvals.back() = f_expanded;
                } else {
                    simplex.back() = std::move(reflected);
                    fvals.back() = f_reflected;
                }
            } else if (f_reflected < fvals[fvals.size() - 2]) {
                simplex.back() = std::move(reflected);
                fvals.back() = f_reflected;
            } else {
                std::vector<double> contracted = blend(centroid, worst, -0.5);
                const double f_contracted = objective(contracted);
                if (f_contracted < fvals.back()) {
                    simplex.back() = std::move(contracted);
                    fvals.back() = f_contracted;
                } else {
                    // Shrink toward the best vertex.
                    for (std::size_t i = 1; i < simplex.size(); ++i) {
                        for (std::size_t j = 0; j < n; ++j)
                            simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
                        simplex[i] = project_to_energy_simplex(std::move(simplex[i]),
                                                               energies, E);
                        fvals[i] = objective(simplex[i]);
                    }
                }
            }
        }
        if (flat) converged = true;

        std::size_t best_idx = static_cast<std::size_t>(
            std::min_element(fvals.begin(), fvals.end()) - fvals.begin());
        std::vector<double> w = simplex[best_idx];
        double f = fvals[best_idx];

        // Face walk: the simplex stalls in the interior, but optima like the
        // two-level state live on low-dimensional faces. Zeroing level i by
        // moving its mass onto the ground level and the top occupied level
        // in the ratio that keeps the mean fixed is an exact,
        // feasibility-preserving move. Each move shrinks the support by one,
        // so walking all the way down to two levels costs at most n rounds;
        // take the best zeroing each round (even a locally worse one) and
        // remember the best point seen anywhere along the walk.
        {
            std::vector<double> walk = w;
            for (std::size_t round = 0; round + 2 < n; ++round) {
                std::size_t top = 0;
                for (std::size_t i = 0; i < n; ++i)
                    if (walk[i] > 0.0 && energies[i] > energies[top]) top = i;
                if (energies[top] <= 0.0) break;
                double round_f = 0.0;
                std::vector<double> round_w;
                for (std::size_t i = 1; i < n; ++i) {
                    if (walk[i] <= 0.0 || i == top || energies[i] <= 0.0 ||
                        energies[i] >= energies[top])
                        continue;
                    std::vector<double> cand = walk;
                    cand[0] += walk[i] * (1.0 - energies[i] / energies[top]);
                    cand[top] += walk[i] * (energies[i] / energies[top]);
                    cand[i] = 0.0;
                    const double fc = objective(cand);
                    if (round_w.empty() || fc < round_f) {
                        round_f = fc;
                        round_w = std::move(cand);
                    }
                }
                if (round_w.empty()) break;
                walk = std::move(round_w);
                if (round_f < f) {
                    f = round_f;
                    w = walk;
                }
            }
        }

        if (best_w.empty() || f < best_f) {
            best_f = f;
            best_w = std::move(w);
        }
    }

    PureState best_state(spectrum, best_w);
    FirstZeroOptions fz_final;
    fz_final.delta = opts.delta;
    fz_final.t_max = t_max;
    const auto tau_final = first_orthogonality_time(best_state, fz_final);
    OptimizationResult result{
        std::move(best_state),
        tau_final ? *tau_final : t_max, // t_max reported when nothing crosses
        1.0 / (4.0 * E),
        0.0,
        evals,
        converged,
        E,
        opts.delta,
        t_max,
        opts.seed,
    };
    result.gap = result.best_tau - result.bound_tau;

    if (result.best_tau < result.bound_tau - 1e-6)
        throw AssertionFailure(
            "minimize_tau: search returned tau below 1/(4E); the energy bound "
            "would be falsified");
    const double mean = energy_stats(result.best_state).mean;
    if (std::abs(mean - E) > 1e-9 * std::max(1.0, std::abs(E)))
        throw AssertionFailure("minimize_tau: best state drifted off the energy plane");
    return result;
}

CertifyReport certify(const OptimizationResult& result) {
    CertifyReport report;

    FirstZeroOptions fz;
    fz.delta = result.delta > 0.0 ? result.delta : 1e-6;
    fz.t_max = result.t_max_used > 0.0 ? result.t_max_used : 0.0;
    fz.grid_refine = 10;
    auto tau = first_orthogonality_time(result.best_state, fz);
    report.recomputed_tau = tau ? *tau : fz.t_max;

    const double scale = std::max(std::abs(result.best_tau), 1e-300);
    report.rel_diff = std::abs(report.recomputed_tau - result.best_tau) / scale;
    report.stable = report.rel_diff <= 1e-4;

    const BoundReport b = bounds(result.best_state);
    report.ml_ok = !b.ml_time || report.recomputed_tau >= *b.ml_time - 1e-6;
    report.mt_ok = !b.mt_time || report.recomputed_tau >= *b.mt_time - 1e-6;

    const double mean = energy_stats(result.best_state).mean;
    report.energy_ok = std::abs(mean - result.target_energy) <=
                       1e-9 * std::max(1.0, std::abs(result.target_energy));

    report.passed = report.stable && report.ml_ok && report.mt_ok && report.energy_ok;
    return report;
}

} // namespace qsl
