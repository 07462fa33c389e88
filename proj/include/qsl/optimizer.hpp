// optimizer.hpp — derivative-free search for the fastest state at fixed
// average energy on a fixed spectrum.
//
// The search tries to push the first orthogonality time below 1/(4E) and
// must fail; a run that did beat the bound would falsify the library, so
// minimize_tau raises AssertionFailure in that case instead of returning.

#pragma once

#include "qsl/spectrum.hpp"
#include "qsl/state.hpp"

#include <cstdint>
#include <vector>

namespace qsl {

struct OptimizeOptions {
    double delta = 1e-6;      // orthogonality threshold passed to the objective
    double t_max = 0.0;       // search horizon; <= 0 means 50/(4E)
    std::size_t budget = 5000; // total objective evaluations across restarts
    std::uint64_t seed = 0;
    std::size_t restarts = 8;
};

struct OptimizationResult {
    PureState best_state;
    double best_tau = 0.0;
    double bound_tau = 0.0; // 1/(4E)
    double gap = 0.0;       // best_tau - bound_tau
    std::size_t iterations = 0;
    bool converged = false;
    double target_energy = 0.0;
    double delta = 0.0;
    double t_max_used = 0.0;
    std::uint64_t seed = 0;
};

struct CertifyReport {
    double recomputed_tau = 0.0;
    double rel_diff = 0.0; // |recomputed - stored| / stored
    bool stable = false;   // rel_diff <= 1e-4
    bool ml_ok = false;    // recomputed >= 1/(4E) - 1e-6
    bool mt_ok = false;    // recomputed >= 1/(4 dE) - 1e-6 (true if dE = 0)
    bool energy_ok = false;
    bool passed = false;
};

// Feasible weights nearest to `raw` in the renormalize-and-shift sense:
// clamp negatives, renormalize, then shift along the centered energy
// direction (the normalization-preserving direction along which the mean
// moves fastest) until both constraints hold. Every optimizer candidate
// passes through here before evaluation.
std::vector<double> project_to_energy_simplex(std::vector<double> raw,
                                              const std::vector<double>& energies,
                                              double E_target);

// Restarted Nelder-Mead over the probability simplex intersected with the
// energy plane; objective = first orthogonality time (t_max when no zero is
// found inside the horizon). Deterministic per seed. Requires E strictly
// inside the spectrum hull.
OptimizationResult minimize_tau(const Spectrum& spectrum, double E,
                                const OptimizeOptions& opts = {});

// Recomputes tau of the best state on a 10x finer grid and rechecks every
// inequality; a recomputation that disagrees with the stored value by more
// than 1e-4 relative marks the certificate unstable.
CertifyReport certify(const OptimizationResult& result);

} // namespace qsl
