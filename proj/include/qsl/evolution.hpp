// evolution.hpp — survival amplitude S(t), unitary phase evolution, first
// orthogonality time, and the single-step speed bounds.
//
// With h = 1 the survival amplitude of a state with weights p_n is
//   S(t) = sum_n p_n exp(-2*pi*i * E_n * t)
// and the bounds on the first time |S| reaches (approximately) zero are
//   tau >= 1/(4E)      (mean energy above the ground state)
//   tau >= 1/(4*dE)    (energy spread)
// plus, for an N-state cycle, (N-1)/N * 1/(2E) and (N-1)/N * 1/E_max.

#pragma once

#include "qsl/state.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace qsl {

struct OverlapTrace {
    std::vector<double> times;
    std::vector<double> re;
    std::vector<double> im;
    std::vector<double> mag;
};

struct BoundReport {
    std::optional<double> ml_time;      // 1/(4E)
    std::optional<double> mt_time;      // 1/(4*dE)
    std::optional<double> cycle_time;   // (N-1)/N * 1/(2E)
    std::optional<double> emax_time;    // (N-1)/N * 1/E_max_used
    std::optional<double> measured_tau; // filled by callers that measure
    std::vector<std::string> notes;
};

struct FirstZeroOptions {
    double delta = 1e-6;  // orthogonality threshold on |S|, in (0, 0.5]
    double t_max = 0.0;   // search horizon; <= 0 means 50/(4E)
    int grid_refine = 1;  // multiplies the base grid density
};

// S(t) for any real t. |S| <= 1 and S(0) = 1.
std::complex<double> overlap(const PureState& state, double t);

// Same weights, phases advanced by -2*pi*E_n*t.
PureState evolve(const PureState& state, double t);

// Smallest t in (0, t_max] with |S(t)| <= delta: dense grid scan with step
// 1/(20 * E_span * grid_refine) followed by bisection to 1e-12 relative
// accuracy. Empty when no crossing occurs before t_max (in particular for
// eigenstates, which never leave themselves).
std::optional<double> first_orthogonality_time(const PureState& state,
                                               const FirstZeroOptions& opts = {});
std::optional<double> first_orthogonality_time(const PureState& state,
                                               double delta, double t_max);

// All bound times that are defined for this state. cycle_N adds the
// exact-cycle and max-energy bounds for a cycle of that length.
BoundReport bounds(const PureState& state,
                   std::optional<std::size_t> cycle_N = std::nullopt);

// Slack of Re S(t) >= 1 - 4*E*t + (2/pi) Im S(t); nonnegative for all
// t >= 0 up to rounding. Zero at t = 0 and wherever the energy bound is
// saturated.
double reim_gap(const PureState& state, double t);

// Sampled S(t) on an inclusive uniform grid of `points` >= 2 values.
OverlapTrace trace(const PureState& state, double t0, double t1,
                   std::size_t points);

std::vector<std::pair<std::string, double>> achievability_ratios(const BoundReport& report);

} // namespace qsl
