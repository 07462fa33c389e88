// sequences.hpp — long sequences and exact cycles of mutually orthogonal
// states: Gram matrices of step-evolved states, fold-weight analysis on
// ladder spectra, and the correction scalings of the interval-weighted
// construction on power-law spectra.

#pragma once

#include "qsl/spectrum.hpp"
#include "qsl/state.hpp"

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace qsl {

// M x M matrix G[m'][m] = <psi_{m'}|psi_m> for the sequence psi_m obtained
// by evolving `state` in steps of `step`:
//   G[m'][m] = sum_n p_n exp(2*pi*i * E_n * step * (m'-m))
struct GramReport {
    std::size_t size = 0;
    double step = 0.0;
    std::vector<std::complex<double>> entries; // row-major, size*size
    double max_offdiag = 0.0;

    const std::complex<double>& at(std::size_t row, std::size_t col) const {
        return entries[row * size + col];
    }
};

GramReport gram(const PureState& state, double step, std::size_t count);

// Single Gram entry at offset k = m' - m; what the scaling study measures.
std::complex<double> gram_offset(const PureState& state, double step, long k);

// A state whose occupied levels all sit on the ladder {0, eps1, 2*eps1, ...},
// re-indexed by rung. Weights on degenerate levels fold onto one rung.
struct LadderWeights {
    double eps1 = 0.0;
    std::vector<double> weights; // weights[n] on energy n*eps1
};

// Validates against an explicit ladder step, or infers one (floating-point
// gcd of the occupied energies) when none is given. Rejects states whose
// occupied energies are not multiples of a common step.
LadderWeights ladder_weights(const PureState& state,
                             std::optional<double> eps1 = std::nullopt);

// Fold-sums |d_n|^2 = sum_l weights[n + l*N] over residues mod N. The
// output has N entries and sums to 1 when the input does.
std::vector<double> aggregate_d_weights(const std::vector<double>& weights,
                                        std::size_t N);
std::vector<double> aggregate_d_weights(const PureState& state, std::size_t N,
                                        std::optional<double> eps1 = std::nullopt);

struct CycleCheck {
    bool is_cycle = false;
    double max_deviation = 0.0;          // max_n | |d_n|^2 - 1/N |
    std::vector<std::size_t> offending;  // residues beyond tolerance
    std::vector<double> d_weights;
};

// A ladder state passes through N mutually orthogonal states at constant
// rate iff every fold-sum equals 1/N (tolerance 1e-12).
CycleCheck exact_cycle_check(const std::vector<double>& weights, std::size_t N);
CycleCheck exact_cycle_check(const PureState& state, std::size_t N,
                             std::optional<double> eps1 = std::nullopt);

struct CycleFloor {
    double floor = 0.0; // eps1 * (N-1)/2
    double mean = 0.0;
    bool equality = false; // mean == floor: uniform weights on rungs 0..N-1
};

// Mean energy of an exact cycle is bounded below by eps1*(N-1)/2; equality
// holds only for the uniform N-level cycle state. Rejects non-cycle input.
CycleFloor cycle_energy_floor(const LadderWeights& ladder, std::size_t N);

// sum over n < N of ((E_{n+1}-E_n)/E_N)^2. The interval-weighted state's
// mean energy equals (E_N/2) * (1 - sum_delta_sq) identically.
double sum_delta_sq(const Spectrum& spectrum, std::size_t N);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingReport {
    double exponent_fit = 0.0;
    double target_exponent = 0.0;
    double r2 = 0.0;
    bool degenerate = false; // some residual at the numerical floor
    std::vector<std::pair<double, double>> samples; // (N, value)
};

// |gram_offset| at offset k for interval-weighted states on power-law
// spectra E_n = n^c, step 1/E_N, fitted as log(value) vs log(N). The
// residual decays with exponent -2c (up to a logarithmic factor at c=1/2).
ScalingReport residual_scaling(double c, long k,
                               const std::vector<std::size_t>& N_list);

// Same fit for sum_delta_sq(power_law(N+1, c, 1), N); exponent -2c.
ScalingReport deltasq_scaling(double c, const std::vector<std::size_t>& N_list);

} // namespace qsl
