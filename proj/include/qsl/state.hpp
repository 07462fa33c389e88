// state.hpp — pure states over a discrete spectrum, stored as probability
// weights p_n = |c_n|^2 plus phases.
//
// The survival amplitude and every bound in this library depend on the
// weights only; phases are carried so evolved states can be displayed and
// compared. Construction normalizes the weights and clamps entries below
// 1e-15 to exactly zero.

#pragma once

#include "qsl/spectrum.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace qsl {

struct EnergyStats {
    double mean = 0.0;       // average energy above the ground state
    double stddev = 0.0;     // energy spread
    double e_max_used = 0.0; // largest energy carrying nonzero weight
};

class PureState {
public:
    // Normalizes `weights` (any nonnegative, finite, not-all-zero vector).
    // `phases` defaults to all zeros; angles are stored wrapped to [0, 2pi).
    PureState(Spectrum spectrum, std::vector<double> weights,
              std::vector<double> phases = {});

    // Equal weights 1/2 on energies {0, 2E}; reaches an orthogonal state in
    // the minimum time allowed at average energy E.
    static PureState two_level(double E);

    // Equal weights 1/N on the ladder {0, eps1, ..., (N-1)*eps1}; passes
    // through N mutually orthogonal states per ladder period.
    static PureState uniform_cycle(std::size_t N, double eps1);

    // Weight p_n = (E_{n+1} - E_n) / E_N on level n for n = 0..N-1, zero
    // elsewhere. Degenerate repeats get weight exactly zero. Requires the
    // spectrum to have at least N+1 levels and E_N > 0.
    static PureState interval_weighted(const Spectrum& spectrum, std::size_t N);

    // Four levels {0, eps, n*eps, (n+1)*eps} with pair weights a^2, a^2,
    // b^2, b^2 chosen so the state is normalized and has mean energy
    // exactly E. Requires 0 < eps < 2E and (2n+1)*eps/2 > E. The energy
    // spread grows like sqrt(n) while the mean stays fixed.
    static PureState big_delta(double E, double eps, std::size_t n);

    // Single eigenstate: all weight on one level of energy E (>= 0).
    static PureState eigenstate(double E);

    const Spectrum& spectrum() const { return spectrum_; }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<double>& phases() const { return phases_; }
    std::size_t size() const { return weights_.size(); }

private:
    Spectrum spectrum_;
    std::vector<double> weights_;
    std::vector<double> phases_;
};

// mean = sum p_n E_n, stddev = sqrt(sum p_n E_n^2 - mean^2). Phases are
// irrelevant by construction.
EnergyStats energy_stats(const PureState& state);

// <a|b> for two states over the same level list.
std::complex<double> inner_product(const PureState& a, const PureState& b);

// Random weights on the probability simplex with sum p_n E_n = E, exact to
// ~1e-12 and deterministic per seed. Samples a Dirichlet-uniform point and
// mixes it toward the extreme level on the opposite side of the energy
// constraint plane. Requires min < E < max over the spectrum.
PureState sample_fixed_energy(const Spectrum& spectrum, double E,
                              std::uint64_t seed);

} // namespace qsl
