// spectrum.hpp — discrete, non-decreasing energy spectra with the ground
// state pinned at zero energy.
//
// Units: h = 1 throughout the library, so energies are frequencies and the
// zero of energy sits at the lowest level. Degenerate eigenvalues are kept
// as repeated entries.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace qsl {

class Spectrum {
public:
    // Sorts, then shifts so the minimum is exactly 0. Multiplicities are
    // preserved. Rejects empty input and non-finite values.
    static Spectrum from_list(std::vector<double> raw, std::string label = "");

    // Equally spaced ladder {0, eps1, ..., (count-1)*eps1}.
    static Spectrum harmonic(std::size_t count, double eps1, std::string label = "");

    // energies[n] = scale * n^c for n = 0..count-1, with 0 < c <= 1.
    // c = 1 recovers the harmonic ladder with step `scale`.
    static Spectrum power_law(std::size_t count, double c, double scale,
                              std::string label = "");

    const std::vector<double>& energies() const { return energies_; }
    double energy(std::size_t n) const { return energies_[n]; }
    double max_energy() const { return energies_.back(); }
    std::size_t size() const { return energies_.size(); }
    const std::string& label() const { return label_; }

private:
    Spectrum(std::vector<double> energies, std::string label);

    std::vector<double> energies_; // non-decreasing, energies_[0] == 0
    std::string label_;
};

} // namespace qsl
