#include "qsl/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace qsl {

Spectrum::Spectrum(std::vector<double> energies, std::string label)
    : energies_(std::move(energies)), label_(std::move(label)) {}

Spectrum Spectrum::from_list(std::vector<double> raw, std::string label) {
    if (raw.empty()) {
        throw std::invalid_argument("spectrum: energy list must not be empty");
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!std::isfinite(raw[i])) {
            throw std::invalid_argument("spectrum: non-finite energy at index " +
                                        std::to_string(i));
        }
    }
    std::sort(raw.begin(), raw.end());
    const double ground = raw.front();
    for (double& e : raw) e -= ground;
    raw.front() = 0.0; // exact, independent of rounding in the shift
    return Spectrum(std::move(raw), std::move(label));
}

Spectrum Spectrum::harmonic(std::size_t count, double eps1, std::string label) {
    if (count < 1) {
        throw std::invalid_argument("harmonic spectrum: need at least one level");
    }
    if (!(eps1 > 0.0) || !std::isfinite(eps1)) {
        throw std::invalid_argument("harmonic spectrum: eps1 must be positive");
    }
    std::vector<double> energies(count);
    for (std::size_t n = 0; n < count; ++n) {
        energies[n] = static_cast<double>(n) * eps1;
    }
    return Spectrum(std::move(energies), std::move(label));
}

Spectrum Spectrum::power_law(std::size_t count, double c, double scale,
                             std::string label) {
    if (count < 2) {
        throw std::invalid_argument("power-law spectrum: need at least two levels");
    }
    if (!(c > 0.0) || !(c <= 1.0)) {
        throw std::invalid_argument("power-law spectrum: exponent must be in (0, 1]");
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw std::invalid_argument("power-law spectrum: scale must be positive");
    }
    std::vector<double> energies(count);
    for (std::size_t n = 0; n < count; ++n) {
        energies[n] = scale * std::pow(static_cast<double>(n), c);
    }
    return Spectrum(std::move(energies), std::move(label));
}

} // namespace qsl
