#include "qsl/composite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace qsl {

namespace {

// One convolution step: all pairwise energy sums, weights multiplied,
// sums equal after rounding to 1e-12 relative tolerance merged.
std::vector<std::pair<double, double>> convolve(
    const std::vector<std::pair<double, double>>& a, const PureState& b) {
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(a.size() * b.size());
    const auto& eb = b.spectrum().energies();
    const auto& pb = b.weights();
    for (const auto& [ea, pa] : a) {
        for (std::size_t j = 0; j < eb.size(); ++j) {
            pairs.emplace_back(ea + eb[j], pa * pb[j]);
        }
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& [e, w] : pairs) {
        if (!merged.empty() &&
            e - merged.back().first <= 1e-12 * std::max(1.0, std::abs(e))) {
            merged.back().second += w;
        } else {
            merged.emplace_back(e, w);
        }
    }
    return merged;
}

} // namespace

ProductState compose(const std::vector<PureState>& parts) {
    if (parts.size() < 2) {
        throw std::invalid_argument("compose: need at least two subsystem states");
    }
    std::vector<std::pair<double, double>> acc;
    {
        const auto& e = parts[0].spectrum().energies();
        const auto& p = parts[0].weights();
        for (std::size_t i = 0; i < e.size(); ++i) acc.emplace_back(e[i], p[i]);
    }
    for (std::size_t s = 1; s < parts.size(); ++s) {
        acc = convolve(acc, parts[s]);
    }
    std::vector<double> energies, weights;
    energies.reserve(acc.size());
    weights.reserve(acc.size());
    for (const auto& [e, w] : acc) {
        energies.push_back(e);
        weights.push_back(w);
    }
    // Ground level is the sum of part grounds, all zero, so the combined
    // list already starts at 0 and needs no shift.
    PureState combined(Spectrum::from_list(std::move(energies)),
                       std::move(weights));
    return ProductState{parts, std::move(combined)};
}

double frame_adjusted_count(double E, double t, double p, double x) {
    if (!std::isfinite(E) || !std::isfinite(t) || !std::isfinite(p) ||
        !std::isfinite(x)) {
        throw std::invalid_argument("frame count: arguments must be finite");
    }
    return 2.0 * (E * t - p * x);
}

} // namespace qsl
