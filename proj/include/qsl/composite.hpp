// composite.hpp — product states of non-interacting subsystems and the
// rest-frame adjusted state count.
//
// For a product of parts the combined mean energy is the sum of the part
// means, so the sustained rate bound 2*E_tot equals the sum of the part
// rate bounds.

#pragma once

#include "qsl/state.hpp"

#include <vector>

namespace qsl {

struct ProductState {
    std::vector<PureState> parts;
    PureState combined; // over the sum-spectrum, weights multiplied
};

// Combined spectrum = all tuple sums of part energies (degenerate sums
// merged, weights added); combined weights = products of part weights.
// Phases of merged levels are dropped: nothing downstream depends on them.
// Requires at least two parts.
ProductState compose(const std::vector<PureState>& parts);

// 2*(E*t - p*x) with h = 1: the orthogonal-state count bound in a frame
// where the system starts at the origin and moves with momentum p along x.
// Evaluates the formula only; validity is the caller's concern.
double frame_adjusted_count(double E, double t, double p, double x);

} // namespace qsl
