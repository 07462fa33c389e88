// latticegas.hpp — single-speed lattice gas on a periodic square lattice.
//
// Every particle carries the same kinetic energy (dE = 1) and hops one site
// per step (dT = 1), so the total energy E equals the particle count and at
// most 2E site occupancies can change per step: E spots vacated plus E
// spots newly occupied. The simulator counts the actual changes so the
// ceiling can be checked configuration by configuration.

#pragma once

#include "qsl/rng.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace qsl {

struct StepReport {
    std::size_t vacated = 0;       // sites occupied before, empty after
    std::size_t newly_occupied = 0;
    std::size_t changes = 0;       // vacated + newly_occupied
    std::size_t slot_changes = 0;  // direction-resolved (site,dir) flips
    std::size_t bound = 0;         // 2 * particle_count
    double utilization = 0.0;      // changes / bound (0 on an empty lattice)
};

struct RunSummary {
    std::size_t steps = 0;
    std::size_t particle_count = 0;
    double min_utilization = 0.0;
    double mean_utilization = 0.0;
    double max_utilization = 0.0;
    bool conserved = false;
    std::vector<StepReport> per_step;
};

class LatticeGas {
public:
    // Direction bits: 0 = +x, 1 = +y, 2 = -x, 3 = -y. Opposite of d is d^2.
    static constexpr int kDirections = 4;

    LatticeGas(std::size_t width, std::size_t height);

    // Each (site, direction) slot filled independently with probability
    // `density`; deterministic per seed.
    static LatticeGas random(std::size_t width, std::size_t height,
                             double density, std::uint64_t seed);

    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }
    std::size_t particle_count() const;
    std::array<long long, 2> total_momentum() const;

    std::uint8_t mask_at(std::size_t x, std::size_t y) const;
    void set_mask(std::size_t x, std::size_t y, std::uint8_t mask);

    // One synchronous update: optional head-on collision rule (exactly two
    // particles meeting head-on at a site rotate 90 degrees, conserving
    // count and momentum), then every particle moves one site.
    StepReport step(bool collisions);

    // Aggregates per-step reports; throws AssertionFailure if the particle
    // count ever changes.
    RunSummary run(std::size_t steps, bool collisions);

private:
    std::size_t index(std::size_t x, std::size_t y) const { return y * width_ + x; }

    std::size_t width_;
    std::size_t height_;
    std::vector<std::uint8_t> cells_; // one 4-bit mask per site
};

} // namespace qsl
