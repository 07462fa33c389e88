#include "qsl/latticegas.hpp"

#include "qsl/errors.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace qsl {

namespace {

// dx, dy per direction bit. Bit 0 = +x, 1 = +y, 2 = -x, 3 = -y.
constexpr int kDx[4] = {1, 0, -1, 0};
constexpr int kDy[4] = {0, 1, 0, -1};

std::uint8_t collide_mask(std::uint8_t mask) {
    // Head-on pairs rotate: {+x,-x} <-> {+y,-y}. Any other occupancy
    // pattern passes through unchanged.
    if (mask == 0b0101) return 0b1010;
    if (mask == 0b1010) return 0b0101;
    return mask;
}

} // namespace

LatticeGas::LatticeGas(std::size_t width, std::size_t height)
    : width_(width), height_(height), cells_(width * height, 0) {
    if (width == 0 || height == 0)
        throw std::invalid_argument("LatticeGas: dimensions must be positive");
}

LatticeGas LatticeGas::random(std::size_t width, std::size_t height,
                              double density, std::uint64_t seed) {
    if (!(density >= 0.0 && density <= 1.0))
        throw std::invalid_argument("LatticeGas::random: density must lie in [0, 1]");
    LatticeGas gas(width, height);
    Rng rng(seed);
    for (std::size_t i = 0; i < gas.cells_.size(); ++i) {
        std::uint8_t mask = 0;
        for (int d = 0; d < kDirections; ++d)
            if (rng.uniform() < density) mask |= static_cast<std::uint8_t>(1u << d);
        gas.cells_[i] = mask;
    }
    return gas;
}

std::size_t LatticeGas::particle_count() const {
    std::size_t count = 0;
    for (std::uint8_t mask : cells_) count += static_cast<std::size_t>(std::popcount(mask));
    return count;
}

std::array<long long, 2> LatticeGas::total_momentum() const {
    std::array<long long, 2> p{0, 0};
    for (std::uint8_t mask : cells_)
        for (int d = 0; d < kDirections; ++d)
            if (mask & (1u << d)) {
                p[0] += kDx[d];
                p[1] += kDy[d];
            }
    return p;
}

std::uint8_t LatticeGas::mask_at(std::size_t x, std::size_t y) const {
    if (x >= width_ || y >= height_)
        throw std::invalid_argument("LatticeGas::mask_at: coordinates out of range");
    return cells_[index(x, y)];
}

void LatticeGas::set_mask(std::size_t x, std::size_t y, std::uint8_t mask) {
    if (x >= width_ || y >= height_)
        throw std::invalid_argument("LatticeGas::set_mask: coordinates out of range");
    if (mask > 0b1111)
        throw std::invalid_argument("LatticeGas::set_mask: mask uses only bits 0..3");
    cells_[index(x, y)] = mask;
}

StepReport LatticeGas::step(bool collisions) {
    const std::size_t count = particle_count();

    std::vector<std::uint8_t> staged = cells_;
    if (collisions)
        for (auto& mask : staged) mask = collide_mask(mask);

    std::vector<std::uint8_t> next(cells_.size(), 0);
    for (std::size_t y = 0; y < height_; ++y)
        for (std::size_t x = 0; x < width_; ++x) {
            const std::uint8_t mask = staged[index(x, y)];
            if (!mask) continue;
            for (int d = 0; d < kDirections; ++d) {
                if (!(mask & (1u << d))) continue;
                const long long w = static_cast<long long>(width_);
                const long long h = static_cast<long long>(height_);
                const std::size_t nx = static_cast<std::size_t>(
                    (static_cast<long long>(x) + kDx[d] + w) % w);
                const std::size_t ny = static_cast<std::size_t>(
                    (static_cast<long long>(y) + kDy[d] + h) % h);
                next[index(nx, ny)] |= static_cast<std::uint8_t>(1u << d);
            }
        }

    StepReport report;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        const bool was = cells_[i] != 0;
        const bool now = next[i] != 0;
        if (was && !now) ++report.vacated;
        if (!was && now) ++report.newly_occupied;
        report.slot_changes += static_cast<std::size_t>(
            std::popcount(static_cast<std::uint8_t>(cells_[i] ^ next[i])));
    }
    report.changes = report.vacated + report.newly_occupied;
    report.bound = 2 * count;
    report.utilization = count == 0 ? 0.0
                                    : static_cast<double>(report.changes) /
                                          static_cast<double>(report.bound);

    cells_ = std::move(next);
    return report;
}

RunSummary LatticeGas::run(std::size_t steps, bool collisions) {
    if (steps == 0)
        throw std::invalid_argument("LatticeGas::run: steps must be positive");

    RunSummary summary;
    summary.steps = steps;
    summary.particle_count = particle_count();
    summary.per_step.reserve(steps);

    double min_u = 1.0, max_u = 0.0, sum_u = 0.0;
    for (std::size_t s = 0; s < steps; ++s) {
        StepReport report = step(collisions);
        if (report.changes > report.bound)
            throw AssertionFailure(
                "lattice gas: site changes " + std::to_string(report.changes) +
                " exceeded ceiling " + std::to_string(report.bound));
        if (particle_count() != summary.particle_count)
            throw AssertionFailure("lattice gas: particle count not conserved");
        min_u = std::min(min_u, report.utilization);
        max_u = std::max(max_u, report.utilization);
        sum_u += report.utilization;
        summary.per_step.push_back(report);
    }

    summary.min_utilization = min_u;
    summary.max_utilization = max_u;
    summary.mean_utilization = sum_u / static_cast<double>(steps);
    summary.conserved = true;
    return summary;
}

} // namespace qsl
