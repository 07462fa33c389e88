#include "helpers.hpp"

#include "qsl/errors.hpp"
#include "qsl/latticegas.hpp"

#include <stdexcept>

using namespace qsl;

TEST_SUITE("latticegas") {

TEST_CASE("construction and validation") {
    CHECK_THROWS_AS(LatticeGas(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(LatticeGas(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(LatticeGas::random(4, 4, -0.1, 1), std::invalid_argument);
    CHECK_THROWS_AS(LatticeGas::random(4, 4, 1.5, 1), std::invalid_argument);

    LatticeGas gas(3, 3);
    CHECK(gas.particle_count() == 0);
    CHECK_THROWS_AS(gas.mask_at(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(gas.set_mask(0, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(gas.set_mask(0, 0, 16), std::invalid_argument);
    CHECK_THROWS_AS(gas.run(0, true), std::invalid_argument);
}

TEST_CASE("density extremes") {
    CHECK(LatticeGas::random(6, 5, 0.0, 9).particle_count() == 0);
    CHECK(LatticeGas::random(6, 5, 1.0, 9).particle_count() == 4 * 6 * 5);
}

TEST_CASE("random fill is deterministic per seed") {
    const LatticeGas a = LatticeGas::random(8, 8, 0.3, 7);
    const LatticeGas b = LatticeGas::random(8, 8, 0.3, 7);
    const LatticeGas c = LatticeGas::random(8, 8, 0.3, 8);
    bool same = true, same_other_seed = true;
    for (std::size_t y = 0; y < 8; ++y)
        for (std::size_t x = 0; x < 8; ++x) {
            if (a.mask_at(x, y) != b.mask_at(x, y)) same = false;
            if (a.mask_at(x, y) != c.mask_at(x, y)) same_other_seed = false;
        }
    CHECK(same);
    CHECK_FALSE(same_other_seed);
}

TEST_CASE("a lone particle saturates the change ceiling every step") {
    LatticeGas gas(4, 4);
    gas.set_mask(1, 1, 0b0001); // one particle moving +x
    const StepReport first = gas.step(false);
    CHECK(first.vacated == 1);
    CHECK(first.newly_occupied == 1);
    CHECK(first.changes == 2);
    CHECK(first.bound == 2);
    CHECK(first.utilization == 1.0);
    CHECK(gas.mask_at(2, 1) == 0b0001);

    // three more steps wrap it around back to the start
    gas.step(false);
    gas.step(false);
    gas.step(false);
    CHECK(gas.mask_at(1, 1) == 0b0001);
    CHECK(gas.particle_count() == 1);

    const RunSummary summary = gas.run(100, false);
    CHECK(summary.conserved);
    CHECK(summary.min_utilization == 1.0);
    CHECK(summary.mean_utilization == 1.0);
    CHECK(summary.max_utilization == 1.0);
    CHECK(summary.per_step.size() == 100);
}

TEST_CASE("counter-movers on adjacent sites pass through for free") {
    LatticeGas gas(4, 4);
    gas.set_mask(0, 0, 0b0001); // +x
    gas.set_mask(1, 0, 0b0100); // -x
    const StepReport report = gas.step(false);
    // both sites stay occupied, so the occupancy pattern never changes
    CHECK(report.changes == 0);
    CHECK(report.utilization == 0.0);
    CHECK(report.slot_changes == 4);
    CHECK(gas.mask_at(0, 0) == 0b0100);
    CHECK(gas.mask_at(1, 0) == 0b0001);
}

TEST_CASE("head-on pairs at one site scatter sideways under the collision rule") {
    LatticeGas gas(5, 5);
    gas.set_mask(2, 2, 0b0101); // +x and -x on the same site
    const auto before = gas.total_momentum();
    const StepReport report = gas.step(true);
    CHECK(gas.mask_at(2, 3) == 0b0010); // now moving +y
    CHECK(gas.mask_at(2, 1) == 0b1000); // and -y
    CHECK(gas.mask_at(2, 2) == 0);
    CHECK(report.vacated == 1);
    CHECK(report.newly_occupied == 2);
    CHECK(report.changes == 3);
    const auto after = gas.total_momentum();
    CHECK(before == after);
    CHECK(gas.particle_count() == 2);
}

TEST_CASE("the same pair streams straight through without the rule") {
    LatticeGas gas(5, 5);
    gas.set_mask(2, 2, 0b0101);
    gas.step(false);
    CHECK(gas.mask_at(3, 2) == 0b0001);
    CHECK(gas.mask_at(1, 2) == 0b0100);
}

TEST_CASE("random runs conserve count and momentum and respect the ceiling") {
    for (const bool collisions : {false, true}) {
        LatticeGas gas = LatticeGas::random(16, 16, 0.25, 11);
        const std::size_t count = gas.particle_count();
        const auto momentum = gas.total_momentum();
        const RunSummary summary = gas.run(200, collisions);
        CHECK(summary.conserved);
        CHECK(summary.particle_count == count);
        CHECK(gas.particle_count() == count);
        CHECK(gas.total_momentum() == momentum);
        for (const StepReport& r : summary.per_step) {
            CHECK(r.changes <= r.bound);
            CHECK(r.bound == 2 * count);
        }
        CHECK(summary.max_utilization <= 1.0);
        CHECK(summary.min_utilization >= 0.0);
    }
}

TEST_CASE("an empty lattice reports zero utilization") {
    LatticeGas gas(5, 5);
    const RunSummary summary = gas.run(10, true);
    CHECK(summary.conserved);
    CHECK(summary.particle_count == 0);
    CHECK(summary.mean_utilization == 0.0);
    CHECK(summary.max_utilization == 0.0);
}

TEST_CASE("crowding pushes utilization below the ceiling") {
    LatticeGas gas = LatticeGas::random(12, 12, 0.9, 2);
    const RunSummary summary = gas.run(50, true);
    CHECK(summary.mean_utilization < 0.5);
    CHECK(summary.conserved);
}

TEST_CASE("a completely full lattice is frozen in occupancy") {
    LatticeGas gas = LatticeGas::random(6, 6, 1.0, 1);
    const StepReport report = gas.step(true);
    CHECK(report.changes == 0);
    CHECK(report.slot_changes == 0);
    CHECK(report.utilization == 0.0);
}

TEST_CASE("runs are reproducible") {
    LatticeGas a = LatticeGas::random(8, 8, 0.4, 3);
    LatticeGas b = LatticeGas::random(8, 8, 0.4, 3);
    const RunSummary ra = a.run(50, true);
    const RunSummary rb = b.run(50, true);
    REQUIRE(ra.per_step.size() == rb.per_step.size());
    for (std::size_t i = 0; i < ra.per_step.size(); ++i) {
        CHECK(ra.per_step[i].changes == rb.per_step[i].changes);
        CHECK(ra.per_step[i].slot_changes == rb.per_step[i].slot_changes);
    }
}

} // TEST_SUITE
