#include "helpers.hpp"

#include "qsl/composite.hpp"
#include "qsl/sequences.hpp"
#include "qsl/spectrum.hpp"
#include "qsl/state.hpp"

#include <cmath>
#include <stdexcept>

using namespace qsl;
using qsl::testing::check_close;
using qsl::testing::close;

TEST_SUITE("composite") {

TEST_CASE("two two-level parts form a three-level product") {
    const ProductState prod =
        compose({PureState::two_level(1.0), PureState::two_level(1.0)});
    check_close(prod.combined.spectrum().energies(), {0.0, 2.0, 4.0}, 1e-15);
    check_close(prod.combined.weights(), {0.25, 0.5, 0.25}, 1e-15);
    CHECK(close(energy_stats(prod.combined).mean, 2.0, 1e-12));
    REQUIRE(prod.parts.size() == 2);
}

TEST_CASE("degenerate sums merge instead of repeating") {
    const ProductState prod =
        compose({PureState::uniform_cycle(2, 1.0), PureState::uniform_cycle(2, 1.0)});
    REQUIRE(prod.combined.size() == 3); // 0, 1 (twice over), 2
    check_close(prod.combined.spectrum().energies(), {0.0, 1.0, 2.0}, 1e-15);
    check_close(prod.combined.weights(), {0.25, 0.5, 0.25}, 1e-15);
}

TEST_CASE("mean energies add across parts") {
    const PureState parts[] = {
        PureState::two_level(1.0),
        PureState::uniform_cycle(4, 1.0),
        sample_fixed_energy(Spectrum::harmonic(6, 0.7), 1.1, 13),
    };
    const ProductState prod = compose({parts[0], parts[1], parts[2]});
    double expected = 0.0;
    for (const PureState& p : parts) expected += energy_stats(p).mean;
    CHECK(close(energy_stats(prod.combined).mean, expected, 1e-12));
}

TEST_CASE("composition of uniform cycles is the long uniform cycle") {
    // 8 levels spaced 1 times 8 levels spaced 8 tile 0..63 exactly once
    const ProductState prod =
        compose({PureState::uniform_cycle(8, 1.0), PureState::uniform_cycle(8, 8.0)});
    REQUIRE(prod.combined.size() == 64);
    for (std::size_t n = 0; n < 64; ++n) {
        CHECK(close(prod.combined.spectrum().energy(n), static_cast<double>(n), 1e-12));
        CHECK(close(prod.combined.weights()[n], 1.0 / 64.0, 1e-15));
    }

    // so the joint system visits 64 orthogonal states at the single-step rate
    const GramReport g = gram(prod.combined, 1.0 / 64.0, 8);
    CHECK(g.max_offdiag <= 1e-12);
}

TEST_CASE("orthogonal sequences lengthen as parts multiply") {
    const ProductState small =
        compose({PureState::uniform_cycle(4, 1.0), PureState::uniform_cycle(4, 4.0)});
    const ProductState large =
        compose({PureState::uniform_cycle(8, 1.0), PureState::uniform_cycle(8, 8.0)});
    const double off_small =
        gram(small.combined, 1.0 / 16.0, 4).max_offdiag;
    const double off_large =
        gram(large.combined, 1.0 / 64.0, 4).max_offdiag;
    CHECK(off_small <= 1e-12);
    CHECK(off_large <= 1e-12);
    CHECK(large.combined.size() > small.combined.size());
}

TEST_CASE("compose requires at least two parts") {
    CHECK_THROWS_AS(compose({}), std::invalid_argument);
    CHECK_THROWS_AS(compose({PureState::two_level(1.0)}), std::invalid_argument);
}

TEST_CASE("combined weights stay normalized") {
    const ProductState prod = compose({
        sample_fixed_energy(Spectrum::harmonic(5, 1.0), 2.2, 1),
        sample_fixed_energy(Spectrum::power_law(6, 0.5, 1.0), 1.0, 2),
    });
    double total = 0.0;
    for (double w : prod.combined.weights()) total += w;
    CHECK(close(total, 1.0, 1e-12));
}

TEST_CASE("frame_adjusted_count evaluates 2(Et - px)") {
    CHECK(frame_adjusted_count(1.0, 1.0, 0.0, 0.0) == 2.0);
    CHECK(frame_adjusted_count(1.0, 1.0, 1.0, 0.5) == 1.0);
    CHECK(frame_adjusted_count(1.0, 1.0, 1.0, 0.25) == 1.5);
    CHECK(frame_adjusted_count(2.0, 3.0, 0.0, 7.0) == 12.0);
    CHECK_THROWS_AS(frame_adjusted_count(std::nan(""), 1.0, 0.0, 0.0),
                    std::invalid_argument);
}

} // TEST_SUITE
