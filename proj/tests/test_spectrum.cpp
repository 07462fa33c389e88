#include "helpers.hpp"

#include "qsl/spectrum.hpp"

#include <limits>
#include <stdexcept>

using qsl::Spectrum;
using qsl::testing::check_close;

TEST_SUITE("spectrum") {

TEST_CASE("from_list sorts and shifts the ground state to zero") {
    const Spectrum s = Spectrum::from_list({3.0, 1.0, 2.0});
    check_close(s.energies(), {0.0, 1.0, 2.0}, 0.0);
    CHECK(s.energy(0) == 0.0);
    CHECK(s.max_energy() == 2.0);
    CHECK(s.size() == 3);
}

TEST_CASE("from_list single level becomes {0}") {
    const Spectrum s = Spectrum::from_list({5.0});
    REQUIRE(s.size() == 1);
    CHECK(s.energy(0) == 0.0);
}

TEST_CASE("from_list keeps degenerate levels as repeats") {
    const Spectrum s = Spectrum::from_list({4.0, 1.0, 1.0, 0.0});
    check_close(s.energies(), {0.0, 1.0, 1.0, 4.0}, 0.0);
}

TEST_CASE("from_list is idempotent on its own output") {
    const Spectrum once = Spectrum::from_list({-2.0, 7.5, 0.25, 0.25});
    const Spectrum twice = Spectrum::from_list(once.energies());
    check_close(once.energies(), twice.energies(), 0.0);
}

TEST_CASE("from_list handles negative inputs by shifting") {
    const Spectrum s = Spectrum::from_list({-1.0, 0.0, 3.0});
    check_close(s.energies(), {0.0, 1.0, 4.0}, 1e-15);
}

TEST_CASE("from_list rejects bad input") {
    CHECK_THROWS_AS(Spectrum::from_list({}), std::invalid_argument);
    CHECK_THROWS_AS(Spectrum::from_list({0.0, std::numeric_limits<double>::quiet_NaN()}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Spectrum::from_list({0.0, std::numeric_limits<double>::infinity()}),
                    std::invalid_argument);
}

TEST_CASE("from_list keeps the label") {
    const Spectrum s = Spectrum::from_list({0.0, 1.0}, "pair");
    CHECK(s.label() == "pair");
}

TEST_CASE("harmonic ladder") {
    const Spectrum s = Spectrum::harmonic(4, 1.0);
    check_close(s.energies(), {0.0, 1.0, 2.0, 3.0}, 0.0);

    const Spectrum half = Spectrum::harmonic(3, 0.5);
    check_close(half.energies(), {0.0, 0.5, 1.0}, 0.0);

    const Spectrum one = Spectrum::harmonic(1, 2.0);
    REQUIRE(one.size() == 1);
    CHECK(one.energy(0) == 0.0);
}

TEST_CASE("harmonic rejects bad parameters") {
    CHECK_THROWS_AS(Spectrum::harmonic(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Spectrum::harmonic(4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Spectrum::harmonic(4, -1.0), std::invalid_argument);
}

TEST_CASE("power_law basic values") {
    const Spectrum s = Spectrum::power_law(3, 0.5, 1.0);
    REQUIRE(s.size() == 3);
    CHECK(s.energy(0) == 0.0);
    CHECK(s.energy(1) == doctest::Approx(1.0));
    CHECK(s.energy(2) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("power_law with c=1 matches the harmonic ladder") {
    const Spectrum p = Spectrum::power_law(6, 1.0, 0.75);
    const Spectrum h = Spectrum::harmonic(6, 0.75);
    check_close(p.energies(), h.energies(), 1e-15);
}

TEST_CASE("power_law gaps shrink for c < 1") {
    const Spectrum s = Spectrum::power_law(100, 0.5, 1.0);
    for (std::size_t n = 0; n + 2 < s.size(); ++n) {
        const double gap_here = s.energy(n + 1) - s.energy(n);
        const double gap_next = s.energy(n + 2) - s.energy(n + 1);
        CHECK(gap_next < gap_here);
    }
}

TEST_CASE("power_law rejects bad parameters") {
    CHECK_THROWS_AS(Spectrum::power_law(1, 0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Spectrum::power_law(5, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Spectrum::power_law(5, 1.2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Spectrum::power_law(5, -0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Spectrum::power_law(5, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("every constructor yields sorted energies starting at zero") {
    const Spectrum specs[] = {
        Spectrum::from_list({9.0, 2.0, 2.0, 5.5, -1.0}),
        Spectrum::harmonic(7, 0.3),
        Spectrum::power_law(12, 0.7, 2.0),
    };
    for (const Spectrum& s : specs) {
        CHECK(s.energy(0) == 0.0);
        for (std::size_t n = 0; n + 1 < s.size(); ++n)
            CHECK(s.energy(n) <= s.energy(n + 1));
    }
}

} // TEST_SUITE
