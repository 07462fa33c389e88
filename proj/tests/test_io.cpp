#include "helpers.hpp"

#include "qsl/evolution.hpp"
#include "qsl/io.hpp"
#include "qsl/sequences.hpp"
#include "qsl/spectrum.hpp"
#include "qsl/state.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

using namespace qsl;
using qsl::testing::TempDir;
using qsl::testing::close;

TEST_SUITE("io") {

TEST_CASE("format_double survives the round trip") {
    CHECK(io::format_double(0.25) == "0.25");
    CHECK(io::format_double(0.0) == "0");
    CHECK(io::format_double(1.0 / 3.0) == "0.33333333333333331");
    CHECK(io::format_double(std::numeric_limits<double>::quiet_NaN()) == "null");
    CHECK(io::format_double(std::numeric_limits<double>::infinity()) == "null");
    for (double v : {std::sqrt(2.0), 1e-300, -0.123456789012345678, 3.5e17}) {
        const std::string text = io::format_double(v);
        CHECK(std::strtod(text.c_str(), nullptr) == v);
    }
}

TEST_CASE("json objects dump with sorted keys and a trailing newline") {
    io::Json j = io::Json::object();
    j["zebra"] = io::Json::integer(1);
    j["alpha"] = io::Json::boolean(true);
    j["mid"] = io::Json::null();
    const std::string text = j.dump();
    const auto alpha_pos = text.find("\"alpha\"");
    const auto mid_pos = text.find("\"mid\"");
    const auto zebra_pos = text.find("\"zebra\"");
    REQUIRE(alpha_pos != std::string::npos);
    CHECK(alpha_pos < mid_pos);
    CHECK(mid_pos < zebra_pos);
    CHECK(text.back() == '\n');
    CHECK(text.find("null") != std::string::npos);
}

TEST_CASE("json escapes strings and renders empty containers compactly") {
    io::Json j = io::Json::object();
    j["text"] = io::Json::string("a\"b\\c\nd");
    j["empty_list"] = io::Json::array();
    j["empty_obj"] = io::Json::object();
    const std::string text = j.dump();
    CHECK(text.find("a\\\"b\\\\c\\nd") != std::string::npos);
    CHECK(text.find("[]") != std::string::npos);
    CHECK(text.find("{}") != std::string::npos);
}

TEST_CASE("json dumps are byte-deterministic") {
    const auto build = [] {
        io::Json j = io::Json::object();
        j["b"] = io::Json::number(1.0 / 7.0);
        j["a"] = io::Json::array();
        j["a"].push_back(io::Json::number(0.1));
        j["a"].push_back(io::Json::string("x"));
        return j.dump();
    };
    CHECK(build() == build());

    const PureState s = PureState::two_level(1.0);
    CHECK(io::bound_report_json(bounds(s)).dump() == io::bound_report_json(bounds(s)).dump());
    CHECK(io::state_json(s).dump() == io::state_json(s).dump());
}

TEST_CASE("state json round-trips through a file") {
    TempDir dir;
    const PureState original =
        evolve(sample_fixed_energy(Spectrum::harmonic(5, 1.0), 2.0, 7), 0.3);
    const std::string path = dir.write("state.json", io::state_json(original).dump());
    const PureState loaded = io::load_state(path);
    REQUIRE(loaded.size() == original.size());
    for (std::size_t n = 0; n < original.size(); ++n) {
        CHECK(close(loaded.spectrum().energy(n), original.spectrum().energy(n), 1e-15));
        CHECK(close(loaded.weights()[n], original.weights()[n], 1e-14));
        CHECK(close(loaded.phases()[n], original.phases()[n], 1e-14));
    }
}

TEST_CASE("state json carries the spectrum label through") {
    TempDir dir;
    const Spectrum spec = Spectrum::harmonic(3, 1.0, "ladder3");
    const PureState s(spec, {0.2, 0.5, 0.3});
    const std::string path = dir.write("state.json", io::state_json(s).dump());
    CHECK(io::load_state(path).spectrum().label() == "ladder3");
}

TEST_CASE("load_state accepts flat and array spectra") {
    TempDir dir;
    const std::string flat =
        dir.write("flat.json", R"({"energies": [0, 2], "weights": [0.5, 0.5]})");
    const PureState a = io::load_state(flat);
    CHECK(a.spectrum().energy(1) == 2.0);

    const std::string nested =
        dir.write("nested.json", R"({"spectrum": [0, 1, 2], "weights": [0.2, 0.3, 0.5]})");
    const PureState b = io::load_state(nested);
    CHECK(b.size() == 3);
    CHECK(close(b.weights()[2], 0.5, 1e-15));
}

TEST_CASE("load_state reorders levels so weights stay attached") {
    TempDir dir;
    const std::string path =
        dir.write("swap.json", R"({"energies": [2, 0], "weights": [0.25, 0.75]})");
    const PureState s = io::load_state(path);
    CHECK(s.spectrum().energy(0) == 0.0);
    CHECK(close(s.weights()[0], 0.75, 1e-15));
    CHECK(close(s.weights()[1], 0.25, 1e-15));
}

TEST_CASE("load_state rejects malformed files") {
    TempDir dir;
    CHECK_THROWS_AS(io::load_state(dir.file("missing.json")), std::invalid_argument);
    CHECK_THROWS_AS(io::load_state(dir.write("bad.json", "{nope")), std::invalid_argument);
    CHECK_THROWS_AS(io::load_state(dir.write("noweights.json", R"({"energies": [0, 1]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        io::load_state(dir.write("short.json",
                                 R"({"energies": [0, 1], "weights": [1.0]})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        io::load_state(dir.write(
            "phases.json",
            R"({"energies": [0, 1], "weights": [0.5, 0.5], "phases": [0.1]})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        io::load_state(dir.write("text.json",
                                 R"({"energies": ["a"], "weights": [1.0]})")),
        std::invalid_argument);
}

TEST_CASE("load_spectrum accepts arrays and labeled objects") {
    TempDir dir;
    const Spectrum a = io::load_spectrum(dir.write("arr.json", "[3, 1, 2]"));
    CHECK(a.size() == 3);
    CHECK(a.energy(0) == 0.0);
    CHECK(a.energy(2) == 2.0);

    const Spectrum b = io::load_spectrum(
        dir.write("obj.json", R"({"energies": [0, 0.5, 1.0], "label": "halves"})"));
    CHECK(b.label() == "halves");
    CHECK(b.size() == 3);

    CHECK_THROWS_AS(io::load_spectrum(dir.write("junk.json", R"({"nope": 1})")),
                    std::invalid_argument);
}

TEST_CASE("trace csv layout") {
    const OverlapTrace tr = trace(PureState::two_level(1.0), 0.0, 0.25, 3);
    const std::string csv = io::trace_csv(tr);
    CHECK(csv.rfind("t,re,im,mag\n", 0) == 0);
    CHECK(csv.find("\n0,1,0,1\n") != std::string::npos);
    std::size_t lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == 4); // header + three samples
    CHECK(io::trace_csv(tr) == csv);
}

TEST_CASE("scaling csv layout") {
    ScalingReport report;
    report.samples = {{50.0, 0.25}, {100.0, 0.125}};
    const std::string csv = io::scaling_csv(report);
    CHECK(csv == "N,value\n50,0.25\n100,0.125\n");
}

TEST_CASE("latticegas csv is one row per step, starting at one") {
    LatticeGas gas(4, 4);
    gas.set_mask(0, 0, 0b0001);
    const RunSummary summary = gas.run(3, false);
    const std::string csv = io::latticegas_csv(summary);
    CHECK(csv == "step,changes,bound,utilization\n"
                 "1,2,2,1\n"
                 "2,2,2,1\n"
                 "3,2,2,1\n");
}

TEST_CASE("bound report json writes null for undefined bounds") {
    const std::string text = io::bound_report_json(bounds(PureState::eigenstate(0.0))).dump();
    CHECK(text.find("\"ml_time\": null") != std::string::npos);
    CHECK(text.find("\"mt_time\": null") != std::string::npos);
    CHECK(text.find("\"notes\"") != std::string::npos);

    const std::string defined = io::bound_report_json(bounds(PureState::two_level(1.0))).dump();
    CHECK(defined.find("\"ml_time\": 0.25") != std::string::npos);
    CHECK(defined.find("\"mt_time\": 0.25") != std::string::npos);
}

TEST_CASE("gram json shape") {
    const GramReport g = gram(PureState::uniform_cycle(4, 1.0), 0.25, 4);
    const std::string text = io::gram_json(g).dump();
    CHECK(text.find("\"size\": 4") != std::string::npos);
    CHECK(text.find("\"step\": 0.25") != std::string::npos);
    CHECK(text.find("\"entries\"") != std::string::npos);
    CHECK(text.find("\"max_offdiag\"") != std::string::npos);
}

TEST_CASE("write_file and read_file round trip") {
    TempDir dir;
    const std::string path = dir.file("out.txt");
    io::write_file(path, "alpha\nbeta");
    CHECK(io::read_file(path) == "alpha\nbeta");
    CHECK_THROWS_AS(io::read_file(dir.file("nope.txt")), std::invalid_argument);
}

} // TEST_SUITE
