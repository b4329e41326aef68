#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "minmod/families.hpp"
#include "minmod/spec_io.hpp"

#include <random>

using namespace minmod;

TEST_CASE("round trip is byte identical for every generator kind") {
    std::vector<EntireFunctionSpec> specs;
    specs.push_back(make_family(FamilyId::cos_sqrt()));
    specs.push_back(make_family(FamilyId::z_cos_sqrt()));
    specs.push_back(make_family(FamilyId::constructed(0.5, 12)));
    {
        EntireFunctionSpec list_spec;
        list_spec.origin_power = 3;
        list_spec.exponent_poly = RealPolynomial({0.1, -2.25, 0.0, 7.5});
        list_spec.zeros = ZeroSequence::make_list(
            {ZeroEntry::at(-0.125, 2.0), ZeroEntry::at(0.3333333333333333),
             ZeroEntry::at(17.0, 3.0)});
        specs.push_back(list_spec);
    }
    for (const auto& spec : specs) {
        const std::string once = write_spec(spec);
        const EntireFunctionSpec parsed = read_spec(once);
        CHECK(write_spec(parsed) == once);
    }
}

TEST_CASE("round trip survives random decimal inputs bit-exactly") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int it = 0; it < 50; ++it) {
        std::vector<ZeroEntry> entries;
        double prev = 0.0;
        for (int k = 0; k < 8; ++k) {
            prev += std::abs(u(rng)) + 0.5;
            entries.push_back(ZeroEntry::at(prev, 1.0 + (it + k) % 3));
        }
        EntireFunctionSpec spec;
        spec.zeros = ZeroSequence::make_list(entries);
        spec.exponent_poly = RealPolynomial({u(rng), u(rng)});
        const std::string once = write_spec(spec);
        const EntireFunctionSpec parsed = read_spec(once);
        const std::string twice = write_spec(parsed);
        REQUIRE(twice == once);
        for (std::size_t i = 0; i < entries.size(); ++i)
            CHECK(parsed.zeros.entries()[i].location == entries[i].location);
    }
}

TEST_CASE("log-space entries round trip") {
    EntireFunctionSpec spec;
    spec.zeros = ZeroSequence::make_list(
        {ZeroEntry::at(2.0), ZeroEntry::from_log(900.0, 1, 1e40, std::log(1e40))});
    const std::string once = write_spec(spec);
    CHECK(once.find("logzero") != std::string::npos);
    const EntireFunctionSpec parsed = read_spec(once);
    CHECK(parsed.zeros.entries()[1].log_abs == 900.0);
    CHECK(write_spec(parsed) == once);
}

TEST_CASE("parse errors carry line numbers") {
    try {
        (void)read_spec("origin_power 1\nbogus_field 3\ngenerator list\n");
        FAIL("expected a parse error");
    } catch (const SpecParseError& e) {
        CHECK(e.line == 2);
    }
    try {
        (void)read_spec("origin_power x\ngenerator list\n");
        FAIL("expected a parse error");
    } catch (const SpecParseError& e) {
        CHECK(e.line == 1);
    }
    CHECK_THROWS_AS((void)read_spec("origin_power 1\n"), SpecParseError); // no generator
    CHECK_THROWS_AS((void)read_spec("generator list\nzero 0 1\n"), SpecParseError);
    // validation failures surface as parse errors too
    CHECK_THROWS_AS(
        (void)read_spec("factor_index 0\ngenerator power-law\npower_scale 1\n"
                        "power_exponent 0.5\npower_shift 0\npower_multiplicity 1\n"
                        "power_symmetric 0\npower_sign 1\n"),
        SpecParseError);
}

TEST_CASE("file save and load") {
    const auto spec = make_family(FamilyId::hardy(2.0));
    const std::string path = "/tmp/minmod_spec_io_test.spec";
    save_spec_file(spec, path);
    const auto loaded = load_spec_file(path);
    CHECK(write_spec(loaded) == write_spec(spec));
    CHECK_THROWS_AS((void)load_spec_file("/nonexistent/nope.spec"), IOError);
}
