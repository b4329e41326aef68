#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "minmod/families.hpp"
#include "minmod/orbit.hpp"

#include <fstream>

using namespace minmod;

TEST_CASE("cosine product orbits stay bounded") {
    const auto cs = make_family(FamilyId::cos_sqrt());
    const auto orbit = iterate_min_modulus(cs, 10.0, 24);
    CHECK(orbit.status == OrbitStatus::bounded);
    for (std::size_t i = 1; i < orbit.values.size(); ++i) CHECK(orbit.values[i] <= 0.0);
}

TEST_CASE("the doubled product escapes from the constructed seed") {
    const auto zc = make_family(FamilyId::z_cos_sqrt());
    const auto verdict = classify_property(zc);
    REQUIRE(verdict.kind == PropertyVerdict::Kind::holds);
    const auto& orbit = verdict.witness_orbit;
    CHECK(orbit.status == OrbitStatus::escaped);
    CHECK(orbit.strictly_increasing);
    CHECK(orbit.event_step <= 10);
    CHECK_FALSE(orbit.resource_escape);
}

TEST_CASE("seeding on a zero modulus hits zero at step one") {
    const auto cs = make_family(FamilyId::cos_sqrt());
    const double a1 = M_PI * M_PI * 0.25;
    const auto orbit = iterate_min_modulus(cs, a1, 8);
    CHECK(orbit.status == OrbitStatus::hit_zero);
    CHECK(orbit.event_step == 1);
    REQUIRE(orbit.values.size() == 2);
    CHECK((std::isinf(orbit.values[1]) && orbit.values[1] < 0));
}

TEST_CASE("orbits are reproducible") {
    const auto zc = make_family(FamilyId::z_cos_sqrt());
    const auto a = iterate_min_modulus(zc, 94.0, 10, 20.0);
    const auto b = iterate_min_modulus(zc, 94.0, 10, 20.0);
    REQUIRE(a.values.size() == b.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
    CHECK(a.status == b.status);
}

TEST_CASE("strict increase flag matches the values") {
    const auto zc = make_family(FamilyId::z_cos_sqrt());
    const auto orbit = iterate_min_modulus(zc, 94.0, 10, 20.0);
    bool strict = orbit.values.size() >= 2;
    for (std::size_t i = 0; i + 1 < orbit.values.size(); ++i)
        if (!(orbit.values[i + 1] > orbit.values[i])) strict = false;
    CHECK(orbit.strictly_increasing == strict);
}

TEST_CASE("orbit values equal the profile minimum exactly") {
    const auto zc = make_family(FamilyId::z_cos_sqrt());
    const CircleParams params{};
    const auto orbit = iterate_min_modulus(zc, 200.0, 6, 1e4, params);
    for (std::size_t n = 0; n + 1 < orbit.values.size(); ++n) {
        const double direct = circle_min_log(zc, orbit.values[n], params);
        CHECK(orbit.values[n + 1] == direct);
        const auto prof = circle_profile_log(zc, orbit.values[n], params);
        if (std::isinf(direct))
            CHECK(prof.min_is_zero());
        else
            CHECK(prof.min_log == direct);
    }
}

TEST_CASE("find_strict_seed on the doubled product") {
    const auto zc = make_family(FamilyId::z_cos_sqrt());
    const auto seed = find_strict_seed(zc, 33.0, 1e6);
    REQUIRE(seed.has_value());
    const auto orbit =
        iterate_min_modulus(zc, *seed, 12, std::log(*seed) + 2.0 * std::log(10.0));
    CHECK(orbit.status == OrbitStatus::escaped);
    CHECK(orbit.strictly_increasing);
}

TEST_CASE("find_strict_seed declines the cosine product") {
    const auto cs = make_family(FamilyId::cos_sqrt());
    CHECK_FALSE(find_strict_seed(cs, 10.0, 1e6).has_value());
}

TEST_CASE("find_strict_seed in the ring between r_2 and r_3") {
    const auto c5 = make_family(FamilyId::constructed(0.5));
    const double r2 = 3.0 * 20736.0;
    const double r3 = 3.0 * 2985984.0;
    const auto seed = find_strict_seed(c5, r2, 10.0 * r2);
    REQUIRE(seed.has_value());
    CHECK(*seed >= r2);
    CHECK(*seed <= r3);
    const auto orbit =
        iterate_min_modulus(c5, *seed, 12, std::log(*seed) + 2.0 * std::log(10.0));
    CHECK(orbit.status == OrbitStatus::escaped);
    CHECK(orbit.strictly_increasing);
}

TEST_CASE("equivalence proxies are positive and consistent for escapers") {
    const auto zc = make_family(FamilyId::z_cos_sqrt());
    const auto rep = check_equivalences(zc, 40.0, 1e4);
    CHECK(rep.orbit_escapes);
    CHECK(rep.orbit_unbounded);
    CHECK(rep.tilde_dominates);
    CHECK(rep.chain_exists);
    CHECK_FALSE(rep.inconsistent);
}

TEST_CASE("equivalence proxies are negative and consistent for the cosine product") {
    const auto cs = make_family(FamilyId::cos_sqrt());
    const auto rep = check_equivalences(cs, 10.0, 1e4);
    CHECK_FALSE(rep.orbit_escapes);
    CHECK_FALSE(rep.orbit_unbounded);
    CHECK_FALSE(rep.tilde_dominates);
    CHECK_FALSE(rep.chain_exists);
    CHECK_FALSE(rep.inconsistent);
}

TEST_CASE("equivalence proxies are negative for the linear factor") {
    EntireFunctionSpec spec;
    spec.zeros = ZeroSequence::make_list({ZeroEntry::at(1.0)});
    const auto rep = check_equivalences(spec, 10.0, 100.0);
    CHECK_FALSE(rep.tilde_dominates); // tilde-m(t) = t - 1 < t
    CHECK_FALSE(rep.orbit_escapes);
    CHECK_FALSE(rep.chain_exists);
    CHECK_FALSE(rep.inconsistent);
}

TEST_CASE("verdicts for the section-five families") {
    const auto zc = make_family(FamilyId::z_cos_sqrt());
    CHECK(classify_property(zc).kind == PropertyVerdict::Kind::holds);

    const auto cs = make_family(FamilyId::cos_sqrt());
    const auto v_cs = classify_property(cs);
    CHECK(v_cs.kind == PropertyVerdict::Kind::fails_evidence);
    CHECK(v_cs.tilde_ratio_bound < 1.0);

    const auto h43 = make_family(FamilyId::hardy(4.0 / 3.0));
    CHECK(classify_property(h43).kind == PropertyVerdict::Kind::fails_evidence);

    // shallow materialization keeps the scan cheap; the verdict is about
    // tilde-m(t)/t staying below one, which the truncation only raises
    const auto lf = make_family(FamilyId::lindelof(1.5, 30000));
    CHECK(classify_property(lf, 10.0, 1e4).kind == PropertyVerdict::Kind::fails_evidence);
}

TEST_CASE("no orbit escapes where the verdict is fails-evidence") {
    const auto h43 = make_family(FamilyId::hardy(4.0 / 3.0));
    for (double seed : {10.0, 1e2, 1e3, 1e4, 1e5}) {
        const auto orbit =
            iterate_min_modulus(h43, seed, 12, std::log(seed) + 2.0 * std::log(10.0));
        CHECK(orbit.status != OrbitStatus::escaped);
    }
}

TEST_CASE("the recursive construction blows through the default threshold") {
    const auto c5 = make_family(FamilyId::constructed(0.5));
    const auto orbit = iterate_min_modulus(c5, 1860.0, 8);
    CHECK(orbit.status == OrbitStatus::escaped);
    CHECK(orbit.event_step <= 3);
    CHECK(orbit.escape_log_threshold == kDefaultEscapeLogThreshold);
}

TEST_CASE("orbit CSV export") {
    const auto zc = make_family(FamilyId::z_cos_sqrt());
    const auto orbit = iterate_min_modulus(zc, 94.0, 6, 20.0);
    const std::string path = "/tmp/minmod_orbit_test.csv";
    export_orbit_csv(orbit, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "step,log_radius,log_min_modulus,status");
}

TEST_CASE("bad orbit parameters are rejected") {
    const auto cs = make_family(FamilyId::cos_sqrt());
    CHECK_THROWS_AS((void)iterate_min_modulus(cs, -1.0, 8), ParameterOutOfRange);
    CHECK_THROWS_AS((void)iterate_min_modulus(cs, 1.0, 0), ParameterOutOfRange);
    CHECK_THROWS_AS((void)check_equivalences(cs, 10.0, 50.0), ParameterOutOfRange);
}
