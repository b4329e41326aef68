#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "minmod/classify.hpp"
#include "minmod/families.hpp"

using namespace minmod;

TEST_CASE("family parameters are validated") {
    CHECK_THROWS_AS((void)make_family(FamilyId::hardy(1.0)), ParameterOutOfRange);
    CHECK_THROWS_AS((void)make_family(FamilyId::lindelof(2.5)), ParameterOutOfRange);
    CHECK_THROWS_AS((void)make_family(FamilyId::constructed(0.3)), ParameterOutOfRange);
    CHECK_THROWS_AS((void)make_family(FamilyId::genus_power(1.5)), ParameterOutOfRange);
    CHECK_THROWS_AS((void)make_family_by_name("nope", 0.0), ParameterOutOfRange);
}

TEST_CASE("family structure") {
    const auto cs = make_family(FamilyId::cos_sqrt());
    CHECK(compute_genus(cs).genus == 0);
    CHECK(cs.closed_form == ClosedForm::cos_sqrt);

    const auto zc = make_family(FamilyId::z_cos_sqrt());
    CHECK(zc.origin_power == 1);
    CHECK(zc.exponent_poly.coeff(0) == doctest::Approx(M_LN2));
    CHECK(zc.closed_form == ClosedForm::two_z_cos_sqrt);

    const auto gp = make_family(FamilyId::genus_power(0.4));
    CHECK(gp.factor_index == 2);
    CHECK(gp.zeros.power().symmetric);

    const auto lf = make_family(FamilyId::lindelof(1.5, 1000));
    CHECK(lf.zeros.entries().size() == 1000);
    // first zero at n = 2: 2 (log 2)^1.5
    CHECK(lf.zeros.entries()[0].location ==
          doctest::Approx(2.0 * std::pow(std::log(2.0), 1.5)).epsilon(1e-14));
}

TEST_CASE("the rho = 1/2 recursion collapses to ratio 144") {
    const auto data = build_construction51(0.5, 12);
    const auto& lv = data.levels;
    REQUIRE(lv.size() >= 8);
    CHECK(lv.a[0] == 144.0);
    CHECK(lv.count[0] == 12.0);
    CHECK(lv.mult[0] == 12.0);
    CHECK(lv.a[1] == 20736.0);
    CHECK(lv.mult[1] == 132.0);
    CHECK(lv.a[2] == 2985984.0);
    CHECK(lv.mult[2] == 1584.0);
    for (int k = 0; k + 1 < lv.size(); ++k) {
        if (lv.a[k + 1] <= 9.0e15) {
            CHECK(lv.a[k + 1] == 144.0 * lv.a[k]); // exact while integral
            CHECK(lv.exact[k + 1]);
        } else {
            CHECK(lv.a[k + 1] / lv.a[k] == doctest::Approx(144.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("order-1 variant spot values") {
    const auto data = build_construction51_order1(10);
    const auto& lv = data.levels;
    REQUIRE(lv.size() >= 3);
    CHECK(lv.a[0] == 12.0);
    CHECK(lv.count[0] == 1.0);
    CHECK(lv.a[1] == 20736.0);
    CHECK(lv.mult[1] == 143.0);
    CHECK(lv.a[2] == doctest::Approx(1.5407021574586368e16));
    CHECK(lv.count[2] == 61917364224.0);
}

TEST_CASE("rho = 3/4 spot values") {
    const auto data = build_construction51(0.75, 6);
    const auto& lv = data.levels;
    CHECK(lv.a[0] == 20736.0);
    CHECK(lv.count[0] == 1728.0);
    CHECK(lv.exact[0]);
}

TEST_CASE("verification at k = 2 reproduces the displayed bound") {
    const auto data = build_construction51(0.5, 12);
    const auto checks = verify_construction51(data, 1, 5);
    REQUIRE(checks.size() == 5);

    const auto& k2 = checks[1];
    CHECK(k2.log_min_modulus == doctest::Approx(127.93).epsilon(4e-4));
    CHECK(k2.required_log == doctest::Approx(143.0 * M_LN2).epsilon(1e-12));
    CHECK(k2.required_log == doctest::Approx(99.12).epsilon(1e-4));
    CHECK(k2.bound_ok);
    CHECK(k2.log_r_next == doctest::Approx(16.0081).epsilon(1e-4));
    CHECK(k2.dominates_next);

    // the bound and the dominance chain hold from k = 2 on
    for (int k = 2; k <= 5; ++k) {
        CHECK(checks[k - 1].bound_ok);
        CHECK(checks[k - 1].dominates_next);
    }
}

TEST_CASE("verification reports the k = 1 diagnostic failure") {
    const auto data = build_construction51(0.5, 12);
    const auto checks = verify_construction51(data, 1, 1);
    const auto& k1 = checks[0];
    CHECK(k1.tail_sum == doctest::Approx(3.0).epsilon(0.04));
    CHECK_FALSE(k1.tail_ok); // the claimed one-half fails here
    CHECK(k1.log_min_modulus == doctest::Approx(5.29).epsilon(2e-3));
    CHECK(k1.required_log == doctest::Approx(11.0 * M_LN2).epsilon(1e-12));
    CHECK_FALSE(k1.bound_ok);
}

TEST_CASE("order-1 verification passes at k = 1") {
    const auto data = build_construction51_order1(10);
    const auto checks = verify_construction51(data, 1, 1);
    const auto& k1 = checks[0];
    CHECK(k1.tail_sum == doctest::Approx(0.25).epsilon(0.01));
    CHECK(k1.tail_ok);
    CHECK(std::exp(k1.log_min_modulus) == doctest::Approx(1.56).epsilon(2e-3));
    CHECK(k1.required_log == 0.0); // 2^{[a_1^{1-eps_1}] - 1} = 1
    CHECK(k1.bound_ok);
}

TEST_CASE("hardy asymptotic tightens with the radius") {
    const double sigma = 4.0 / 3.0;
    const auto h43 = make_family(FamilyId::hardy(sigma));
    // compare at midpoints between the sine zeros, where the asymptotic is
    // regular: z^rho = j + 1/2
    auto midpoint_radius = [&](double approx) {
        const double j = std::round(std::pow(approx, 0.75) - 0.5);
        return std::pow(j + 0.5, 4.0 / 3.0);
    };
    double prev_gap = 0.0;
    for (double approx : {1e2, 1e4}) {
        const double r = midpoint_radius(approx);
        const double got = eval_log_modulus_polar(h43, std::log(r), 0.0, 1e-9);
        const double asym = hardy_asymptotic_log(sigma, {r, 0.0});
        const double gap = std::abs(got - asym) / std::max(1.0, std::abs(got));
        if (prev_gap > 0.0) CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    // cot(pi rho) < 0 drives the asymptotic to minus infinity on midpoints
    const double a1 = hardy_asymptotic_log(sigma, {midpoint_radius(1e2), 0.0});
    const double a2 = hardy_asymptotic_log(sigma, {midpoint_radius(1e4), 0.0});
    CHECK(a2 < a1);
    CHECK(a2 < 0.0);
    // at a sine zero the asymptotic collapses
    const double zero_r = std::pow(7.0, 4.0 / 3.0);
    CHECK(hardy_asymptotic_log(sigma, {zero_r, 0.0}) < -20.0);
    CHECK_THROWS_AS((void)hardy_asymptotic_log(2.5, {100.0, 0.0}), ParameterOutOfRange);
}

TEST_CASE("lindelof asymptotic and truncated product stay negative on the ray") {
    // the (1 - alpha) prefactor is negative toward the right half plane
    const double alpha = 1.5;
    for (double r : {1e3, 1e4}) {
        CHECK(lindelof_asymptotic_log(alpha, std::polar(r, M_PI / 4)) < 0.0);
    }
    const auto lf = make_family(FamilyId::lindelof(alpha));
    for (double r : {1e3, 1e4, 1e5}) {
        CHECK(eval_log_modulus_polar(lf, std::log(r), M_PI / 4, 1e-6) < 0.0);
    }
    CHECK_THROWS_AS((void)lindelof_asymptotic_log(alpha, {1.0, 0.0}), ParameterOutOfRange);
}

TEST_CASE("oracle agreement where a closed form exists") {
    for (const auto& id : {FamilyId::cos_sqrt(), FamilyId::z_cos_sqrt(),
                           FamilyId::hardy(2.0)}) {
        const auto spec = make_family(id);
        REQUIRE(spec.closed_form != ClosedForm::none);
        for (double r : {0.7, 13.0, 400.0}) {
            const double got = eval_log_modulus_polar(spec, std::log(r), 1.1, 1e-10);
            const double want = closed_form_log(spec.closed_form, std::polar(r, 1.1)).log_mod;
            CHECK(got == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("construction JSON carries the checks") {
    const auto data = build_construction51(0.5, 8);
    const auto checks = verify_construction51(data, 1, 3);
    const std::string json = construction51_json(data, checks);
    CHECK(json.find("\"checks\":[") != std::string::npos);
    CHECK(json.find("\"tail_ok\":false") != std::string::npos);
    CHECK(json.find("\"bound_ok\":true") != std::string::npos);
}

TEST_CASE("exploratory small rho is allowed but contracts") {
    RecursiveRule rule;
    rule.rho = 0.2;
    rule.exploratory = true;
    rule.k_max = 30;
    const auto lv = materialize_recursive(rule);
    CHECK(lv.size() >= 1); // materializes until the recursion degenerates
    CHECK_THROWS_AS((void)build_construction51(0.2, 10), ParameterOutOfRange);
}
