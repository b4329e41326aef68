#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "minmod/classify.hpp"
#include "minmod/entire_fn.hpp"
#include "minmod/families.hpp"

#include <random>

using namespace minmod;

namespace {

EntireFunctionSpec single_zero(double a) {
    EntireFunctionSpec spec;
    spec.zeros = ZeroSequence::make_list({ZeroEntry::at(a)});
    return spec;
}

} // namespace

TEST_CASE("eval of a single linear factor") {
    const auto spec = single_zero(1.0);
    const LogComplex v = eval_log(spec, {3.0, 0.0});
    CHECK(v.log_mod == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(v.arg == doctest::Approx(M_PI));
}

TEST_CASE("eval of the cosine-of-square-root product on the negative axis") {
    const auto cs = make_family(FamilyId::cos_sqrt());
    const LogComplex v = eval_log(cs, {-4.0, 0.0}, 1e-10);
    CHECK(v.log_mod == doctest::Approx(std::log(std::cosh(2.0))).epsilon(1e-10));
}

TEST_CASE("eval of the sigma = 2 product against the sine quotient") {
    const auto h2 = make_family(FamilyId::hardy(2.0));
    const LogComplex v = eval_log(h2, {0.25, 0.0}, 1e-10);
    CHECK(v.log_mod == doctest::Approx(std::log(2.0 / M_PI)).epsilon(1e-10));
}

TEST_CASE("eval returns the zero sentinel on a zero") {
    const auto cs = make_family(FamilyId::cos_sqrt());
    const double a1 = M_PI * M_PI * 0.25;
    CHECK(eval_log(cs, {a1, 0.0}).is_zero());
    CHECK(eval_log(cs, {a1 * (1.0 + 1e-14), 0.0}).is_zero());
    CHECK_FALSE(eval_log(cs, {a1 * 1.01, 0.0}).is_zero());
}

TEST_CASE("eval at the origin") {
    auto spec = single_zero(2.0);
    spec.origin_power = 1;
    CHECK(eval_log(spec, {0.0, 0.0}).is_zero());
    spec.origin_power = 0;
    spec.exponent_poly = RealPolynomial({0.5, 1.0});
    const LogComplex v = eval_log(spec, {0.0, 0.0});
    CHECK(v.log_mod == doctest::Approx(0.5)); // |e^Q(0) P(0)| = e^0.5
}

TEST_CASE("oracle agreement on random points for the tagged families") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uradius(-1.0, 3.0), uang(0.0, M_PI);
    const double tol = 1e-9;
    for (ClosedForm tag : {ClosedForm::cos_sqrt, ClosedForm::sin_sqrt_ratio,
                           ClosedForm::two_z_cos_sqrt}) {
        EntireFunctionSpec spec;
        if (tag == ClosedForm::cos_sqrt) spec = make_family(FamilyId::cos_sqrt());
        if (tag == ClosedForm::sin_sqrt_ratio) spec = make_family(FamilyId::hardy(2.0));
        if (tag == ClosedForm::two_z_cos_sqrt) spec = make_family(FamilyId::z_cos_sqrt());
        REQUIRE(spec.closed_form == tag);
        int checked = 0;
        for (int i = 0; i < 200 && checked < 100; ++i) {
            const double r = std::pow(10.0, uradius(rng));
            const double th = uang(rng);
            const LogComplex a = eval_log_polar(spec, std::log(r), th, tol);
            const LogComplex b = closed_form_log(tag, std::polar(r, th));
            if (a.is_zero() || b.is_zero()) continue;
            if (std::abs(b.log_mod) > 1e8) continue; // too close to a zero
            ++checked;
            CHECK(std::abs(a.log_mod - b.log_mod) <= tol + 1e-8);
        }
        CHECK(checked >= 100);
    }
}

TEST_CASE("real symmetry of the log-modulus") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> uradius(-1.0, 3.0), uang(0.0, M_PI);
    const double tol = 1e-9;
    for (const auto& spec :
         {make_family(FamilyId::hardy(4.0 / 3.0)), make_family(FamilyId::genus_power(0.4)),
          make_family(FamilyId::constructed(0.5))}) {
        for (int i = 0; i < 50; ++i) {
            const double lr = uradius(rng) * std::log(10.0);
            const double th = uang(rng);
            const LogComplex up = eval_log_polar(spec, lr, th, tol);
            const LogComplex dn = eval_log_polar(spec, lr, -th, tol);
            if (up.is_zero() || dn.is_zero()) {
                CHECK(up.is_zero() == dn.is_zero());
                continue;
            }
            CHECK(std::abs(up.log_mod - dn.log_mod) <= 2.0 * tol + 1e-10);
        }
    }
}

TEST_CASE("tail bound of a fully included finite list is zero") {
    const auto spec = single_zero(5.0);
    CHECK(tail_bound(spec, 1.0, 1) == 0.0);
}

TEST_CASE("tail bound dominates the brute-force omitted mass") {
    const auto cs = make_family(FamilyId::cos_sqrt());
    const double r = 10.0;
    CHECK(min_cutoff_steps(cs, r) == 1); // |a_2| ~ 22.2 >= 2r already
    const std::int64_t cutoff = 2;       // first omitted zero is |a_3| ~ 61.7
    const double bound = tail_bound(cs, r, cutoff);
    // brute force: ten thousand further terms of the true omitted log mass
    double brute = 0.0;
    for (int k = 3; k < 10003; ++k) {
        const double a = M_PI * M_PI * (k - 0.5) * (k - 0.5);
        brute += -std::log1p(-r / a);
    }
    CHECK(bound >= brute);
    CHECK(bound <= 10.0 * brute); // not wildly loose either
}

TEST_CASE("tail bound for the recursive construction at r_1") {
    const auto c51 = make_family(FamilyId::constructed(0.5));
    const double bound = tail_bound(c51, 432.0, 2);
    // direct sum over the materialized levels beyond a_2
    const auto& entries = c51.zeros.entries();
    double direct = 0.0;
    for (std::size_t j = 2; j < entries.size(); ++j) {
        // terms fall twelvefold per level; the huge-multiplicity deep levels
        // contribute only through their logs
        const double ratio_log = std::log(432.0) - entries[j].log_abs;
        direct += std::exp(entries[j].log_multiplicity + ratio_log);
    }
    CHECK(direct == doctest::Approx(0.250).epsilon(1e-3));
    CHECK(bound >= direct);
}

TEST_CASE("cutoff below 2r is rejected") {
    const auto cs = make_family(FamilyId::cos_sqrt());
    CHECK_THROWS_AS((void)tail_bound(cs, 10.0, 0), CutoffTooSmall);
    CHECK_NOTHROW((void)tail_bound(cs, 10.0, 1)); // |a_2| >= 2r is admissible
}

TEST_CASE("power-law stream beyond the resource cap reports no convergence") {
    const auto cs = make_family(FamilyId::cos_sqrt());
    CHECK_THROWS_AS((void)eval_log_polar(cs, 600.0, 0.5, 1e-9), TailNotConvergent);
}

TEST_CASE("truncation soundness: doubling the cutoff moves less than the bound") {
    for (const auto& spec :
         {make_family(FamilyId::cos_sqrt()), make_family(FamilyId::hardy(4.0 / 3.0))}) {
        for (double r : {3.0, 30.0, 300.0}) {
            const std::int64_t cutoff = std::max<std::int64_t>(min_cutoff_steps(spec, r), 1);
            const double bound = tail_bound(spec, r, cutoff);
            const LogComplex a = eval_log_truncated(spec, {r, 0.1}, cutoff);
            const LogComplex b = eval_log_truncated(spec, {r, 0.1}, 2 * cutoff);
            CHECK(std::abs(a.log_mod - b.log_mod) < bound);
        }
    }
}

TEST_CASE("square substitution of the sigma = 2 product") {
    const auto h2 = make_family(FamilyId::hardy(2.0));
    const auto sq = square_substitute(h2);
    REQUIRE(sq.zeros.kind() == GeneratorKind::power_law);
    CHECK(sq.zeros.power().symmetric);
    CHECK(sq.zeros.power().exponent == doctest::Approx(1.0));
    CHECK(sq.zeros.power().scale == doctest::Approx(1.0));
    CHECK(sq.factor_index == 1);
    const GenusReport genus = compute_genus(sq);
    CHECK(genus.factor_index == 1);
    CHECK(genus.genus == 1);
    CHECK(sq.closed_form == ClosedForm::sinc_pi);
    // g(z) = f(z^2) pointwise
    const LogComplex a = eval_log(sq, {1.7, 0.3}, 1e-10);
    const LogComplex b = eval_log(h2, std::complex<double>(1.7, 0.3) *
                                          std::complex<double>(1.7, 0.3),
                                  1e-10);
    CHECK(a.log_mod == doctest::Approx(b.log_mod).epsilon(1e-8));
}

TEST_CASE("square substitution of a single zero gives the symmetric pair") {
    const auto sq = square_substitute(single_zero(4.0));
    REQUIRE(sq.zeros.entries().size() == 2);
    CHECK(sq.zeros.entries()[0].location == doctest::Approx(-2.0));
    CHECK(sq.zeros.entries()[1].location == doctest::Approx(2.0));
}

TEST_CASE("square substitution of the cosine product gives the cosine") {
    const auto sq = square_substitute(make_family(FamilyId::cos_sqrt()));
    CHECK(sq.closed_form == ClosedForm::cos_z);
    const LogComplex v = eval_log(sq, {1.0, 0.0}, 1e-10);
    CHECK(v.log_mod == doctest::Approx(std::log(std::abs(std::cos(1.0)))).epsilon(1e-9));
}

TEST_CASE("square substitution refuses mixed-sign zeros") {
    EntireFunctionSpec spec;
    spec.zeros = ZeroSequence::make_list({ZeroEntry::at(-1.0), ZeroEntry::at(2.0)});
    CHECK_THROWS_AS((void)square_substitute(spec), MixedSignZeros);
}

TEST_CASE("genus after square substitution matches the exponent computation") {
    // zeros k^s of genus floor(1/s) turn into +-k^{s/2} with the analytic
    // index floor(2/s)
    for (double s : {2.0, 4.0 / 3.0, 1.9}) {
        auto spec = make_family(FamilyId::hardy(s));
        const auto sq = square_substitute(spec);
        int want = 0;
        while (!((s / 2.0) * (want + 1) > 1.0)) ++want;
        CHECK(compute_genus(sq).factor_index == want);
    }
}

TEST_CASE("Laguerre-Polya membership") {
    CHECK(is_laguerre_polya(make_family(FamilyId::cos_sqrt())));
    auto bad_index = make_family(FamilyId::hardy(2.0));
    bad_index.factor_index = 2;
    CHECK_FALSE(is_laguerre_polya(bad_index));
    EntireFunctionSpec bad_poly = single_zero(1.0);
    bad_poly.exponent_poly = RealPolynomial({0.0, 0.0, 1.0}); // +z^2
    CHECK_FALSE(is_laguerre_polya(bad_poly));
    EntireFunctionSpec ok_poly = single_zero(1.0);
    ok_poly.exponent_poly = RealPolynomial({0.0, 0.0, -1.0}); // -z^2
    CHECK(is_laguerre_polya(ok_poly));
}

TEST_CASE("spec validation rejects broken inputs") {
    CHECK_THROWS_AS((void)ZeroEntry::at(0.0), ParameterOutOfRange);
    CHECK_THROWS_AS((void)ZeroEntry::at(1.0, 0.5), ParameterOutOfRange);
    CHECK_THROWS_AS(
        (void)ZeroSequence::make_list({ZeroEntry::at(5.0), ZeroEntry::at(1.0)}),
        ParameterOutOfRange);
    // divergent sum mult |a_k|^-(m+1)
    EntireFunctionSpec div;
    div.zeros = ZeroSequence::make_power({1.0, 0.5, 0.0, 1.0, false, +1});
    div.factor_index = 0; // needs s(m+1) > 1, here 0.5
    CHECK_THROWS_AS(validate_spec(div), ParameterOutOfRange);
    div.factor_index = 2; // 0.5 * 3 = 1.5 converges
    CHECK_NOTHROW(validate_spec(div));
}

TEST_CASE("minimal factor index for power laws") {
    CHECK(minimal_factor_index(ZeroSequence::make_power({1.0, 2.0, 0.0, 1.0, false, 1})) == 0);
    CHECK(minimal_factor_index(ZeroSequence::make_power({1.0, 0.4, 0.0, 1.0, true, 1})) == 2);
    CHECK(minimal_factor_index(ZeroSequence::make_power({1.0, 1.0, 0.0, 1.0, true, 1})) == 1);
    CHECK(minimal_factor_index(ZeroSequence::make_list({ZeroEntry::at(1.0)})) == 0);
}

TEST_CASE("modulus-only evaluation matches the full evaluation") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uradius(-1.0, 3.0), uang(0.0, M_PI);
    for (const auto& spec : {make_family(FamilyId::hardy(4.0 / 3.0)),
                             make_family(FamilyId::genus_power(0.4)),
                             make_family(FamilyId::z_cos_sqrt())}) {
        for (int i = 0; i < 40; ++i) {
            const double lr = uradius(rng) * std::log(10.0);
            const double th = uang(rng);
            const LogComplex full = eval_log_polar(spec, lr, th, 1e-9);
            const double fast = eval_log_modulus_polar(spec, lr, th, 1e-9);
            if (full.is_zero()) {
                CHECK((std::isinf(fast) && fast < 0));
            } else {
                CHECK(fast == doctest::Approx(full.log_mod).epsilon(1e-11));
            }
        }
    }
}
