// Scratch numeric probe used while pinning down test expectations.
#include "minmod/classify.hpp"
#include "minmod/escape_grid.hpp"
#include "minmod/families.hpp"
#include "minmod/lemmas.hpp"
#include "minmod/orbit.hpp"
#include "minmod/spec_io.hpp"

#include <cstdio>
#include <cstring>

using namespace minmod;

int main(int argc, char** argv) {
    const std::string what = argc > 1 ? argv[1] : "eval";

    if (what == "eval") {
        auto cs = make_family(FamilyId::cos_sqrt());
        auto v = eval_log(cs, {-4.0, 0.0});
        std::printf("cos_sqrt(-4): lm=%.12f want %.12f\n", v.log_mod, std::log(std::cosh(2.0)));
        auto h2 = make_family(FamilyId::hardy(2.0));
        auto v2 = eval_log(h2, {0.25, 0.0});
        std::printf("hardy2(0.25): lm=%.12f want %.12f\n", v2.log_mod, std::log(2.0 / M_PI));
        auto pf = primary_factor_log({0.0, 2.0}, 2);
        std::printf("E(2i,2): lm=%.6f want %.6f arg=%.6f want %.6f\n", pf.log_mod,
                    -2.0 + 0.5 * std::log(5.0), pf.arg, 2.0 + std::atan(-2.0));
        // oracle sweep
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double r = std::pow(10.0, -1.0 + 4.0 * ((i * 37) % 101) / 101.0);
            const double th = M_PI * ((i * 53) % 97) / 97.0;
            if (r > 1000) continue;
            auto a = eval_log_polar(cs, std::log(r), th, 1e-10);
            auto b = closed_form_log(ClosedForm::cos_sqrt, std::polar(r, th));
            if (!a.is_zero() && !b.is_zero())
                worst = std::max(worst, std::abs(a.log_mod - b.log_mod));
        }
        std::printf("cos_sqrt oracle worst dlog = %.3e\n", worst);
        worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double r = std::pow(10.0, -1.0 + 4.0 * ((i * 41) % 103) / 103.0);
            const double th = M_PI * ((i * 59) % 89) / 89.0;
            if (r > 1000) continue;
            auto a = eval_log_polar(h2, std::log(r), th, 1e-10);
            auto b = closed_form_log(ClosedForm::sin_sqrt_ratio, std::polar(r, th));
            if (!a.is_zero() && !b.is_zero())
                worst = std::max(worst, std::abs(a.log_mod - b.log_mod));
        }
        std::printf("hardy2 oracle worst dlog = %.3e\n", worst);
    } else if (what == "c51") {
        auto data = build_construction51(0.5, 12);
        for (int k = 0; k < std::min(5, data.levels.size()); ++k)
            std::printf("k=%d a=%.1f n=%.1f m=%.1f exact=%d\n", k + 1, data.levels.a[k],
                        data.levels.count[k], data.levels.mult[k], (int)data.levels.exact[k]);
        auto checks = verify_construction51(data, 1, 5);
        for (auto& c : checks)
            std::printf("k=%d tail=%.6f ok=%d logm=%.4f req=%.4f bound=%d next=%.4f dom=%d\n",
                        c.k, c.tail_sum, c.tail_ok, c.log_min_modulus, c.required_log,
                        c.bound_ok, c.log_r_next, c.dominates_next);
        auto o1 = build_construction51_order1(10);
        auto oc = verify_construction51(o1, 1, 3);
        for (auto& c : oc)
            std::printf("order1 k=%d tail=%.6f ok=%d logm=%.4f m(r)=%.4f req=%.4f bound=%d\n",
                        c.k, c.tail_sum, c.tail_ok, c.log_min_modulus,
                        std::exp(c.log_min_modulus), c.required_log, c.bound_ok);
    } else if (what == "modulus") {
        auto cs = make_family(FamilyId::cos_sqrt());
        auto prof = circle_profile(cs, 1.0);
        std::printf("cos_sqrt r=1: min=%.6f@%.4f want %.6f, max=%.6f@%.4f want %.6f\n",
                    prof.min_log, prof.argmin_theta, std::log(std::cos(1.0)), prof.max_log,
                    prof.argmax_theta, std::log(std::cosh(1.0)));
        auto prof2 = circle_profile_sampled(cs, 0.0);
        std::printf("sampled: min=%.6f max=%.6f\n", prof2.min_log, prof2.max_log);
        const double t1 = tilde_min_log(cs, std::log(100.0));
        std::printf("tilde cos_sqrt(100) = %.6f (want <= 0)\n", t1);
        auto zc = make_family(FamilyId::z_cos_sqrt());
        const double t2 = tilde_min_log(zc, std::log(1e4));
        std::printf("tilde zcos(1e4) = %.6f vs ln 1e4 = %.6f\n", t2, std::log(1e4));
    } else if (what == "seed") {
        auto zc = make_family(FamilyId::z_cos_sqrt());
        auto verdict = classify_property(zc);
        if (verdict.kind == PropertyVerdict::Kind::holds) {
            std::printf("zcos seed = %.6f (dominance from %.3f)\n", verdict.witness_seed,
                        verdict.dominance_from);
            const auto& orbit = verdict.witness_orbit;
            std::printf("status=%s steps=%d strict=%d\n", orbit_status_name(orbit.status),
                        orbit.event_step, orbit.strictly_increasing);
            for (std::size_t i = 0; i < orbit.values.size(); ++i)
                std::printf("  v[%zu] = %.6f\n", i, orbit.values[i]);
        } else {
            std::printf("zcos: verdict=%d NOT holds\n", (int)verdict.kind);
        }
        auto cs = make_family(FamilyId::cos_sqrt());
        auto s2 = find_strict_seed(cs, 10.0, 1e6);
        std::printf("cos_sqrt seed: %s\n", s2 ? "FOUND (bad)" : "not found (good)");
    } else if (what == "c51seed") {
        auto c5 = make_family(FamilyId::constructed(0.5));
        auto verdict = classify_property(c5);
        std::printf("constructed verdict kind=%d witness=%.2f range=[%.1f, %.1f]\n",
                    (int)verdict.kind, verdict.witness_seed, verdict.range_min,
                    verdict.range_max);
        const double r2 = 3.0 * 20736.0;
        auto seed = find_strict_seed(c5, r2, 10.0 * r2);
        if (seed) std::printf("c51 seed in [r2, 10 r2]: %.2f (r3 = %.1f)\n", *seed, 3.0 * 2985984.0);
        else std::printf("c51 seed NOT FOUND\n");
    } else if (what == "order") {
        auto cs = make_family(FamilyId::cos_sqrt());
        auto rep = estimate_order(cs, 1e2, 1e8);
        std::printf("cos_sqrt order = %.4f\n", rep.order_estimate);
        auto h43 = make_family(FamilyId::hardy(4.0 / 3.0));
        auto rep2 = estimate_order(h43, 1e2, 1e8);
        std::printf("hardy 4/3 order = %.4f\n", rep2.order_estimate);
        auto sq = square_substitute(make_family(FamilyId::hardy(2.0)));
        auto rep3 = estimate_order(sq, 1e2, 1e8);
        std::printf("sq hardy2 order = %.4f\n", rep3.order_estimate);
    } else if (what == "lindelof") {
        auto lf = make_family(FamilyId::lindelof(1.5));
        for (double r : {1e3, 1e4, 1e5}) {
            auto v = eval_log_polar(lf, std::log(r), M_PI / 4, 1e-6);
            const double asym = lindelof_asymptotic_log(1.5, std::polar(r, M_PI / 4));
            std::printf("lindelof r=%.0e: eval=%.2f asym=%.2f\n", r, v.log_mod, asym);
        }
    } else if (what == "hardyprop") {
        auto h43 = make_family(FamilyId::hardy(4.0 / 3.0));
        auto verdict = classify_property(h43);
        std::printf("hardy43 verdict=%d ratio_bound=%.4g\n", (int)verdict.kind,
                    verdict.tilde_ratio_bound);
        auto lf = make_family(FamilyId::lindelof(1.5, 30000));
        auto v2 = classify_property(lf, 10.0, 1e4);
        std::printf("lindelof verdict=%d ratio_bound=%.4g\n", (int)v2.kind,
                    v2.tilde_ratio_bound);
        auto cs = make_family(FamilyId::cos_sqrt());
        auto v3 = classify_property(cs);
        std::printf("cos_sqrt verdict=%d ratio=%.4g\n", (int)v3.kind, v3.tilde_ratio_bound);
        auto zc = make_family(FamilyId::z_cos_sqrt());
        auto v4 = classify_property(zc);
        std::printf("zcos verdict=%d witness=%.4f\n", (int)v4.kind, v4.witness_seed);
    } else if (what == "defect") {
        auto gp = make_family(FamilyId::genus_power(0.4));
        auto rep = defect_zero(gp, 0.1, 100.0);
        for (std::size_t i = 0; i < rep.radii.size(); ++i)
            std::printf("r=%.3f N=%.4f T=%.4f ratio=%.4f\n", rep.radii[i], rep.N_values[i],
                        rep.T_values[i], rep.ratio_N_over_T[i]);
        std::printf("defect = %.4f\n", rep.defect_estimate);
    } else if (what == "rays") {
        auto gp = make_family(FamilyId::genus_power(0.4));
        auto scan = decay_ray_scan(gp, 10.0, 100.0);
        for (auto& e : scan)
            std::printf("theta=%.4f exp=%.3f decaying=%d last=%.3f\n", e.theta,
                        e.fitted_exponent, e.decaying, e.log_mods.back());
    } else if (what == "equiv") {
        for (const char* name : {"z-cos-sqrt", "cos-sqrt"}) {
            auto spec = make_family_by_name(name, 0);
            auto rep = check_equivalences(spec, name[0] == 'z' ? 40.0 : 10.0, 1e4);
            std::printf("%s: a=%d b=%d c=%d e=%d inconsistent=%d\n", name, rep.orbit_escapes,
                        rep.orbit_unbounded, rep.tilde_dominates, rep.chain_exists,
                        rep.inconsistent);
        }
        auto c5 = make_family(FamilyId::constructed(0.5));
        auto rep = check_equivalences(c5, 576.0, 576000.0);
        std::printf("constructed: a=%d b=%d c=%d e=%d inconsistent=%d\n", rep.orbit_escapes,
                    rep.orbit_unbounded, rep.tilde_dominates, rep.chain_exists,
                    rep.inconsistent);
    } else if (what == "tailb") {
        auto cs = make_family(FamilyId::cos_sqrt());
        const double tb = tail_bound(cs, 10.0, 2);
        // brute force: 1e4 further terms
        double brute = 0.0;
        for (int k = 3; k < 10003; ++k) {
            const double a = M_PI * M_PI * (k - 0.5) * (k - 0.5);
            brute += -std::log1p(-10.0 / a);
        }
        std::printf("cos_sqrt tail_bound(10, 2) = %.6f, brute = %.6f\n", tb, brute);
        auto c51 = make_family(FamilyId::constructed(0.5));
        const double tb2 = tail_bound(c51, 432.0, 2);
        std::printf("c51 tail_bound(432, 2) = %.6f (true ~0.250)\n", tb2);
    }
    return 0;
}
