// minmod: compute with real entire functions having only real zeros --
// Hadamard-product evaluation, minimum-modulus iteration, growth and
// deficiency classification, checkable-lemma verification, and escape-set
// rendering.
#include "CLI11.hpp"

#include "minmod/classify.hpp"
#include "minmod/escape_grid.hpp"
#include "minmod/families.hpp"
#include "minmod/lemmas.hpp"
#include "minmod/orbit.hpp"
#include "minmod/spec_io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace minmod;

namespace {

struct SpecSource {
    std::string family;
    double sigma = 2.0;
    double alpha = 1.5;
    double rho = 0.5;
    double power = 0.4;
    std::size_t depth = 1000000;
    std::string spec_file;

    void add_options(CLI::App* cmd) {
        cmd->add_option("--family", family,
                        "built-in family: cos-sqrt, z-cos-sqrt, hardy, lindelof, "
                        "constructed, constructed-order1, genus-power");
        cmd->add_option("--sigma", sigma, "hardy exponent (zeros at n^sigma)");
        cmd->add_option("--alpha", alpha, "lindelof exponent");
        cmd->add_option("--rho", rho, "constructed order parameter");
        cmd->add_option("--power", power, "genus-power exponent");
        cmd->add_option("--depth", depth, "lindelof materialization depth");
        cmd->add_option("--spec-file", spec_file, "spec file path");
    }

    EntireFunctionSpec resolve() const {
        if (!spec_file.empty()) return load_spec_file(spec_file);
        if (family.empty())
            throw ParameterOutOfRange("need --family or --spec-file");
        if (family == "hardy") return make_family(FamilyId::hardy(sigma));
        if (family == "lindelof") return make_family(FamilyId::lindelof(alpha, depth));
        if (family == "constructed") return make_family(FamilyId::constructed(rho));
        if (family == "genus-power") return make_family(FamilyId::genus_power(power));
        return make_family_by_name(family, 0.0);
    }
};

std::complex<double> parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return {std::stod(text), 0.0};
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IOError("cannot open '" + path + "'");
    out << text << "\n";
    if (!out) throw IOError("write to '" + path + "' failed");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"computations with real entire functions with real zeros"};
    app.require_subcommand(1);

    // family
    auto* cmd_family = app.add_subcommand("family", "construct a built-in family spec");
    SpecSource src_family;
    src_family.add_options(cmd_family);
    std::string out_spec;
    cmd_family->add_option("--out-spec", out_spec, "write the spec file here");

    // eval
    auto* cmd_eval = app.add_subcommand("eval", "evaluate log f(z)");
    SpecSource src_eval;
    src_eval.add_options(cmd_eval);
    std::string z_text = "1";
    double tolerance = 1e-9;
    cmd_eval->add_option("--z", z_text, "evaluation point, re[,im]");
    cmd_eval->add_option("--tolerance", tolerance, "tail tolerance on log-modulus");

    // modulus
    auto* cmd_mod = app.add_subcommand("modulus", "min/max modulus on a circle");
    SpecSource src_mod;
    src_mod.add_options(cmd_mod);
    double mod_r = 1.0;
    int samples = 1024;
    std::string mod_csv;
    bool do_tilde = false;
    cmd_mod->add_option("--r", mod_r, "circle radius");
    cmd_mod->add_option("--samples", samples, "circle samples on [0, pi]");
    cmd_mod->add_option("--out-csv", mod_csv, "profile CSV path");
    cmd_mod->add_flag("--tilde", do_tilde, "also report tilde-m(r)");

    // orbit
    auto* cmd_orbit = app.add_subcommand("orbit", "iterate r -> m(r)");
    SpecSource src_orbit;
    src_orbit.add_options(cmd_orbit);
    double seed = 0.0;
    bool auto_seed = false;
    int max_iter = 32;
    double threshold_log = kDefaultEscapeLogThreshold;
    std::string orbit_csv;
    cmd_orbit->add_option("--seed", seed, "starting radius");
    cmd_orbit->add_flag("--auto-seed", auto_seed,
                        "classify the escape property and use the witness seed");
    cmd_orbit->add_option("--max-iter", max_iter, "iteration limit");
    cmd_orbit->add_option("--threshold-log", threshold_log, "escape threshold (log)");
    cmd_orbit->add_option("--out-csv", orbit_csv, "orbit CSV path");

    // classify
    auto* cmd_cls = app.add_subcommand("classify", "order, genus, deficiency");
    SpecSource src_cls;
    src_cls.add_options(cmd_cls);
    double r_min = 1e2, r_max = 1e6;
    bool with_defect = false, with_rays = false;
    std::string cls_json, rays_csv;
    cmd_cls->add_option("--r-min", r_min, "grid start");
    cmd_cls->add_option("--r-max", r_max, "grid end");
    cmd_cls->add_flag("--defect", with_defect, "also estimate the defect at 0");
    cmd_cls->add_flag("--rays", with_rays, "also scan decay rays");
    cmd_cls->add_option("--out-json", cls_json, "report JSON path");
    cmd_cls->add_option("--out-csv", rays_csv, "ray scan CSV path");

    // lemmas
    auto* cmd_lem = app.add_subcommand("lemmas", "verify the checkable lemmas");
    auto* cmd_prodl = cmd_lem->add_subcommand("prodl", "the L_n product sequence");
    bool tight = false;
    int k_count = 20;
    cmd_prodl->add_flag("--tight", tight, "use the tight boundary instance");
    cmd_prodl->add_option("--k", k_count, "subsequence length");
    auto* cmd_ray = cmd_lem->add_subcommand("ray", "primary-factor decay rays");
    int ray_m = 2;
    double ray_t_max = 50.0;
    std::string ray_csv;
    cmd_ray->add_option("--m", ray_m, "factor index (>= 2)");
    cmd_ray->add_option("--t-max", ray_t_max, "ray parameter range");
    cmd_ray->add_option("--out-csv", ray_csv, "profile CSV path");

    // verify51
    auto* cmd_v51 = app.add_subcommand("verify51", "audit the uneven-zero construction");
    double v51_rho = 0.5;
    bool v51_order1 = false;
    int v51_kmax = 12, k_from = 1, k_to = 5;
    std::string v51_json;
    cmd_v51->add_option("--rho", v51_rho, "order parameter in [1/2, 1)");
    cmd_v51->add_flag("--order1", v51_order1, "order-1 variant");
    cmd_v51->add_option("--k-max", v51_kmax, "materialized levels");
    cmd_v51->add_option("--k-from", k_from, "first checked level");
    cmd_v51->add_option("--k-to", k_to, "last checked level");
    cmd_v51->add_option("--out-json", v51_json, "report JSON path");

    // escape
    auto* cmd_esc = app.add_subcommand("escape", "render an escape grid");
    SpecSource src_esc;
    src_esc.add_options(cmd_esc);
    std::string schedule_name = "max-mod-power";
    ScheduleParams sp;
    GridRect rect;
    int esc_max_iter = 8;
    std::string out_image, out_csv;
    cmd_esc->add_option("--schedule", schedule_name,
                        "max-mod-power | min-mod-iter-cube | tilde-min-iter | quite-fast");
    cmd_esc->add_option("--base-r", sp.base_r, "schedule base radius");
    cmd_esc->add_option("--steps", sp.steps, "schedule steps");
    cmd_esc->add_option("--epsilon", sp.epsilon, "quite-fast epsilon");
    cmd_esc->add_option("--n-shift", sp.n_shift, "min-mod-iter-cube shift N");
    cmd_esc->add_option("--exponent", sp.exponent, "min-mod-iter-cube exponent");
    cmd_esc->add_option("--offset", sp.offset, "schedule offset L");
    cmd_esc->add_option("--re-min", rect.re_min, "rectangle");
    cmd_esc->add_option("--re-max", rect.re_max, "rectangle");
    cmd_esc->add_option("--im-min", rect.im_min, "rectangle");
    cmd_esc->add_option("--im-max", rect.im_max, "rectangle");
    cmd_esc->add_option("--width", rect.width, "pixels");
    cmd_esc->add_option("--height", rect.height, "pixels");
    cmd_esc->add_option("--max-iter", esc_max_iter, "iteration limit");
    cmd_esc->add_option("--out-image", out_image, "P5 graymap path");
    cmd_esc->add_option("--out-csv", out_csv, "grid CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_family->parsed()) {
            const EntireFunctionSpec spec = src_family.resolve();
            const GenusReport genus = compute_genus(spec);
            std::printf("factor_index %d\n", genus.factor_index);
            std::printf("poly_degree %d\n", genus.poly_degree);
            std::printf("genus %d\n", genus.genus);
            std::printf("laguerre_polya %s\n", is_laguerre_polya(spec) ? "yes" : "no");
            if (!out_spec.empty()) save_spec_file(spec, out_spec);
        } else if (cmd_eval->parsed()) {
            const EntireFunctionSpec spec = src_eval.resolve();
            const LogComplex v = eval_log(spec, parse_complex(z_text), tolerance);
            if (v.is_zero()) {
                std::printf("log_modulus -inf\nargument undefined\n");
            } else {
                std::printf("log_modulus %s\n", format_double(v.log_mod).c_str());
                std::printf("argument %s\n", format_double(v.arg).c_str());
            }
        } else if (cmd_mod->parsed()) {
            const EntireFunctionSpec spec = src_mod.resolve();
            CircleParams params;
            params.n_samples = samples;
            const ModulusProfile prof = circle_profile(spec, mod_r, params);
            std::printf("min_log %s\n", format_double(prof.min_log).c_str());
            std::printf("argmin_theta %s\n", format_double(prof.argmin_theta).c_str());
            std::printf("max_log %s\n", format_double(prof.max_log).c_str());
            std::printf("argmax_theta %s\n", format_double(prof.argmax_theta).c_str());
            if (do_tilde)
                std::printf("tilde_min_log %s\n",
                            format_double(tilde_min_log(spec, std::log(mod_r), {}, params))
                                .c_str());
            if (!mod_csv.empty()) export_profile_csv(prof, mod_csv);
        } else if (cmd_orbit->parsed()) {
            const EntireFunctionSpec spec = src_orbit.resolve();
            OrbitRecord orbit;
            if (auto_seed) {
                const PropertyVerdict verdict = classify_property(spec);
                switch (verdict.kind) {
                case PropertyVerdict::Kind::holds:
                    std::printf("verdict Holds\n");
                    std::printf("witness_seed %s\n",
                                format_double(verdict.witness_seed).c_str());
                    orbit = verdict.witness_orbit;
                    break;
                case PropertyVerdict::Kind::fails_evidence:
                    std::printf("verdict FailsEvidence\n");
                    std::printf("tilde_ratio_bound %s\n",
                                format_double(verdict.tilde_ratio_bound).c_str());
                    return 0;
                case PropertyVerdict::Kind::inconclusive:
                    std::printf("verdict Inconclusive\n");
                    return 0;
                }
            } else {
                if (!(seed > 0.0)) throw ParameterOutOfRange("need --seed or --auto-seed");
                orbit = iterate_min_modulus(spec, seed, max_iter, threshold_log);
            }
            std::printf("status %s\n", orbit_status_name(orbit.status));
            std::printf("event_step %d\n", orbit.event_step);
            std::printf("strictly_increasing %s\n",
                        orbit.strictly_increasing ? "yes" : "no");
            for (std::size_t i = 0; i < orbit.values.size(); ++i)
                std::printf("value %zu %s\n", i, format_double(orbit.values[i]).c_str());
            if (!orbit_csv.empty()) export_orbit_csv(orbit, orbit_csv);
        } else if (cmd_cls->parsed()) {
            const EntireFunctionSpec spec = src_cls.resolve();
            const GenusReport genus = compute_genus(spec);
            std::printf("factor_index %d\npoly_degree %d\ngenus %d\n", genus.factor_index,
                        genus.poly_degree, genus.genus);
            const GrowthReport growth = estimate_order(spec, r_min, r_max);
            std::printf("order_estimate %s\n",
                        format_double(growth.order_estimate).c_str());
            std::string json = "{\"growth\":" + growth_report_json(growth) +
                               ",\"genus\":" + genus_report_json(genus);
            if (with_defect) {
                const DeficiencyReport defect = defect_zero(spec, r_min, r_max);
                std::printf("defect_estimate %s\n",
                            format_double(defect.defect_estimate).c_str());
                json += ",\"deficiency\":" + deficiency_report_json(defect);
            }
            if (with_rays) {
                const auto scan = decay_ray_scan(spec);
                for (const auto& e : scan)
                    std::printf("ray %s exponent %s decaying %s\n",
                                format_double(e.theta).c_str(),
                                format_double(e.fitted_exponent).c_str(),
                                e.decaying ? "yes" : "no");
                if (!rays_csv.empty()) export_ray_scan_csv(scan, rays_csv);
            }
            json += "}";
            if (!cls_json.empty()) write_text_file(cls_json, json);
        } else if (cmd_lem->parsed()) {
            if (cmd_prodl->parsed()) {
                (void)tight; // the tight boundary instance is the only built-in one
                const ProdLInstance inst = prodl_tight_instance(k_count);
                std::printf("min_L %s\n", format_double(inst.min_L).c_str());
                std::printf("delta_1 %s\n", format_double(inst.delta.front()).c_str());
                std::printf("%s\n", inst.pass ? "PASS" : "FAIL");
                if (!inst.pass) return 1;
            } else if (cmd_ray->parsed()) {
                const auto thetas = theta_candidates(ray_m);
                std::vector<double> grid;
                for (double T = -ray_t_max; T <= ray_t_max; T += ray_t_max / 64.0)
                    grid.push_back(T);
                bool all_ok = true;
                for (double th : thetas) {
                    const RayProfile prof = ray_profile(ray_m, th, grid);
                    double worst = 0.0;
                    for (double v : prof.log_E) worst = std::max(worst, v);
                    std::printf("theta %s max_log_E %s fitted_C %s\n",
                                format_double(th).c_str(), format_double(worst).c_str(),
                                format_double(prof.fitted_C).c_str());
                    if (worst > 1e-12) all_ok = false;
                    if (!ray_csv.empty()) export_ray_profile_csv(prof, ray_csv);
                }
                std::printf("%s\n", all_ok ? "PASS" : "FAIL");
                if (!all_ok) return 1;
            } else {
                throw ParameterOutOfRange("lemmas needs a subcommand: prodl or ray");
            }
        } else if (cmd_v51->parsed()) {
            const Construction51Data data = v51_order1
                                                ? build_construction51_order1(v51_kmax)
                                                : build_construction51(v51_rho, v51_kmax);
            const int hi = std::min(k_to, data.levels.size());
            const auto checks = verify_construction51(data, k_from, hi);
            for (const auto& c : checks)
                std::printf(
                    "k %d tail %s tail_ok %s log_m %s required %s bound_ok %s dominates %s\n",
                    c.k, format_double(c.tail_sum).c_str(), c.tail_ok ? "yes" : "no",
                    format_double(c.log_min_modulus).c_str(),
                    format_double(c.required_log).c_str(), c.bound_ok ? "yes" : "no",
                    c.dominates_next ? "yes" : "no");
            if (!v51_json.empty()) write_text_file(v51_json, construction51_json(data, checks));
        } else if (cmd_esc->parsed()) {
            const EntireFunctionSpec spec = src_esc.resolve();
            ScheduleKind kind;
            if (schedule_name == "max-mod-power") kind = ScheduleKind::max_mod_power;
            else if (schedule_name == "min-mod-iter-cube") kind = ScheduleKind::min_mod_iter_cube;
            else if (schedule_name == "tilde-min-iter") kind = ScheduleKind::tilde_min_iter;
            else if (schedule_name == "quite-fast") kind = ScheduleKind::quite_fast;
            else throw ParameterOutOfRange("unknown schedule '" + schedule_name + "'");
            const ThresholdSchedule schedule = build_schedule(spec, kind, sp);
            const EscapeGrid grid = render_escape(spec, rect, schedule, esc_max_iter);
            int survived_all = 0;
            for (int s : grid.survived)
                if (s == grid.max_iter) ++survived_all;
            std::printf("pixels %zu\n", grid.survived.size());
            std::printf("survivors %d\n", survived_all);
            if (!out_image.empty()) export_grid_pgm(grid, out_image);
            if (!out_csv.empty()) export_grid_csv(grid, out_csv);
        }
    } catch (const SpecParseError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const ParameterOutOfRange& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
