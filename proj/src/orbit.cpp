#include "minmod/orbit.hpp"
#include "minmod/spec_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace minmod {

namespace {

// Radii beyond this cannot be iterated: the zero stream would be too long
// (power laws) or the next exp() is meaningless. Axis-shortcut specs allow a
// much longer stream since each step costs one evaluation.
double max_feasible_log_radius(const EntireFunctionSpec& spec) {
    switch (spec.zeros.kind()) {
    case GeneratorKind::power_law: {
        const PowerLawRule& p = spec.zeros.power();
        const double k_cap =
            axis_extremal_kind(spec) != AxisExtremal::none ? 6.7e7 : 1.3e5;
        // largest lr with steps_below(2r) <= k_cap
        return std::log(p.scale) + p.exponent * std::log(k_cap + p.shift) - M_LN2;
    }
    case GeneratorKind::list:
    case GeneratorKind::recursive:
        return 0.45 * kLogSaturation;
    }
    return 0.45 * kLogSaturation;
}

bool is_sentinel(double v) { return std::isinf(v) && v < 0; }

} // namespace

const char* orbit_status_name(OrbitStatus s) {
    switch (s) {
    case OrbitStatus::escaped: return "Escaped";
    case OrbitStatus::bounded: return "Bounded";
    case OrbitStatus::hit_zero: return "HitZero";
    case OrbitStatus::max_iterations: return "MaxIterations";
    }
    return "?";
}

OrbitRecord iterate_min_modulus(const EntireFunctionSpec& spec, double seed, int max_iter,
                                double escape_log_threshold, const CircleParams& params) {
    if (!(seed > 0.0)) throw ParameterOutOfRange("seed must be > 0");
    if (max_iter < 1) throw ParameterOutOfRange("max_iter must be >= 1");
    if (!std::isfinite(escape_log_threshold))
        throw ParameterOutOfRange("escape threshold must be finite");

    OrbitRecord rec;
    rec.seed = seed;
    rec.escape_log_threshold = escape_log_threshold;
    rec.values.push_back(std::log(seed));

    const double feasible = max_feasible_log_radius(spec);

    for (int n = 1; n <= max_iter; ++n) {
        const double lr = rec.values.back();
        if (lr > feasible) {
            rec.status = OrbitStatus::escaped;
            rec.resource_escape = true;
            rec.event_step = n - 1;
            break;
        }
        const double v = circle_min_log(spec, lr, params, par::Mode::serial);
        rec.values.push_back(v);
        if (is_sentinel(v)) {
            rec.status = OrbitStatus::hit_zero;
            rec.event_step = n;
            break;
        }
        if (v > escape_log_threshold) {
            rec.status = OrbitStatus::escaped;
            rec.event_step = n;
            break;
        }
        if (n == max_iter) {
            // bounded when the second half shows no growth over the first
            double first_max = -std::numeric_limits<double>::infinity();
            double second_max = first_max;
            const std::size_t half = rec.values.size() / 2;
            for (std::size_t i = 0; i < rec.values.size(); ++i)
                (i < half ? first_max : second_max) =
                    std::max(i < half ? first_max : second_max, rec.values[i]);
            rec.status = second_max <= first_max + 1e-12 ? OrbitStatus::bounded
                                                         : OrbitStatus::max_iterations;
            rec.event_step = n;
        }
    }

    rec.strictly_increasing = rec.values.size() >= 2;
    for (std::size_t i = 0; i + 1 < rec.values.size(); ++i) {
        if (is_sentinel(rec.values[i + 1]) || !(rec.values[i + 1] > rec.values[i])) {
            rec.strictly_increasing = false;
            break;
        }
    }
    return rec;
}

namespace {

struct MinGrid {
    std::vector<double> log_t;
    std::vector<double> min_log; // m on each circle
};

MinGrid sample_min_grid(const EntireFunctionSpec& spec, double lo_log, double hi_log,
                        double ratio, const CircleParams& params) {
    MinGrid g;
    const double step = std::log(ratio);
    const std::size_t count =
        static_cast<std::size_t>(std::max(1.0, std::ceil((hi_log - lo_log) / step))) + 1;
    g.log_t.resize(count);
    g.min_log.resize(count);
    for (std::size_t i = 0; i < count; ++i)
        g.log_t[i] = std::min(hi_log, lo_log + static_cast<double>(i) * step);
    g.log_t.back() = hi_log;
    par::for_index(count, [&](std::size_t i) {
        g.min_log[i] = circle_min_log(spec, g.log_t[i], params, par::Mode::serial);
    });
    return g;
}

// One shared minimum grid over (0, T_max] prefix-maxed into tilde values at
// each checkpoint; a checkpoint failing the coarse pass is re-checked with
// the refined tilde before it counts as a failure.
bool tilde_dominates_on_grid(const EntireFunctionSpec& spec, double T, double T_max,
                             int points, const CircleParams& params,
                             std::vector<double>* out_t, std::vector<double>* out_tilde) {
    const double l0 = std::log(T), l1 = std::log(T_max);
    std::vector<double> ts(points), tl(points);
    for (int i = 0; i < points; ++i)
        ts[i] = l0 + (l1 - l0) * i / (points - 1);

    const TildeGrid grid_params{};
    const MinGrid grid = sample_min_grid(spec, std::log(grid_params.r_min), l1,
                                         grid_params.ratio, params);
    const double m0 = eval_log_polar(spec, -std::numeric_limits<double>::infinity(), 0.0,
                                     params.tail_tol)
                          .log_mod;
    std::size_t gi = 0;
    double running = m0;
    for (int i = 0; i < points; ++i) {
        while (gi < grid.log_t.size() && grid.log_t[gi] <= ts[i] + 1e-12) {
            if (!is_sentinel(grid.min_log[gi])) running = std::max(running, grid.min_log[gi]);
            ++gi;
        }
        tl[i] = running;
    }
    bool all = true;
    for (int i = 0; i < points; ++i) {
        if (!(tl[i] > ts[i])) {
            // borderline misses get the refined tilde; wide misses cannot be
            // saved by refinement (grid resolution bounds the gap)
            if (tl[i] > ts[i] - 0.1)
                tl[i] = tilde_min_log(spec, ts[i], grid_params, params, par::Mode::serial);
            if (!(tl[i] > ts[i])) all = false;
        }
    }
    if (out_t) *out_t = std::move(ts);
    if (out_tilde) *out_tilde = std::move(tl);
    return all;
}

} // namespace

namespace {

// n-th forward iterate of the minimum-modulus map started at exp(ls);
// -saturation when any intermediate circle carries a zero.
double orbit_value(const EntireFunctionSpec& spec, double ls, int n,
                   const CircleParams& params) {
    double v = ls;
    for (int i = 0; i < n; ++i) {
        v = circle_min_log(spec, v, params, par::Mode::serial);
        if (is_sentinel(v)) return -kLogSaturation;
    }
    return v;
}

struct BracketMax {
    double x = 0.0;
    double value = 0.0;
    double lo = 0.0, hi = 0.0;
};

template <typename Fn>
BracketMax golden_max(Fn&& fn, double lo, double hi, double tol) {
    const double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = fn(x1), f2 = fn(x2);
    while (hi - lo > tol) {
        if (f1 >= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = fn(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = fn(x2);
        }
    }
    BracketMax out;
    out.lo = lo;
    out.hi = hi;
    if (f1 >= f2) {
        out.x = x1;
        out.value = f1;
    } else {
        out.x = x2;
        out.value = f2;
    }
    return out;
}

// Steers a seed bracket so every orbit iterate lands near a peak of m: at
// depth n, maximize the n-th iterate over the bracket, then widen back to
// the plateau where it stays within 0.2 of the peak. Blind forward orbits
// from single seeds fail here because the map r -> m(r) is expanding and
// the strictly-increasing seeds form hair-thin basins.
std::optional<double> targeted_seed(const EntireFunctionSpec& spec, double la, double lb,
                                    double escape_gain, int max_steps,
                                    const SeedSearchParams& sp, const CircleParams& params) {
    const double threshold = 0.5 * (la + lb) + escape_gain;
    double prev = -std::numeric_limits<double>::infinity();
    for (int n = 1; n <= max_steps; ++n) {
        auto fn = [&](double ls) { return orbit_value(spec, ls, n, params); };
        const BracketMax best = golden_max(fn, la, lb, 1e-13 * std::max(1.0, std::abs(lb)));
        if (!(best.value > prev)) return std::nullopt;
        prev = best.value;
        if (best.value > threshold) {
            const double seed = std::exp(best.x);
            const OrbitRecord orbit = iterate_min_modulus(
                spec, seed, sp.orbit_max_iter, std::log(seed) + escape_gain, params);
            if (orbit.status == OrbitStatus::escaped && orbit.strictly_increasing &&
                !orbit.resource_escape)
                return seed;
            return std::nullopt;
        }
        // plateau expansion around the argmax
        const double drop = 0.2;
        double lo = best.x, hi = best.x;
        double step = std::max(1e-12, 0.5 * (best.hi - best.lo));
        while (lo - step >= la && fn(lo - step) > best.value - drop) {
            lo -= step;
            step *= 2.0;
        }
        step = std::max(1e-12, 0.5 * (best.hi - best.lo));
        while (hi + step <= lb && fn(hi + step) > best.value - drop) {
            hi += step;
            step *= 2.0;
        }
        la = std::min(lo, best.lo);
        lb = std::max(hi, best.hi);
    }
    return std::nullopt;
}

} // namespace

std::optional<double> find_strict_seed(const EntireFunctionSpec& spec, double t_min,
                                       double t_max, const SeedSearchParams& sp,
                                       const CircleParams& params) {
    if (!(t_min >= 1.0)) throw ParameterOutOfRange("t_min must be >= 1");
    if (!(t_max > t_min)) throw ParameterOutOfRange("t_max must exceed t_min");

    if (!tilde_dominates_on_grid(spec, t_min, t_max, sp.tilde_check_points, params,
                                 nullptr, nullptr))
        return std::nullopt;

    const MinGrid grid =
        sample_min_grid(spec, std::log(t_min), std::log(t_max), sp.grid_ratio, params);
    const std::size_t n = grid.log_t.size();

    // candidate brackets: local maxima of m in ascending radius; the argmax
    // over [t_min, tilde-m(t_min)] is tried first
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = grid.min_log[i];
        if (is_sentinel(v)) continue;
        const bool left = i == 0 || is_sentinel(grid.min_log[i - 1]) || v >= grid.min_log[i - 1];
        const bool right =
            i + 1 == n || is_sentinel(grid.min_log[i + 1]) || v >= grid.min_log[i + 1];
        if (left && right) candidates.push_back(i);
    }
    if (candidates.empty()) return std::nullopt;

    const double tilde_at_min = tilde_min_log(spec, std::log(t_min), {}, params);
    std::size_t first = candidates[0];
    double best_v = -std::numeric_limits<double>::infinity();
    for (std::size_t i : candidates) {
        if (grid.log_t[i] <= tilde_at_min && grid.min_log[i] > best_v) {
            best_v = grid.min_log[i];
            first = i;
        }
    }
    std::stable_partition(candidates.begin(), candidates.end(),
                          [&](std::size_t i) { return i == first; });

    const double escape_gain = sp.evidence_decades * std::log(10.0);
    const int max_candidates = 24;
    int tried = 0;
    for (std::size_t ci : candidates) {
        if (++tried > max_candidates) break;
        const double a = ci > 0 ? grid.log_t[ci - 1] : grid.log_t[ci];
        const double b = ci + 1 < n ? grid.log_t[ci + 1] : grid.log_t[ci];
        if (!(b > a)) continue;
        const auto seed =
            targeted_seed(spec, a, b, escape_gain, sp.orbit_max_iter, sp, params);
        if (seed) return seed;
    }
    return std::nullopt;
}

EquivalenceReport check_equivalences(const EntireFunctionSpec& spec, double T,
                                     double T_max, const CircleParams& params) {
    if (!(T_max >= 10.0 * T)) throw ParameterOutOfRange("T_max must be >= 10 T");
    EquivalenceReport rep;

    rep.tilde_dominates = tilde_dominates_on_grid(spec, T, T_max, 24, params, &rep.grid_t,
                                                  &rep.grid_tilde_log);

    // (a)/(b): plain sampled orbits plus the constructive seed
    std::vector<double> seeds;
    for (int i = 0; i < 16; ++i)
        seeds.push_back(std::exp(std::log(T) + (std::log(T_max) - std::log(T)) * i / 15.0));
    const auto constructive = find_strict_seed(spec, T, T_max, {}, params);
    if (constructive) seeds.push_back(*constructive);

    OrbitRecord chain_orbit;
    for (double s : seeds) {
        const double threshold = std::log(s) + 2.0 * std::log(10.0);
        const OrbitRecord orbit = iterate_min_modulus(spec, s, 16, threshold, params);
        double peak = -std::numeric_limits<double>::infinity();
        for (double v : orbit.values)
            if (!is_sentinel(v)) peak = std::max(peak, v);
        if (peak > std::log(T_max)) rep.orbit_unbounded = true;
        if (orbit.status == OrbitStatus::escaped && !orbit.resource_escape) {
            if (!rep.orbit_escapes) {
                rep.orbit_escapes = true;
                rep.witness_seed = s;
                chain_orbit = orbit;
            }
        }
    }

    // (e): increasing chain t_{n+1} <= m(t_n) reaching T_max; an escaping
    // orbit realizes one with equality, otherwise try a greedy chain from the
    // best minimum on [T, tilde-m(T)].
    if (rep.orbit_escapes) {
        rep.chain_exists = true;
    } else {
        double t_log = std::log(T);
        double cur = circle_min_log(spec, t_log, params, par::Mode::serial);
        rep.chain_exists = false;
        for (int step = 0; step < 32; ++step) {
            if (is_sentinel(cur) || !(cur > t_log)) break;
            t_log = cur;
            if (t_log > std::log(T_max)) {
                rep.chain_exists = true;
                break;
            }
            cur = circle_min_log(spec, t_log, params, par::Mode::serial);
        }
    }

    rep.inconsistent = (rep.tilde_dominates && !rep.orbit_escapes) ||
                       (rep.orbit_escapes && !rep.tilde_dominates);
    return rep;
}

PropertyVerdict classify_property(const EntireFunctionSpec& spec,
                                  std::optional<double> range_min,
                                  std::optional<double> range_max,
                                  const CircleParams& params) {
    PropertyVerdict verdict;
    double first_zero = 1.0;
    if (spec.zeros.kind() == GeneratorKind::power_law)
        first_zero = spec.zeros.power().location(1.0);
    else if (!spec.zeros.entries().empty())
        first_zero = std::exp(spec.zeros.entries().front().log_abs);

    const double T = range_min.value_or(std::max(10.0, 4.0 * first_zero));
    const double T_max = range_max.value_or(std::max(1e6, 1e3 * T));
    verdict.range_min = T;
    verdict.range_max = T_max;

    std::vector<double> ts, tl;
    tilde_dominates_on_grid(spec, T, T_max, 40, params, &ts, &tl);

    // smallest grid point from which tilde-m(t) > t holds through the top of
    // the range (the dominance threshold is existential, not global)
    std::size_t from = ts.size();
    for (std::size_t i = ts.size(); i-- > 0;) {
        if (tl[i] > ts[i])
            from = i;
        else
            break;
    }
    // leave at least a decade of range to search for seeds
    if (from < ts.size() && ts.back() - ts[from] >= std::log(10.0)) {
        verdict.dominance_from = std::exp(ts[from]);
        const auto seed =
            find_strict_seed(spec, std::exp(ts[from]), T_max, {}, params);
        if (seed) {
            verdict.kind = PropertyVerdict::Kind::holds;
            verdict.witness_seed = *seed;
            verdict.witness_orbit = iterate_min_modulus(
                spec, *seed, 12, std::log(*seed) + 2.0 * std::log(10.0), params);
            return verdict;
        }
        verdict.kind = PropertyVerdict::Kind::inconclusive;
        return verdict;
    }

    double max_ratio = -std::numeric_limits<double>::infinity();
    bool all_below = true;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double ratio_log = tl[i] - ts[i]; // log(tilde-m(t)/t)
        max_ratio = std::max(max_ratio, ratio_log);
        if (!(ratio_log < 0.0)) all_below = false;
    }
    // decreasing over the trailing half
    bool decreasing = true;
    const std::size_t half = ts.size() / 2;
    for (std::size_t i = half; i + 1 < ts.size(); ++i)
        if (tl[i + 1] - ts[i + 1] > (tl[i] - ts[i]) + 1e-9) decreasing = false;

    if (all_below && decreasing) {
        verdict.kind = PropertyVerdict::Kind::fails_evidence;
        verdict.tilde_ratio_bound = std::exp(max_ratio);
    } else {
        verdict.kind = PropertyVerdict::Kind::inconclusive;
    }
    return verdict;
}

void export_orbit_csv(const OrbitRecord& orbit, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IOError("cannot open '" + path + "'");
    out << "step,log_radius,log_min_modulus,status\n";
    for (std::size_t n = 0; n + 1 < orbit.values.size(); ++n) {
        const bool last = n + 2 == orbit.values.size();
        out << n << ',' << format_double(orbit.values[n]) << ','
            << format_double(orbit.values[n + 1]) << ','
            << (last ? orbit_status_name(orbit.status) : "") << "\n";
    }
    if (!out) throw IOError("write to '" + path + "' failed");
}

} // namespace minmod
