#include "minmod/classify.hpp"

#include "minmod/lemmas.hpp"
#include "minmod/spec_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace minmod {

namespace {

std::vector<double> geometric_grid(double r_min, double r_max, double ratio) {
    if (!(r_min > 0.0) || !(r_max > r_min)) throw ParameterOutOfRange("bad radius range");
    if (!(ratio > 1.0)) throw ParameterOutOfRange("grid ratio must exceed 1");
    std::vector<double> out;
    const double lstep = std::log(ratio);
    const double l0 = std::log(r_min), l1 = std::log(r_max);
    const std::size_t count =
        static_cast<std::size_t>(std::max(1.0, std::ceil((l1 - l0) / lstep))) + 1;
    out.reserve(count);
    for (std::size_t i = 0; i + 1 < count; ++i) out.push_back(std::exp(l0 + i * lstep));
    out.push_back(r_max);
    return out;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double d = n * sxx - sx * sx;
    if (d == 0.0) return 0.0;
    return (n * sxy - sx * sy) / d;
}

} // namespace

GrowthReport estimate_order(const EntireFunctionSpec& spec, double r_min, double r_max,
                            double grid_ratio, const CircleParams& params, par::Mode mode) {
    if (!(r_max >= 1e3 * r_min))
        throw ParameterOutOfRange("order estimation needs r_max >= 1000 r_min");
    const std::vector<double> grid = geometric_grid(r_min, r_max, grid_ratio);

    std::vector<double> max_logs(grid.size());
    par::for_index(
        grid.size(),
        [&](std::size_t i) {
            max_logs[i] = circle_max_log(spec, std::log(grid[i]), params, par::Mode::serial);
        },
        mode);

    GrowthReport rep;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(max_logs[i] > 1.0)) continue; // need M(r) > e
        rep.radii.push_back(grid[i]);
        rep.loglog_max.push_back(std::log(max_logs[i]));
    }
    if (rep.radii.size() < 4)
        throw DegenerateGrowth("log M stays at or below e across the grid");
    for (std::size_t i = 0; i + 1 < rep.loglog_max.size(); ++i)
        if (rep.loglog_max[i + 1] < rep.loglog_max[i] - 1e-9)
            throw DegenerateGrowth("log log M is not increasing on the grid");

    // sliding one-decade windows
    const double decade = std::log(10.0);
    double best = 0.0;
    for (std::size_t i = 0; i < rep.radii.size(); ++i) {
        std::vector<double> xs, ys;
        const double l0 = std::log(rep.radii[i]);
        for (std::size_t j = i; j < rep.radii.size(); ++j) {
            const double lj = std::log(rep.radii[j]);
            if (lj > l0 + decade + 1e-12) break;
            xs.push_back(lj);
            ys.push_back(rep.loglog_max[j]);
        }
        if (xs.size() < 3 || xs.back() < l0 + 0.8 * decade) continue;
        const double slope = fit_slope(xs, ys);
        rep.window_slopes.push_back(slope);
        best = std::max(best, slope);
    }
    if (rep.window_slopes.empty())
        throw DegenerateGrowth("no full decade window available");
    rep.order_estimate = best;
    return rep;
}

GenusReport compute_genus(const EntireFunctionSpec& spec) {
    GenusReport rep;
    rep.factor_index = spec.zeros.empty() ? 0 : minimal_factor_index(spec.zeros);
    rep.poly_degree = std::max(0, spec.exponent_poly.degree());
    rep.genus = std::max(rep.factor_index, rep.poly_degree);
    return rep;
}

double counting_N(const EntireFunctionSpec& spec, double r) {
    if (!(r > 0.0)) throw ParameterOutOfRange("radius must be > 0");
    const double lr = std::log(r);
    switch (spec.zeros.kind()) {
    case GeneratorKind::power_law: {
        const PowerLawRule& p = spec.zeros.power();
        const std::int64_t K = p.steps_below(r);
        if (K == 0) return 0.0;
        const double kd = static_cast<double>(K);
        // sum_{k<=K} log(r / (c (k+h)^s)) = K (log r - log c) - s log Gamma ratios
        const double sum_logs = std::lgamma(kd + 1.0 + p.shift) - std::lgamma(1.0 + p.shift);
        const double total = kd * (lr - std::log(p.scale)) - p.exponent * sum_logs;
        return p.multiplicity * (p.symmetric ? 2.0 : 1.0) * total;
    }
    case GeneratorKind::list:
    case GeneratorKind::recursive: {
        double acc = 0.0;
        for (const ZeroEntry& e : spec.zeros.entries()) {
            if (e.log_abs > lr) break;
            acc += e.multiplicity * (lr - e.log_abs);
        }
        return acc;
    }
    }
    return 0.0;
}

double characteristic_T(const EntireFunctionSpec& spec, double r,
                        const CharacteristicParams& params, par::Mode mode) {
    if (!(r > 0.0)) throw ParameterOutOfRange("radius must be > 0");
    double lr = std::log(r);
    // shift off an exact zero modulus
    if (const auto la = spec.zeros.nearest_log_abs(lr); la && std::abs(lr - *la) < 1e-12)
        lr += 1e-6;

    auto integrand = [&](double theta) {
        const double v = eval_log_modulus_polar(spec, lr, theta, params.tail_tol);
        if (std::isinf(v) && v < 0) return kLogSaturation;
        return std::max(0.0, -v);
    };

    // exclude neighborhoods of the axis when a zero modulus sits close to
    // this circle (log-singular integrand); covered analytically below
    const double eps = params.zero_exclusion;
    bool excl0 = false, excl_pi = false;
    if (const auto la = spec.zeros.nearest_log_abs(lr); la && std::abs(lr - *la) < 1e-3) {
        const bool all_neg = spec.zeros.all_negative();
        const bool sym = spec.zeros.symmetric_pairs();
        excl0 = sym || !all_neg;
        excl_pi = sym || all_neg;
    }

    const double a = excl0 ? eps : 0.0;
    const double b = excl_pi ? M_PI - eps : M_PI;

    struct Node {
        double theta;
        double value;
    };
    std::vector<Node> nodes(params.base_points + 1);
    for (int i = 0; i <= params.base_points; ++i)
        nodes[i].theta = a + (b - a) * i / params.base_points;
    par::for_index(
        nodes.size(), [&](std::size_t i) { nodes[i].value = integrand(nodes[i].theta); },
        mode);

    // spike-driven panel splitting: a panel whose ends differ by 10x gets a
    // midpoint until the budget is spent
    while (static_cast<int>(nodes.size()) < params.max_points) {
        std::vector<double> mids;
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            const double va = nodes[i].value, vb = nodes[i + 1].value;
            const double lo = std::min(va, vb), hi = std::max(va, vb);
            if (hi > 10.0 * lo + 1.0 && nodes[i + 1].theta - nodes[i].theta > 1e-7)
                mids.push_back(0.5 * (nodes[i].theta + nodes[i + 1].theta));
        }
        if (mids.empty() ||
            static_cast<int>(nodes.size() + mids.size()) > params.max_points)
            break;
        std::vector<Node> extra(mids.size());
        for (std::size_t i = 0; i < mids.size(); ++i) extra[i].theta = mids[i];
        par::for_index(
            extra.size(), [&](std::size_t i) { extra[i].value = integrand(extra[i].theta); },
            mode);
        nodes.insert(nodes.end(), extra.begin(), extra.end());
        std::sort(nodes.begin(), nodes.end(),
                  [](const Node& x, const Node& y) { return x.theta < y.theta; });
    }

    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        integral += 0.5 * (nodes[i].value + nodes[i + 1].value) *
                    (nodes[i + 1].theta - nodes[i].theta);

    // analytic cover of the excluded log-singular slivers:
    // integral of log(1/(c t)) over (0, eps) = eps (1 + log(1/(c eps)))
    if (excl0) integral += eps * (1.0 + std::max(0.0, nodes.front().value));
    if (excl_pi) integral += eps * (1.0 + std::max(0.0, nodes.back().value));

    return counting_N(spec, std::exp(lr)) + integral / M_PI;
}

DeficiencyReport defect_zero(const EntireFunctionSpec& spec, double r_min, double r_max,
                             double grid_ratio, const CharacteristicParams& params,
                             par::Mode mode) {
    if (!(r_max >= 1e3 * r_min))
        throw ParameterOutOfRange("defect grid must span at least 3 decades");
    DeficiencyReport rep;
    rep.radii = geometric_grid(r_min, r_max, grid_ratio);
    rep.N_values.resize(rep.radii.size());
    rep.T_values.resize(rep.radii.size());
    rep.ratio_N_over_T.resize(rep.radii.size());

    // serial over radii: the top radius dominates the cost and the
    // quadrature inside characteristic_T parallelizes over nodes
    for (std::size_t i = 0; i < rep.radii.size(); ++i) {
        rep.N_values[i] = counting_N(spec, rep.radii[i]);
        rep.T_values[i] = characteristic_T(spec, rep.radii[i], params, mode);
        rep.ratio_N_over_T[i] =
            rep.T_values[i] > 0.0 ? rep.N_values[i] / rep.T_values[i] : 1.0;
    }

    double worst = 0.0;
    for (std::size_t i = rep.radii.size() / 2; i < rep.radii.size(); ++i)
        worst = std::max(worst, rep.ratio_N_over_T[i]);
    rep.defect_estimate = std::clamp(1.0 - worst, 0.0, 1.0);
    return rep;
}

std::vector<RayScanEntry> decay_ray_scan(const EntireFunctionSpec& spec, double r_min,
                                         double r_max, int points,
                                         const CircleParams& params) {
    const GenusReport genus = compute_genus(spec);
    const int m = genus.factor_index;
    const int dq = spec.exponent_poly.degree();
    if (!(genus.genus >= 2 || dq >= m + 1))
        throw NoCandidates("needs genus >= 2 or deg Q >= m+1");

    std::vector<double> candidates;
    if (m >= 2 && m >= dq) {
        for (double th : theta_candidates(m)) candidates.push_back(th);
    }
    if (dq >= m + 1 && dq >= 1) {
        // arcs where the leading monomial of Re Q is negative:
        // b_d r^d cos(d theta) < 0
        const double bd = spec.exponent_poly.leading();
        for (int j = 0; j < dq; ++j) {
            // midpoints of the negative arcs of sign(b_d) cos(d theta)
            double mid = (bd > 0.0) ? (2.0 * j + 1.0) * M_PI / dq : 2.0 * j * M_PI / dq;
            const double width = M_PI / dq;
            // keep off the real axis where the zeros sit
            if (std::abs(std::remainder(mid, M_PI)) < 1e-9) mid += 0.25 * width;
            candidates.push_back(reduce_angle(mid) < 0 ? reduce_angle(mid) + 2 * M_PI
                                                       : reduce_angle(mid));
        }
    }
    if (candidates.empty()) throw NoCandidates("no admissible rays");
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<RayScanEntry> scan;
    const double lstep = std::log(r_max / r_min) / (points - 1);
    for (double th : candidates) {
        RayScanEntry entry;
        entry.theta = th;
        entry.radii.resize(points);
        entry.log_mods.resize(points);
        for (int i = 0; i < points; ++i) entry.radii[i] = r_min * std::exp(i * lstep);
        par::for_index(static_cast<std::size_t>(points), [&](std::size_t i) {
            entry.log_mods[i] = eval_log_modulus_polar(spec, std::log(entry.radii[i]), th,
                                                        params.tail_tol);
        });
        std::vector<double> xs, ys;
        bool decreasing = true, negative = true;
        for (int i = 0; i < points; ++i) {
            if (!(entry.log_mods[i] < 0.0)) negative = false;
            if (i > 0 && !(entry.log_mods[i] < entry.log_mods[i - 1])) decreasing = false;
            if (entry.log_mods[i] < 0.0) {
                xs.push_back(std::log(entry.radii[i]));
                ys.push_back(std::log(-entry.log_mods[i]));
            }
        }
        entry.fitted_exponent = xs.size() >= 3 ? fit_slope(xs, ys) : 0.0;
        entry.decaying = negative && decreasing;
        scan.push_back(std::move(entry));
    }
    return scan;
}

void export_ray_scan_csv(const std::vector<RayScanEntry>& scan, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IOError("cannot open '" + path + "'");
    out << "theta,r,log_modulus\n";
    for (const RayScanEntry& e : scan)
        for (std::size_t i = 0; i < e.radii.size(); ++i)
            out << format_double(e.theta) << ',' << format_double(e.radii[i]) << ','
                << format_double(e.log_mods[i]) << "\n";
    if (!out) throw IOError("write to '" + path + "' failed");
}

namespace {

std::string json_array(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += format_double(v[i]);
    }
    return out + "]";
}

} // namespace

std::string growth_report_json(const GrowthReport& r) {
    std::ostringstream out;
    out << "{\"order_estimate\":" << format_double(r.order_estimate)
        << ",\"radii\":" << json_array(r.radii)
        << ",\"loglog_max\":" << json_array(r.loglog_max)
        << ",\"window_slopes\":" << json_array(r.window_slopes) << "}";
    return out.str();
}

std::string genus_report_json(const GenusReport& r) {
    std::ostringstream out;
    out << "{\"factor_index\":" << r.factor_index << ",\"poly_degree\":" << r.poly_degree
        << ",\"genus\":" << r.genus << "}";
    return out.str();
}

std::string deficiency_report_json(const DeficiencyReport& r) {
    std::ostringstream out;
    out << "{\"defect_estimate\":" << format_double(r.defect_estimate)
        << ",\"radii\":" << json_array(r.radii) << ",\"N\":" << json_array(r.N_values)
        << ",\"T\":" << json_array(r.T_values)
        << ",\"ratio\":" << json_array(r.ratio_N_over_T) << "}";
    return out.str();
}

} // namespace minmod
