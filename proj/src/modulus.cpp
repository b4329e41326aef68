#include "minmod/modulus.hpp"
#include "minmod/spec_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>

namespace minmod::par {

namespace {
int g_thread_cap = 0;
Mode g_mode = Mode::openmp;

int env_threads() {
    if (const char* env = std::getenv("MINMODLAB_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}
} // namespace

int thread_cap() { return g_thread_cap > 0 ? g_thread_cap : env_threads(); }
void set_thread_cap(int n) { g_thread_cap = n; }
Mode default_mode() { return g_mode; }
void set_default_mode(Mode m) { g_mode = m; }

} // namespace minmod::par

namespace minmod {

namespace {

// Is a zero modulus on this circle (relative gap below 1e-12)?
bool zero_on_circle(const EntireFunctionSpec& spec, double log_r, double* zero_log_abs) {
    const auto la = spec.zeros.nearest_log_abs(log_r);
    if (!la) return false;
    if (std::abs(log_r - *la) < 1e-12) {
        if (zero_log_abs) *zero_log_abs = *la;
        return true;
    }
    return false;
}

// Angle of the on-circle zero: negative zeros sit at theta = pi.
double zero_axis_theta(const EntireFunctionSpec& spec, double zero_log_abs) {
    if (spec.zeros.kind() == GeneratorKind::power_law)
        return (!spec.zeros.power().symmetric && spec.zeros.power().sign < 0) ? M_PI : 0.0;
    for (const ZeroEntry& e : spec.zeros.entries())
        if (std::abs(e.log_abs - zero_log_abs) < 1e-15 && e.location < 0) return M_PI;
    return 0.0;
}

// Golden-section minimization of fn over [a, b] down to width tol.
template <typename Fn>
void golden_min(Fn&& fn, double a, double b, double tol, double& best_x, double& best_v) {
    const double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = fn(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = fn(x2);
        }
    }
    if (f1 <= f2) {
        best_x = x1;
        best_v = f1;
    } else {
        best_x = x2;
        best_v = f2;
    }
}

ModulusProfile profile_by_sampling(const EntireFunctionSpec& spec, double log_r,
                                   const CircleParams& params, par::Mode mode,
                                   bool allow_shortcut) {
    if (params.n_samples < 64) throw ParameterOutOfRange("n_samples must be >= 64");
    ModulusProfile prof;
    prof.log_radius = log_r;
    prof.radius = log_r < 709.0 ? std::exp(log_r) : std::numeric_limits<double>::infinity();
    prof.sample_count = params.n_samples;

    const AxisExtremal kind = allow_shortcut ? axis_extremal_kind(spec) : AxisExtremal::none;

    double zero_la = 0.0;
    const bool on_zero = zero_on_circle(spec, log_r, &zero_la);

    auto value_at = [&](double theta) {
        return eval_log_modulus_polar(spec, log_r, theta, params.tail_tol);
    };

    if (kind != AxisExtremal::none) {
        double th_min = 0.0, th_max = M_PI;
        switch (kind) {
        case AxisExtremal::positive_axis: th_min = 0.0; th_max = M_PI; break;
        case AxisExtremal::negative_axis: th_min = M_PI; th_max = 0.0; break;
        case AxisExtremal::symmetric: th_min = 0.0; th_max = 0.5 * M_PI; break;
        default: break;
        }
        prof.min_log = value_at(th_min);
        prof.argmin_theta = th_min;
        prof.max_log = value_at(th_max);
        prof.argmax_theta = th_max;
        prof.refined = true;
        if (on_zero && !prof.min_is_zero()) {
            prof.min_log = LogComplex::kZeroSentinel;
            prof.argmin_theta = zero_axis_theta(spec, zero_la);
        }
        return prof;
    }

    const int n = params.n_samples;
    prof.thetas.resize(n);
    prof.log_mods.resize(n);
    for (int i = 0; i < n; ++i) prof.thetas[i] = M_PI * i / (n - 1);
    par::for_index(
        static_cast<std::size_t>(n),
        [&](std::size_t i) { prof.log_mods[i] = value_at(prof.thetas[i]); }, mode);

    // sampled extrema
    int imin = 0, imax = 0;
    bool hit_sentinel = false;
    for (int i = 0; i < n; ++i) {
        const double v = prof.log_mods[i];
        if (std::isinf(v) && v < 0) hit_sentinel = true;
        if (v < prof.log_mods[imin]) imin = i;
        if (v > prof.log_mods[imax]) imax = i;
    }

    double min_v = prof.log_mods[imin], min_t = prof.thetas[imin];
    double max_v = prof.log_mods[imax], max_t = prof.thetas[imax];

    if (!hit_sentinel) {
        // refine every strict local bracket
        auto is_local_min = [&](int i) {
            const double v = prof.log_mods[i];
            const bool left_ok = i == 0 || v <= prof.log_mods[i - 1];
            const bool right_ok = i == n - 1 || v <= prof.log_mods[i + 1];
            return left_ok && right_ok;
        };
        for (int i = 0; i < n; ++i) {
            if (!is_local_min(i)) continue;
            const double a = prof.thetas[std::max(0, i - 1)];
            const double b = prof.thetas[std::min(n - 1, i + 1)];
            if (b - a < params.refine_tol) continue;
            double x, v;
            golden_min(value_at, a, b, params.refine_tol, x, v);
            if (v < min_v) {
                min_v = v;
                min_t = x;
            }
        }
        auto neg = [&](double t) { return -value_at(t); };
        auto is_local_max = [&](int i) {
            const double v = prof.log_mods[i];
            const bool left_ok = i == 0 || v >= prof.log_mods[i - 1];
            const bool right_ok = i == n - 1 || v >= prof.log_mods[i + 1];
            return left_ok && right_ok;
        };
        for (int i = 0; i < n; ++i) {
            if (!is_local_max(i)) continue;
            const double a = prof.thetas[std::max(0, i - 1)];
            const double b = prof.thetas[std::min(n - 1, i + 1)];
            if (b - a < params.refine_tol) continue;
            double x, v;
            golden_min(neg, a, b, params.refine_tol, x, v);
            if (-v > max_v) {
                max_v = -v;
                max_t = x;
            }
        }
        prof.refined = true;
    }

    prof.min_log = min_v;
    prof.argmin_theta = min_t;
    prof.max_log = max_v;
    prof.argmax_theta = max_t;

    if (on_zero && !prof.min_is_zero()) {
        prof.min_log = LogComplex::kZeroSentinel;
        prof.argmin_theta = zero_axis_theta(spec, zero_la);
    }
    return prof;
}

} // namespace

AxisExtremal axis_extremal_kind(const EntireFunctionSpec& spec) {
    const int deg = spec.exponent_poly.degree();
    if (deg > 0) return AxisExtremal::none;
    if (spec.zeros.empty()) return AxisExtremal::positive_axis; // pure z^n e^c
    if (spec.zeros.symmetric_pairs() && spec.factor_index <= 1)
        return AxisExtremal::symmetric;
    if (spec.factor_index != 0) return AxisExtremal::none;
    if (spec.zeros.all_positive()) return AxisExtremal::positive_axis;
    if (spec.zeros.all_negative()) return AxisExtremal::negative_axis;
    return AxisExtremal::none;
}

ModulusProfile circle_profile(const EntireFunctionSpec& spec, double r,
                              const CircleParams& params, par::Mode mode) {
    if (!(r > 0.0)) throw ParameterOutOfRange("radius must be > 0");
    return profile_by_sampling(spec, std::log(r), params, mode, true);
}

ModulusProfile circle_profile_log(const EntireFunctionSpec& spec, double log_r,
                                  const CircleParams& params, par::Mode mode) {
    return profile_by_sampling(spec, log_r, params, mode, true);
}

ModulusProfile circle_profile_sampled(const EntireFunctionSpec& spec, double log_r,
                                      const CircleParams& params, par::Mode mode) {
    return profile_by_sampling(spec, log_r, params, mode, false);
}

double circle_min_log(const EntireFunctionSpec& spec, double log_r,
                      const CircleParams& params, par::Mode mode) {
    const AxisExtremal kind = axis_extremal_kind(spec);
    if (kind != AxisExtremal::none) {
        if (zero_on_circle(spec, log_r, nullptr)) return LogComplex::kZeroSentinel;
        const double th = kind == AxisExtremal::negative_axis ? M_PI : 0.0;
        return eval_log_modulus_polar(spec, log_r, th, params.tail_tol);
    }
    return profile_by_sampling(spec, log_r, params, mode, true).min_log;
}

double circle_max_log(const EntireFunctionSpec& spec, double log_r,
                      const CircleParams& params, par::Mode mode) {
    const AxisExtremal kind = axis_extremal_kind(spec);
    if (kind != AxisExtremal::none) {
        double th = M_PI;
        if (kind == AxisExtremal::negative_axis) th = 0.0;
        if (kind == AxisExtremal::symmetric) th = 0.5 * M_PI;
        return eval_log_modulus_polar(spec, log_r, th, params.tail_tol);
    }
    return profile_by_sampling(spec, log_r, params, mode, true).max_log;
}

double tilde_min_log(const EntireFunctionSpec& spec, double log_r, const TildeGrid& grid,
                     const CircleParams& params, par::Mode mode) {
    if (!(grid.ratio > 1.0 && grid.ratio <= 1.05))
        throw ParameterOutOfRange("tilde grid ratio must be in (1, 1.05]");
    if (!(grid.r_min > 0.0)) throw ParameterOutOfRange("tilde grid r_min must be > 0");

    const double log_ratio = std::log(grid.ratio);
    const double log_lo = std::min(std::log(grid.r_min), log_r);
    const std::size_t count =
        static_cast<std::size_t>(std::max(1.0, std::ceil((log_r - log_lo) / log_ratio))) + 1;

    std::vector<double> vals(count);
    std::vector<double> logs(count);
    for (std::size_t i = 0; i < count; ++i)
        logs[i] = std::min(log_r, log_lo + static_cast<double>(i) * log_ratio);
    logs.back() = log_r;

    par::for_index(
        count, [&](std::size_t i) { vals[i] = circle_min_log(spec, logs[i], params, par::Mode::serial); },
        mode);

    // m(0) = |f(0)|
    double best = eval_log_polar(spec, -std::numeric_limits<double>::infinity(), 0.0,
                                 params.tail_tol)
                      .log_mod;
    std::ptrdiff_t best_i = -1;
    for (std::size_t i = 0; i < count; ++i) {
        if (std::isinf(vals[i]) && vals[i] < 0) continue; // zero on that circle
        if (vals[i] > best) {
            best = vals[i];
            best_i = static_cast<std::ptrdiff_t>(i);
        }
    }

    if (best_i >= 0) {
        const double a = best_i > 0 ? logs[best_i - 1] : logs[best_i];
        const double b = best_i + 1 < static_cast<std::ptrdiff_t>(count) ? logs[best_i + 1]
                                                                         : logs[best_i];
        if (b > a) {
            auto neg = [&](double ls) {
                const double v = circle_min_log(spec, ls, params, par::Mode::serial);
                return (std::isinf(v) && v < 0) ? kLogSaturation : -v;
            };
            double x, v;
            golden_min(neg, a, b, 1e-6, x, v);
            if (-v > best) best = -v;
        }
    }
    return best;
}

double log_max_modulus_inverse(const EntireFunctionSpec& spec, double y_log,
                               const CircleParams& params) {
    auto logM = [&](double lx) { return circle_max_log(spec, lx, params, par::Mode::serial); };
    double lo = -20.0;
    double hi = 1.0;
    double flo = logM(lo);
    if (flo >= y_log) {
        // target below M at tiny radii; walk down
        for (int i = 0; i < 200 && flo >= y_log; ++i) {
            lo -= 40.0;
            flo = logM(lo);
        }
        if (flo >= y_log) throw ParameterOutOfRange("target below the range of log M");
    }
    double fhi = logM(hi);
    while (fhi < y_log) {
        hi = hi * 2.0 + 1.0;
        if (hi > 1e9) throw ParameterOutOfRange("target above the evaluable range of log M");
        fhi = logM(hi);
    }
    while (hi - lo > 1e-9 * std::max(1.0, std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        if (logM(mid) < y_log)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

void export_profile_csv(const ModulusProfile& profile, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IOError("cannot open '" + path + "'");
    out << "r,theta,log_modulus\n";
    const std::string r_str = format_double(profile.radius);
    for (std::size_t i = 0; i < profile.thetas.size(); ++i)
        out << r_str << ',' << format_double(profile.thetas[i]) << ','
            << format_double(profile.log_mods[i]) << "\n";
    out << "summary," << r_str << ',' << format_double(profile.min_log) << ','
        << format_double(profile.argmin_theta) << ',' << format_double(profile.max_log)
        << ',' << format_double(profile.argmax_theta) << "\n";
    if (!out) throw IOError("write to '" + path + "' failed");
}

} // namespace minmod
