#include "minmod/escape_grid.hpp"

#include "minmod/orbit.hpp"
#include "minmod/spec_io.hpp"

#include <cmath>
#include <fstream>

namespace minmod {

ThresholdSchedule build_schedule(const EntireFunctionSpec& spec, ScheduleKind kind,
                                 const ScheduleParams& params, const CircleParams& circle) {
    if (params.steps < 1) throw ParameterOutOfRange("schedule needs steps >= 1");
    if (params.offset < 0) throw ParameterOutOfRange("offset must be >= 0");
    ThresholdSchedule sched;
    sched.kind = kind;
    sched.offset = params.offset;

    const double base_log = std::log(params.base_r);
    auto logM = [&](double lx) {
        return circle_max_log(spec, lx, circle, par::Mode::serial);
    };

    switch (kind) {
    case ScheduleKind::max_mod_power: {
        if (!(logM(base_log) > base_log))
            throw BelowFixedPoint("M(R) <= R at the base radius");
        double v = base_log;
        sched.values.push_back(v);
        for (int n = 1; n <= params.steps; ++n) {
            if (v > 0.4 * kLogSaturation) {
                sched.values.push_back(kLogSaturation);
                continue;
            }
            v = logM(v);
            sched.values.push_back(v);
        }
        break;
    }
    case ScheduleKind::quite_fast: {
        if (!(params.epsilon > 0.0 && params.epsilon < 1.0))
            throw ParameterOutOfRange("quite-fast epsilon must be in (0,1)");
        if (!(params.epsilon * logM(base_log) > base_log))
            throw BelowFixedPoint("mu_eps(R) <= R at the base radius");
        double v = base_log;
        sched.values.push_back(v);
        for (int n = 1; n <= params.steps; ++n) {
            if (v > 0.4 * kLogSaturation) {
                sched.values.push_back(kLogSaturation);
                continue;
            }
            v = params.epsilon * logM(v);
            sched.values.push_back(v);
        }
        break;
    }
    case ScheduleKind::tilde_min_iter: {
        double v = base_log;
        if (!(tilde_min_log(spec, v, {}, circle) > v))
            throw BelowFixedPoint("tilde-m(R) <= R at the base radius");
        sched.values.push_back(v);
        for (int n = 1; n <= params.steps; ++n) {
            if (v > 0.4 * kLogSaturation) {
                sched.values.push_back(kLogSaturation);
                continue;
            }
            v = tilde_min_log(spec, v, {}, circle);
            sched.values.push_back(v);
        }
        break;
    }
    case ScheduleKind::min_mod_iter_cube: {
        if (!(params.exponent > 0.0 && params.exponent <= 1.0))
            throw ParameterOutOfRange("exponent must be in (0,1]");
        const double m0 = circle_min_log(spec, base_log, circle, par::Mode::serial);
        if (!(m0 > base_log)) throw BelowFixedPoint("m(r) <= r at the base radius");
        // m-orbit values log m^j(r) for j = 0 .. steps + N
        std::vector<double> morbit{base_log};
        for (int j = 1; j <= params.steps + params.n_shift; ++j) {
            const double v =
                circle_min_log(spec, morbit.back(), circle, par::Mode::serial);
            if (std::isinf(v))
                throw BelowFixedPoint("minimum-modulus orbit hit a zero while building I_N");
            morbit.push_back(v);
        }
        for (int n = 0; n <= params.steps; ++n) {
            const double target = params.exponent * morbit[n + params.n_shift];
            sched.values.push_back(log_max_modulus_inverse(spec, target, circle));
        }
        break;
    }
    case ScheduleKind::custom: {
        if (params.custom.empty()) throw ParameterOutOfRange("custom schedule is empty");
        sched.values = params.custom;
        break;
    }
    }
    return sched;
}

namespace {

// A pixel whose modulus grows past the generator's evaluable range is
// credited with surviving to max_iter; for power laws that range ends where
// the |a| < 2r zero stream stops being tractable.
double render_overflow_log(const EntireFunctionSpec& spec) {
    if (spec.zeros.kind() == GeneratorKind::power_law) {
        const PowerLawRule& p = spec.zeros.power();
        return std::log(p.scale) + p.exponent * std::log(1.05e6 + p.shift) - M_LN2;
    }
    return 0.4 * kLogSaturation;
}

} // namespace

EscapeGrid render_escape(const EntireFunctionSpec& spec, const GridRect& rect,
                         const ThresholdSchedule& schedule, int max_iter, double tail_tol,
                         par::Mode mode) {
    if (rect.width < 1 || rect.height < 1)
        throw ParameterOutOfRange("grid resolution must be positive");
    if (max_iter < 1) throw ParameterOutOfRange("max_iter must be >= 1");
    if (static_cast<std::size_t>(max_iter) > schedule.values.size() + schedule.offset)
        throw ParameterOutOfRange("max_iter exceeds the schedule length");
    const double overflow_log = render_overflow_log(spec);

    EscapeGrid grid;
    grid.rect = rect;
    grid.max_iter = max_iter;
    grid.survived.assign(static_cast<std::size_t>(rect.width) * rect.height, 0);
    grid.final_log_mod.assign(grid.survived.size(), 0.0);

    const double dx = (rect.re_max - rect.re_min) / rect.width;
    const double dy = (rect.im_max - rect.im_min) / rect.height;

    auto threshold = [&](int n) {
        if (n < schedule.offset) return -std::numeric_limits<double>::infinity();
        const std::size_t i = static_cast<std::size_t>(n - schedule.offset);
        return i < schedule.values.size() ? schedule.values[i] : schedule.values.back();
    };

    par::for_index(
        grid.survived.size(),
        [&](std::size_t p) {
            const int ix = static_cast<int>(p) % rect.width;
            const int iy = static_cast<int>(p) / rect.width;
            const double re = rect.re_min + (ix + 0.5) * dx;
            const double im = rect.im_max - (iy + 0.5) * dy;

            double lr, th;
            if (re == 0.0 && im == 0.0) {
                lr = -std::numeric_limits<double>::infinity();
                th = 0.0;
            } else {
                lr = 0.5 * std::log(re * re + im * im);
                th = std::atan2(im, re);
            }

            int survived = max_iter;
            double final_lm = lr;
            for (int n = 0; n < max_iter; ++n) {
                if (std::isinf(lr) && lr < 0) { // landed on a zero: fails now
                    survived = n;
                    final_lm = lr;
                    break;
                }
                if (lr > overflow_log) break; // overflow: survives
                if (lr < threshold(n)) {
                    survived = n;
                    final_lm = lr;
                    break;
                }
                final_lm = lr;
                if (n + 1 >= max_iter) break;
                const LogComplex next = eval_log_polar(spec, lr, th, tail_tol);
                if (next.is_zero()) {
                    lr = -std::numeric_limits<double>::infinity();
                    th = 0.0;
                } else {
                    lr = next.log_mod;
                    th = next.arg;
                }
            }
            grid.survived[p] = survived;
            grid.final_log_mod[p] = std::isinf(final_lm) ? -kLogSaturation : final_lm;
        },
        mode);
    return grid;
}

std::vector<unsigned char> grid_pgm_bytes(const EscapeGrid& grid) {
    std::string header = "P5\n" + std::to_string(grid.rect.width) + " " +
                         std::to_string(grid.rect.height) + "\n255\n";
    std::vector<unsigned char> bytes(header.begin(), header.end());
    bytes.reserve(bytes.size() + grid.survived.size());
    for (int s : grid.survived) {
        const double scaled = 255.0 * s / grid.max_iter;
        bytes.push_back(static_cast<unsigned char>(std::lround(scaled)));
    }
    return bytes;
}

void export_grid_pgm(const EscapeGrid& grid, const std::string& path) {
    if (grid.survived.empty()) throw ParameterOutOfRange("refusing to export an empty grid");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IOError("cannot open '" + path + "'");
    const auto bytes = grid_pgm_bytes(grid);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IOError("write to '" + path + "' failed");
}

void export_grid_csv(const EscapeGrid& grid, const std::string& path) {
    if (grid.survived.empty()) throw ParameterOutOfRange("refusing to export an empty grid");
    std::ofstream out(path);
    if (!out) throw IOError("cannot open '" + path + "'");
    out << "x,y,survived_steps,final_log_modulus\n";
    const double dx = (grid.rect.re_max - grid.rect.re_min) / grid.rect.width;
    const double dy = (grid.rect.im_max - grid.rect.im_min) / grid.rect.height;
    for (int iy = 0; iy < grid.rect.height; ++iy) {
        for (int ix = 0; ix < grid.rect.width; ++ix) {
            const int p = grid.index(ix, iy);
            out << format_double(grid.rect.re_min + (ix + 0.5) * dx) << ','
                << format_double(grid.rect.im_max - (iy + 0.5) * dy) << ','
                << grid.survived[p] << ',' << format_double(grid.final_log_mod[p]) << "\n";
        }
    }
    if (!out) throw IOError("write to '" + path + "' failed");
}

} // namespace minmod
