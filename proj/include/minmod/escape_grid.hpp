#pragma once

#include "minmod/modulus.hpp"

#include <string>
#include <vector>

namespace minmod {

// Per-step escape thresholds in log space:
//   max_mod_power:      values[n] = log M^n(R)
//   min_mod_iter_cube:  values[n] = log M^-1(m^{n+N}(r)^q), q defaulting to 1/3
//   tilde_min_iter:     values[n] = log tilde-m^n(R)
//   quite_fast:         values[n] = log mu_eps^n(R), mu_eps(r) = M(r)^eps
// offset L shifts the test to the L-th iterate: a pixel must satisfy
// log|f^n(z)| >= values[n - L] for n >= L.
enum class ScheduleKind { max_mod_power, min_mod_iter_cube, tilde_min_iter, quite_fast, custom };

struct ScheduleParams {
    double base_r = 10.0;       // R (or r for min_mod_iter_cube)
    int steps = 8;              // values[0..steps]
    int offset = 0;
    double epsilon = 0.5;       // quite_fast
    int n_shift = 0;            // the N of min_mod_iter_cube
    double exponent = 1.0 / 3.0;
    std::vector<double> custom; // log-space thresholds
};

struct ThresholdSchedule {
    ScheduleKind kind = ScheduleKind::max_mod_power;
    int offset = 0;
    std::vector<double> values;
};

ThresholdSchedule build_schedule(const EntireFunctionSpec& spec, ScheduleKind kind,
                                 const ScheduleParams& params,
                                 const CircleParams& circle = {});

struct GridRect {
    double re_min = -1.0, re_max = 1.0;
    double im_min = -1.0, im_max = 1.0;
    int width = 64, height = 64;
};

// survived[p]: first n with log|f^n(z_p)| < threshold(n), or max_iter when
// the pixel never failed. final_log_mod[p] is the last log-modulus computed.
// Pixels are centers, row 0 at im_max; fully deterministic for fixed inputs.
struct EscapeGrid {
    GridRect rect;
    int max_iter = 0;
    std::vector<int> survived;
    std::vector<double> final_log_mod;
    int index(int ix, int iy) const { return iy * rect.width + ix; }
};

EscapeGrid render_escape(const EntireFunctionSpec& spec, const GridRect& rect,
                         const ThresholdSchedule& schedule, int max_iter,
                         double tail_tol = 1e-9, par::Mode mode = par::default_mode());

// Binary portable graymap (P5, maxval 255), intensity = survived/max_iter
// scaled to 0..255.
void export_grid_pgm(const EscapeGrid& grid, const std::string& path);
std::vector<unsigned char> grid_pgm_bytes(const EscapeGrid& grid);
// CSV columns: x, y, survived_steps, final_log_modulus.
void export_grid_csv(const EscapeGrid& grid, const std::string& path);

} // namespace minmod
