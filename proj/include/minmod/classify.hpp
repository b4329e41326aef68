#pragma once

#include "minmod/modulus.hpp"

#include <string>
#include <vector>

namespace minmod {

// Windowed-slope order estimate: slopes of log log M(r) against log r over
// sliding one-decade windows, order = max window slope (a limsup proxy).
struct GrowthReport {
    std::vector<double> radii;
    std::vector<double> loglog_max;
    std::vector<double> window_slopes;
    double order_estimate = 0.0;
};

GrowthReport estimate_order(const EntireFunctionSpec& spec, double r_min, double r_max,
                            double grid_ratio = 1.3, const CircleParams& params = {},
                            par::Mode mode = par::default_mode());

struct GenusReport {
    int factor_index = 0;
    int poly_degree = 0; // 0 for constant or zero Q
    int genus = 0;
};

GenusReport compute_genus(const EntireFunctionSpec& spec);

// N(r) = sum over |a_k| <= r of mult * log(r / |a_k|); exact (closed form
// through lgamma for power laws, direct sums otherwise).
double counting_N(const EntireFunctionSpec& spec, double r);

struct CharacteristicParams {
    int base_points = 512;          // uniform trapezoid nodes on [0, pi]
    int max_points = 1 << 18;       // refinement cap
    double zero_exclusion = 1e-4;   // radians excluded around on-circle zeros
    double tail_tol = 1e-9;
};

// T(r) = N(r) + (1/2 pi) integral log^+ (1/|f|) over the circle, trapezoid
// with spike-driven panel refinement, doubled from [0, pi] by symmetry.
// Near-zero circles are shifted by 1e-6 relative and log singularities are
// covered by the analytic bound 2 eps (1 + log(1/(c eps))).
double characteristic_T(const EntireFunctionSpec& spec, double r,
                        const CharacteristicParams& params = {},
                        par::Mode mode = par::default_mode());

struct DeficiencyReport {
    std::vector<double> radii;
    std::vector<double> N_values;
    std::vector<double> T_values;
    std::vector<double> ratio_N_over_T;
    double defect_estimate = 0.0; // 1 - max ratio over the trailing half
};

DeficiencyReport defect_zero(const EntireFunctionSpec& spec, double r_min, double r_max,
                             double grid_ratio = 1.5,
                             const CharacteristicParams& params = {},
                             par::Mode mode = par::default_mode());

struct RayScanEntry {
    double theta = 0.0;
    double fitted_exponent = 0.0; // least-squares slope of log(-log|f|) vs log r
    bool decaying = false;        // log|f| negative and strictly decreasing
    std::vector<double> radii;
    std::vector<double> log_mods;
};

// Candidate rays: the primary-factor decay angles when m >= 2 and m >= deg Q,
// and the directions where the leading term of Re Q is negative when
// deg Q >= m+1 (midpoints of the negative arcs, nudged off the real axis).
std::vector<RayScanEntry> decay_ray_scan(const EntireFunctionSpec& spec,
                                         double r_min = 10.0, double r_max = 100.0,
                                         int points = 24,
                                         const CircleParams& params = {});

void export_ray_scan_csv(const std::vector<RayScanEntry>& scan, const std::string& path);

std::string growth_report_json(const GrowthReport& report);
std::string genus_report_json(const GenusReport& report);
std::string deficiency_report_json(const DeficiencyReport& report);

} // namespace minmod
