#pragma once

#include "minmod/entire_fn.hpp"
#include "minmod/parallel.hpp"

#include <string>
#include <vector>

namespace minmod {

struct CircleParams {
    int n_samples = 1024;
    double refine_tol = 1e-6;      // angular width target of bracket refinement
    double tail_tol = 1e-9;
};

struct ModulusProfile {
    double log_radius = 0.0;
    double radius = 0.0;           // +inf when only the log is representable
    double min_log = 0.0;          // zero sentinel allowed
    double argmin_theta = 0.0;     // in [0, pi]
    double max_log = 0.0;
    double argmax_theta = 0.0;
    int sample_count = 0;
    bool refined = false;
    std::vector<double> thetas;    // retained samples on [0, pi]
    std::vector<double> log_mods;
    bool min_is_zero() const { return std::isinf(min_log) && min_log < 0; }
};

// Circles of real functions are sampled on [0, pi] only (f(conj z) = conj f(z)
// makes the lower half redundant). Specs whose extrema provably sit on the
// axis (all zeros of one sign, factor index 0, constant Q; or symmetric pairs
// with factor index <= 1) get min/max from single axis evaluations; everything
// else takes the sampled minima/maxima through golden-section refinement.
// If the circle passes through a zero modulus, min_log is the zero sentinel.
enum class AxisExtremal { none, positive_axis, negative_axis, symmetric };
AxisExtremal axis_extremal_kind(const EntireFunctionSpec& spec);

ModulusProfile circle_profile(const EntireFunctionSpec& spec, double r,
                              const CircleParams& params = {},
                              par::Mode mode = par::default_mode());
ModulusProfile circle_profile_log(const EntireFunctionSpec& spec, double log_r,
                                  const CircleParams& params = {},
                                  par::Mode mode = par::default_mode());
// Reference path: always samples and refines, ignoring the axis shortcut.
ModulusProfile circle_profile_sampled(const EntireFunctionSpec& spec, double log_r,
                                      const CircleParams& params = {},
                                      par::Mode mode = par::default_mode());

// min/max log-modulus only; bitwise identical to the corresponding
// circle_profile fields with the same parameters.
double circle_min_log(const EntireFunctionSpec& spec, double log_r,
                      const CircleParams& params = {},
                      par::Mode mode = par::default_mode());
double circle_max_log(const EntireFunctionSpec& spec, double log_r,
                      const CircleParams& params = {},
                      par::Mode mode = par::default_mode());

struct TildeGrid {
    double r_min = 1e-3;
    double ratio = 1.02;           // must be <= 1.05
};

// log of tilde-m(r) = max_{0 <= s <= r} m(s): geometric grid plus one
// golden-section pass around the best grid radius; the s = 0 endpoint
// contributes |f(0)|.
double tilde_min_log(const EntireFunctionSpec& spec, double log_r,
                     const TildeGrid& grid = {}, const CircleParams& params = {},
                     par::Mode mode = par::default_mode());

// Inverse of log M on [some r0, inf): returns log r with
// log M(e^{log r}) = y_log, by monotone bisection to 1e-9 relative width.
double log_max_modulus_inverse(const EntireFunctionSpec& spec, double y_log,
                               const CircleParams& params = {});

// CSV: sample rows "r,theta,log_modulus" followed by one summary row
// "r,min_log,argmin,max_log,argmax".
void export_profile_csv(const ModulusProfile& profile, const std::string& path);

} // namespace minmod
