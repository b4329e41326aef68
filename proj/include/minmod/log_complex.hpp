#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace minmod {

// A complex value held as log|value| plus argument. log_mod = -inf is the
// sentinel for an exact zero (argument is then meaningless). Values whose
// log-modulus itself leaves double range are clamped to +-LOG_SATURATION.
struct LogComplex {
    double log_mod = 0.0;
    double arg = 0.0;

    static constexpr double kZeroSentinel = -std::numeric_limits<double>::infinity();

    bool is_zero() const { return std::isinf(log_mod) && log_mod < 0; }

    static LogComplex zero() { return {kZeroSentinel, 0.0}; }
    static LogComplex one() { return {0.0, 0.0}; }
    static LogComplex from(std::complex<double> z);

    // Overflows to inf/0 outside double range; intended for desk-scale values.
    std::complex<double> to_complex() const;
};

inline constexpr double kLogSaturation = 1e308;

// Clamp a possibly infinite/NaN accumulated log-modulus to the saturation band.
double clamp_log(double lm);

// Reduce an angle to (-pi, pi].
double reduce_angle(double a);

// log(1 - w) for w given in polar form as exp(lw + i*pw). Stable across
// |w| << 1, |w| ~ 1 and log|w| far beyond double range. Returns the zero
// sentinel only when w == 1 exactly.
LogComplex log_one_minus_polar(double lw, double pw);

// log E(z, m) with E(z,0) = 1-z and E(z,m) = (1-z) exp(z + ... + z^m/m).
// The polar form takes log|z| and arg z. The returned argument is the raw
// accumulated imaginary part (not reduced) so products can be chained; the
// complex-argument overload reduces to (-pi, pi].
LogComplex primary_factor_log_polar(double lz, double az, int m);
LogComplex primary_factor_log(std::complex<double> z, int m);

} // namespace minmod
