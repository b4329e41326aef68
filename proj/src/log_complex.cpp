#include "minmod/log_complex.hpp"

namespace minmod {

LogComplex LogComplex::from(std::complex<double> z) {
    if (z.real() == 0.0 && z.imag() == 0.0) return zero();
    return {std::log(std::abs(z)), std::arg(z)};
}

std::complex<double> LogComplex::to_complex() const {
    if (is_zero()) return {0.0, 0.0};
    const double m = std::exp(log_mod);
    return {m * std::cos(arg), m * std::sin(arg)};
}

double clamp_log(double lm) {
    if (std::isnan(lm)) return kLogSaturation;
    if (lm > kLogSaturation) return kLogSaturation;
    if (lm < -kLogSaturation && !(std::isinf(lm) && lm < 0)) return -kLogSaturation;
    return lm;
}

double reduce_angle(double a) {
    if (!std::isfinite(a)) return 0.0;
    const double two_pi = 2.0 * M_PI;
    double r = std::remainder(a, two_pi); // (-pi, pi] up to the boundary case
    if (r <= -M_PI) r += two_pi;
    return r;
}

LogComplex log_one_minus_polar(double lw, double pw) {
    // |1-w|^2 = (1-u)^2 + 4 u sin^2(pw/2) with u = |w|; the sin form avoids
    // cancellation when u ~ 1 and pw ~ 0.
    if (lw > 40.0) {
        // 1 - w = -w (1 - 1/w), |1/w| <= e^-40
        const double t = std::exp(-lw);
        const double s = std::sin(0.5 * pw);
        const double d2 = (1.0 - t) * (1.0 - t) + 4.0 * t * s * s;
        const double lm = lw + 0.5 * std::log(d2);
        const double ar = reduce_angle(M_PI + pw + std::atan2(t * std::sin(pw), 1.0 - t * std::cos(pw)));
        return {lm, ar};
    }
    const double u = std::exp(lw);
    const double ar = std::atan2(-u * std::sin(pw), 1.0 - u * std::cos(pw));
    if (u < 0.5) {
        // |1-w|^2 = 1 + u(u - 2 cos pw); log1p keeps the relative error at
        // ulp level for small u, where the direct form only bounds the
        // absolute error
        const double d2m1 = u * (u - 2.0 * std::cos(pw));
        return {0.5 * std::log1p(d2m1), ar};
    }
    const double s = std::sin(0.5 * pw);
    const double d2 = (1.0 - u) * (1.0 - u) + 4.0 * u * s * s;
    if (d2 == 0.0) return LogComplex::zero();
    return {0.5 * std::log(d2), ar};
}

LogComplex primary_factor_log_polar(double lz, double az, int m) {
    LogComplex base = log_one_minus_polar(lz, az);
    if (base.is_zero()) return base;
    double re = 0.0, im = 0.0;
    for (int j = 1; j <= m; ++j) {
        const double lt = j * lz;
        if (lt > 709.0) {
            // power term itself exceeds double range; saturate by sign
            const double c = std::cos(j * az);
            re += (c >= 0.0 ? 1.0 : -1.0) * kLogSaturation;
            im += std::sin(j * az) >= 0.0 ? kLogSaturation : -kLogSaturation;
            continue;
        }
        const double mag = std::exp(lt) / j;
        re += mag * std::cos(j * az);
        im += mag * std::sin(j * az);
    }
    return {clamp_log(re + base.log_mod), im + base.arg};
}

LogComplex primary_factor_log(std::complex<double> z, int m) {
    if (z.real() == 0.0 && z.imag() == 0.0) return LogComplex::one();
    LogComplex r = primary_factor_log_polar(std::log(std::abs(z)), std::arg(z), m);
    if (r.is_zero()) return r;
    return {r.log_mod, reduce_angle(r.arg)};
}

} // namespace minmod
