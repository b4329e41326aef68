#include "minmod/lemmas.hpp"

#include "minmod/errors.hpp"
#include "minmod/log_complex.hpp"
#include "minmod/spec_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace minmod {

ProdLInstance prodl_sequence(const std::vector<double>& log_r,
                             const std::vector<std::size_t>& subsequence) {
    if (log_r.empty()) throw InvalidInstance("empty radius sequence");
    if (!(log_r.front() >= 1600.0))
        throw InvalidInstance("log r_0 must be >= 1600");
    for (std::size_t i = 0; i + 1 < log_r.size(); ++i)
        if (log_r[i + 1] < log_r[i]) throw InvalidInstance("log r must be nondecreasing");
    for (std::size_t k = 0; k + 1 < subsequence.size(); ++k) {
        if (subsequence[k + 1] <= subsequence[k])
            throw InvalidInstance("subsequence indices must be ascending");
        if (log_r[subsequence[k + 1]] < 16.0 * log_r[subsequence[k]] - 1e-9)
            throw InvalidInstance("subsequence requires log r_{n_{k+1}} >= 16 log r_{n_k}");
    }
    for (std::size_t idx : subsequence)
        if (idx >= log_r.size()) throw InvalidInstance("subsequence index out of range");

    ProdLInstance inst;
    inst.log_r = log_r;
    inst.subsequence = subsequence;
    inst.delta.reserve(subsequence.size());
    for (std::size_t k = 0; k < subsequence.size(); ++k) {
        const double d = 10.0 / std::sqrt(log_r[subsequence[k]]);
        inst.delta.push_back(d);
        const double cap = std::pow(4.0, -static_cast<double>(k + 1));
        if (d > cap + 1e-15)
            throw InvalidInstance("delta_{n_k} exceeds 4^-k; radius gaps too small");
    }

    inst.L.assign(log_r.size() + 1, 3.0);
    inst.min_L = 3.0;
    for (std::size_t n = 1; n < inst.L.size(); ++n) {
        const auto it = std::find(subsequence.begin(), subsequence.end(), n - 1);
        if (it != subsequence.end()) {
            const std::size_t k = static_cast<std::size_t>(it - subsequence.begin());
            inst.L[n] = inst.L[n - 1] * (1.0 - inst.delta[k]);
        } else {
            inst.L[n] = 3.0;
        }
        inst.min_L = std::min(inst.min_L, inst.L[n]);
    }
    inst.pass = inst.min_L >= 2.0;
    return inst;
}

ProdLInstance prodl_tight_instance(int k_count) {
    if (k_count < 1) throw InvalidInstance("need at least one subsequence element");
    std::vector<double> log_r(k_count);
    std::vector<std::size_t> subseq(k_count);
    for (int k = 0; k < k_count; ++k) {
        log_r[k] = 1600.0 * std::pow(16.0, k);
        subseq[k] = static_cast<std::size_t>(k);
    }
    return prodl_sequence(log_r, subseq);
}

std::vector<double> theta_candidates(int m) {
    if (m < 2) throw ParameterOutOfRange("factor index must be >= 2");
    std::vector<double> out;
    if (m % 2 == 0) {
        for (int k = 1; k <= m / 2; ++k) {
            const double th = (4.0 * k - 1.0) * M_PI / (2.0 * (m + 1));
            out.push_back(th);
            out.push_back(th + M_PI);
        }
    } else {
        for (int k = 1; k <= (m - 1) / 2; ++k) {
            const double th = (4.0 * k - 1.0) * M_PI / (2.0 * m);
            out.push_back(th);
            out.push_back(th + M_PI);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

bool angle_admissible(int m, double theta) {
    const double tol = 1e-9;
    if (m % 2 == 0) {
        return std::cos(m * theta) < 0.0 && std::abs(std::cos((m + 1) * theta)) < tol;
    }
    return std::cos((m - 1) * theta) < 0.0 && std::abs(std::cos(m * theta)) < tol &&
           std::cos((m + 1) * theta) > 0.0;
}

} // namespace

double ray_derivative(int m, double theta, double T) {
    const double num = std::pow(T, m + 1) * std::cos(m * theta) -
                       std::pow(T, m) * std::cos((m + 1) * theta);
    const double c = std::cos(theta), s = std::sin(theta);
    const double den = (1.0 - T * c) * (1.0 - T * c) + T * T * s * s;
    return num / den;
}

RayProfile ray_profile(int m, double theta, const std::vector<double>& T_grid) {
    if (m < 2) throw ParameterOutOfRange("factor index must be >= 2");
    if (!angle_admissible(m, theta))
        throw BadAngle("theta fails the decay-angle sign conditions");
    RayProfile prof;
    prof.m = m;
    prof.theta = theta;
    prof.T_grid = T_grid;
    prof.decay_power = (m % 2 == 0) ? m : m - 1;
    prof.log_E.resize(T_grid.size());
    prof.derivative.resize(T_grid.size());
    for (std::size_t i = 0; i < T_grid.size(); ++i) {
        const double T = T_grid[i];
        const std::complex<double> w{T * std::cos(theta), T * std::sin(theta)};
        prof.log_E[i] = primary_factor_log(w, m).log_mod;
        prof.derivative[i] = ray_derivative(m, theta, T);
    }

    // fit C: ratio -log|E| / |T|^p, T0 = first grid point past which the
    // ratio stays within 5% of its neighbor
    std::vector<std::pair<double, double>> ratios; // |T|, ratio
    for (std::size_t i = 0; i < T_grid.size(); ++i) {
        const double aT = std::abs(T_grid[i]);
        if (aT < 1e-9) continue;
        ratios.emplace_back(aT, -prof.log_E[i] / std::pow(aT, prof.decay_power));
    }
    std::sort(ratios.begin(), ratios.end());
    std::size_t start = 0;
    for (std::size_t i = 0; i + 1 < ratios.size(); ++i) {
        const double a = ratios[i].second, b = ratios[i + 1].second;
        if (a > 0.0 && std::abs(b - a) <= 0.05 * std::abs(a)) {
            start = i;
            break;
        }
        start = i + 1;
    }
    if (!ratios.empty()) {
        prof.fitted_T0 = ratios[std::min(start, ratios.size() - 1)].first;
        double cmin = std::numeric_limits<double>::infinity();
        for (std::size_t i = start; i < ratios.size(); ++i)
            cmin = std::min(cmin, ratios[i].second);
        prof.fitted_C = cmin;
    }
    return prof;
}

void export_ray_profile_csv(const RayProfile& profile, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IOError("cannot open '" + path + "'");
    out << "T,log_E,derivative\n";
    for (std::size_t i = 0; i < profile.T_grid.size(); ++i)
        out << format_double(profile.T_grid[i]) << ',' << format_double(profile.log_E[i])
            << ',' << format_double(profile.derivative[i]) << "\n";
    if (!out) throw IOError("write to '" + path + "' failed");
}

} // namespace minmod
