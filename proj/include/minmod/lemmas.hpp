#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace minmod {

// The product sequence L_n: L_0 = 3, L_{n_k + 1} = L_{n_k} (1 - delta_{n_k})
// with delta_{n_k} = 10 / sqrt(log r_{n_k}), and L_n = 3 off the subsequence.
// Valid instances need log r_0 >= 1600, log r nondecreasing and each
// subsequence jump log r_{n_{k+1}} >= 16 log r_{n_k}; every delta is then at
// most 4^-k and min L_n stays >= 2. Radii are handled purely as logs.
struct ProdLInstance {
    std::vector<double> log_r;
    std::vector<std::size_t> subsequence; // indices n_k, ascending
    std::vector<double> delta;            // per subsequence element
    std::vector<double> L;                // L_0 .. L_{N+1}
    double min_L = 3.0;
    bool pass = false;
};

ProdLInstance prodl_sequence(const std::vector<double>& log_r,
                             const std::vector<std::size_t>& subsequence);

// The tight instance log r_{n_k} = 1600 * 16^(k-1) on consecutive indices.
ProdLInstance prodl_tight_instance(int k_count);

// Decay angles for the primary factor E(., m), m >= 2:
//   m even: theta = (4k-1) pi / (2(m+1)), k = 1..m/2, plus each + pi
//           (cos m theta < 0, cos (m+1) theta = 0)
//   m odd:  theta = (4k-1) pi / (2m), k = 1..(m-1)/2, plus each + pi
//           (cos (m-1) theta < 0, cos m theta = 0, cos (m+1) theta > 0)
// Returned sorted in [0, 2 pi]; m angles for even m, m-1 for odd m.
std::vector<double> theta_candidates(int m);

// d/dT log|E(T e^{i theta}, m)| in closed form.
double ray_derivative(int m, double theta, double T);

struct RayProfile {
    int m = 2;
    double theta = 0.0;
    std::vector<double> T_grid;
    std::vector<double> log_E;       // log|E(T e^{i theta}, m)|, all <= 0
    std::vector<double> derivative;  // closed form
    double fitted_C = 0.0;           // min of -log|E| / |T|^p over |T| >= T0
    double fitted_T0 = 0.0;
    int decay_power = 0;             // p: m for even m, m-1 for odd
};

// theta must be one of the candidates (BadAngle otherwise).
RayProfile ray_profile(int m, double theta, const std::vector<double>& T_grid);

void export_ray_profile_csv(const RayProfile& profile, const std::string& path);

} // namespace minmod
