#pragma once

#include "minmod/entire_fn.hpp"

#include <complex>
#include <string>
#include <vector>

namespace minmod {

// The built-in example families. Parameter ranges:
//   hardy:        sigma > 1, zeros n^sigma, order 1/sigma
//   lindelof:     alpha in (1, 2), zeros n (log n)^alpha from n = 2,
//                 materialized to `depth` entries
//   constructed:  rho in [1/2, 1) (standard) via the uneven-zero recursion
//   genus_power:  s in (0, 1), zeros +-k^s (or one-signed), factor index
//                 = smallest admissible
struct FamilyId {
    enum class Kind {
        cos_sqrt,
        z_cos_sqrt,
        hardy,
        lindelof,
        constructed,
        constructed_order1,
        genus_power
    };
    Kind kind = Kind::cos_sqrt;
    double param = 0.0;
    bool symmetric = true;      // genus_power only
    std::size_t depth = 1000000; // lindelof only
    int k_max = 40;             // constructed only

    static FamilyId cos_sqrt() { return {Kind::cos_sqrt, 0, true, 0, 0}; }
    static FamilyId z_cos_sqrt() { return {Kind::z_cos_sqrt, 0, true, 0, 0}; }
    static FamilyId hardy(double sigma) { return {Kind::hardy, sigma, true, 0, 0}; }
    static FamilyId lindelof(double alpha, std::size_t depth = 1000000) {
        return {Kind::lindelof, alpha, true, depth, 0};
    }
    static FamilyId constructed(double rho, int k_max = 40) {
        return {Kind::constructed, rho, true, 0, k_max};
    }
    static FamilyId constructed_order1(int k_max = 20) {
        return {Kind::constructed_order1, 0, true, 0, k_max};
    }
    static FamilyId genus_power(double s, bool symmetric = true) {
        return {Kind::genus_power, s, symmetric, 0, 0};
    }
};

EntireFunctionSpec make_family(const FamilyId& id);

// Parses "cos-sqrt", "z-cos-sqrt", "hardy", "lindelof", "constructed",
// "constructed-order1", "genus-power"; param supplies sigma/alpha/rho/s.
EntireFunctionSpec make_family_by_name(const std::string& name, double param);

// log-modulus of the Hardy product asymptotic
//   f_sigma(z) ~ 2/sqrt(2 pi z) sin(pi z^rho) exp(pi cot(pi rho) z^rho),
// rho = 1/sigma in (1/2, 1); -inf at the sine zeros.
double hardy_asymptotic_log(double sigma, std::complex<double> z);

// log-modulus of exp(((1+o(1))/(1-alpha)) z (log(-z))^(1-alpha)) with the
// o(1) set to zero; requires |arg z| < pi - 0.1 and |z| >= 100.
double lindelof_asymptotic_log(double alpha, std::complex<double> z);

// Materialized audit view of the construction: everything in log space,
// integer parts exact while representable (exact[k]), r_k = 3 a_k.
struct Construction51Data {
    double rho = 0.5;
    bool order1 = false;
    RecursiveLevels levels;
    std::vector<double> log_r;                  // log(3 a_k)
    std::vector<double> claimed_lower_log;      // ([a_k^rho] - 1) log 2
};

Construction51Data build_construction51(double rho, int k_max);
Construction51Data build_construction51_order1(int k_max);

// Per-k verification: (i) the exact tail sum against the claimed 1/2,
// (ii) log m(r_k) by direct summation (the circle minimum of an
// all-positive-zero genus-0 product is attained at z = r_k),
// (iii) log m(r_k) >= ([a_k^rho]-1) log 2, (iv) m(r_k) > r_{k+1}.
struct Construction51Check {
    int k = 0;
    double tail_sum = 0.0;
    bool tail_ok = false;
    double log_min_modulus = 0.0;
    double required_log = 0.0;
    bool bound_ok = false;
    double log_r_next = 0.0;
    bool dominates_next = false; // false on the last materialized k
};

std::vector<Construction51Check> verify_construction51(const Construction51Data& data,
                                                       int k_from, int k_to);

std::string construction51_json(const Construction51Data& data,
                                const std::vector<Construction51Check>& checks);

} // namespace minmod
