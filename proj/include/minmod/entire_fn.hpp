#pragma once

#include "minmod/errors.hpp"
#include "minmod/log_complex.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace minmod {

// One real zero. Locations beyond double range (possible for the recursive
// generator) keep a finite log_abs with location = +-inf; multiplicities
// beyond 2^53 keep log_multiplicity with multiplicity = inf.
struct ZeroEntry {
    double location = 0.0;
    double log_abs = 0.0;
    double multiplicity = 1.0;
    double log_multiplicity = 0.0;

    static ZeroEntry at(double location, double multiplicity = 1.0);
    static ZeroEntry from_log(double log_abs, int sign, double multiplicity,
                              double log_multiplicity);
    int sign() const { return location < 0.0 ? -1 : +1; }
};

enum class GeneratorKind { list, power_law, recursive };

// Zeros at sign * scale * (k + shift)^exponent for k = 1,2,... (both signs
// when symmetric). shift > -1 so every index is valid.
struct PowerLawRule {
    double scale = 1.0;
    double exponent = 1.0;
    double shift = 0.0;
    double multiplicity = 1.0;
    bool symmetric = false;
    int sign = +1;

    double log_location(double k) const;
    double location(double k) const; // unsigned magnitude
    // largest k >= 0 with location(k) <= r, exact against location() doubles
    std::int64_t steps_below(double r) const;
};

// The uneven-zero construction: a_{k+1} = (12 a_k^rho)^{1/(1-rho)} with
// n(a_k) = [a_k^rho], or the order-1 variant a_{k+1} = (12 a_k)^{k+1} with
// n(a_k) = [a_k^{1-1/k}]. Materialized eagerly; rho < 1/2 is admitted only
// in exploratory mode (the recursion contracts there and multiplicities can
// vanish).
struct RecursiveRule {
    double rho = 0.5;
    bool order1 = false;
    int k_max = 150;
    bool symmetric = false;   // zeros at +-sqrt(a_k), for square substitution
    bool exploratory = false;
};

// Per-level data of a materialized recursion. count[k] = n(a_k) in zeros
// counted with multiplicity; exact[k] says the integer part was computed
// exactly rather than through logs (+-1 slack otherwise).
struct RecursiveLevels {
    std::vector<double> a;
    std::vector<double> log_a;
    std::vector<double> count;
    std::vector<double> log_count;
    std::vector<double> mult;
    std::vector<double> log_mult;
    std::vector<bool> exact;
    int size() const { return static_cast<int>(a.size()); }
};

RecursiveLevels materialize_recursive(const RecursiveRule& rule);

class ZeroSequence {
public:
    ZeroSequence() = default;

    static ZeroSequence make_list(std::vector<ZeroEntry> entries);
    static ZeroSequence make_power(const PowerLawRule& rule);
    static ZeroSequence make_recursive(const RecursiveRule& rule);

    GeneratorKind kind() const { return kind_; }
    bool empty() const;
    const std::vector<ZeroEntry>& entries() const { return entries_; }
    const PowerLawRule& power() const { return power_; }
    const RecursiveRule& recursive() const { return recursive_; }
    const RecursiveLevels& levels() const { return levels_; }

    bool all_positive() const;
    bool all_negative() const;
    bool symmetric_pairs() const;

    // multiplicity-weighted n(r), zeros with |a| <= r
    double count_upto(double r) const;
    // log|a| and gap lr - log|a| of the zero modulus closest to exp(lr)
    std::optional<double> nearest_log_abs(double lr) const;

private:
    GeneratorKind kind_ = GeneratorKind::list;
    std::vector<ZeroEntry> entries_;
    PowerLawRule power_;
    RecursiveRule recursive_;
    RecursiveLevels levels_;
};

class RealPolynomial {
public:
    RealPolynomial() = default;
    explicit RealPolynomial(std::vector<double> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    double coeff(int j) const;
    const std::vector<double>& coefficients() const { return coeffs_; }
    double leading() const;

    std::complex<double> eval(std::complex<double> z) const;
    // Re/Im of Q(r e^{i theta}) from log r; saturates per monomial instead
    // of overflowing.
    void eval_polar(double log_r, double theta, double& re, double& im) const;
    RealPolynomial substitute_square() const;

private:
    std::vector<double> coeffs_; // low to high, trailing zeros trimmed
};

// Exact evaluators used for oracle cross-checks.
enum class ClosedForm {
    none,
    cos_sqrt,        // cos sqrt(z)
    two_z_cos_sqrt,  // 2 z cos sqrt(z)
    sin_sqrt_ratio,  // sin(pi sqrt z) / (pi sqrt z)
    cos_z,           // cos z
    sinc_pi,         // sin(pi z) / (pi z)
    two_zsq_cos      // 2 z^2 cos z
};

struct EntireFunctionSpec {
    int origin_power = 0;        // n in z^n
    RealPolynomial exponent_poly; // Q
    ZeroSequence zeros;
    int factor_index = 0;        // m of E(z/a_k, m)
    ClosedForm closed_form = ClosedForm::none;
};

// Throws ParameterOutOfRange when an invariant fails (zero at 0, unsorted
// list, divergent sum of |a_k|^-(m+1), ...).
void validate_spec(const EntireFunctionSpec& spec);

// Smallest m making sum mult * |a_k|^-(m+1) converge; throws
// CannotDecideConvergence for kinds without an analytic test.
int minimal_factor_index(const ZeroSequence& zeros);

// log f(z) with |log-modulus error| <= tail_tolerance. Power-law tails are
// completed by an Euler-Maclaurin integral beyond the |a| >= 2r cutoff and
// the estimate is Richardson-checked against a doubled cutoff; the reported
// accuracy therefore holds at radii where a term-by-term truncation would
// need astronomically many zeros. The zero sentinel is returned when z lies
// within 1e-12 relative distance of a zero.
LogComplex eval_log(const EntireFunctionSpec& spec, std::complex<double> z,
                    double tail_tolerance = 1e-9);
// Same with z = exp(log_r + i theta); usable for radii far beyond double
// range (products are formed through log ratios).
LogComplex eval_log_polar(const EntireFunctionSpec& spec, double log_r,
                          double theta, double tail_tolerance = 1e-9);
// Modulus only; skips all argument bookkeeping, which roughly halves the
// cost of long product streams. Same tolerance contract on log_mod.
double eval_log_modulus_polar(const EntireFunctionSpec& spec, double log_r,
                              double theta, double tail_tolerance = 1e-9);

// Plain truncation after cutoff_steps generator steps, no tail completion.
LogComplex eval_log_truncated(const EntireFunctionSpec& spec,
                              std::complex<double> z, std::int64_t cutoff_steps);

// Upper bound on sum_{k > cutoff_steps} mult |log E(z/a_k, m)| over |z| = r,
// from |log E(w, m)| <= 2 |w|^{m+1} for |w| <= 1/2. All omitted zeros must
// satisfy |a| >= 2r (CutoffTooSmall otherwise); TailNotConvergent when the
// generator cannot reach the requested radius at all.
double tail_bound(const EntireFunctionSpec& spec, double r,
                  std::int64_t cutoff_steps);

// Smallest cutoff admissible for tail_bound at radius r.
std::int64_t min_cutoff_steps(const EntireFunctionSpec& spec, double r);

// Spec of g(z) = f(z^2) for f with positive zeros (MixedSignZeros otherwise).
EntireFunctionSpec square_substitute(const EntireFunctionSpec& spec);

// deg Q <= 2 with nonpositive quadratic coefficient, factor index <= 1.
bool is_laguerre_polya(const EntireFunctionSpec& spec);

LogComplex closed_form_log(ClosedForm form, std::complex<double> z);
double closed_form_log_modulus_polar(ClosedForm form, double log_r, double theta);

} // namespace minmod
