#include "minmod/entire_fn.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace minmod {

namespace {

constexpr double kTwo53 = 9007199254740992.0; // 2^53
constexpr std::int64_t kStreamCap = (std::int64_t{1} << 33);

// floor with a snap to the nearest integer: pow() of an exactly-integer
// power can land one ulp below it and floor() alone would lose a whole unit.
double floor_snapped(double x) {
    const double r = std::round(x);
    if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return r;
    return std::floor(x);
}

struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

// 32-point Gauss-Legendre nodes/weights on [0,1], built once by Newton
// iteration on the Legendre polynomial.
struct GaussRule {
    std::array<double, 32> x{};
    std::array<double, 32> w{};
    GaussRule() {
        const int n = 32;
        for (int i = 0; i < n / 2; ++i) {
            double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double p2 = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
                }
                const double dp = n * (t * p0 - p1) / (t * t - 1.0);
                const double dt = p0 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-15) break;
            }
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
            }
            const double dp = n * (t * p0 - p1) / (t * t - 1.0);
            const double wi = 2.0 / ((1.0 - t * t) * dp * dp);
            x[i] = 0.5 * (1.0 - t);
            w[i] = 0.5 * wi;
            x[n - 1 - i] = 0.5 * (1.0 + t);
            w[n - 1 - i] = 0.5 * wi;
        }
    }
};

const GaussRule& gauss32() {
    static const GaussRule rule;
    return rule;
}

} // namespace

// ---------------------------------------------------------------------------
// ZeroEntry / rules

ZeroEntry ZeroEntry::at(double location, double multiplicity) {
    if (location == 0.0) throw ParameterOutOfRange("zero location must be nonzero");
    if (!(multiplicity >= 1.0)) throw ParameterOutOfRange("multiplicity must be >= 1");
    ZeroEntry e;
    e.location = location;
    e.log_abs = std::log(std::abs(location));
    e.multiplicity = multiplicity;
    e.log_multiplicity = std::log(multiplicity);
    return e;
}

ZeroEntry ZeroEntry::from_log(double log_abs, int sign, double multiplicity,
                              double log_multiplicity) {
    ZeroEntry e;
    e.log_abs = log_abs;
    e.location = (sign < 0 ? -1.0 : 1.0) * std::exp(log_abs);
    e.multiplicity = multiplicity;
    e.log_multiplicity = log_multiplicity;
    return e;
}

double PowerLawRule::log_location(double k) const {
    return std::log(scale) + exponent * std::log(k + shift);
}

double PowerLawRule::location(double k) const {
    return scale * std::pow(k + shift, exponent);
}

std::int64_t PowerLawRule::steps_below(double r) const {
    if (!(r > 0.0) || location(1.0) > r) return 0;
    double est = std::pow(r / scale, 1.0 / exponent) - shift;
    if (est > 4.0e18) return kStreamCap + 1; // effectively unbounded for us
    std::int64_t k = static_cast<std::int64_t>(std::max(1.0, std::floor(est)));
    while (k > 1 && location(static_cast<double>(k)) > r) --k;
    while (location(static_cast<double>(k + 1)) <= r) ++k;
    return k;
}

// ---------------------------------------------------------------------------
// Recursive materialization

RecursiveLevels materialize_recursive(const RecursiveRule& rule) {
    if (rule.order1) {
        if (rule.k_max < 1) throw ParameterOutOfRange("k_max must be >= 1");
    } else if (rule.exploratory) {
        if (!(rule.rho > 0.0 && rule.rho < 1.0))
            throw ParameterOutOfRange("rho must be in (0,1)");
    } else if (!(rule.rho >= 0.5 && rule.rho < 1.0)) {
        throw ParameterOutOfRange("rho must be in [1/2, 1) (exploratory mode admits (0, 1/2))");
    }

    RecursiveLevels lv;
    const double log12 = std::log(12.0);
    double la = 0.0;   // log a_k, starting from a_0 = 1
    double a = 1.0;
    double prev_count = 0.0, prev_log_count = -std::numeric_limits<double>::infinity();
    bool prev_exact = true;

    for (int k = 1; k <= rule.k_max; ++k) {
        // a_{k+1} = (12 a_k^rho)^{1/(1-rho)}   or   (12 a_k)^{k} at level k
        double la_next;
        if (rule.order1) {
            la_next = k * (log12 + la);
        } else {
            la_next = (log12 + rule.rho * la) / (1.0 - rule.rho);
        }
        if (la_next > 5000.0) break;          // far beyond any evaluable radius
        if (la_next <= la && k > 1) break;    // contracted regime (exploratory)

        double a_next = std::numeric_limits<double>::infinity();
        if (la_next < 709.0) {
            a_next = std::isfinite(a) ? (rule.order1 ? std::pow(12.0 * a, static_cast<double>(k))
                                                     : std::pow(12.0 * std::pow(a, rule.rho),
                                                                1.0 / (1.0 - rule.rho)))
                                      : std::exp(la_next);
            if (a_next <= kTwo53) {
                const double snapped = std::round(a_next);
                if (std::abs(a_next - snapped) <= 1e-6 * std::max(1.0, a_next)) a_next = snapped;
            }
            la_next = std::log(a_next);
        }

        // n(a_k) = [a_k^rho], or [a_k^{1 - 1/k}] for the order-1 variant
        const double ex = rule.order1 ? (1.0 - 1.0 / k) : rule.rho;
        const double log_count = ex * la_next;
        double count;
        bool exact = false;
        if (log_count < std::log(kTwo53)) {
            count = floor_snapped(std::isfinite(a_next) ? std::pow(a_next, ex)
                                                        : std::exp(log_count));
            exact = std::isfinite(a_next);
        } else {
            count = std::numeric_limits<double>::infinity();
        }
        const double count_log = std::isfinite(count) ? std::log(count) : log_count;

        double mult, log_mult;
        if (std::isfinite(count)) {
            mult = count - prev_count;
            if (mult < 1.0) break; // multiplicity exhausted (exploratory small rho)
            log_mult = std::log(mult);
        } else {
            mult = std::numeric_limits<double>::infinity();
            log_mult = count_log + std::log1p(-std::exp(prev_log_count - count_log));
        }

        lv.a.push_back(std::isfinite(a_next) ? a_next : std::numeric_limits<double>::infinity());
        lv.log_a.push_back(la_next);
        lv.count.push_back(count);
        lv.log_count.push_back(count_log);
        lv.mult.push_back(mult);
        lv.log_mult.push_back(log_mult);
        lv.exact.push_back(exact && prev_exact);

        prev_count = count;
        prev_log_count = count_log;
        prev_exact = exact && prev_exact;
        la = la_next;
        a = a_next;
    }
    if (lv.a.empty()) throw ParameterOutOfRange("recursive rule materializes no zeros");
    return lv;
}

// ---------------------------------------------------------------------------
// ZeroSequence

ZeroSequence ZeroSequence::make_list(std::vector<ZeroEntry> entries) {
    for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
        if (entries[i].log_abs > entries[i + 1].log_abs + 1e-15)
            throw ParameterOutOfRange("zero list must be sorted by increasing |location|");
    }
    for (const auto& e : entries) {
        if (e.location == 0.0) throw ParameterOutOfRange("zero location must be nonzero");
        if (!(e.multiplicity >= 1.0) && !std::isinf(e.multiplicity))
            throw ParameterOutOfRange("multiplicity must be >= 1");
    }
    ZeroSequence s;
    s.kind_ = GeneratorKind::list;
    s.entries_ = std::move(entries);
    return s;
}

ZeroSequence ZeroSequence::make_power(const PowerLawRule& rule) {
    if (!(rule.scale > 0.0)) throw ParameterOutOfRange("power-law scale must be > 0");
    if (!(rule.exponent > 0.0)) throw ParameterOutOfRange("power-law exponent must be > 0");
    if (!(rule.shift > -1.0)) throw ParameterOutOfRange("power-law shift must be > -1");
    if (!(rule.multiplicity >= 1.0)) throw ParameterOutOfRange("multiplicity must be >= 1");
    ZeroSequence s;
    s.kind_ = GeneratorKind::power_law;
    s.power_ = rule;
    return s;
}

ZeroSequence ZeroSequence::make_recursive(const RecursiveRule& rule) {
    ZeroSequence s;
    s.kind_ = GeneratorKind::recursive;
    s.recursive_ = rule;
    s.levels_ = materialize_recursive(rule);
    const RecursiveLevels& lv = s.levels_;
    for (int k = 0; k < lv.size(); ++k) {
        if (rule.symmetric) {
            ZeroEntry m = ZeroEntry::from_log(0.5 * lv.log_a[k], -1, lv.mult[k], lv.log_mult[k]);
            ZeroEntry p = ZeroEntry::from_log(0.5 * lv.log_a[k], +1, lv.mult[k], lv.log_mult[k]);
            s.entries_.push_back(m);
            s.entries_.push_back(p);
        } else {
            s.entries_.push_back(
                ZeroEntry::from_log(lv.log_a[k], +1, lv.mult[k], lv.log_mult[k]));
        }
    }
    return s;
}

bool ZeroSequence::empty() const {
    return kind_ == GeneratorKind::power_law ? false : entries_.empty();
}

bool ZeroSequence::all_positive() const {
    switch (kind_) {
    case GeneratorKind::power_law:
        return !power_.symmetric && power_.sign > 0;
    default:
        return std::all_of(entries_.begin(), entries_.end(),
                           [](const ZeroEntry& e) { return e.location > 0.0 || (std::isinf(e.location) && e.location > 0); });
    }
}

bool ZeroSequence::all_negative() const {
    switch (kind_) {
    case GeneratorKind::power_law:
        return !power_.symmetric && power_.sign < 0;
    default:
        return !entries_.empty() &&
               std::all_of(entries_.begin(), entries_.end(),
                           [](const ZeroEntry& e) { return e.location < 0.0; });
    }
}

bool ZeroSequence::symmetric_pairs() const {
    switch (kind_) {
    case GeneratorKind::power_law:
        return power_.symmetric;
    case GeneratorKind::recursive:
        return recursive_.symmetric;
    case GeneratorKind::list: {
        if (entries_.empty() || entries_.size() % 2 != 0) return false;
        for (std::size_t i = 0; i + 1 < entries_.size(); i += 2) {
            const ZeroEntry& a = entries_[i];
            const ZeroEntry& b = entries_[i + 1];
            if (a.log_abs != b.log_abs || a.sign() == b.sign() ||
                a.multiplicity != b.multiplicity)
                return false;
        }
        return true;
    }
    }
    return false;
}

double ZeroSequence::count_upto(double r) const {
    if (!(r > 0.0)) return 0.0;
    if (kind_ == GeneratorKind::power_law) {
        const double steps = static_cast<double>(power_.steps_below(r));
        return steps * power_.multiplicity * (power_.symmetric ? 2.0 : 1.0);
    }
    double n = 0.0;
    const double lr = std::log(r);
    for (const auto& e : entries_) {
        if (e.log_abs <= lr) n += e.multiplicity;
        else break;
    }
    return n;
}

std::optional<double> ZeroSequence::nearest_log_abs(double lr) const {
    if (kind_ == GeneratorKind::power_law) {
        const double x = std::exp((lr - std::log(power_.scale)) / power_.exponent) - power_.shift;
        if (!(x > 0.0) || x > 4.0e18) return std::nullopt;
        double best = std::numeric_limits<double>::infinity();
        bool found = false;
        for (double k : {std::floor(x), std::ceil(x), std::floor(x) + 1.0}) {
            if (k < 1.0) continue;
            const double la = power_.log_location(k);
            if (!found || std::abs(lr - la) < std::abs(lr - best)) best = la, found = true;
        }
        if (!found) return std::nullopt;
        return best;
    }
    if (entries_.empty()) return std::nullopt;
    auto it = std::lower_bound(entries_.begin(), entries_.end(), lr,
                               [](const ZeroEntry& e, double v) { return e.log_abs < v; });
    double best = std::numeric_limits<double>::infinity();
    bool found = false;
    for (auto probe : {it, it == entries_.begin() ? it : std::prev(it)}) {
        if (probe == entries_.end()) continue;
        if (!found || std::abs(lr - probe->log_abs) < std::abs(lr - best))
            best = probe->log_abs, found = true;
    }
    if (!found) return std::nullopt;
    return best;
}

// ---------------------------------------------------------------------------
// RealPolynomial

RealPolynomial::RealPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double RealPolynomial::coeff(int j) const {
    return (j >= 0 && j < static_cast<int>(coeffs_.size())) ? coeffs_[j] : 0.0;
}

double RealPolynomial::leading() const {
    return coeffs_.empty() ? 0.0 : coeffs_.back();
}

std::complex<double> RealPolynomial::eval(std::complex<double> z) const {
    std::complex<double> acc{0.0, 0.0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

void RealPolynomial::eval_polar(double log_r, double theta, double& re, double& im) const {
    re = 0.0;
    im = 0.0;
    for (int j = 0; j < static_cast<int>(coeffs_.size()); ++j) {
        const double b = coeffs_[j];
        if (b == 0.0) continue;
        const double lt = j * log_r + std::log(std::abs(b));
        if (lt > 709.0) {
            const double c = std::cos(j * theta) * (b < 0 ? -1.0 : 1.0);
            re += (c >= 0 ? kLogSaturation : -kLogSaturation);
            im += (std::sin(j * theta) * (b < 0 ? -1.0 : 1.0) >= 0 ? kLogSaturation
                                                                   : -kLogSaturation);
            continue;
        }
        const double mag = b * std::exp(j * log_r);
        re += mag * std::cos(j * theta);
        im += mag * std::sin(j * theta);
    }
}

RealPolynomial RealPolynomial::substitute_square() const {
    std::vector<double> out(coeffs_.empty() ? 0 : 2 * coeffs_.size() - 1, 0.0);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) out[2 * j] = coeffs_[j];
    return RealPolynomial(std::move(out));
}

// ---------------------------------------------------------------------------
// Spec validation

int minimal_factor_index(const ZeroSequence& zeros) {
    switch (zeros.kind()) {
    case GeneratorKind::list:
        return 0; // finite product
    case GeneratorKind::recursive:
        return 0; // super-geometric zero growth
    case GeneratorKind::power_law: {
        const double s_eff = zeros.power().exponent;
        int m = 0;
        while (!(s_eff * (m + 1) > 1.0)) {
            ++m;
            if (m > 64) throw CannotDecideConvergence("exponent too small");
        }
        return m;
    }
    }
    throw CannotDecideConvergence("unknown generator kind");
}

void validate_spec(const EntireFunctionSpec& spec) {
    if (spec.origin_power < 0) throw ParameterOutOfRange("origin power must be >= 0");
    if (spec.factor_index < 0) throw ParameterOutOfRange("factor index must be >= 0");
    if (spec.zeros.kind() == GeneratorKind::power_law) {
        const PowerLawRule& p = spec.zeros.power();
        if (!(p.exponent * (spec.factor_index + 1) > 1.0))
            throw ParameterOutOfRange(
                "sum mult |a_k|^-(m+1) diverges for this power law and factor index");
    }
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

// Scalar view of a power-law product: zeros at sign*exp(log_scale)*(k+h)^s
// with per-step weight mu, factor index m, evaluated at exp(lr + i theta).
// Symmetric rules collapse through E(w,m) E(-w,m) = E(w^2, floor(m/2)).
struct PowView {
    double log_scale;
    double s;
    double h;
    double mu;
    int m;
    int sign;
    double lr;
    double theta;

    double log_w(double k) const { return lr - (log_scale + s * std::log(k + h)); }
    double arg_w() const { return sign < 0 ? reduce_angle(theta - M_PI) : theta; }
};

PowView make_view(const PowerLawRule& rule, int m, double lr, double theta) {
    if (rule.symmetric) {
        return {2.0 * std::log(rule.scale), 2.0 * rule.exponent, rule.shift,
                rule.multiplicity, m / 2, +1, 2.0 * lr, reduce_angle(2.0 * theta)};
    }
    return {std::log(rule.scale), rule.exponent, rule.shift,
            rule.multiplicity, m, rule.sign, lr, theta};
}

// g(x): weighted log|E| term at continuous index x (modulus only).
double view_term(const PowView& v, double x) {
    return v.mu * primary_factor_log_polar(v.lr - (v.log_scale + v.s * std::log(x + v.h)),
                                           v.arg_w(), v.m)
                      .log_mod;
}

// Integral of the term function over [X0, inf) via the substitution
// u = (x+h)^(1-p) with p = s(m+1), which flattens the |w|^(m+1) decay; the
// transformed integrand is smooth and a fixed Gauss rule is near-exact.
double view_tail_integral(const PowView& v, double X0) {
    const double p = v.s * (v.m + 1);
    const double u0 = std::pow(X0 + v.h, 1.0 - p);
    const GaussRule& g = gauss32();
    double acc = 0.0;
    const double aw = v.arg_w();
    for (int i = 0; i < 32; ++i) {
        const double u = u0 * g.x[i];
        if (u <= 0.0) continue;
        const double lnu = std::log(u);
        const double ln_xh = lnu / (1.0 - p); // log(x+h)
        const double lw = v.lr - (v.log_scale + v.s * ln_xh);
        const double gval = v.mu * primary_factor_log_polar(lw, aw, v.m).log_mod;
        if (gval == 0.0) continue;
        // dx/du in logs to dodge overflow at tiny u
        const double ln_dxdu = -std::log(p - 1.0) + (p / (1.0 - p)) * lnu;
        acc += g.w[i] * ((gval < 0 ? -1.0 : 1.0) *
                         std::exp(std::log(std::abs(gval)) + ln_dxdu));
    }
    return acc * u0;
}

// Midpoint Euler-Maclaurin estimate of sum_{k > K} g(k).
double view_tail_em(const PowView& v, std::int64_t K) {
    const double X0 = static_cast<double>(K) + 0.5;
    const double integral = view_tail_integral(v, X0);
    const double d = 0.25;
    const double gp = (view_term(v, X0 + d) - view_term(v, X0 - d)) / (2.0 * d);
    return integral + gp / 24.0;
}

struct TailEstimate {
    double value;
    double slack;
};

// Direct sum of view terms over k in [k_from, k_to] (modulus only).
double view_direct_mod(const PowView& v, std::int64_t k_from, std::int64_t k_to) {
    KahanSum acc;
    for (std::int64_t k = k_from; k <= k_to; ++k)
        acc.add(view_term(v, static_cast<double>(k)));
    return acc.sum;
}

// Tail beyond index K. The midpoint rule's residual is driven by g''', so a
// stencil estimate decides whether the plain estimate already meets the
// tolerance; otherwise the direct range is doubled (Richardson style) until
// two successive estimates agree within tol/4.
TailEstimate view_tail(const PowView& v, std::int64_t K, double tol) {
    std::int64_t kc = std::max<std::int64_t>(K, 1);
    {
        const double X0 = static_cast<double>(kc) + 0.5;
        const double d = 0.5;
        const double g3 =
            (view_term(v, X0 + 2 * d) - 2.0 * view_term(v, X0 + d) +
             2.0 * view_term(v, X0 - d) - view_term(v, X0 - 2 * d)) /
            (2.0 * d * d * d);
        const double err_est = 8.0 * std::abs(g3) * 7.0 / 5760.0;
        if (err_est <= 0.25 * tol) return {view_tail_em(v, kc), err_est};
    }
    KahanSum direct_extra;
    double prev = view_tail_em(v, kc);
    double slack = std::abs(prev);
    for (int iter = 0; iter < 12; ++iter) {
        const std::int64_t k2 = 2 * kc + 8;
        direct_extra.add(view_direct_mod(v, kc + 1, k2));
        const double cur = direct_extra.sum + view_tail_em(v, k2);
        slack = std::abs(cur - prev);
        prev = cur;
        kc = k2;
        if (slack <= 0.25 * tol) break;
    }
    return {prev, slack};
}

bool near_zero_hit(double lr, double theta, double la, int zero_sign) {
    const double ph = zero_sign < 0 ? reduce_angle(theta - M_PI) : reduce_angle(theta);
    if (std::abs(ph) > 1e-5) return false;
    const double d1 = lr - la; // log(r/|a|)
    if (std::abs(d1) > 1e-5) return false;
    const double rel = std::expm1(d1);
    const double sin_half = std::sin(0.5 * ph);
    const double d2 = rel * rel + std::exp(d1) * 4.0 * sin_half * sin_half;
    return d2 < 1e-24;
}

// Hoisted per-circle constants for modulus-only product streaming.
struct ModTermCtx {
    double pw = 0.0;
    double cos_pw = 1.0;
    double sin_half_sq = 0.0;
    int m = 0;
    std::array<double, 9> cosj{}; // cos(j pw) / j

    void init(double pw_, int m_) {
        pw = pw_;
        cos_pw = std::cos(pw);
        const double sh = std::sin(0.5 * pw);
        sin_half_sq = sh * sh;
        m = m_;
        for (int j = 1; j <= std::min(m, 8); ++j) cosj[j] = std::cos(j * pw) / j;
    }

    // log|E(u e^{i pw}, m)| from the modulus ratio u
    double term(double u) const {
        if (m > 8 || (m > 0 && u > 1e30))
            return primary_factor_log_polar(std::log(u), pw, m).log_mod;
        double base;
        if (u < 0.5) {
            base = 0.5 * std::log1p(u * (u - 2.0 * cos_pw));
        } else if (u > 1e100) {
            base = std::log(u);
        } else {
            const double d2 = (1.0 - u) * (1.0 - u) + 4.0 * u * sin_half_sq;
            if (d2 == 0.0) return -std::numeric_limits<double>::infinity();
            base = 0.5 * std::log(d2);
        }
        double up = u, re = 0.0;
        for (int j = 1; j <= m; ++j) {
            re += up * cosj[j];
            up *= u;
        }
        return base + re;
    }
};

struct ProductResult {
    bool hit_zero = false;
    double log_mod = 0.0;
    double arg = 0.0;
};

ProductResult eval_entries(const std::vector<ZeroEntry>& entries, int m, double lr,
                           double theta, bool mod_only) {
    ProductResult out;
    KahanSum lm;
    double arg = 0.0;

    ModTermCtx ctx_pos, ctx_neg;
    const double pw_neg = reduce_angle(theta - M_PI);
    if (mod_only) {
        ctx_pos.init(theta, m);
        ctx_neg.init(pw_neg, m);
    }

    for (const ZeroEntry& e : entries) {
        if (near_zero_hit(lr, theta, e.log_abs, e.sign())) {
            out.hit_zero = true;
            return out;
        }
        const double lw = lr - e.log_abs;
        double f_mod, f_arg = 0.0;
        if (mod_only && std::abs(lw) < 600.0) {
            f_mod = (e.sign() < 0 ? ctx_neg : ctx_pos).term(std::exp(lw));
        } else {
            const LogComplex f =
                primary_factor_log_polar(lw, e.sign() < 0 ? pw_neg : theta, m);
            f_mod = f.log_mod;
            f_arg = f.arg;
        }
        if (std::isinf(f_mod) && f_mod < 0) {
            out.hit_zero = true;
            return out;
        }
        if (std::isfinite(e.multiplicity)) {
            lm.add(e.multiplicity * f_mod);
            if (!mod_only) arg += e.multiplicity * f_arg;
        } else {
            const double mag = e.log_multiplicity;
            if (f_mod != 0.0)
                lm.add((f_mod < 0 ? -1.0 : 1.0) * std::exp(mag + std::log(std::abs(f_mod))));
            if (!mod_only && f_arg != 0.0)
                arg += (f_arg < 0 ? -1.0 : 1.0) * std::exp(mag + std::log(std::abs(f_arg)));
        }
    }
    out.log_mod = lm.sum;
    out.arg = arg;
    return out;
}

ProductResult eval_power(const PowerLawRule& rule, int m, double lr, double theta,
                         double tol, bool with_tail, std::int64_t forced_cutoff,
                         bool mod_only) {
    ProductResult out;
    // zero-hit check against the nearest rule zeros (either sign)
    {
        const double x = std::exp((lr - std::log(rule.scale)) / rule.exponent) - rule.shift;
        if (x > 0.0 && x <= 4.0e18) {
            for (double k : {std::floor(x), std::ceil(x)}) {
                if (k < 1.0) continue;
                const double la = rule.log_location(k);
                const bool hit_pos = (rule.symmetric || rule.sign > 0) &&
                                     near_zero_hit(lr, theta, la, +1);
                const bool hit_neg = (rule.symmetric || rule.sign < 0) &&
                                     near_zero_hit(lr, theta, la, -1);
                if (hit_pos || hit_neg) {
                    out.hit_zero = true;
                    return out;
                }
            }
        }
    }

    const PowView v = make_view(rule, m, lr, theta);
    std::int64_t K;
    if (forced_cutoff >= 0) {
        K = forced_cutoff;
    } else {
        // direct terms while |a| < 2r, i.e. |w| > 1/2; 2r in view coordinates
        const double two_r_log = v.lr + M_LN2 * (rule.symmetric ? 2.0 : 1.0);
        // steps with log|a_view(k)| < two_r_log
        const double x = std::exp((two_r_log - v.log_scale) / v.s) - v.h;
        if (x > static_cast<double>(kStreamCap))
            throw TailNotConvergent("power-law cutoff for |a| >= 2r exceeds the stream cap");
        K = x <= 1.0 ? 0 : static_cast<std::int64_t>(std::floor(x));
        while (K > 0 && v.log_scale + v.s * std::log(K + v.h) >= two_r_log) --K;
        while (v.log_scale + v.s * std::log(K + 1 + v.h) < two_r_log) ++K;
    }

    KahanSum lm;
    double arg = 0.0;
    const double aw = v.arg_w();
    if (mod_only && std::abs(v.lr - v.log_scale) < 600.0) {
        ModTermCtx ctx;
        ctx.init(aw, v.m);
        const double R = std::exp(v.lr - v.log_scale);
        const bool square = v.s == 2.0;
        for (std::int64_t k = 1; k <= K; ++k) {
            const double x = static_cast<double>(k) + v.h;
            const double u = square ? R / (x * x) : R * std::pow(x, -v.s);
            const double t = ctx.term(u);
            if (std::isinf(t) && t < 0) {
                out.hit_zero = true;
                return out;
            }
            lm.add(v.mu * t);
        }
    } else {
        for (std::int64_t k = 1; k <= K; ++k) {
            const double lw = v.log_w(static_cast<double>(k));
            const LogComplex f = primary_factor_log_polar(lw, aw, v.m);
            if (f.is_zero()) {
                out.hit_zero = true;
                return out;
            }
            lm.add(v.mu * f.log_mod);
            if (!mod_only) arg += v.mu * f.arg;
        }
    }
    if (with_tail) {
        const TailEstimate tail = view_tail(v, std::max<std::int64_t>(K, 1), tol);
        // k = K+1 .. max(K,1) correction: when K = 0 the tail starts at 2
        if (K == 0) lm.add(view_term(v, 1.0));
        lm.add(tail.value);
        if (tail.slack > tol)
            throw TailNotConvergent("tail estimate did not stabilize within tolerance");
    }
    out.log_mod = lm.sum;
    out.arg = arg;
    return out;
}

LogComplex eval_core(const EntireFunctionSpec& spec, double lr, double theta,
                     double tol, bool with_tail, std::int64_t cutoff, bool mod_only) {
    theta = reduce_angle(theta);
    // r = 0
    if (std::isinf(lr) && lr < 0) {
        if (spec.origin_power > 0) return LogComplex::zero();
        const double q0 = spec.exponent_poly.coeff(0);
        return {q0, 0.0};
    }

    double lm = 0.0, arg = 0.0;
    lm += spec.origin_power * lr;
    arg += spec.origin_power * theta;

    if (!spec.exponent_poly.is_zero()) {
        double re, im;
        spec.exponent_poly.eval_polar(lr, theta, re, im);
        lm += re;
        arg += im;
    }

    ProductResult prod;
    switch (spec.zeros.kind()) {
    case GeneratorKind::power_law:
        prod = eval_power(spec.zeros.power(), spec.factor_index, lr, theta, tol,
                          with_tail, cutoff, mod_only);
        break;
    case GeneratorKind::list:
    case GeneratorKind::recursive: {
        const auto& all = spec.zeros.entries();
        if (cutoff >= 0 && cutoff < static_cast<std::int64_t>(all.size())) {
            std::vector<ZeroEntry> head(all.begin(), all.begin() + cutoff);
            prod = eval_entries(head, spec.factor_index, lr, theta, mod_only);
        } else {
            prod = eval_entries(all, spec.factor_index, lr, theta, mod_only);
        }
        break;
    }
    }
    if (prod.hit_zero) return LogComplex::zero();
    lm += prod.log_mod;
    arg += prod.arg;
    return {clamp_log(lm), reduce_angle(arg)};
}

} // namespace

LogComplex eval_log_polar(const EntireFunctionSpec& spec, double log_r, double theta,
                          double tail_tolerance) {
    if (!(tail_tolerance > 0.0)) throw ParameterOutOfRange("tail tolerance must be > 0");
    return eval_core(spec, log_r, theta, tail_tolerance, true, -1, false);
}

double eval_log_modulus_polar(const EntireFunctionSpec& spec, double log_r, double theta,
                              double tail_tolerance) {
    if (!(tail_tolerance > 0.0)) throw ParameterOutOfRange("tail tolerance must be > 0");
    return eval_core(spec, log_r, theta, tail_tolerance, true, -1, true).log_mod;
}

LogComplex eval_log(const EntireFunctionSpec& spec, std::complex<double> z,
                    double tail_tolerance) {
    if (z.real() == 0.0 && z.imag() == 0.0)
        return eval_log_polar(spec, -std::numeric_limits<double>::infinity(), 0.0,
                              tail_tolerance);
    return eval_log_polar(spec, std::log(std::abs(z)), std::arg(z), tail_tolerance);
}

LogComplex eval_log_truncated(const EntireFunctionSpec& spec, std::complex<double> z,
                              std::int64_t cutoff_steps) {
    if (cutoff_steps < 0) throw ParameterOutOfRange("cutoff must be >= 0");
    const double lr = (z.real() == 0.0 && z.imag() == 0.0)
                          ? -std::numeric_limits<double>::infinity()
                          : std::log(std::abs(z));
    const double th = (z.real() == 0.0 && z.imag() == 0.0) ? 0.0 : std::arg(z);
    return eval_core(spec, lr, th, 1.0, false, cutoff_steps, false);
}

std::int64_t min_cutoff_steps(const EntireFunctionSpec& spec, double r) {
    if (!(r > 0.0)) throw ParameterOutOfRange("radius must be > 0");
    switch (spec.zeros.kind()) {
    case GeneratorKind::power_law:
        return spec.zeros.power().steps_below(2.0 * r);
    case GeneratorKind::list:
    case GeneratorKind::recursive: {
        const double threshold = std::log(2.0 * r);
        std::int64_t n = 0;
        for (const auto& e : spec.zeros.entries())
            if (e.log_abs < threshold) ++n;
        return n;
    }
    }
    return 0;
}

double tail_bound(const EntireFunctionSpec& spec, double r, std::int64_t cutoff_steps) {
    if (!(r > 0.0)) throw ParameterOutOfRange("radius must be > 0");
    if (cutoff_steps < 0) throw ParameterOutOfRange("cutoff must be >= 0");
    const int m = spec.factor_index;
    const double lr = std::log(r);

    switch (spec.zeros.kind()) {
    case GeneratorKind::power_law: {
        const PowerLawRule& p = spec.zeros.power();
        const double la_next = p.log_location(static_cast<double>(cutoff_steps + 1));
        if (la_next < lr + M_LN2 - 1e-12)
            throw CutoffTooSmall("an omitted zero has |a| < 2r");
        // sum_{k > K} mu (k+h)^{-s(m+1)} <= integral from K
        const double pw = p.exponent * (m + 1);
        const double sym = p.symmetric ? 2.0 : 1.0;
        const double log_ratio_pow = (m + 1) * (lr - std::log(p.scale));
        const double integral =
            std::exp(log_ratio_pow + (1.0 - pw) * std::log(cutoff_steps + p.shift)) /
            (pw - 1.0);
        return 2.0 * p.multiplicity * sym * integral;
    }
    case GeneratorKind::list: {
        const auto& entries = spec.zeros.entries();
        KahanSum acc;
        for (std::size_t i = cutoff_steps; i < entries.size(); ++i) {
            const ZeroEntry& e = entries[i];
            if (e.log_abs < lr + M_LN2 - 1e-12)
                throw CutoffTooSmall("an omitted zero has |a| < 2r");
            const double lt = M_LN2 + e.log_multiplicity + (m + 1) * (lr - e.log_abs);
            acc.add(std::exp(lt));
        }
        return acc.sum;
    }
    case GeneratorKind::recursive: {
        const auto& entries = spec.zeros.entries();
        double total = 0.0, last = 0.0, max_ratio = 0.0;
        for (std::size_t i = cutoff_steps; i < entries.size(); ++i) {
            const ZeroEntry& e = entries[i];
            if (e.log_abs < lr + M_LN2 - 1e-12)
                throw CutoffTooSmall("an omitted zero has |a| < 2r");
            const double t = std::exp(M_LN2 + e.log_multiplicity + (m + 1) * (lr - e.log_abs));
            if (last > 0.0 && t > 0.0) max_ratio = std::max(max_ratio, t / last);
            total += t;
            last = t;
        }
        // geometric closure for the unmaterialized remainder
        if (last > 0.0) {
            const double q = std::min(0.5, std::max(max_ratio, 1e-6));
            total += last * q / (1.0 - q);
        }
        return total;
    }
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Transformations and predicates

EntireFunctionSpec square_substitute(const EntireFunctionSpec& spec) {
    if (!spec.zeros.empty() && !spec.zeros.all_positive())
        throw MixedSignZeros("square substitution requires positive zeros");

    EntireFunctionSpec out;
    out.origin_power = 2 * spec.origin_power;
    out.exponent_poly = spec.exponent_poly.substitute_square();

    switch (spec.zeros.kind()) {
    case GeneratorKind::power_law: {
        PowerLawRule p = spec.zeros.power();
        p.scale = std::sqrt(p.scale);
        p.exponent = 0.5 * p.exponent;
        p.symmetric = true;
        p.sign = +1;
        out.zeros = ZeroSequence::make_power(p);
        int mp = 0;
        while (!(p.exponent * (mp + 1) > 1.0)) ++mp;
        out.factor_index = mp;
        break;
    }
    case GeneratorKind::recursive: {
        RecursiveRule r = spec.zeros.recursive();
        r.symmetric = true;
        out.zeros = ZeroSequence::make_recursive(r);
        out.factor_index = 0;
        break;
    }
    case GeneratorKind::list: {
        std::vector<ZeroEntry> entries;
        entries.reserve(2 * spec.zeros.entries().size());
        for (const ZeroEntry& e : spec.zeros.entries()) {
            const double la = 0.5 * e.log_abs;
            entries.push_back(ZeroEntry::from_log(la, -1, e.multiplicity, e.log_multiplicity));
            entries.push_back(ZeroEntry::from_log(la, +1, e.multiplicity, e.log_multiplicity));
        }
        out.zeros = ZeroSequence::make_list(std::move(entries));
        out.factor_index = 0;
        break;
    }
    }

    switch (spec.closed_form) {
    case ClosedForm::cos_sqrt: out.closed_form = ClosedForm::cos_z; break;
    case ClosedForm::sin_sqrt_ratio: out.closed_form = ClosedForm::sinc_pi; break;
    case ClosedForm::two_z_cos_sqrt: out.closed_form = ClosedForm::two_zsq_cos; break;
    default: out.closed_form = ClosedForm::none; break;
    }
    return out;
}

bool is_laguerre_polya(const EntireFunctionSpec& spec) {
    const int d = spec.exponent_poly.degree();
    if (d > 2) return false;
    if (d == 2 && spec.exponent_poly.coeff(2) > 0.0) return false;
    if (spec.factor_index > 1) return false;
    return true; // zeros are real by the data model
}

// ---------------------------------------------------------------------------
// Closed forms

namespace {

// log|cos(x+iy)| and arg via |cos|^2 = cos^2 x + sinh^2 y, stable for large |y|
LogComplex log_cos(double x, double y) {
    const double ay = std::abs(y);
    double lm;
    if (ay > 20.0) {
        const double t = std::exp(-2.0 * ay);
        const double c = std::cos(x);
        lm = ay - M_LN2 + 0.5 * std::log1p((4.0 * c * c - 2.0) * t + t * t);
    } else {
        const double c = std::cos(x), sh = std::sinh(y);
        const double m2 = c * c + sh * sh;
        if (m2 == 0.0) return LogComplex::zero();
        lm = 0.5 * std::log(m2);
    }
    const double ar = std::atan2(-std::sin(x) * std::tanh(y), std::cos(x));
    return {lm, ar};
}

LogComplex log_sin(double x, double y) {
    const double ay = std::abs(y);
    double lm;
    if (ay > 20.0) {
        const double t = std::exp(-2.0 * ay);
        const double s = std::sin(x);
        lm = ay - M_LN2 + 0.5 * std::log1p((4.0 * s * s - 2.0) * t + t * t);
    } else {
        const double s = std::sin(x), sh = std::sinh(y);
        const double m2 = s * s + sh * sh;
        if (m2 == 0.0) return LogComplex::zero();
        lm = 0.5 * std::log(m2);
    }
    const double ar = std::atan2(std::cos(x) * std::tanh(y), std::sin(x));
    return {lm, ar};
}

LogComplex combine(LogComplex a, double lm, double arg) {
    if (a.is_zero()) return a;
    return {a.log_mod + lm, reduce_angle(a.arg + arg)};
}

} // namespace

LogComplex closed_form_log(ClosedForm form, std::complex<double> z) {
    const bool zero_z = z.real() == 0.0 && z.imag() == 0.0;
    const double lz = zero_z ? -std::numeric_limits<double>::infinity()
                             : std::log(std::abs(z));
    const double az = zero_z ? 0.0 : std::arg(z);
    switch (form) {
    case ClosedForm::none:
        throw ParameterOutOfRange("no closed form attached");
    case ClosedForm::cos_sqrt: {
        const double hr = std::exp(0.5 * lz);
        return log_cos(hr * std::cos(0.5 * az), hr * std::sin(0.5 * az));
    }
    case ClosedForm::two_z_cos_sqrt: {
        if (zero_z) return LogComplex::zero();
        const double hr = std::exp(0.5 * lz);
        return combine(log_cos(hr * std::cos(0.5 * az), hr * std::sin(0.5 * az)),
                       M_LN2 + lz, az);
    }
    case ClosedForm::sin_sqrt_ratio: {
        if (zero_z) return LogComplex::one(); // limit value 1 at 0
        const double hr = M_PI * std::exp(0.5 * lz);
        const LogComplex s = log_sin(hr * std::cos(0.5 * az), hr * std::sin(0.5 * az));
        return combine(s, -(std::log(M_PI) + 0.5 * lz), -0.5 * az);
    }
    case ClosedForm::cos_z: {
        const double r = std::exp(lz);
        return log_cos(r * std::cos(az), r * std::sin(az));
    }
    case ClosedForm::sinc_pi: {
        if (zero_z) return LogComplex::one();
        const double r = M_PI * std::exp(lz);
        const LogComplex s = log_sin(r * std::cos(az), r * std::sin(az));
        return combine(s, -(std::log(M_PI) + lz), -az);
    }
    case ClosedForm::two_zsq_cos: {
        if (zero_z) return LogComplex::zero();
        const double r = std::exp(lz);
        return combine(log_cos(r * std::cos(az), r * std::sin(az)), M_LN2 + 2.0 * lz,
                       2.0 * az);
    }
    }
    throw ParameterOutOfRange("unknown closed form");
}

double closed_form_log_modulus_polar(ClosedForm form, double log_r, double theta) {
    if (std::isinf(log_r) && log_r < 0)
        return closed_form_log(form, {0.0, 0.0}).log_mod;
    if (log_r > 700.0)
        throw ParameterOutOfRange("closed forms are desk-scale evaluators");
    const double r = std::exp(log_r);
    return closed_form_log(form, std::polar(r, theta)).log_mod;
}

} // namespace minmod
