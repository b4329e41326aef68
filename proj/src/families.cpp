#include "minmod/families.hpp"

#include "minmod/spec_io.hpp"

#include <cmath>
#include <sstream>

namespace minmod {

EntireFunctionSpec make_family(const FamilyId& id) {
    EntireFunctionSpec spec;
    switch (id.kind) {
    case FamilyId::Kind::cos_sqrt: {
        // zeros ((k - 1/2) pi)^2
        PowerLawRule rule{M_PI * M_PI, 2.0, -0.5, 1.0, false, +1};
        spec.zeros = ZeroSequence::make_power(rule);
        spec.factor_index = 0;
        spec.closed_form = ClosedForm::cos_sqrt;
        break;
    }
    case FamilyId::Kind::z_cos_sqrt: {
        PowerLawRule rule{M_PI * M_PI, 2.0, -0.5, 1.0, false, +1};
        spec.zeros = ZeroSequence::make_power(rule);
        spec.origin_power = 1;
        spec.exponent_poly = RealPolynomial({M_LN2}); // the factor 2
        spec.factor_index = 0;
        spec.closed_form = ClosedForm::two_z_cos_sqrt;
        break;
    }
    case FamilyId::Kind::hardy: {
        if (!(id.param > 1.0)) throw ParameterOutOfRange("hardy needs sigma > 1");
        PowerLawRule rule{1.0, id.param, 0.0, 1.0, false, +1};
        spec.zeros = ZeroSequence::make_power(rule);
        spec.factor_index = 0;
        if (id.param == 2.0) spec.closed_form = ClosedForm::sin_sqrt_ratio;
        break;
    }
    case FamilyId::Kind::lindelof: {
        if (!(id.param > 1.0 && id.param < 2.0))
            throw ParameterOutOfRange("lindelof needs alpha in (1,2)");
        if (id.depth < 10) throw ParameterOutOfRange("lindelof depth too small");
        // zeros n (log n)^alpha, n >= 2 (the n = 1 factor is empty)
        std::vector<ZeroEntry> entries;
        entries.reserve(id.depth);
        for (std::size_t n = 2; n < 2 + id.depth; ++n) {
            const double ln_n = std::log(static_cast<double>(n));
            const double a = static_cast<double>(n) * std::pow(ln_n, id.param);
            entries.push_back(ZeroEntry::at(a, 1.0));
        }
        spec.zeros = ZeroSequence::make_list(std::move(entries));
        spec.factor_index = 0;
        break;
    }
    case FamilyId::Kind::constructed: {
        RecursiveRule rule;
        rule.rho = id.param;
        rule.k_max = id.k_max;
        spec.zeros = ZeroSequence::make_recursive(rule);
        spec.factor_index = 0;
        break;
    }
    case FamilyId::Kind::constructed_order1: {
        RecursiveRule rule;
        rule.order1 = true;
        rule.k_max = id.k_max;
        spec.zeros = ZeroSequence::make_recursive(rule);
        spec.factor_index = 0;
        break;
    }
    case FamilyId::Kind::genus_power: {
        if (!(id.param > 0.0 && id.param < 1.0))
            throw ParameterOutOfRange("genus-power needs exponent in (0,1)");
        PowerLawRule rule{1.0, id.param, 0.0, 1.0, id.symmetric, +1};
        spec.zeros = ZeroSequence::make_power(rule);
        spec.factor_index = minimal_factor_index(spec.zeros);
        break;
    }
    }
    validate_spec(spec);
    return spec;
}

EntireFunctionSpec make_family_by_name(const std::string& name, double param) {
    if (name == "cos-sqrt") return make_family(FamilyId::cos_sqrt());
    if (name == "z-cos-sqrt") return make_family(FamilyId::z_cos_sqrt());
    if (name == "hardy") return make_family(FamilyId::hardy(param));
    if (name == "lindelof") return make_family(FamilyId::lindelof(param));
    if (name == "constructed") return make_family(FamilyId::constructed(param));
    if (name == "constructed-order1") return make_family(FamilyId::constructed_order1());
    if (name == "genus-power") return make_family(FamilyId::genus_power(param));
    throw ParameterOutOfRange("unknown family '" + name + "'");
}

double hardy_asymptotic_log(double sigma, std::complex<double> z) {
    const double rho = 1.0 / sigma;
    if (!(rho > 0.5 && rho < 1.0))
        throw ParameterOutOfRange("hardy asymptotic: rho must be in (1/2, 1)");
    if (!(std::abs(z) >= 10.0))
        throw ParameterOutOfRange("hardy asymptotic: |z| >= 10 required");
    const std::complex<double> zr = std::pow(z, rho);
    // 2/sqrt(2 pi z) sin(pi z^rho) exp(pi cot(pi rho) z^rho)
    const std::complex<double> sin_arg = M_PI * zr;
    // |sin w| via |sin|^2 = sin^2 x + sinh^2 y
    const double x = sin_arg.real(), y = sin_arg.imag();
    double log_sin;
    if (std::abs(y) > 20.0) {
        const double t = std::exp(-2.0 * std::abs(y));
        const double sx = std::sin(x);
        log_sin = std::abs(y) - M_LN2 + 0.5 * std::log1p((4.0 * sx * sx - 2.0) * t + t * t);
    } else {
        const double sx = std::sin(x), sh = std::sinh(y);
        const double m2 = sx * sx + sh * sh;
        if (m2 == 0.0) return -std::numeric_limits<double>::infinity();
        log_sin = 0.5 * std::log(m2);
    }
    const double cot = std::cos(M_PI * rho) / std::sin(M_PI * rho);
    return M_LN2 - 0.5 * (std::log(2.0 * M_PI) + std::log(std::abs(z))) + log_sin +
           M_PI * cot * zr.real();
}

double lindelof_asymptotic_log(double alpha, std::complex<double> z) {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw ParameterOutOfRange("lindelof asymptotic: alpha in (1,2)");
    if (!(std::abs(z) >= 100.0))
        throw ParameterOutOfRange("lindelof asymptotic: |z| >= 100 required");
    if (!(std::abs(std::arg(z)) < M_PI - 0.1))
        throw ParameterOutOfRange("lindelof asymptotic: need |arg z| < pi - 0.1");
    const std::complex<double> w = std::log(-z); // principal
    const std::complex<double> expo =
        z * std::pow(w, 1.0 - alpha) / (1.0 - alpha);
    return expo.real();
}

namespace {

Construction51Data build_impl(double rho, bool order1, int k_max) {
    if (k_max < 2) throw ParameterOutOfRange("k_max must be >= 2");
    RecursiveRule rule;
    rule.rho = rho;
    rule.order1 = order1;
    rule.k_max = k_max;
    Construction51Data data;
    data.rho = rho;
    data.order1 = order1;
    data.levels = materialize_recursive(rule);
    const int K = data.levels.size();
    data.log_r.resize(K);
    data.claimed_lower_log.resize(K);
    for (int k = 0; k < K; ++k) {
        data.log_r[k] = std::log(3.0) + data.levels.log_a[k];
        data.claimed_lower_log[k] =
            std::isfinite(data.levels.count[k])
                ? (data.levels.count[k] - 1.0) * M_LN2
                : clamp_log(std::exp(data.levels.log_count[k]) * M_LN2);
    }
    return data;
}

} // namespace

Construction51Data build_construction51(double rho, int k_max) {
    if (!(rho >= 0.5 && rho < 1.0))
        throw ParameterOutOfRange("standard construction needs rho in [1/2, 1)");
    return build_impl(rho, false, k_max);
}

Construction51Data build_construction51_order1(int k_max) {
    return build_impl(0.0, true, k_max);
}

std::vector<Construction51Check> verify_construction51(const Construction51Data& data,
                                                       int k_from, int k_to) {
    const RecursiveLevels& lv = data.levels;
    const int K = lv.size();
    if (k_from < 1 || k_to > K || k_from > k_to)
        throw ParameterOutOfRange("k range outside the materialized construction");

    std::vector<Construction51Check> checks;
    for (int k = k_from; k <= k_to; ++k) {
        Construction51Check c;
        c.k = k;
        const double lr = data.log_r[k - 1];

        // (i) exact tail sum over the materialized levels
        double tail = 0.0;
        for (int j = k; j < K; ++j)
            tail += std::exp(lv.log_mult[j] + lr - lv.log_a[j]);
        c.tail_sum = tail;
        c.tail_ok = tail <= 0.5;

        // (ii) log m(r_k) = sum_j m_j log|1 - r_k / a_j|, minimum at z = r_k
        double lm = 0.0;
        for (int j = 0; j < K; ++j) {
            const double d = lr - lv.log_a[j]; // log(r_k / a_j)
            double factor;
            if (d >= 0.0)
                factor = d + std::log1p(-std::exp(-d)); // log(r/a - 1), r/a >= 3
            else
                factor = std::log1p(-std::exp(d)); // log(1 - r/a)
            lm += std::isfinite(lv.mult[j]) ? lv.mult[j] * factor
                                            : (factor < 0 ? -1.0 : 1.0) *
                                                  std::exp(lv.log_mult[j] +
                                                           std::log(std::abs(factor)));
        }
        c.log_min_modulus = lm;

        // (iii) the claimed lower bound
        c.required_log = data.claimed_lower_log[k - 1];
        c.bound_ok = lm >= c.required_log;

        // (iv) dominance over the next ring radius
        if (k < K) {
            c.log_r_next = data.log_r[k];
            c.dominates_next = lm > c.log_r_next;
        } else {
            c.log_r_next = std::numeric_limits<double>::quiet_NaN();
            c.dominates_next = false;
        }
        checks.push_back(c);
    }
    return checks;
}

namespace {
std::string json_num(double v) {
    return std::isfinite(v) ? format_double(v) : std::string("null");
}
} // namespace

std::string construction51_json(const Construction51Data& data,
                                const std::vector<Construction51Check>& checks) {
    std::ostringstream out;
    out << "{\"rho\":" << format_double(data.rho)
        << ",\"order1\":" << (data.order1 ? "true" : "false") << ",\"levels\":[";
    for (int k = 0; k < data.levels.size(); ++k) {
        if (k) out << ',';
        out << "{\"k\":" << (k + 1) << ",\"log_a\":" << json_num(data.levels.log_a[k])
            << ",\"count\":" << json_num(data.levels.count[k])
            << ",\"mult\":" << json_num(data.levels.mult[k])
            << ",\"exact\":" << (data.levels.exact[k] ? "true" : "false") << "}";
    }
    out << "],\"checks\":[";
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const Construction51Check& c = checks[i];
        if (i) out << ',';
        out << "{\"k\":" << c.k << ",\"tail_sum\":" << json_num(c.tail_sum)
            << ",\"tail_ok\":" << (c.tail_ok ? "true" : "false")
            << ",\"log_min_modulus\":" << json_num(c.log_min_modulus)
            << ",\"required_log\":" << json_num(c.required_log)
            << ",\"bound_ok\":" << (c.bound_ok ? "true" : "false")
            << ",\"log_r_next\":" << json_num(c.log_r_next)
            << ",\"dominates_next\":" << (c.dominates_next ? "true" : "false") << "}";
    }
    out << "]}";
    return out.str();
}

} // namespace minmod
