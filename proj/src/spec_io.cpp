#include "minmod/spec_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace minmod {

namespace {

const char* closed_form_name(ClosedForm f) {
    switch (f) {
    case ClosedForm::none: return "none";
    case ClosedForm::cos_sqrt: return "cos-sqrt";
    case ClosedForm::two_z_cos_sqrt: return "two-z-cos-sqrt";
    case ClosedForm::sin_sqrt_ratio: return "sin-sqrt-ratio";
    case ClosedForm::cos_z: return "cos-z";
    case ClosedForm::sinc_pi: return "sinc-pi";
    case ClosedForm::two_zsq_cos: return "two-zsq-cos";
    }
    return "none";
}

ClosedForm closed_form_from(const std::string& s, int line) {
    if (s == "none") return ClosedForm::none;
    if (s == "cos-sqrt") return ClosedForm::cos_sqrt;
    if (s == "two-z-cos-sqrt") return ClosedForm::two_z_cos_sqrt;
    if (s == "sin-sqrt-ratio") return ClosedForm::sin_sqrt_ratio;
    if (s == "cos-z") return ClosedForm::cos_z;
    if (s == "sinc-pi") return ClosedForm::sinc_pi;
    if (s == "two-zsq-cos") return ClosedForm::two_zsq_cos;
    throw SpecParseError(line, "unknown closed_form '" + s + "'");
}

double parse_double(const std::string& tok, int line) {
    double v = 0.0;
    if (tok == "inf") return std::numeric_limits<double>::infinity();
    if (tok == "-inf") return -std::numeric_limits<double>::infinity();
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        throw SpecParseError(line, "bad number '" + tok + "'");
    return v;
}

long parse_int(const std::string& tok, int line) {
    long v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        throw SpecParseError(line, "bad integer '" + tok + "'");
    return v;
}

} // namespace

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string write_spec(const EntireFunctionSpec& spec) {
    std::ostringstream out;
    out << "origin_power " << spec.origin_power << "\n";
    if (!spec.exponent_poly.is_zero()) {
        out << "poly";
        for (double c : spec.exponent_poly.coefficients()) out << ' ' << format_double(c);
        out << "\n";
    }
    out << "factor_index " << spec.factor_index << "\n";
    if (spec.closed_form != ClosedForm::none)
        out << "closed_form " << closed_form_name(spec.closed_form) << "\n";

    switch (spec.zeros.kind()) {
    case GeneratorKind::power_law: {
        const PowerLawRule& p = spec.zeros.power();
        out << "generator power-law\n";
        out << "power_scale " << format_double(p.scale) << "\n";
        out << "power_exponent " << format_double(p.exponent) << "\n";
        out << "power_shift " << format_double(p.shift) << "\n";
        out << "power_multiplicity " << format_double(p.multiplicity) << "\n";
        out << "power_symmetric " << (p.symmetric ? 1 : 0) << "\n";
        out << "power_sign " << p.sign << "\n";
        break;
    }
    case GeneratorKind::recursive: {
        const RecursiveRule& r = spec.zeros.recursive();
        out << "generator recursive\n";
        out << "recursive_rho " << format_double(r.rho) << "\n";
        out << "recursive_order1 " << (r.order1 ? 1 : 0) << "\n";
        out << "recursive_k_max " << r.k_max << "\n";
        out << "recursive_symmetric " << (r.symmetric ? 1 : 0) << "\n";
        out << "recursive_exploratory " << (r.exploratory ? 1 : 0) << "\n";
        break;
    }
    case GeneratorKind::list: {
        out << "generator list\n";
        for (const ZeroEntry& e : spec.zeros.entries()) {
            if (std::isfinite(e.location) && std::isfinite(e.multiplicity)) {
                out << "zero " << format_double(e.location) << ' '
                    << format_double(e.multiplicity) << "\n";
            } else {
                out << "logzero " << format_double(e.log_abs) << ' ' << e.sign() << ' '
                    << format_double(e.multiplicity) << ' '
                    << format_double(e.log_multiplicity) << "\n";
            }
        }
        break;
    }
    }
    return out.str();
}

EntireFunctionSpec read_spec(const std::string& text) {
    EntireFunctionSpec spec;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool have_generator = false;
    std::string generator;
    PowerLawRule power;
    RecursiveRule recursive;
    std::vector<ZeroEntry> entries;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        std::vector<std::string> args;
        for (std::string tok; ls >> tok;) args.push_back(tok);
        auto need = [&](std::size_t n) {
            if (args.size() != n)
                throw SpecParseError(line_no, "field '" + key + "' expects " +
                                                  std::to_string(n) + " value(s)");
        };
        if (key == "origin_power") {
            need(1);
            spec.origin_power = static_cast<int>(parse_int(args[0], line_no));
        } else if (key == "poly") {
            std::vector<double> coeffs;
            for (const auto& a : args) coeffs.push_back(parse_double(a, line_no));
            spec.exponent_poly = RealPolynomial(std::move(coeffs));
        } else if (key == "factor_index") {
            need(1);
            spec.factor_index = static_cast<int>(parse_int(args[0], line_no));
        } else if (key == "closed_form") {
            need(1);
            spec.closed_form = closed_form_from(args[0], line_no);
        } else if (key == "generator") {
            need(1);
            generator = args[0];
            have_generator = true;
            if (generator != "power-law" && generator != "list" && generator != "recursive")
                throw SpecParseError(line_no, "unknown generator '" + generator + "'");
        } else if (key == "power_scale") {
            need(1);
            power.scale = parse_double(args[0], line_no);
        } else if (key == "power_exponent") {
            need(1);
            power.exponent = parse_double(args[0], line_no);
        } else if (key == "power_shift") {
            need(1);
            power.shift = parse_double(args[0], line_no);
        } else if (key == "power_multiplicity") {
            need(1);
            power.multiplicity = parse_double(args[0], line_no);
        } else if (key == "power_symmetric") {
            need(1);
            power.symmetric = parse_int(args[0], line_no) != 0;
        } else if (key == "power_sign") {
            need(1);
            power.sign = parse_int(args[0], line_no) < 0 ? -1 : +1;
        } else if (key == "recursive_rho") {
            need(1);
            recursive.rho = parse_double(args[0], line_no);
        } else if (key == "recursive_order1") {
            need(1);
            recursive.order1 = parse_int(args[0], line_no) != 0;
        } else if (key == "recursive_k_max") {
            need(1);
            recursive.k_max = static_cast<int>(parse_int(args[0], line_no));
        } else if (key == "recursive_symmetric") {
            need(1);
            recursive.symmetric = parse_int(args[0], line_no) != 0;
        } else if (key == "recursive_exploratory") {
            need(1);
            recursive.exploratory = parse_int(args[0], line_no) != 0;
        } else if (key == "zero") {
            need(2);
            try {
                entries.push_back(ZeroEntry::at(parse_double(args[0], line_no),
                                                parse_double(args[1], line_no)));
            } catch (const ParameterOutOfRange& e) {
                throw SpecParseError(line_no, e.what());
            }
        } else if (key == "logzero") {
            need(4);
            entries.push_back(ZeroEntry::from_log(
                parse_double(args[0], line_no), static_cast<int>(parse_int(args[1], line_no)),
                parse_double(args[2], line_no), parse_double(args[3], line_no)));
        } else {
            throw SpecParseError(line_no, "unknown field '" + key + "'");
        }
    }
    if (!have_generator) throw SpecParseError(line_no, "missing 'generator' field");

    try {
        if (generator == "power-law") {
            spec.zeros = ZeroSequence::make_power(power);
        } else if (generator == "recursive") {
            spec.zeros = ZeroSequence::make_recursive(recursive);
        } else {
            spec.zeros = ZeroSequence::make_list(std::move(entries));
        }
        validate_spec(spec);
    } catch (const ParameterOutOfRange& e) {
        throw SpecParseError(line_no, e.what());
    }
    return spec;
}

void save_spec_file(const EntireFunctionSpec& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IOError("cannot open '" + path + "' for writing");
    out << write_spec(spec);
    if (!out) throw IOError("write to '" + path + "' failed");
}

EntireFunctionSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IOError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_spec(buf.str());
}

} // namespace minmod
