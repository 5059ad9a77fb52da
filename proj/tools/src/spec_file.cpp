#include "spec_file.hpp"

#include <mills/errors.hpp>

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace mills::cli {

namespace {

std::string strip(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

// Splits "1/x - 2*x + 0.5x^2" into signed term strings, keeping exponent
// signs ("1e-3") intact.
std::vector<std::string> split_terms(const std::string& expr) {
    std::vector<std::string> terms;
    std::string cur;
    for (size_t i = 0; i < expr.size(); ++i) {
        const char c = expr[i];
        if ((c == '+' || c == '-') && !cur.empty()) {
            const char prev = cur.back();
            if (prev != 'e' && prev != 'E') {
                terms.push_back(cur);
                cur.clear();
            }
        }
        if (!std::isspace(static_cast<unsigned char>(c)))
            cur += c;
    }
    if (!cur.empty())
        terms.push_back(cur);
    return terms;
}

double parse_coefficient(std::string text, const std::string& term) {
    if (text.empty() || text == "+")
        return 1.0;
    if (text == "-")
        return -1.0;
    if (!text.empty() && text.back() == '*')
        text.pop_back();
    if (text.empty() || text == "+")
        return 1.0;
    if (text == "-")
        return -1.0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == nullptr || *end != '\0')
        throw domain_error("bad coefficient '" + text + "' in term '" + term + "'");
    return v;
}

} // namespace

omega_expression parse_omega_expression(const std::string& expr) {
    omega_expression out;
    out.text = strip(expr);
    if (out.text.empty())
        throw domain_error("empty omega expression");

    for (const std::string& term : split_terms(out.text)) {
        const size_t slash = term.find('/');
        if (slash != std::string::npos) {
            if (term.substr(slash) != "/x")
                throw domain_error("only 1/x reciprocal terms are supported, got '" + term + "'");
            out.inv_coeff += parse_coefficient(term.substr(0, slash), term);
            continue;
        }
        const size_t xpos = term.find('x');
        if (xpos == std::string::npos) {
            out.poly[0] += parse_coefficient(term, term);
            continue;
        }
        int power = 1;
        const std::string rest = term.substr(xpos + 1);
        if (!rest.empty()) {
            if (rest[0] != '^')
                throw domain_error("malformed term '" + term + "'");
            char* end = nullptr;
            const long p = std::strtol(rest.c_str() + 1, &end, 10);
            if (end == nullptr || *end != '\0' || p < 1 || p > 6)
                throw domain_error("unsupported power in term '" + term + "' (1..6 allowed)");
            power = static_cast<int>(p);
        }
        out.poly[power] += parse_coefficient(term.substr(0, xpos), term);
    }
    return out;
}

custom_spec load_custom_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw domain_error("cannot open distribution spec file '" + path + "'");

    custom_spec spec;
    bool have_omega = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = strip(line);
        if (line.empty())
            continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << path << ":" << lineno << ": expected 'key = value'";
            throw domain_error(os.str());
        }
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key == "omega") {
            spec.omega = parse_omega_expression(value);
            have_omega = true;
        } else if (key == "name") {
            spec.name = value;
        } else {
            std::ostringstream os;
            os << path << ":" << lineno << ": unknown key '" << key << "'";
            throw domain_error(os.str());
        }
    }
    if (!have_omega)
        throw domain_error("spec file '" + path + "' has no omega = ... line");
    return spec;
}

distribution_model make_custom_from_spec(const custom_spec& spec, support_hint hint) {
    const omega_expression ex = spec.omega;

    auto omega = [ex](double x) {
        double v = ex.inv_coeff / x;
        for (const auto& [k, c] : ex.poly)
            v += c * std::pow(x, k);
        return v;
    };
    auto omega_prime = [ex](double x) {
        double v = -ex.inv_coeff / (x * x);
        for (const auto& [k, c] : ex.poly)
            if (k >= 1)
                v += c * k * std::pow(x, k - 1);
        return v;
    };
    // log f is the antiderivative of omega, fixed up to an additive constant
    // that the model never sees.
    auto density = [ex](double x) {
        double a = ex.inv_coeff * std::log(x);
        for (const auto& [k, c] : ex.poly)
            a += c * std::pow(x, k + 1) / (k + 1);
        return std::exp(a);
    };

    distribution_model model = make_custom(omega, omega_prime, density, hint);
    model.id = spec.name;
    return model;
}

} // namespace mills::cli
