#include "bicrit/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace bicrit {

Rat rat_from_double(double v) {
    if (!std::isfinite(v)) throw std::domain_error("rational conversion requires a finite value");
    return Rat(v);
}

Rat floor_to_denominator(double v, long long den) {
    if (den <= 0) throw std::domain_error("denominator must be positive");
    Rat scaled = rat_from_double(v) * den;
    BigInt q = numerator(scaled) / denominator(scaled);  // truncation
    if (scaled < 0 && q * denominator(scaled) != numerator(scaled)) q -= 1;
    return Rat(q, BigInt(den));
}

std::string rat_to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rat rat_parse(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    const auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) return Rat(BigInt(std::string(s)));
        BigInt num{std::string(s.substr(0, slash))};
        BigInt den{std::string(s.substr(slash + 1))};
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument("bad rational literal '" + std::string(s) + "': " + e.what());
    }
}

}  // namespace bicrit
