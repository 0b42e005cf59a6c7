#include "foldwork/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace foldwork {

std::string to_string(const BigInt& v) { return v.get_str(); }

Rat::Rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    v_ /= o.v_;
    return *this;
}

Rat Rat::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("Rat::parse: empty string");
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            return Rat(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
        }
        auto dot = text.find('.');
        if (dot == std::string::npos) return Rat(BigInt(text), BigInt(1));
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        BigInt den = 1;
        for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
        if (digits == "-" || digits.empty()) throw std::invalid_argument(text);
        return Rat(BigInt(digits), den);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("Rat::parse: malformed number '" + text + "'");
    }
}

std::string Rat::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::size_t Rat::hash() const {
    std::size_t h = std::hash<std::string>{}(v_.get_num().get_str(16));
    h ^= std::hash<std::string>{}(v_.get_den().get_str(16)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace foldwork
