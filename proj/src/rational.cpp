#include "nucembed/rational.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace nucembed {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long long narrow(__int128 v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw std::overflow_error("Rat: value exceeds 64-bit range");
    return static_cast<long long>(v);
}

long long parse_ll(std::string_view s) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("Rat: malformed integer '" + std::string(s) + "'");
    return v;
}

}  // namespace

void Rat::assign(long long n, long long d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    *this = from_i128(n, d);
}

Rat Rat::from_i128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (n == 0) return Rat();
    __int128 g = gcd128(n, d);
    Rat r;
    r.num_ = narrow(n / g);
    r.den_ = narrow(d / g);
    return r;
}

Rat Rat::parse(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("Rat: empty string");
    if (s.find('.') != std::string_view::npos || s.find(',') != std::string_view::npos)
        throw std::invalid_argument("Rat: decimal notation rejected, use exact fractions like 3/2");
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rat(parse_ll(s));
    long long n = parse_ll(s.substr(0, slash));
    long long d = parse_ll(s.substr(slash + 1));
    return Rat(n, d);
}

std::string Rat::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rat Rat::from_double_floor(double x) {
    if (!std::isfinite(x)) throw std::domain_error("Rat: non-finite double");
    double scaled = std::floor(x * 1048576.0);
    return Rat(static_cast<long long>(scaled), 1048576LL);
}

Rat Rat::from_double_ceil(double x) {
    if (!std::isfinite(x)) throw std::domain_error("Rat: non-finite double");
    double scaled = std::ceil(x * 1048576.0);
    return Rat(static_cast<long long>(scaled), 1048576LL);
}

}  // namespace nucembed
