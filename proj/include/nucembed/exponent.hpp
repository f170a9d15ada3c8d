#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nucembed/rational.hpp"

namespace nucembed {

/// An extended Lebesgue exponent: an exact positive rational or the symbol
/// infinity. The regular range is [1, inf]; values in (0,1) are permitted
/// through the quasi() factory for quasi-norm contexts and are rejected by
/// every duality or nuclearity operation via is_banach().
///
/// Reciprocal arithmetic (1/p, conjugates, the star and tong numbers) is
/// exact; no floating point enters a comparison.
class Exponent {
public:
    static Exponent inf() {
        Exponent e;
        e.infinite_ = true;
        return e;
    }
    static Exponent of(long long v) { return of(Rat(v)); }
    static Exponent of(const Rat& v) {
        if (v < Rat(1)) throw std::domain_error("Exponent: value " + v.str() + " < 1 (use quasi() for (0,1))");
        Exponent e;
        e.value_ = v;
        return e;
    }
    /// Quasi-norm range: any exact value > 0.
    static Exponent quasi(const Rat& v) {
        if (!v.is_positive()) throw std::domain_error("Exponent: value must be positive");
        Exponent e;
        e.value_ = v;
        return e;
    }
    /// Accepts "inf", "a/b" or "a"; any positive value. Decimals rejected.
    static Exponent parse(std::string_view s) {
        if (s == "inf" || s == "Inf" || s == "INF" || s == "oo") return inf();
        return quasi(Rat::parse(s));
    }
    /// Reciprocal as an exact rational; 1/inf = 0.
    Rat recip() const { return infinite_ ? Rat(0) : Rat(1) / value_; }
    /// Exponent with the given exact reciprocal; 0 maps to inf.
    static Exponent from_recip(const Rat& r) {
        if (r.is_negative()) throw std::domain_error("Exponent: negative reciprocal");
        if (r.is_zero()) return inf();
        return quasi(Rat(1) / r);
    }

    bool is_inf() const { return infinite_; }
    bool is_one() const { return !infinite_ && value_ == Rat(1); }
    bool is_banach() const { return infinite_ || value_ >= Rat(1); }
    /// Finite exact value; throws on inf.
    Rat value() const {
        if (infinite_) throw std::domain_error("Exponent: infinite value has no rational representation");
        return value_;
    }
    double to_double() const;

    std::string str() const { return infinite_ ? "inf" : value_.str(); }

    friend bool operator==(const Exponent& a, const Exponent& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    /// Total order with inf as the maximum.
    friend bool operator<(const Exponent& a, const Exponent& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.value_ < b.value_;
    }
    friend bool operator<=(const Exponent& a, const Exponent& b) { return a < b || a == b; }
    friend bool operator>(const Exponent& a, const Exponent& b) { return b < a; }
    friend bool operator>=(const Exponent& a, const Exponent& b) { return b <= a; }

private:
    bool infinite_ = false;
    Rat value_ = Rat(1);
};

/// r' with 1/r + 1/r' = 1, exactly; 1' = inf, inf' = 1. Requires r in [1, inf].
Exponent conjugate(const Exponent& r);

/// r* with 1/r* = (1/r2 - 1/r1)_+ ; r* = inf whenever r1 <= r2.
/// Accepts the full quasi range (0, inf].
Exponent star_exponent(const Exponent& r1, const Exponent& r2);

/// t(r1,r2) with 1/t = 1 - (1/r1 - 1/r2)_+ . Requires r1, r2 in [1, inf];
/// t = inf exactly when r1 = 1 and r2 = inf.
Exponent tong_exponent(const Exponent& r1, const Exponent& r2);

}  // namespace nucembed
