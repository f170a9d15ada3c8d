#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nucembed {

/// Exact rational number on 64-bit numerator/denominator.
///
/// All arithmetic is exact; intermediate products are carried in 128 bits and
/// any result that does not fit into int64 after normalization throws
/// std::overflow_error. This is the ground type for every threshold
/// comparison in the library (exponent algebra, smoothness gaps, margins).
class Rat {
public:
    constexpr Rat() = default;
    constexpr Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d) { assign(n, d); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    /// Parses "a", "a/b", with optional leading '-' on the numerator.
    /// Decimal notation is rejected: exact inputs only.
    static Rat parse(std::string_view s);

    std::string str() const;
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_positive() const { return num_ > 0; }

    /// Largest integer <= *this.
    long long floor_ll() const {
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    Rat operator-() const { return from_i128(-static_cast<__int128>(num_), den_); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return from_i128(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                         static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return from_i128(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
        return from_i128(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
    }

    friend bool operator==(const Rat& a, const Rat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
        __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    static Rat abs(const Rat& a) { return a.num_ < 0 ? -a : a; }
    static Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }
    static Rat min(const Rat& a, const Rat& b) { return a < b ? a : b; }

    /// Nearest rational with denominator 2^20 not above/below x; used when an
    /// estimated quantity has to enter exact threshold logic.
    static Rat from_double_floor(double x);
    static Rat from_double_ceil(double x);

private:
    void assign(long long n, long long d);
    static Rat from_i128(__int128 n, __int128 d);

    long long num_ = 0;
    long long den_ = 1;
};

}  // namespace nucembed
