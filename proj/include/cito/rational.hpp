#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cito {

/// Exact rational number on 64-bit integers, kept normalized (gcd 1, den > 0).
///
/// Coupling strengths and cycle weights are small fractions; keeping them
/// exact makes greedy tie-breaking stable across platforms. Comparisons go
/// through 128-bit intermediates so normalized operands never overflow.
class Rational {
public:
    constexpr Rational() = default;
    Rational(long long num, long long den) : num_(num), den_(den) { normalize(); }
    Rational(long long value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)

    long long num() const { return num_; }
    long long den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }

    Rational operator+(const Rational& o) const {
        return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Rational operator*(const Rational& o) const {
        // cross-reduce before multiplying to keep intermediates small
        long long g1 = std::gcd(num_, o.den_);
        long long g2 = std::gcd(o.num_, den_);
        return Rational((num_ / g1) * (o.num_ / g2), (den_ / g2) * (o.den_ / g1));
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
        return *this * Rational(o.den_, o.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "3", "3/4" or a plain decimal like "0.71" into an exact value.
    static Rational parse(const std::string& text) {
        if (text.empty()) throw std::invalid_argument("Rational: empty string");
        auto slash = text.find('/');
        if (slash != std::string::npos) {
            return Rational(std::stoll(text.substr(0, slash)),
                            std::stoll(text.substr(slash + 1)));
        }
        auto dot = text.find('.');
        if (dot == std::string::npos) return Rational(std::stoll(text));
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        long long den = 1;
        for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
        return Rational(std::stoll(digits), den);
    }

private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num_ = 0;
    long long den_ = 1;
};

}  // namespace cito
