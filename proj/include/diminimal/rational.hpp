#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace diminimal {

/// Exact arbitrary-precision rational in canonical form (reduced, positive
/// denominator). Thin value wrapper over GMP's mpq_class.
class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    explicit Rational(mpq_class value);

    /// Accepts "p/q", "p" and optional leading sign; rejects q == 0 and
    /// anything with decimal points or exponents.
    static Rational parse(std::string_view text);

    /// 2^e for e >= 0, 2^-|e| otherwise.
    static Rational pow2(int exponent);

    const mpq_class& raw() const { return value_; }

    int sign() const { return sgn(value_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const;

    Rational abs() const;
    Rational reciprocal() const;
    double to_double() const { return value_.get_d(); }

    /// Compact form: "p" for integers, "p/q" otherwise.
    std::string str() const;
    /// Always "p/q" (denominator 1 included). Used by every serialized format.
    std::string fraction_str() const;

    Rational& operator+=(const Rational& rhs);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    Rational operator-() const;

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Smallest m / den with m integer and (m / den)^2 >= x, for x >= 0.
Rational sqrt_upper(const Rational& x, long den);

}  // namespace diminimal
