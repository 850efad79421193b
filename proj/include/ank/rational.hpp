#pragma once

#include "ank/error.hpp"

#include <climits>
#include <compare>
#include <gmpxx.h>
#include <string>

namespace ank {

// Coefficient types share a small interface so that polynomials and cochains can
// be written once: is_zero(), +=, -=, *, unary -, nu2(), from_int(), str().

// The prime field. Addition is xor; there are no signs.
struct F2
{
    bool bit = false;

    constexpr F2() = default;
    constexpr explicit F2(bool b) : bit(b) {}
    static F2 from_int(long n) { return F2((n & 1) != 0); }
    static constexpr F2 one() { return F2(true); }

    constexpr bool is_zero() const { return !bit; }
    F2& operator+=(F2 o) { bit ^= o.bit; return *this; }
    F2& operator-=(F2 o) { bit ^= o.bit; return *this; }
    F2 operator*(F2 o) const { return F2(bit && o.bit); }
    F2 operator+(F2 o) const { return F2(bit != o.bit); }
    F2 operator-() const { return *this; }
    bool operator==(const F2&) const = default;
    // Nonzero elements are units.
    int nu2() const { return bit ? 0 : INT_MAX; }
    std::string str() const { return bit ? "1" : "0"; }
};

// Exact rational with no locality constraint. Used only inside the m-basis of
// H_*(BP), where powers of 2 appear in denominators.
class Rational
{
public:
    Rational() = default;
    Rational(long n) : q_(n) {}  // NOLINT: integers embed implicitly
    Rational(long n, long d);
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
    static Rational from_int(long n) { return Rational(n); }

    bool is_zero() const { return q_ == 0; }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(q_ * o.q_)); }
    Rational operator+(const Rational& o) const { return Rational(mpq_class(q_ + o.q_)); }
    Rational operator-() const { return Rational(mpq_class(-q_)); }
    bool operator==(const Rational& o) const { return q_ == o.q_; }
    // 2-adic valuation; may be negative.
    int nu2() const;
    const mpq_class& value() const { return q_; }
    std::string str() const { return q_.get_str(); }

private:
    mpq_class q_;
};

// Element of Z localized at 2: stored in lowest terms with odd denominator.
class LocalRational
{
public:
    LocalRational() = default;
    LocalRational(long n) : q_(n) {}  // NOLINT: integers embed implicitly
    static LocalRational from_int(long n) { return LocalRational(n); }
    // Throws NotLocalError when the reduced denominator is even.
    static LocalRational from(const Rational& r);

    bool is_zero() const { return q_ == 0; }
    LocalRational& operator+=(const LocalRational& o) { q_ += o.q_; return *this; }
    LocalRational& operator-=(const LocalRational& o) { q_ -= o.q_; return *this; }
    LocalRational operator*(const LocalRational& o) const;
    LocalRational operator+(const LocalRational& o) const;
    LocalRational operator-() const;
    bool operator==(const LocalRational& o) const { return q_ == o.q_; }

    // 2-adic valuation read from the numerator; INT_MAX for zero.
    int nu2() const;
    // Image in F_2 = Z_(2)/2.
    F2 mod2() const;
    // Divide by 2^k; throws NotLocalError if the result leaves Z_(2).
    LocalRational div_pow2(int k) const;
    const mpq_class& value() const { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }
    std::string str() const { return q_.get_str(); }

private:
    explicit LocalRational(mpq_class q) : q_(std::move(q)) {}
    mpq_class q_;
};

// (n, d) -> n/d in lowest terms; d == 0 or an even reduced denominator throws.
LocalRational localrat_normalize(long n, long d);

}  // namespace ank
