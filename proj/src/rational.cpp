#include "ank/rational.hpp"

#include <fmt/format.h>

namespace ank {

namespace {

int nu2_of(const mpz_class& z)
{
    if (z == 0)
        return INT_MAX;
    return static_cast<int>(mpz_scan1(z.get_mpz_t(), 0));
}

}  // namespace

Rational::Rational(long n, long d)
{
    if (d == 0)
        throw ContextError("zero denominator");
    q_ = mpq_class(n, d);
    q_.canonicalize();
}

int Rational::nu2() const
{
    if (q_ == 0)
        return INT_MAX;
    return nu2_of(q_.get_num()) - nu2_of(q_.get_den());
}

LocalRational LocalRational::from(const Rational& r)
{
    if (mpz_even_p(r.value().get_den_mpz_t()))
        throw NotLocalError(fmt::format("{} is not 2-local", r.str()));
    return LocalRational(r.value());
}

LocalRational LocalRational::operator*(const LocalRational& o) const
{
    return LocalRational(mpq_class(q_ * o.q_));
}

LocalRational LocalRational::operator+(const LocalRational& o) const
{
    return LocalRational(mpq_class(q_ + o.q_));
}

LocalRational LocalRational::operator-() const
{
    return LocalRational(mpq_class(-q_));
}

int LocalRational::nu2() const
{
    return nu2_of(q_.get_num());
}

F2 LocalRational::mod2() const
{
    return F2(q_ != 0 && mpz_odd_p(q_.get_num_mpz_t()));
}

LocalRational LocalRational::div_pow2(int k) const
{
    if (q_ == 0)
        return *this;
    if (nu2() < k)
        throw NotLocalError(fmt::format("{} / 2^{} is not 2-local", str(), k));
    mpq_class r = q_;
    mpq_div_2exp(r.get_mpq_t(), q_.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
    return LocalRational(r);
}

LocalRational localrat_normalize(long n, long d)
{
    return LocalRational::from(Rational(n, d));
}

}  // namespace ank
