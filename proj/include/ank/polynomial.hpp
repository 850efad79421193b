#pragma once

#include "ank/grading.hpp"
#include "ank/rational.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <string>

namespace ank {

// Sparse polynomial in the generators of a RingContext. Terms live in a
// std::map keyed by the canonical monomial order; zero coefficients are never
// stored.
template <class C>
class Polynomial
{
public:
    using Coef = C;
    using Terms = std::map<Monomial, C>;

    Polynomial() = default;
    explicit Polynomial(RingContextPtr ctx) : ctx_(std::move(ctx)) {}
    Polynomial(RingContextPtr ctx, const Monomial& m, C c = C::from_int(1)) : ctx_(std::move(ctx)) { add(m, c); }

    static Polynomial constant(RingContextPtr ctx, C c) { return Polynomial(std::move(ctx), Monomial{}, c); }
    static Polynomial generator(RingContextPtr ctx, FamilyId f, int i, int power = 1)
    {
        Monomial m = ctx->generator(f, i, power);
        return Polynomial(std::move(ctx), m);
    }

    const RingContextPtr& context() const { return ctx_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add(const Monomial& m, const C& c)
    {
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    C coefficient(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? C{} : it->second;
    }

    Polynomial& operator+=(const Polynomial& o)
    {
        adopt(o);
        for (const auto& [m, c] : o.terms_)
            add(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o)
    {
        adopt(o);
        for (const auto& [m, c] : o.terms_)
            add(m, -c);
        return *this;
    }
    Polynomial operator+(const Polynomial& o) const { Polynomial r = *this; r += o; return r; }
    Polynomial operator-(const Polynomial& o) const { Polynomial r = *this; r -= o; return r; }
    Polynomial operator-() const
    {
        Polynomial r(ctx_);
        for (const auto& [m, c] : terms_)
            r.terms_.emplace(m, -c);
        return r;
    }
    Polynomial operator*(const Polynomial& o) const { return poly_mul(*this, o); }
    Polynomial scaled(const C& c) const
    {
        Polynomial r(ctx_);
        for (const auto& [m, x] : terms_)
            r.add(m, x * c);
        return r;
    }

    Polynomial pow(int k) const
    {
        Polynomial r = constant(ctx_, C::from_int(1));
        Polynomial base = *this;
        while (k > 0) {
            if (k & 1)
                r = r * base;
            k >>= 1;
            if (k)
                base = base * base;
        }
        return r;
    }

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

    // Lowest total exponent among terms (INT_MAX for zero).
    int min_total_exponent() const
    {
        int r = INT_MAX;
        for (const auto& [m, c] : terms_)
            r = std::min(r, m.total_exponent());
        return r;
    }

    bool homogeneous() const
    {
        if (terms_.empty())
            return true;
        int d = terms_.begin()->first.deg;
        for (const auto& [m, c] : terms_)
            if (m.deg != d)
                return false;
        return true;
    }

    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty())
                out += " + ";
            std::string cs = c.str();
            if (m.is_one())
                out += cs;
            else if (cs == "1")
                out += ctx_->format(m);
            else
                out += "(" + cs + ")" + ctx_->format(m);
        }
        return out;
    }

    template <class D>
    friend Polynomial<D> poly_mul(const Polynomial<D>& a, const Polynomial<D>& b);

private:
    void adopt(const Polynomial& o)
    {
        if (!ctx_)
            ctx_ = o.ctx_;
        else if (o.ctx_ && ctx_ != o.ctx_ && !(*ctx_ == *o.ctx_))
            throw ContextError("polynomials from different ring contexts");
    }

    RingContextPtr ctx_;
    Terms terms_;
};

// Distributive product. Throws ContextError for mixed contexts.
template <class C>
Polynomial<C> poly_mul(const Polynomial<C>& a, const Polynomial<C>& b)
{
    if (a.ctx_ && b.ctx_ && a.ctx_ != b.ctx_ && !(*a.ctx_ == *b.ctx_))
        throw ContextError("poly_mul: mixed ring contexts");
    Polynomial<C> r(a.ctx_ ? a.ctx_ : b.ctx_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            r.add(ma * mb, ca * cb);
    return r;
}

using PolyF2 = Polynomial<F2>;
using PolyQ = Polynomial<Rational>;
using PolyZ2 = Polynomial<LocalRational>;

}  // namespace ank
