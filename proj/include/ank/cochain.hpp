#pragma once

#include "ank/grading.hpp"
#include "ank/rational.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <string>
#include <vector>

namespace ank {

// A tensor word [g_1|...|g_s] of word-ring monomials. Inside structure maps a
// slot may be the unit; in a normalized cochain every slot has positive degree.
using Word = std::vector<Monomial>;

struct TermKey
{
    Monomial prefix;
    Word word;

    bool operator==(const TermKey&) const = default;
    std::strong_ordering operator<=>(const TermKey& o) const
    {
        if (auto c = prefix <=> o.prefix; c != 0)
            return c;
        if (word.size() != o.word.size())
            return word.size() <=> o.word.size();
        for (std::size_t i = 0; i < word.size(); ++i)
            if (auto c = word[i] <=> o.word[i]; c != 0)
                return c;
        return std::strong_ordering::equal;
    }
};

struct TermKeyHash
{
    std::size_t operator()(const TermKey& k) const noexcept
    {
        MonomialHash h;
        std::size_t r = h(k.prefix);
        for (const auto& m : k.word)
            r = r * 0x100000001B3ULL ^ h(m);
        return r;
    }
};

// Linear combination of coefficient-prefixed words, coefficient-left canonical
// form. The prefix lives in `prefix_ctx`, words in `word_ctx`.
template <class C>
class Cochain
{
public:
    using Coef = C;
    using Terms = std::map<TermKey, C>;

    Cochain() = default;
    Cochain(RingContextPtr prefix_ctx, RingContextPtr word_ctx)
        : prefix_ctx_(std::move(prefix_ctx)), word_ctx_(std::move(word_ctx))
    {
    }

    const RingContextPtr& prefix_ctx() const { return prefix_ctx_; }
    const RingContextPtr& word_ctx() const { return word_ctx_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add(const TermKey& k, const C& c)
    {
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }
    void add(const Monomial& prefix, const Word& w, const C& c) { add(TermKey{prefix, w}, c); }

    C coefficient(const TermKey& k) const
    {
        auto it = terms_.find(k);
        return it == terms_.end() ? C{} : it->second;
    }

    Cochain& operator+=(const Cochain& o)
    {
        adopt(o);
        for (const auto& [k, c] : o.terms_)
            add(k, c);
        return *this;
    }
    Cochain& operator-=(const Cochain& o)
    {
        adopt(o);
        for (const auto& [k, c] : o.terms_)
            add(k, -c);
        return *this;
    }
    Cochain operator+(const Cochain& o) const { Cochain r = *this; r += o; return r; }
    Cochain operator-(const Cochain& o) const { Cochain r = *this; r -= o; return r; }
    Cochain scaled(const C& c) const
    {
        Cochain r(prefix_ctx_, word_ctx_);
        for (const auto& [k, x] : terms_)
            r.add(k, x * c);
        return r;
    }

    bool operator==(const Cochain& o) const { return terms_ == o.terms_; }

    // Cohomological degree s; -1 for zero, throws if terms disagree.
    int length() const
    {
        if (terms_.empty())
            return -1;
        std::size_t s = terms_.begin()->first.word.size();
        for (const auto& [k, c] : terms_)
            if (k.word.size() != s)
                throw GradingError("cochain mixes cohomological degrees");
        return static_cast<int>(s);
    }

    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        for (const auto& [k, c] : terms_) {
            if (!out.empty())
                out += " + ";
            std::string cs = c.str();
            bool unit_prefix = k.prefix.is_one();
            if (cs != "1")
                out += (cs.find_first_of("+-/") != std::string::npos && cs.size() > 1 && cs[0] != '-') ? "(" + cs + ")" : cs;
            if (!unit_prefix)
                out += prefix_ctx_->format(k.prefix);
            out += "[";
            for (std::size_t i = 0; i < k.word.size(); ++i) {
                if (i)
                    out += "|";
                out += word_ctx_->format(k.word[i]);
            }
            out += "]";
        }
        return out;
    }

private:
    void adopt(const Cochain& o)
    {
        if (!prefix_ctx_) {
            prefix_ctx_ = o.prefix_ctx_;
            word_ctx_ = o.word_ctx_;
        }
    }

    RingContextPtr prefix_ctx_;
    RingContextPtr word_ctx_;
    Terms terms_;
};

}  // namespace ank
