#pragma once

#include "ank/error.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ank {

// Dense bit vector packed into 64-bit words; padding bits stay zero.
class BitVec
{
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i, bool b = true)
    {
        if (b)
            w_[i >> 6] |= (std::uint64_t{1} << (i & 63));
        else
            w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    void flip(std::size_t i) { w_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }
    BitVec& operator^=(const BitVec& o)
    {
        for (std::size_t i = 0; i < w_.size(); ++i)
            w_[i] ^= o.w_[i];
        return *this;
    }
    bool any() const;
    std::size_t popcount() const;
    // Lowest set bit at or after `from`; size() if none.
    std::size_t next_set(std::size_t from = 0) const;
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    const std::vector<std::uint64_t>& words() const { return w_; }
    std::vector<std::uint64_t>& words() { return w_; }
    std::string str() const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

class BitMatrix
{
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVec(cols)) {}
    static BitMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool b = true) { rows_[r].set(c, b); }
    const BitVec& row(std::size_t r) const { return rows_[r]; }
    BitVec& row(std::size_t r) { return rows_[r]; }
    void push_row(BitVec v);
    // this * x for a column vector x of length cols().
    BitVec apply(const BitVec& x) const;
    // x^T * this for a row vector x of length rows().
    BitVec apply_left(const BitVec& x) const;
    BitMatrix transpose() const;
    BitMatrix operator*(const BitMatrix& o) const;
    bool is_zero() const;
    bool operator==(const BitMatrix& o) const { return cols_ == o.cols_ && rows_ == o.rows_; }

private:
    std::size_t cols_ = 0;
    std::vector<BitVec> rows_;
};

struct RrefResult
{
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row, increasing
    BitMatrix reduced;                // rows in reduced row echelon form (zero rows last)
    BitMatrix transform;              // T with T * input = reduced
};

RrefResult rref(const BitMatrix& m);
std::size_t rank(const BitMatrix& m);
// Some x with m * x = v, free variables zero; nullopt if inconsistent.
std::optional<BitVec> solve(const BitMatrix& m, const BitVec& v);
// Basis of {x : m * x = 0}, one vector per free column in increasing order.
std::vector<BitVec> kernel(const BitMatrix& m);

// Incremental row space with pivots at lowest set bits. Optionally tracks, for
// every stored row, which inserted rows it combines (tags), so that reductions
// report coordinates and dependent insertions report kernel relations.
class RowReducer
{
public:
    explicit RowReducer(std::size_t cols, bool track = false) : cols_(cols), track_(track) {}

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rows_.size(); }
    std::size_t inserted() const { return inserted_; }
    // Inserts v; returns true when v was independent. When dependent and
    // tracking, `relation` receives the inserted-row combination that vanishes.
    bool insert(BitVec v, BitVec* relation = nullptr);
    // Reduces v in place; when tracking, returns the combination of inserted
    // rows subtracted (sized by inserted()).
    BitVec reduce(BitVec& v) const;
    bool in_span(const BitVec& v) const;
    const std::vector<BitVec>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivot_cols_; }

private:
    std::size_t cols_;
    bool track_;
    std::size_t inserted_ = 0;
    std::vector<BitVec> rows_;
    std::vector<BitVec> tags_;
    std::vector<std::size_t> pivot_cols_;
    std::vector<std::int32_t> pivot_of_col_;  // column -> row index or -1
};

// Univariate polynomial over F_2 in tau, bit i = coefficient of tau^i.
class TauPoly
{
public:
    TauPoly() = default;
    explicit TauPoly(std::uint64_t bits) : bits_(bits) {}
    static TauPoly tau_pow(int k);
    static TauPoly one() { return TauPoly(1); }

    std::uint64_t bits() const { return bits_; }
    bool is_zero() const { return bits_ == 0; }
    int degree() const;  // -1 for zero
    TauPoly operator+(TauPoly o) const { return TauPoly(bits_ ^ o.bits_); }
    TauPoly operator*(TauPoly o) const;
    // Euclidean division; throws on zero divisor.
    std::pair<TauPoly, TauPoly> divmod(TauPoly d) const;
    bool divides(TauPoly o) const;
    bool operator==(const TauPoly&) const = default;
    std::string str() const;

private:
    std::uint64_t bits_ = 0;
};

TauPoly gcd(TauPoly a, TauPoly b);

using TauMatrix = std::vector<std::vector<TauPoly>>;

struct SnfResult
{
    std::vector<TauPoly> diagonal;  // nonzero invariant factors, each dividing the next
    TauMatrix left, right;          // U, V with U * m * V = diag (only when recorded)
};

SnfResult snf_tau(const TauMatrix& m, bool record = true);
TauMatrix tau_mul(const TauMatrix& a, const TauMatrix& b);

}  // namespace ank
