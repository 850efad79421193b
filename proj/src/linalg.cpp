#include "ank/linalg.hpp"

#include <algorithm>
#include <bit>
#include <fmt/format.h>

namespace ank {

bool BitVec::any() const
{
    for (auto x : w_)
        if (x)
            return true;
    return false;
}

std::size_t BitVec::popcount() const
{
    std::size_t r = 0;
    for (auto x : w_)
        r += static_cast<std::size_t>(std::popcount(x));
    return r;
}

std::size_t BitVec::next_set(std::size_t from) const
{
    if (from >= n_)
        return n_;
    std::size_t wi = from >> 6;
    std::uint64_t cur = w_[wi] & (~std::uint64_t{0} << (from & 63));
    while (true) {
        if (cur)
            return std::min(n_, (wi << 6) + static_cast<std::size_t>(std::countr_zero(cur)));
        if (++wi >= w_.size())
            return n_;
        cur = w_[wi];
    }
}

std::string BitVec::str() const
{
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i))
            s[i] = '1';
    return s;
}

BitMatrix BitMatrix::identity(std::size_t n)
{
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i);
    return m;
}

void BitMatrix::push_row(BitVec v)
{
    if (v.size() != cols_)
        throw GradingError("row length does not match matrix width");
    rows_.push_back(std::move(v));
}

BitVec BitMatrix::apply(const BitVec& x) const
{
    BitVec r(rows());
    for (std::size_t i = 0; i < rows(); ++i) {
        const auto& a = rows_[i].words();
        const auto& b = x.words();
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < a.size(); ++k)
            acc ^= a[k] & b[k];
        r.set(i, std::popcount(acc) & 1);
    }
    return r;
}

BitVec BitMatrix::apply_left(const BitVec& x) const
{
    BitVec r(cols_);
    for (std::size_t i = x.next_set(0); i < rows(); i = x.next_set(i + 1))
        r ^= rows_[i];
    return r;
}

BitMatrix BitMatrix::transpose() const
{
    BitMatrix t(cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = rows_[i].next_set(0); j < cols_; j = rows_[i].next_set(j + 1))
            t.set(j, i);
    return t;
}

BitMatrix BitMatrix::operator*(const BitMatrix& o) const
{
    if (cols_ != o.rows())
        throw GradingError("matrix product dimension mismatch");
    BitMatrix r(rows(), o.cols());
    for (std::size_t i = 0; i < rows(); ++i)
        r.rows_[i] = o.apply_left(rows_[i]);
    return r;
}

bool BitMatrix::is_zero() const
{
    for (const auto& r : rows_)
        if (r.any())
            return false;
    return true;
}

RrefResult rref(const BitMatrix& m)
{
    std::size_t n = m.rows(), c = m.cols();
    BitMatrix a = m;
    BitMatrix t = BitMatrix::identity(n);
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < c && r < n; ++col) {
        std::size_t p = r;
        while (p < n && !a.get(p, col))
            ++p;
        if (p == n)
            continue;
        std::swap(a.row(p), a.row(r));
        std::swap(t.row(p), t.row(r));
        for (std::size_t i = 0; i < n; ++i)
            if (i != r && a.get(i, col)) {
                a.row(i) ^= a.row(r);
                t.row(i) ^= t.row(r);
            }
        pivots.push_back(col);
        ++r;
    }
    return RrefResult{std::move(pivots), std::move(a), std::move(t)};
}

std::size_t rank(const BitMatrix& m)
{
    RowReducer red(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        red.insert(m.row(i));
    return red.rank();
}

std::optional<BitVec> solve(const BitMatrix& m, const BitVec& v)
{
    if (v.size() != m.rows())
        throw GradingError("solve: right-hand side length mismatch");
    // Row reduce the augmented matrix [m | v].
    BitMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = m.row(i).next_set(0); j < m.cols(); j = m.row(i).next_set(j + 1))
            aug.set(i, j);
        aug.set(i, m.cols(), v.get(i));
    }
    RrefResult r = rref(aug);
    BitVec x(m.cols());
    for (std::size_t k = 0; k < r.pivots.size(); ++k) {
        if (r.pivots[k] == m.cols())
            return std::nullopt;
        x.set(r.pivots[k], r.reduced.get(k, m.cols()));
    }
    return x;
}

std::vector<BitVec> kernel(const BitMatrix& m)
{
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots)
        is_pivot[p] = true;
    std::vector<BitVec> out;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        BitVec x(m.cols());
        x.set(f);
        for (std::size_t k = 0; k < r.pivots.size(); ++k)
            if (r.reduced.get(k, f))
                x.set(r.pivots[k]);
        out.push_back(std::move(x));
    }
    return out;
}

bool RowReducer::insert(BitVec v, BitVec* relation)
{
    if (v.size() != cols_)
        throw GradingError("RowReducer: vector length mismatch");
    if (pivot_of_col_.empty())
        pivot_of_col_.assign(cols_, -1);
    BitVec tag = reduce(v);
    std::size_t idx = inserted_++;
    if (track_) {
        BitVec t(inserted_);
        for (std::size_t i = tag.next_set(0); i < tag.size(); i = tag.next_set(i + 1))
            t.set(i);
        t.flip(idx);
        tag = std::move(t);
    }
    std::size_t p = v.next_set(0);
    if (p == cols_) {
        if (relation)
            *relation = std::move(tag);
        return false;
    }
    pivot_of_col_[p] = static_cast<std::int32_t>(rows_.size());
    pivot_cols_.push_back(p);
    rows_.push_back(std::move(v));
    if (track_)
        tags_.push_back(std::move(tag));
    return true;
}

BitVec RowReducer::reduce(BitVec& v) const
{
    BitVec tag(track_ ? inserted_ : 0);
    if (rows_.empty())
        return tag;
    for (std::size_t b = v.next_set(0); b < cols_; b = v.next_set(b + 1)) {
        std::int32_t r = pivot_of_col_[b];
        if (r < 0)
            continue;
        v ^= rows_[r];
        if (track_) {
            const BitVec& t = tags_[r];
            for (std::size_t i = t.next_set(0); i < t.size(); i = t.next_set(i + 1))
                tag.flip(i);
        }
    }
    return tag;
}

bool RowReducer::in_span(const BitVec& v) const
{
    BitVec w = v;
    reduce(w);
    return !w.any();
}

// ---------------------------------------------------------------------------
// F_2[tau]

TauPoly TauPoly::tau_pow(int k)
{
    if (k < 0 || k > 63)
        throw TruncationError(fmt::format("tau^{} exceeds the packed degree bound", k));
    return TauPoly(std::uint64_t{1} << k);
}

int TauPoly::degree() const
{
    return bits_ == 0 ? -1 : 63 - std::countl_zero(bits_);
}

TauPoly TauPoly::operator*(TauPoly o) const
{
    if (is_zero() || o.is_zero())
        return TauPoly();
    if (degree() + o.degree() > 63)
        throw TruncationError("tau polynomial product exceeds degree 63");
    std::uint64_t r = 0;
    std::uint64_t a = bits_;
    for (int i = 0; a; ++i, a >>= 1)
        if (a & 1)
            r ^= o.bits_ << i;
    return TauPoly(r);
}

std::pair<TauPoly, TauPoly> TauPoly::divmod(TauPoly d) const
{
    if (d.is_zero())
        throw ContextError("division by zero in F_2[tau]");
    std::uint64_t q = 0, r = bits_;
    int dd = d.degree();
    while (r && TauPoly(r).degree() >= dd) {
        int shift = TauPoly(r).degree() - dd;
        q |= std::uint64_t{1} << shift;
        r ^= d.bits_ << shift;
    }
    return {TauPoly(q), TauPoly(r)};
}

bool TauPoly::divides(TauPoly o) const
{
    if (is_zero())
        return o.is_zero();
    return o.divmod(*this).second.is_zero();
}

std::string TauPoly::str() const
{
    if (is_zero())
        return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        if (!((bits_ >> i) & 1))
            continue;
        if (!s.empty())
            s += "+";
        s += i == 0 ? "1" : (i == 1 ? "T" : fmt::format("T^{}", i));
    }
    return s;
}

TauPoly gcd(TauPoly a, TauPoly b)
{
    while (!b.is_zero()) {
        TauPoly r = a.divmod(b).second;
        a = b;
        b = r;
    }
    return a;
}

TauMatrix tau_mul(const TauMatrix& a, const TauMatrix& b)
{
    std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    TauMatrix r(n, std::vector<TauPoly>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (!a[i][j].is_zero())
                for (std::size_t l = 0; l < m; ++l)
                    r[i][l] = r[i][l] + a[i][j] * b[j][l];
    return r;
}

namespace {

TauMatrix tau_identity(std::size_t n)
{
    TauMatrix m(n, std::vector<TauPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = TauPoly::one();
    return m;
}

}  // namespace

SnfResult snf_tau(const TauMatrix& input, bool record)
{
    TauMatrix a = input;
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    TauMatrix u = record ? tau_identity(rows) : TauMatrix{};
    TauMatrix v = record ? tau_identity(cols) : TauMatrix{};

    auto row_op = [&](std::size_t dst, std::size_t src, TauPoly f) {  // row dst += f * row src
        for (std::size_t j = 0; j < cols; ++j)
            a[dst][j] = a[dst][j] + f * a[src][j];
        if (record)
            for (std::size_t j = 0; j < rows; ++j)
                u[dst][j] = u[dst][j] + f * u[src][j];
    };
    auto col_op = [&](std::size_t dst, std::size_t src, TauPoly f) {  // col dst += f * col src
        for (std::size_t i = 0; i < rows; ++i)
            a[i][dst] = a[i][dst] + f * a[i][src];
        if (record)
            for (std::size_t i = 0; i < cols; ++i)
                v[i][dst] = v[i][dst] + f * v[i][src];
    };
    auto swap_rows = [&](std::size_t x, std::size_t y) {
        std::swap(a[x], a[y]);
        if (record)
            std::swap(u[x], u[y]);
    };
    auto swap_cols = [&](std::size_t x, std::size_t y) {
        for (auto& r : a)
            std::swap(r[x], r[y]);
        if (record)
            for (auto& r : v)
                std::swap(r[x], r[y]);
    };

    std::vector<TauPoly> diag;
    for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
        while (true) {
            // Pivot: nonzero entry of least degree in the trailing submatrix.
            int best = -1;
            std::size_t bi = 0, bj = 0;
            for (std::size_t i = k; i < rows; ++i)
                for (std::size_t j = k; j < cols; ++j)
                    if (!a[i][j].is_zero() && (best < 0 || a[i][j].degree() < best)) {
                        best = a[i][j].degree();
                        bi = i;
                        bj = j;
                    }
            if (best < 0)
                return SnfResult{std::move(diag), std::move(u), std::move(v)};
            swap_rows(k, bi);
            swap_cols(k, bj);
            TauPoly p = a[k][k];
            bool clean = true;
            for (std::size_t i = k + 1; i < rows; ++i)
                if (!a[i][k].is_zero()) {
                    row_op(i, k, a[i][k].divmod(p).first);
                    clean &= a[i][k].is_zero();
                }
            for (std::size_t j = k + 1; j < cols; ++j)
                if (!a[k][j].is_zero()) {
                    col_op(j, k, a[k][j].divmod(p).first);
                    clean &= a[k][j].is_zero();
                }
            if (!clean)
                continue;
            // Divisibility: fold in any row whose entries p fails to divide.
            bool divides_all = true;
            for (std::size_t i = k + 1; i < rows && divides_all; ++i)
                for (std::size_t j = k + 1; j < cols; ++j)
                    if (!p.divides(a[i][j])) {
                        row_op(k, i, TauPoly::one());
                        divides_all = false;
                        break;
                    }
            if (divides_all)
                break;
        }
        diag.push_back(a[k][k]);
    }
    return SnfResult{std::move(diag), std::move(u), std::move(v)};
}

}  // namespace ank
