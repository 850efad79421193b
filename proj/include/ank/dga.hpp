#pragma once

#include "ank/error.hpp"

#include <map>
#include <string>
#include <vector>

namespace ank {

// A commutative DGA over F_2 of the form F_2[L^{+-1}][x_1, ..., x_n]/(x_i^{b_i + 1})
// with a derivation d of fixed degree. Degrees are integer vectors; `filter`
// is a linear functional that vanishes on L and is positive on every x_i, so
// each total degree has finitely many monomials.
class LaurentDGA
{
public:
    using Degree = std::vector<int>;
    // Exponent vector: entry 0 is the power of L, entries 1..n the x_i.
    using Exponents = std::vector<int>;

    struct Generator
    {
        std::string name;
        Degree degree;
        int max_exponent = -1;  // -1: unbounded
    };

    LaurentDGA(Generator laurent, std::vector<Generator> gens, Degree filter, Degree d_degree);

    const std::vector<Generator>& generators() const { return gens_; }
    const Generator& laurent() const { return laurent_; }
    std::size_t arity() const { return gens_.size(); }

    // d(x_i) as a sum of monomials; every term must have degree |x_i| + |d|.
    void set_differential(std::size_t gen, std::vector<Exponents> value);
    const std::vector<Exponents>& differential_of(std::size_t gen) const { return d_[gen]; }

    Degree degree_of(const Exponents& e) const;
    std::vector<Exponents> monomials(const Degree& total) const;
    // Leibniz rule over F_2; terms exceeding a truncation vanish.
    std::vector<Exponents> apply(const Exponents& e) const;
    std::vector<Exponents> apply(const std::vector<Exponents>& x) const;

    int chain_dimension(const Degree& total) const { return static_cast<int>(monomials(total).size()); }
    int homology_dimension(const Degree& total) const;
    // Cycle representatives of a homology basis.
    std::vector<std::vector<Exponents>> homology_basis(const Degree& total) const;
    // Rank of the span of the given cycles modulo boundaries.
    int rank_in_homology(const std::vector<std::vector<Exponents>>& cycles, const Degree& total) const;
    // d(d(m)) = 0 for every monomial of the given degree.
    bool d_squared_zero(const Degree& total) const;

    std::string format(const Exponents& e) const;

private:
    Degree shift(const Degree& a, const Degree& b, int sign) const;
    std::size_t rank_out(const Degree& total) const;

    Generator laurent_;
    std::vector<Generator> gens_;
    Degree filter_;
    Degree d_degree_;
    std::vector<std::vector<Exponents>> d_;
    std::size_t laurent_axis_;  // a coordinate where L has nonzero degree
};

}  // namespace ank
