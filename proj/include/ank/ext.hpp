#pragma once

#include "ank/cobar.hpp"

#include <map>
#include <memory>
#include <optional>
#include <tuple>

namespace ank {

// Cohomology at one tridegree of Omega(P; M^t): representatives, and the
// reductions needed to express cocycles in the chosen basis.
struct ExtBlock
{
    MultiDegree degree;
    int dimension = 0;
    std::vector<Cochain<F2>> representatives;
    std::vector<BitVec> rep_vectors;  // over the cochain block basis
    std::size_t cocycle_dim = 0;
    std::size_t boundary_dim = 0;
    RowReducer boundaries{0};     // row space of the incoming differential
    RowReducer classes{0, true};  // representatives reduced modulo boundaries
};

// A cohomology class: its home tridegree and coordinates in that block's basis.
struct ExtClass
{
    MultiDegree degree;
    BitVec coords;
    std::string label;

    bool is_zero() const { return !coords.any(); }
    bool operator==(const ExtClass& o) const { return degree == o.degree && coords == o.coords; }
};

// A Massey product coset: one representative class plus the indeterminacy
// subspace (as coordinate vectors in the same block).
struct MasseyCoset
{
    ExtClass representative;
    Cochain<F2> cochain;
    std::vector<BitVec> indeterminacy;  // independent spanning set
    bool contains(const ExtClass& x) const;
};

struct Region
{
    int max_s = 8;
    int max_t = 8;
    int max_u = 24;
    std::optional<int> max_stem;
    std::optional<int> max_s_plus_t;

    bool contains(int s, int t, int u) const
    {
        if (s < 0 || t < 0 || u < 0 || s > max_s || t > max_t || u > max_u)
            return false;
        if (max_stem && u - s > *max_stem)
            return false;
        if (max_s_plus_t && s + t > *max_s_plus_t)
            return false;
        return true;
    }
};

// Lazily computed H^{s,u}(P; M^t) with block and class caches. Blocks are
// immutable once built; the engine itself is single-threaded.
class ExtEngine
{
public:
    explicit ExtEngine(std::shared_ptr<const PQAlgebroid> pq, std::size_t budget = kDefaultBlockBudget);

    const PQAlgebroid& algebroid() const { return *pq_; }
    std::shared_ptr<const PQAlgebroid> algebroid_ptr() const { return pq_; }
    int max_u() const { return pq_->prefix_ctx()->max_u(); }

    // Cochain block with its outgoing differential attached.
    const ComplexBlock& block(int s, int t, int u);
    const ExtBlock& ext(int s, int t, int u);
    int dimension(int s, int t, int u) { return ext(s, t, u).dimension; }

    // All blocks of a region keyed by (s, t, u).
    std::map<std::tuple<int, int, int>, const ExtBlock*> cohomology(const Region& r);

    Cochain<F2> zero() const { return Cochain<F2>(pq_->prefix_ctx(), pq_->word_ctx()); }
    Cochain<F2> representative(const ExtClass& x);
    bool is_cocycle(const Cochain<F2>& z);
    // Class of a cocycle; throws CertificationError when z is not a cocycle.
    ExtClass express(const Cochain<F2>& z, MultiDegree deg);
    ExtClass express(const Cochain<F2>& z);
    ExtClass basis_class(int s, int t, int u, int i);
    ExtClass zero_class(int s, int t, int u);

    ExtClass product(const ExtClass& a, const ExtClass& b);
    std::optional<Cochain<F2>> solve_coboundary(const Cochain<F2>& z);
    MasseyCoset massey(const ExtClass& a, const ExtClass& b, const ExtClass& c);

    // Region guard for products and Massey products.
    void set_region(Region r) { region_ = r; }
    const std::optional<Region>& region() const { return region_; }

    MultiDegree degree_of(const Cochain<F2>& z) const;

private:
    ComplexBlock& block_mut(int s, int t, int u);
    void check_region(int s, int t, int u) const;

    std::shared_ptr<const PQAlgebroid> pq_;
    std::size_t budget_;
    std::optional<Region> region_;
    std::map<std::tuple<int, int, int>, std::unique_ptr<ComplexBlock>> blocks_;
    std::map<std::tuple<int, int, int>, std::unique_ptr<ComplexBlock>> bare_;  // basis only
    std::map<std::tuple<int, int, int>, std::unique_ptr<ExtBlock>> ext_;
    std::map<std::tuple<int, int, int>, std::unique_ptr<RowReducer>> solvers_;
};

// Named generators: q_0^t[] and h_n = [zeta_1^{2^n}].
Cochain<F2> q0_power(const PQAlgebroid& pq, int t);
Cochain<F2> h_cochain(const PQAlgebroid& pq, int n);
// Cochain from a list of (prefix monomial, word) terms.
Cochain<F2> make_cochain(const PQAlgebroid& pq, const std::vector<std::pair<Monomial, Word>>& terms);

}  // namespace ank
