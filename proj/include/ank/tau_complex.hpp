#pragma once

#include "ank/linalg.hpp"

#include <map>
#include <memory>
#include <vector>

namespace ank {

// Cohomology of one level as a graded F_2[tau]-module, listed by cyclic summands.
struct TauModule
{
    int free_rank = 0;
    std::vector<int> free_weights;            // generator weight of each free summand
    std::vector<std::pair<int, int>> torsion;  // (generator weight, k) for F_2[tau]/tau^k
    int w_low = 0, w_high = -1;                // dims below w_low equal free_rank; above w_high zero
    std::map<int, int> dims;                   // F_2 dimension per weight on [w_low, w_high]
    bool snf_agrees = false;                   // free rank and torsion orders reproduced by snf_tau

    int dimension(int w) const;
};

// A cochain complex of free graded F_2[tau]-modules in one internal degree,
// with tau of weight -1. Level s has generators of given weights; an incidence
// e -> f in d carries the coefficient tau^(w(f) - w(e)), so it needs w(f) >= w(e).
// In weight w the complex is spanned by the generators of weight >= w, and
// multiplication by tau is the inclusion of weight w into weight w - 1.
class TauComplex
{
public:
    // Appends the next level; `d_out[i]` lists targets of generator i in the
    // level after it (filled by the following call or left empty at the top).
    void add_level(std::vector<int> weights);
    void set_differential(int s, std::vector<std::vector<int>> d_out);

    int levels() const { return static_cast<int>(weights_.size()); }
    const std::vector<int>& weights(int s) const { return weights_.at(static_cast<std::size_t>(s)); }
    const std::vector<std::vector<int>>& d_out(int s) const { return d_.at(static_cast<std::size_t>(s)); }

    struct Slice
    {
        int s = 0;
        int w = 0;
        RowReducer boundaries{0};
        RowReducer classes{0, true};
        std::vector<BitVec> reps;  // cocycles over all generators of level s
        int dimension() const { return static_cast<int>(reps.size()); }
    };
    // H^s in weight w with chosen cocycle representatives.
    const Slice& slice(int s, int w) const;
    int dimension(int s, int w) const { return slice(s, w).dimension(); }
    // Coordinates of a cocycle (supported on weights >= w) in the slice basis.
    BitVec express(int s, int w, BitVec cocycle) const;
    bool is_cocycle(int s, const BitVec& v) const;

    TauModule module(int s) const;
    // Incidence matrix of d_s over F_2[tau] (rows: level s, columns: level s+1).
    TauMatrix tau_matrix(int s) const;

private:
    std::vector<std::vector<int>> weights_;
    std::vector<std::vector<std::vector<int>>> d_;
    mutable std::map<std::pair<int, int>, std::unique_ptr<Slice>> slices_;
};

}  // namespace ank
