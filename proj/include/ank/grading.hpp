#pragma once

#include "ank/error.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ank {

// (cohomological s, Novikov t, internal u, motivic weight w). The stem is derived.
struct MultiDegree
{
    int s = 0;
    int t = 0;
    int u = 0;
    std::optional<int> w;

    int stem() const { return u - s; }
    MultiDegree operator+(const MultiDegree& o) const
    {
        MultiDegree r{s + o.s, t + o.t, u + o.u, std::nullopt};
        if (w && o.w)
            r.w = *w + *o.w;
        return r;
    }
    bool operator==(const MultiDegree&) const = default;
    auto operator<=>(const MultiDegree&) const = default;
};

std::string to_string(const MultiDegree& d);

// MotTau is the single motivic scalar tau of M_2 = F_2[tau] (degree 0, weight -1).
enum class FamilyId : std::uint8_t { Zeta, Q, V, M, T, Xi, Tau, MotTau };

// A family of polynomial generators x_i with a degree rule and, for the motivic
// families, a weight rule.
struct GeneratorFamily
{
    FamilyId id;

    int first_index() const { return (id == FamilyId::Q || id == FamilyId::Tau || id == FamilyId::MotTau) ? 0 : 1; }
    int degree(int i) const;
    int weight(int i) const;
    const char* symbol() const;
    // Largest index whose generator degree is <= max_u (first_index()-1 if none).
    int truncation_index(int max_u) const;
};

inline constexpr std::size_t kMaxSlots = 16;

// Exponent vector over the variable slots of a RingContext. The internal degree
// is cached so that the canonical order needs no context.
struct Monomial
{
    std::array<std::uint8_t, kMaxSlots> e{};
    std::uint16_t deg = 0;

    bool is_one() const { return deg == 0 && e == std::array<std::uint8_t, kMaxSlots>{}; }
    int total_exponent() const;
    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    bool operator==(const Monomial& o) const { return e == o.e; }

    // Graded lexicographic: degree first, then exponent vectors with lower slot
    // indices dominating (zeta_1^3 before zeta_2).
    std::strong_ordering operator<=>(const Monomial& o) const
    {
        if (deg != o.deg)
            return deg <=> o.deg;
        for (std::size_t i = 0; i < kMaxSlots; ++i)
            if (e[i] != o.e[i])
                return o.e[i] <=> e[i];
        return std::strong_ordering::equal;
    }
};

struct MonomialHash
{
    std::size_t operator()(const Monomial& m) const noexcept;
};

struct Variable
{
    GeneratorFamily family;
    int index;
    int degree;
};

// An ordered set of generator families truncated at max_u. Owns the slot layout.
class RingContext
{
public:
    RingContext(std::vector<FamilyId> families, int max_u);

    int max_u() const { return max_u_; }
    const std::vector<FamilyId>& families() const { return families_; }
    const std::vector<Variable>& variables() const { return vars_; }
    int truncation_index(FamilyId f) const;

    // Slot of generator x_i of family f; throws TruncationError if i > K.
    int slot(FamilyId f, int i) const;
    Monomial generator(FamilyId f, int i, int power = 1) const;
    Monomial make(std::initializer_list<std::pair<int, int>> slot_powers) const;
    int degree(const Monomial& m) const;
    // Sum of exponents over one family (Novikov degree for Q).
    int family_exponent(const Monomial& m, FamilyId f) const;
    int weight(const Monomial& m) const;
    std::string format(const Monomial& m) const;

    bool operator==(const RingContext& o) const { return families_ == o.families_ && max_u_ == o.max_u_; }

private:
    std::vector<FamilyId> families_;
    int max_u_;
    std::vector<Variable> vars_;
    std::vector<std::pair<int, int>> family_slots_;  // [first slot, count] per family
    int family_pos(FamilyId f) const;
};

using RingContextPtr = std::shared_ptr<const RingContext>;
RingContextPtr make_context(std::vector<FamilyId> families, int max_u);

// All monomials of internal degree u, canonically sorted. When the context has
// a degree-zero generator (q_0) a Novikov degree t (total Q exponent) is required.
std::vector<Monomial> enumerate_basis(const RingContext& ctx, int u, std::optional<int> t = std::nullopt);

}  // namespace ank
