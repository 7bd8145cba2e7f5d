#pragma once

// Discriminant group L*/L of a nondegenerate even lattice, with the
// quadratic form q valued in Q mod 2Z and bilinear form b valued in Q mod Z,
// plus the invariants used to identify classes: 2-rank, parity, and the
// (rho, d, parity) triple.

#include "chiral/lattice.hpp"

#include <nlohmann/json_fwd.hpp>

namespace chiral {

struct DiscriminantGroup {
    std::vector<Int> orders;   // invariant factors > 1, divisibility chain
    std::vector<VecQ> lifts;   // generator lifts, coordinates in the L basis
    MatI gram;                 // ambient Gram (for evaluating q and b)

    Int order() const {
        Int o = 1;
        for (const auto& s : orders) o *= s;
        return o;
    }
    std::size_t ngen() const { return orders.size(); }
};

DiscriminantGroup discriminant_group(const Lattice& L);

// Lift of the element with the given exponents on the generators.
VecQ disc_lift(const DiscriminantGroup& D, const std::vector<Int>& exps);

// q(x) in [0,2), b(x,y) in [0,1).
Rat disc_q(const DiscriminantGroup& D, const std::vector<Int>& exps);
Rat disc_b(const DiscriminantGroup& D, const std::vector<Int>& x, const std::vector<Int>& y);

// Reduce a rational mod 2 (into [0,2)) or mod 1 (into [0,1)).
Rat mod2(const Rat& q);
Rat mod1(const Rat& q);

// p-primary part, as its own group presentation.
DiscriminantGroup primary_part(const DiscriminantGroup& D, const Int& p);

enum class Parity { Even, Odd };

struct TwoRankParity {
    int d = 0;
    Parity parity = Parity::Even;  // convention: even when d == 0
};

// Requires the 2-part to be 2-elementary; throws otherwise.
TwoRankParity two_rank_and_parity(const DiscriminantGroup& D);

struct ClassInvariants {
    int rho = 0;
    int d = 0;
    Parity parity = Parity::Even;
};

// Preconditions: L even, signature (rho-1, 1), discriminant = 2-group plus
// Z/3 carrying the <6> form (q = 2/3 mod 2 on a generator).
ClassInvariants class_invariants(const Lattice& L);

nlohmann::json disc_to_json(const DiscriminantGroup& D);

const char* to_string(Parity p);

}  // namespace chiral
