#pragma once

// Deciding whether the positive cone of an even hyperbolic lattice admits a
// sheet-preserving automorphism of the fundamental chamber acting by -1 on
// the 3-torsion of the discriminant group (the invariant called delta_3).
// If such an automorphism exists the pair is achiral; if the wall system is
// complete and none exists, it is chiral.

#include "chiral/coxeter.hpp"
#include "chiral/roots.hpp"

#include <optional>

namespace chiral {

bool is_isometry(const Lattice& L, const MatI& g);

// The unique linear extension of root_i -> root_{perm[i]}, if it is integral
// and an isometry fixing the whole wall system; the roots must span the
// lattice over Q.
std::optional<MatI> realize_symmetry(const Lattice& L, const std::vector<VecI>& roots,
                                     const std::vector<int>& perm);

// g keeps the two sheets of the hyperboloid apart iff p and g p lie on the
// same sheet: inner(p, g p) < 0.
bool sheet_preserving(const Lattice& L, const VecI& p, const MatI& g);

// Action of g on the 3-torsion of the discriminant group, which must be
// Z/3: +1 or -1.
int delta3_disc(const Lattice& L, const MatI& g);

// The same invariant read off a wall of square 6: g v = +-v modulo 3L.
int delta3_root(const Lattice& L, const MatI& g, const VecI& six_root);

// Discriminant route, cross-checked against every square-6 wall supplied.
int delta3(const Lattice& L, const MatI& g, const std::vector<VecI>& six_roots = {});

// Reflection in a wall: x -> x - 2 (x.v / v.v) v; integral for any root.
MatI reflection(const Lattice& L, const VecI& v);

struct ChiralityWitness {
    MatI g;
    std::vector<int> perm;    // empty for a wall reflection witness
    std::vector<int> subset;  // wall indices g permutes; empty = all of them
    int delta3 = 1;
};

// A 3-torsion-reversing sheet-preserving isometry permuting some subset of
// the walls that still spans the lattice over Z. Found by backtracking over
// images of a basis drawn from the walls; such an isometry extends to a
// chamber-preserving automorphism even when the wall list is incomplete.
std::optional<ChiralityWitness> find_reversing_subsystem_symmetry(const Lattice& L,
                                                                  const RootSequence& seq);

enum class Verdict { Chiral, Achiral, Unknown };

struct ChiralityResult {
    Verdict verdict = Verdict::Unknown;
    std::optional<ChiralityWitness> witness;
    int symmetries = 0;   // graph symmetries of the wall system
    int realizable = 0;   // of which extend to isometries
};

// Squares {2,6}: achiral iff some realizable sheet-preserving symmetry of
// the wall system has delta_3 = -1; chiral when the system is complete and
// none does; unknown otherwise.
ChiralityResult decide_chirality(const Lattice& L, const RootSequence& seq);

// Squares {2,4,6}: reflections in the square-4 walls join the group, so
// their delta_3 counts as well.
ChiralityResult decide_chirality_extended(const Lattice& L, const RootSequence& seq);

}  // namespace chiral
