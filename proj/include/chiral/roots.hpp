#pragma once

// Root enumeration and the fundamental-chamber algorithm for hyperbolic even
// lattices of signature (n,1). Roots are vectors of square 2 (always), and of
// square 4 resp. 6 when all inner products with the lattice are divisible by
// 2 resp. 3. Candidates at distance level = 2(p.v)^2/v^2 from the base point
// are produced blockwise with exact short-vector enumeration.

#include "chiral/lattice.hpp"

#include <optional>

namespace chiral {

bool allowed_square(const std::vector<Int>& squares, const Int& s);

bool is_root(const Lattice& L, const VecI& v, const std::vector<Int>& squares);

Int level_of(const Lattice& L, const VecI& p, const VecI& v);

// Default base point: u1 - u2 in the first U/U(k) block, else the generator
// of the first rank-one block of square -2.
VecI default_base_point(const Lattice& L);

struct VinbergConfig {
    std::vector<Int> squares = {Int(2), Int(6)};
    std::optional<VecI> base_point;
    Int max_level = 200;
    int max_roots = 512;
    bool certify_volume = true;  // stop once the chamber is known to have
                                 // finite volume
};

struct Root {
    VecI v;
    Int square;
    Int level;
};

struct RootSequence {
    Lattice L;
    VecI p;
    std::vector<Int> squares;
    std::vector<Root> roots;
    bool complete = false;
    Int reached_level = 0;
};

// Simple system of the definite root system orthogonal to p (level 0):
// indecomposable positive roots, positivity by first nonzero coordinate.
std::vector<VecI> initial_simple_system(const Lattice& L, const VecI& p,
                                        const std::vector<Int>& squares);

// Newly accepted roots at the given level against an accepted set.
std::vector<Root> enumerate_level(const Lattice& L, const VecI& p, const Int& level,
                                  const std::vector<VecI>& accepted,
                                  const std::vector<Int>& squares);

RootSequence run_vinberg(const Lattice& L, const VinbergConfig& cfg = {});

// All vectors of the given (positive definite) lattice with the given norm.
std::vector<VecI> short_vectors(const MatI& gram, const Int& norm);

}  // namespace chiral
