#pragma once

// Even integral lattices presented by Gram matrices, with the block structure
// of orthogonal direct sums kept around so that root enumeration can work
// block by block. Constructors cover the standard blocks U, A_n, D_n, E_n and
// rank-one <k>, plus rescaling and negation.

#include "chiral/numeric.hpp"
#include "chiral/snf.hpp"

#include <optional>
#include <string>
#include <vector>

namespace chiral {

enum class BlockKind { U, A, D, E, Diag };

struct Block {
    BlockKind kind;
    int n = 0;           // subscript for A_n / D_n / E_n; 2 for U; 1 for Diag
    Int entry = 0;       // <k>: the diagonal entry before scaling/negation
    Int scale = 1;       // L(scale)
    bool negated = false;
    Eigen::Index offset = 0;
    int rank = 0;
    std::string label;   // display label, e.g. "E8" or "E8'"
};

struct Lattice {
    MatI gram;
    std::vector<Block> blocks;
    std::string name;

    Eigen::Index rank() const { return gram.rows(); }
    bool is_even() const;
};

// Standard blocks. make_standard throws on out-of-range parameters
// (A_n: n>=1, D_n: n>=3, E_n: n in {6,7,8}). D_n lists the central
// (trivalent) node first. E_n uses the chain 1-3-4-5-6-7-8 with node 2
// attached to node 4.
Lattice make_U();
Lattice make_A(int n);
Lattice make_D(int n);
Lattice make_E(int n);
Lattice make_diag(const Int& k);  // <k>, k even and nonzero

Lattice scaled(const Lattice& L, const Int& s);   // L(s), s > 0
Lattice negated(const Lattice& L);                // -L
Lattice direct_sum(const Lattice& a, const Lattice& b);

Int inner(const Lattice& L, const VecI& x, const VecI& y);
Int norm(const Lattice& L, const VecI& x);
Rat inner(const Lattice& L, const VecQ& x, const VecQ& y);
Rat norm(const Lattice& L, const VecQ& x);

Signature signature(const Lattice& L);
Int det(const Lattice& L);

// Dual-basis ("coweight") vector of basis node i (0-based) of block b,
// expressed in ambient coordinates; rational in general.
VecQ weight_vector(const Lattice& L, std::size_t block, int i);

// Saturation (primitive closure) of the span of the given vectors.
struct Saturation {
    MatI basis;  // rows: a primitive basis of the saturation
    Int index;   // [saturation : span]
};
Saturation saturation(const Lattice& L, const std::vector<VecI>& span);

// Orthogonal complement of the span of S inside L: a primitive sublattice
// with its own induced Gram matrix. `basis` rows are ambient coordinates.
struct Sublattice {
    MatI basis;
    Lattice lattice;
};
Sublattice orthogonal_complement(const Lattice& L, const std::vector<VecI>& S);

// Sublattice spanned by the given (independent) vectors, with induced Gram.
Lattice span_lattice(const Lattice& L, const std::vector<VecI>& S);

}  // namespace chiral
