#include "chiral/lattice.hpp"

#include <map>

namespace chiral {

bool Lattice::is_even() const {
    for (Eigen::Index i = 0; i < gram.rows(); ++i)
        if (gram(i, i) % 2 != 0) return false;
    return true;
}

namespace {

Lattice from_gram(MatI g, BlockKind kind, int n, Int entry, std::string name) {
    Lattice L;
    L.gram = std::move(g);
    Block b;
    b.kind = kind;
    b.n = n;
    b.entry = entry;
    b.offset = 0;
    b.rank = int(L.gram.rows());
    b.label = name;
    L.blocks = {b};
    L.name = std::move(name);
    return L;
}

}  // namespace

Lattice make_U() {
    MatI g(2, 2);
    g << 0, 1, 1, 0;
    return from_gram(g, BlockKind::U, 2, 0, "U");
}

Lattice make_A(int n) {
    if (n < 1) throw chiral_error("block_param", "A_n requires n >= 1");
    MatI g = MatI::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        g(i, i) = 2;
        if (i + 1 < n) { g(i, i + 1) = -1; g(i + 1, i) = -1; }
    }
    return from_gram(g, BlockKind::A, n, 0, "A" + std::to_string(n));
}

Lattice make_D(int n) {
    if (n < 3) throw chiral_error("block_param", "D_n requires n >= 3");
    // node 0 is the central (trivalent) one, adjacent to 1, 2, 3; the tail
    // continues 3-4-...-(n-1).
    MatI g = MatI::Zero(n, n);
    for (int i = 0; i < n; ++i) g(i, i) = 2;
    for (int j = 1; j <= std::min(3, n - 1); ++j) { g(0, j) = -1; g(j, 0) = -1; }
    for (int i = 3; i + 1 < n; ++i) { g(i, i + 1) = -1; g(i + 1, i) = -1; }
    return from_gram(g, BlockKind::D, n, 0, "D" + std::to_string(n));
}

Lattice make_E(int n) {
    if (n < 6 || n > 8) throw chiral_error("block_param", "E_n requires n in {6,7,8}");
    // chain 1-3-4-5-6-7-8 with node 2 attached to node 4 (0-based: chain
    // 0-2-3-4-5-6-7, node 1 attached to node 3), truncated to n nodes.
    MatI g = MatI::Zero(n, n);
    for (int i = 0; i < n; ++i) g(i, i) = 2;
    auto link = [&](int i, int j) {
        if (i < n && j < n) { g(i, j) = -1; g(j, i) = -1; }
    };
    link(0, 2);
    link(1, 3);
    for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
    return from_gram(g, BlockKind::E, n, 0, "E" + std::to_string(n));
}

Lattice make_diag(const Int& k) {
    if (k == 0 || k % 2 != 0)
        throw chiral_error("block_param", "<k> requires k even and nonzero, got <" + k.str() + ">");
    MatI g(1, 1);
    g(0, 0) = k;
    return from_gram(g, BlockKind::Diag, 1, k, "<" + k.str() + ">");
}

Lattice scaled(const Lattice& L, const Int& s) {
    if (s <= 0) throw chiral_error("block_param", "scale must be positive");
    Lattice r = L;
    r.gram *= s;
    for (auto& b : r.blocks) b.scale *= s;
    if (s != 1) r.name = L.name + "(" + s.str() + ")";
    return r;
}

Lattice negated(const Lattice& L) {
    Lattice r = L;
    r.gram = -r.gram;
    for (auto& b : r.blocks) b.negated = !b.negated;
    r.name = "-" + L.name;
    return r;
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
    Lattice r;
    const Eigen::Index n = a.rank() + b.rank();
    r.gram = MatI::Zero(n, n);
    r.gram.topLeftCorner(a.rank(), a.rank()) = a.gram;
    r.gram.bottomRightCorner(b.rank(), b.rank()) = b.gram;
    r.blocks = a.blocks;
    for (auto blk : b.blocks) {
        blk.offset += a.rank();
        r.blocks.push_back(blk);
    }
    // relabel duplicates with prime suffixes
    std::map<std::string, int> seen;
    for (auto& blk : r.blocks) {
        std::string base = blk.label;
        while (!base.empty() && base.back() == '\'') base.pop_back();
        int k = seen[base]++;
        blk.label = base + std::string(std::size_t(k), '\'');
    }
    r.name = a.name + "+" + b.name;
    return r;
}

Int inner(const Lattice& L, const VecI& x, const VecI& y) {
    if (x.size() != L.rank() || y.size() != L.rank())
        throw chiral_error("ambient_mismatch", "vector rank does not match lattice rank");
    Int acc = 0;
    for (Eigen::Index i = 0; i < L.rank(); ++i) {
        if (x(i) == 0) continue;
        Int row = 0;
        for (Eigen::Index j = 0; j < L.rank(); ++j)
            if (y(j) != 0) row += L.gram(i, j) * y(j);
        acc += x(i) * row;
    }
    return acc;
}

Int norm(const Lattice& L, const VecI& x) { return inner(L, x, x); }

Rat inner(const Lattice& L, const VecQ& x, const VecQ& y) {
    if (x.size() != L.rank() || y.size() != L.rank())
        throw chiral_error("ambient_mismatch", "vector rank does not match lattice rank");
    Rat acc = 0;
    for (Eigen::Index i = 0; i < L.rank(); ++i) {
        if (x(i) == 0) continue;
        Rat row = 0;
        for (Eigen::Index j = 0; j < L.rank(); ++j)
            if (y(j) != 0) row += Rat(L.gram(i, j)) * y(j);
        acc += x(i) * row;
    }
    return acc;
}

Rat norm(const Lattice& L, const VecQ& x) { return inner(L, x, x); }

Signature signature(const Lattice& L) { return signature_of(to_rat(L.gram)); }

Int det(const Lattice& L) { return det(L.gram); }

VecQ weight_vector(const Lattice& L, std::size_t block, int i) {
    if (block >= L.blocks.size()) throw chiral_error("block_param", "block index out of range");
    const Block& b = L.blocks[block];
    if (i < 0 || i >= b.rank) throw chiral_error("block_param", "node index out of range");
    MatQ gb = to_rat(MatI(L.gram.block(b.offset, b.offset, b.rank, b.rank)));
    MatQ gi = inverse(gb);
    VecQ w = VecQ::Zero(L.rank());
    for (int j = 0; j < b.rank; ++j) w(b.offset + j) = gi(j, i);
    return w;
}

Saturation saturation(const Lattice& L, const std::vector<VecI>& span) {
    if (span.empty()) throw chiral_error("empty_span", "saturation of empty span");
    MatI M(Eigen::Index(span.size()), L.rank());
    for (std::size_t i = 0; i < span.size(); ++i) {
        if (span[i].size() != L.rank())
            throw chiral_error("ambient_mismatch", "span vector rank mismatch");
        M.row(Eigen::Index(i)) = span[i].transpose();
    }
    SmithForm sf = smith_form(M);
    Saturation out;
    out.basis = MatI(sf.rank, L.rank());
    // row space of M over Q is spanned by the first r rows of V; those rows
    // extend to a basis of Z^n, hence form a primitive basis of the
    // saturation.
    for (int i = 0; i < sf.rank; ++i) out.basis.row(i) = sf.V.row(i);
    out.index = 1;
    for (int i = 0; i < sf.rank; ++i) out.index *= sf.S(i, i);
    return out;
}

Sublattice orthogonal_complement(const Lattice& L, const std::vector<VecI>& S) {
    if (S.empty()) throw chiral_error("empty_span", "complement of empty span");
    MatI A(Eigen::Index(S.size()), L.rank());
    for (std::size_t i = 0; i < S.size(); ++i) {
        if (S[i].size() != L.rank())
            throw chiral_error("ambient_mismatch", "span vector rank mismatch");
        A.row(Eigen::Index(i)) = (L.gram * S[i]).transpose();
    }
    SmithForm sf = smith_form(A);
    // kernel of A = V^{-1} applied to the last n-r unit vectors
    const Eigen::Index n = L.rank();
    const int r = sf.rank;
    Sublattice out;
    out.basis = MatI(n - r, n);
    for (Eigen::Index i = 0; i < n - r; ++i)
        out.basis.row(i) = sf.Vinv.col(r + i).transpose();
    out.lattice.gram = out.basis * L.gram * out.basis.transpose();
    out.lattice.name = L.name + "^perp";
    return out;
}

Lattice span_lattice(const Lattice& L, const std::vector<VecI>& S) {
    MatI M(Eigen::Index(S.size()), L.rank());
    for (std::size_t i = 0; i < S.size(); ++i) M.row(Eigen::Index(i)) = S[i].transpose();
    Lattice out;
    out.gram = M * L.gram * M.transpose();
    out.name = L.name + "|span";
    return out;
}

}  // namespace chiral
