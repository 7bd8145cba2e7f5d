#include "chiral/chirality.hpp"

#include "chiral/discriminant.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace chiral {

bool is_isometry(const Lattice& L, const MatI& g) {
    if (g.rows() != L.rank() || g.cols() != L.rank()) return false;
    return MatI(g.transpose() * L.gram * g) == L.gram;
}

std::optional<MatI> realize_symmetry(const Lattice& L, const std::vector<VecI>& roots,
                                     const std::vector<int>& perm) {
    const Eigen::Index n = L.rank();
    if (roots.size() != perm.size()) throw chiral_error("domain", "permutation size mismatch");
    // greedily pick a Q-independent spanning subset of the roots
    std::vector<int> picked;
    MatQ span(n, n);
    for (std::size_t i = 0; i < roots.size() && Eigen::Index(picked.size()) < n; ++i) {
        span.col(Eigen::Index(picked.size())) = to_rat(roots[i]);
        MatQ probe = span.leftCols(Eigen::Index(picked.size()) + 1);
        if (rank_of(probe) == int(picked.size()) + 1) picked.push_back(int(i));
    }
    if (Eigen::Index(picked.size()) != n) return std::nullopt;  // walls do not span over Q
    MatQ A(n, n), B(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        A.col(c) = to_rat(roots[std::size_t(picked[std::size_t(c)])]);
        B.col(c) = to_rat(roots[std::size_t(perm[std::size_t(picked[std::size_t(c)])])]);
    }
    MatQ gq = B * inverse(A);
    if (!is_integral(gq)) return std::nullopt;
    MatI g = to_int(gq);
    if (!is_isometry(L, g)) return std::nullopt;
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (VecI(g * roots[i]) != roots[std::size_t(perm[i])]) return std::nullopt;
    return g;
}

bool sheet_preserving(const Lattice& L, const VecI& p, const MatI& g) {
    return inner(L, p, VecI(g * p)) < 0;
}

int delta3_disc(const Lattice& L, const MatI& g) {
    DiscriminantGroup D = discriminant_group(L);
    DiscriminantGroup P3 = primary_part(D, 3);
    if (P3.orders.size() != 1 || P3.orders[0] != 3)
        throw chiral_error("precondition", "3-torsion of the discriminant group is not Z/3");
    VecQ x = P3.lifts[0];
    VecQ gx = to_rat(g) * x;
    if (is_integral(VecQ(gx - x))) return 1;
    if (is_integral(VecQ(gx + x))) return -1;
    throw chiral_error("precondition", "isometry does not act by +-1 on the 3-torsion");
}

int delta3_root(const Lattice& L, const MatI& g, const VecI& six_root) {
    if (norm(L, six_root) != 6) throw chiral_error("domain", "wall of square 6 expected");
    VecI gv = g * six_root;
    auto div3 = [](const VecI& w) {
        for (Eigen::Index i = 0; i < w.size(); ++i)
            if (w(i) % 3 != 0) return false;
        return true;
    };
    if (div3(VecI(gv - six_root))) return 1;
    if (div3(VecI(gv + six_root))) return -1;
    throw chiral_error("precondition", "image of the square-6 wall is not +-v modulo 3L");
}

int delta3(const Lattice& L, const MatI& g, const std::vector<VecI>& six_roots) {
    int d = delta3_disc(L, g);
    for (const VecI& v : six_roots)
        if (delta3_root(L, g, v) != d)
            throw chiral_error("internal", "delta_3 disagreement between the two computations");
    return d;
}

MatI reflection(const Lattice& L, const VecI& v) {
    Int s = norm(L, v);
    if (s <= 0) throw chiral_error("domain", "reflection needs a positive square");
    const Eigen::Index n = L.rank();
    MatQ r = MatQ::Identity(n, n);
    VecQ gv = to_rat(VecI(L.gram * v));
    VecQ vq = to_rat(v);
    r -= (Rat(2) / Rat(s)) * (vq * gv.transpose());
    if (!is_integral(r)) throw chiral_error("domain", "reflection is not integral: not a root");
    return to_int(r);
}

std::optional<ChiralityWitness> find_reversing_subsystem_symmetry(const Lattice& L,
                                                                  const RootSequence& seq) {
    const Eigen::Index n = L.rank();
    const int k = int(seq.roots.size());
    std::vector<VecI> roots;
    for (const Root& r : seq.roots) roots.push_back(r.v);
    // basis of L drawn from the walls, in acceptance order
    std::vector<int> basis;
    MatQ span(n, n);
    for (int i = 0; i < k && Eigen::Index(basis.size()) < n; ++i) {
        span.col(Eigen::Index(basis.size())) = to_rat(roots[std::size_t(i)]);
        if (rank_of(MatQ(span.leftCols(Eigen::Index(basis.size()) + 1))) == int(basis.size()) + 1)
            basis.push_back(i);
    }
    if (Eigen::Index(basis.size()) != n) return std::nullopt;
    MatQ A(n, n);
    for (Eigen::Index c = 0; c < n; ++c) A.col(c) = to_rat(roots[std::size_t(basis[std::size_t(c)])]);
    MatQ Ainv = inverse(A);
    // pairwise inner products of all walls
    auto ip = std::vector<std::vector<Int>>(std::size_t(k), std::vector<Int>(std::size_t(k)));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) ip[std::size_t(i)][std::size_t(j)] = inner(L, roots[std::size_t(i)], roots[std::size_t(j)]);
    std::map<std::vector<Int>, int> index_of;
    for (int i = 0; i < k; ++i) {
        std::vector<Int> key(roots[std::size_t(i)].data(), roots[std::size_t(i)].data() + n);
        index_of[key] = i;
    }
    std::vector<VecI> sixes;
    for (const Root& r : seq.roots)
        if (r.square == 6) sixes.push_back(r.v);

    long long nodes = 0;
    std::vector<int> image(std::size_t(n), -1);
    std::optional<ChiralityWitness> found;

    auto try_leaf = [&]() -> bool {
        MatQ B(n, n);
        for (Eigen::Index c = 0; c < n; ++c) B.col(c) = to_rat(roots[std::size_t(image[std::size_t(c)])]);
        MatQ gq = B * Ainv;
        if (!is_integral(gq)) return false;
        MatI g = to_int(gq);
        if (g == MatI(MatI::Identity(n, n))) return false;
        if (!is_isometry(L, g)) return false;
        // largest wall subset the isometry permutes
        std::vector<int> to(std::size_t(k), -1);
        for (int i = 0; i < k; ++i) {
            VecI gv = g * roots[std::size_t(i)];
            std::vector<Int> key(gv.data(), gv.data() + n);
            auto it = index_of.find(key);
            if (it != index_of.end()) to[std::size_t(i)] = it->second;
        }
        std::vector<bool> in(std::size_t(k), true);
        for (bool changed = true; changed;) {
            changed = false;
            std::vector<bool> hit(std::size_t(k), false);
            for (int i = 0; i < k; ++i)
                if (in[std::size_t(i)]) {
                    int j = to[std::size_t(i)];
                    if (j < 0 || !in[std::size_t(j)]) {
                        in[std::size_t(i)] = false;
                        changed = true;
                    } else
                        hit[std::size_t(j)] = true;
                }
            for (int i = 0; i < k; ++i)
                if (in[std::size_t(i)] && !hit[std::size_t(i)]) {
                    in[std::size_t(i)] = false;
                    changed = true;
                }
        }
        std::vector<int> J;
        for (int i = 0; i < k; ++i)
            if (in[std::size_t(i)]) J.push_back(i);
        if (Eigen::Index(J.size()) < n) return false;
        std::vector<VecI> jroots;
        for (int i : J) jroots.push_back(roots[std::size_t(i)]);
        Saturation sat = saturation(L, jroots);
        if (sat.basis.rows() != n || sat.index != 1) return false;
        if (!sheet_preserving(L, seq.p, g)) return false;
        std::vector<VecI> jsixes;
        for (int i : J)
            if (seq.roots[std::size_t(i)].square == 6) jsixes.push_back(roots[std::size_t(i)]);
        if (delta3(L, g, jsixes) != -1) return false;
        std::vector<int> perm;  // positions within J
        std::map<int, int> pos;
        for (std::size_t a = 0; a < J.size(); ++a) pos[J[a]] = int(a);
        for (int i : J) perm.push_back(pos.at(to[std::size_t(i)]));
        found = ChiralityWitness{g, perm, J, -1};
        return true;
    };

    std::function<bool(int)> search = [&](int c) -> bool {
        if (c == int(n)) return try_leaf();
        const int bi = basis[std::size_t(c)];
        for (int cand = 0; cand < k; ++cand) {
            if (++nodes > 5'000'000) throw chiral_error("budget", "subsystem symmetry search budget exhausted");
            if (ip[std::size_t(cand)][std::size_t(cand)] != ip[std::size_t(bi)][std::size_t(bi)]) continue;
            bool ok = true;
            for (int c2 = 0; c2 < c && ok; ++c2)
                ok = ip[std::size_t(cand)][std::size_t(image[std::size_t(c2)])] ==
                     ip[std::size_t(bi)][std::size_t(basis[std::size_t(c2)])];
            if (!ok) continue;
            image[std::size_t(c)] = cand;
            if (search(c + 1)) return true;
        }
        image[std::size_t(c)] = -1;
        return false;
    };
    if (int(n) > k) return std::nullopt;
    search(0);
    return found;
}

namespace {

ChiralityResult decide(const Lattice& L, const RootSequence& seq, bool with_reflections) {
    ChiralityResult res;
    std::vector<VecI> roots;
    std::vector<VecI> sixes;
    std::vector<VecI> fours;
    for (const Root& r : seq.roots) {
        roots.push_back(r.v);
        if (r.square == 6) sixes.push_back(r.v);
        if (r.square == 4) fours.push_back(r.v);
    }
    CoxeterGraph g = build_graph(L, roots);
    // On an incomplete wall system a symmetry certifies achirality only when
    // the walls span the lattice over Z (then it extends to a unique
    // chamber-preserving automorphism); a complete system always does.
    bool sound = seq.complete;
    if (!sound && !roots.empty()) {
        Saturation sat = saturation(L, roots);
        sound = int(sat.basis.rows()) == int(L.rank()) && sat.index == 1;
    }
    auto syms = graph_symmetries(g);
    res.symmetries = int(syms.size());
    for (const auto& perm : syms) {
        auto gi = realize_symmetry(L, roots, perm);
        if (!gi) continue;
        ++res.realizable;
        if (!sheet_preserving(L, seq.p, *gi)) continue;
        int d = delta3(L, *gi, sixes);
        if (d == -1 && sound) {
            res.verdict = Verdict::Achiral;
            res.witness = ChiralityWitness{*gi, perm, {}, d};
            return res;
        }
    }
    // when the wall list is cut off, a reversing symmetry may also live on a
    // spanning subset of the walls
    if (!seq.complete && !with_reflections) {
        if (auto pw = find_reversing_subsystem_symmetry(L, seq)) {
            res.verdict = Verdict::Achiral;
            res.witness = std::move(pw);
            return res;
        }
    }
    if (with_reflections) {
        for (const VecI& v : fours) {
            MatI r = reflection(L, v);
            int d = delta3(L, r, sixes);
            if (d == -1) {
                res.verdict = Verdict::Achiral;
                res.witness = ChiralityWitness{r, {}, {}, d};
                return res;
            }
        }
    }
    res.verdict = seq.complete ? Verdict::Chiral : Verdict::Unknown;
    return res;
}

}  // namespace

ChiralityResult decide_chirality(const Lattice& L, const RootSequence& seq) {
    return decide(L, seq, false);
}

ChiralityResult decide_chirality_extended(const Lattice& L, const RootSequence& seq) {
    return decide(L, seq, true);
}

}  // namespace chiral
