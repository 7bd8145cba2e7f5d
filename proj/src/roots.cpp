#include "chiral/roots.hpp"

#include "chiral/coxeter.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace chiral {

namespace {

struct LexLess {
    bool operator()(const VecI& a, const VecI& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (Eigen::Index i = 0; i < a.size(); ++i) {
            if (a(i) != b(i)) return a(i) < b(i);
        }
        return false;
    }
};

// Unit-upper LDL^T factorization of a positive definite rational matrix:
// q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2.
struct Ldl {
    MatQ u;
    std::vector<Rat> d;
};

Ldl ldl_of(const MatQ& g) {
    const Eigen::Index n = g.rows();
    Ldl f;
    f.u = MatQ::Zero(n, n);
    f.d.assign(std::size_t(n), Rat(0));
    for (Eigen::Index i = 0; i < n; ++i) {
        Rat di = g(i, i);
        for (Eigen::Index k = 0; k < i; ++k) di -= f.d[std::size_t(k)] * f.u(k, i) * f.u(k, i);
        if (di <= 0) throw chiral_error("not_definite", "matrix is not positive definite");
        f.d[std::size_t(i)] = di;
        f.u(i, i) = 1;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            Rat v = g(i, j);
            for (Eigen::Index k = 0; k < i; ++k) v -= f.d[std::size_t(k)] * f.u(k, i) * f.u(k, j);
            f.u(i, j) = v / di;
        }
    }
    return f;
}

// Upper bound for sqrt(t), t >= 0 rational.
Rat sqrt_upper(const Rat& t) {
    if (t <= 0) return Rat(0);
    Int n = num(t), d = den(t);
    return Rat(isqrt_floor(n * d) + 1, d);
}

// Enumerate integer vectors x with x^T form x == target; optionally restrict
// to x >= 0 componentwise. Exact arithmetic throughout.
void fp_enumerate(const MatQ& form, const Rat& target, bool nonneg,
                  const std::function<void(const VecI&)>& emit) {
    if (target < 0) return;
    const Eigen::Index n = form.rows();
    if (n == 0) {
        return;
    }
    Ldl f = ldl_of(form);
    VecI x = VecI::Zero(n);
    // recursion from the last coordinate down
    std::function<void(Eigen::Index, const Rat&)> rec = [&](Eigen::Index i, const Rat& rem) {
        if (i < 0) {
            if (rem == 0) emit(x);
            return;
        }
        Rat c = 0;  // offset sum_{j>i} u_ij x_j
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (x(j) != 0) c += f.u(i, j) * Rat(x(j));
        const Rat& di = f.d[std::size_t(i)];
        Rat t = rem / di;  // (x_i + c)^2 <= t
        Rat r = sqrt_upper(t);
        // integer range [ceil(-c-r), floor(-c+r)]
        Rat lo_q = -c - r, hi_q = -c + r;
        Int lo = num(lo_q) / den(lo_q);
        while (Rat(lo) < lo_q) ++lo;
        while (Rat(lo - 1) >= lo_q) --lo;
        Int hi = num(hi_q) / den(hi_q);
        while (Rat(hi) > hi_q) --hi;
        while (Rat(hi + 1) <= hi_q) ++hi;
        if (nonneg && lo < 0) lo = 0;
        for (Int v = lo; v <= hi; ++v) {
            Rat y = Rat(v) + c;
            Rat used = di * y * y;
            if (used > rem) continue;
            x(i) = v;
            rec(i - 1, rem - used);
        }
        x(i) = 0;
    };
    rec(n - 1, target);
}

struct BlockCtx {
    const Block* b = nullptr;
    MatI G;                   // block Gram
    std::vector<VecI> cone;   // accepted level-0 roots supported in this block
    bool cone_basis = false;  // cone forms a basis of the block over Q
    MatQ cone_form;           // (W G W^T)^{-1}
    MatQ cone_to_x;           // x = cone_to_x * c  with c = -W G x
    std::map<std::tuple<Int, int, bool>, std::vector<VecI>> cache;
    bool cones_active = false;
};

struct Enumerator {
    const Lattice& L;
    VecI p;
    std::vector<Int> squares;
    int pblock = -1;
    std::vector<int> defblocks;  // indices of blocks other than pblock
    std::vector<BlockCtx> ctx;   // parallel to defblocks

    Enumerator(const Lattice& L_, const VecI& p_, std::vector<Int> sq)
        : L(L_), p(p_), squares(std::move(sq)) {
        if (p.size() != L.rank()) throw chiral_error("ambient_mismatch", "base point rank mismatch");
        if (norm(L, p) >= 0) throw chiral_error("base_point", "base point must have negative square");
        // locate the block supporting p
        for (std::size_t bi = 0; bi < L.blocks.size(); ++bi) {
            const Block& b = L.blocks[bi];
            bool inside = false, outside = false;
            for (Eigen::Index i = 0; i < L.rank(); ++i) {
                if (p(i) == 0) continue;
                if (i >= b.offset && i < b.offset + b.rank) inside = true;
                else outside = true;
            }
            if (inside && !outside) { pblock = int(bi); break; }
            if (inside && outside)
                throw chiral_error("base_point", "base point must be supported in a single block");
        }
        if (pblock < 0) throw chiral_error("base_point", "zero base point");
        const Block& pb = L.blocks[std::size_t(pblock)];
        if (!(pb.kind == BlockKind::U || pb.rank == 1))
            throw chiral_error("base_point",
                               "base point must lie in a hyperbolic plane or a rank-one block");
        for (std::size_t bi = 0; bi < L.blocks.size(); ++bi) {
            if (int(bi) == pblock) continue;
            BlockCtx c;
            c.b = &L.blocks[bi];
            c.G = L.gram.block(c.b->offset, c.b->offset, c.b->rank, c.b->rank);
            Signature sig = signature_of(to_rat(c.G));
            if (sig.minus > 0 || sig.zero > 0)
                throw chiral_error("base_point", "blocks away from the base point must be definite");
            defblocks.push_back(int(bi));
            ctx.push_back(std::move(c));
        }
    }

    void activate_cones(const std::vector<VecI>& accepted_level0) {
        for (std::size_t k = 0; k < ctx.size(); ++k) {
            BlockCtx& c = ctx[k];
            c.cone.clear();
            const Block& b = *c.b;
            for (const VecI& w : accepted_level0) {
                bool inside = false, outside = false;
                for (Eigen::Index i = 0; i < L.rank(); ++i) {
                    if (w(i) == 0) continue;
                    if (i >= b.offset && i < b.offset + b.rank) inside = true;
                    else outside = true;
                }
                if (inside && !outside) c.cone.push_back(w.segment(b.offset, b.rank));
            }
            c.cones_active = true;
            c.cache.clear();
            c.cone_basis = false;
            if (int(c.cone.size()) == b.rank) {
                MatI W(b.rank, b.rank);
                for (int i = 0; i < b.rank; ++i) W.row(i) = c.cone[std::size_t(i)].transpose();
                MatQ wg = to_rat(MatI(W * c.G));
                if (rank_of(wg) == b.rank) {
                    c.cone_basis = true;
                    MatQ root_gram = to_rat(MatI(W * c.G * W.transpose()));
                    c.cone_form = inverse(root_gram);
                    c.cone_to_x = -inverse(wg);
                }
            }
        }
    }

    const std::vector<VecI>& block_vectors(BlockCtx& c, const Int& q, int r) {
        auto key = std::make_tuple(q, r, c.cones_active);
        auto it = c.cache.find(key);
        if (it != c.cache.end()) return it->second;
        std::vector<VecI> out;
        if (q == 0) {
            out.push_back(VecI::Zero(c.b->rank));
        } else {
            auto divisible = [&](const VecI& x) {
                if (r <= 1) return true;
                VecI gx = c.G * x;
                for (Eigen::Index i = 0; i < gx.size(); ++i)
                    if (gx(i) % r != 0) return false;
                return true;
            };
            auto in_cone = [&](const VecI& x) {
                for (const VecI& w : c.cone) {
                    Int s = (w.transpose() * c.G * x)(0, 0);
                    if (s > 0) return false;
                }
                return true;
            };
            if (c.cones_active && c.cone_basis) {
                fp_enumerate(c.cone_form, Rat(q), true, [&](const VecI& cc) {
                    VecQ xq = c.cone_to_x * to_rat(cc);
                    if (!is_integral(xq)) return;
                    VecI x = to_int(xq);
                    if (!divisible(x)) return;
                    out.push_back(x);
                });
            } else {
                fp_enumerate(to_rat(c.G), Rat(q), false, [&](const VecI& x) {
                    if (!divisible(x)) return;
                    if (c.cones_active && !in_cone(x)) return;
                    out.push_back(x);
                });
            }
        }
        std::sort(out.begin(), out.end(), [](const VecI& a, const VecI& b) {
            return LexLess{}(a, b);
        });
        auto res = c.cache.emplace(key, std::move(out));
        return res.first->second;
    }

    // Candidates v with v^2 = s and p.v = m, subject to non-obtuseness
    // against the accepted set; fully checked (crystallographic condition
    // included).
    std::vector<VecI> candidates(const Int& s, const Int& m, const std::vector<VecI>& accepted) {
        std::vector<VecI> cands;
        int r = (s == 4) ? 2 : (s == 6) ? 3 : 1;
        const Block& pb = L.blocks[std::size_t(pblock)];

        std::vector<std::pair<VecI, Int>> pparts;  // (p-block coords, norm used)
        if (pb.kind == BlockKind::U) {
            Int k = pb.scale;
            Int p1 = p(pb.offset), p2 = p(pb.offset + 1);
            // p.v = k (p1 b + p2 a) for v_U = (a, b)
            if (m % k != 0) return cands;
            Int mm = m / k;
            // solve p2 a + p1 b = mm
            Int g = boost::multiprecision::gcd(p1, p2);
            if (g == 0) return cands;
            if (mm % g != 0) return cands;
            Int x0 = 0, y0 = 0;
            // extended euclid: find x0, y0 with p2 x0 + p1 y0 = g
            {
                Int old_r = p2, rr = p1, old_s = 1, ss = 0, old_t = 0, tt = 1;
                while (rr != 0) {
                    Int qq = old_r / rr;
                    Int tmp = old_r - qq * rr; old_r = rr; rr = tmp;
                    tmp = old_s - qq * ss; old_s = ss; ss = tmp;
                    tmp = old_t - qq * tt; old_t = tt; tt = tmp;
                }
                // old_r = +-g
                Int sign = old_r > 0 ? 1 : -1;
                x0 = sign * old_s;  // coefficient of p2 -> a
                y0 = sign * old_t;  // coefficient of p1 -> b
            }
            Int scale_m = mm / g;
            Int abase = x0 * scale_m, bbase = y0 * scale_m;
            Int da = p1 / g, db = -p2 / g;  // a = abase + da t, b = bbase + db t
            // norm 2 k a b along the solution line is a quadratic in t with
            // positive leading coefficient (da db = -p1 p2 / g^2 > 0), so the
            // admissible t form a bounded window.
            Int lead = 2 * k * da * db;
            if (lead <= 0) throw chiral_error("base_point", "degenerate base point in U block");
            Int B = 2 * k * (abase * db + bbase * da);
            Int C = 2 * k * abase * bbase;
            // lead t^2 + B t + C <= s  =>  |2 lead t + B| <= sqrt(B^2 + 4 lead (s - C))
            Int disc = B * B + 4 * lead * (s - C);
            if (disc < 0) return cands;
            Int sq = isqrt_floor(disc);
            Int tlo = (-B - sq) / (2 * lead) - 2;
            Int thi = (-B + sq) / (2 * lead) + 2;
            for (Int t = tlo; t <= thi; ++t) {
                Int a = abase + da * t, b = bbase + db * t;
                Int n = 2 * k * a * b;
                if (n > s) continue;
                if (r > 1 && ((k * b) % r != 0 || (k * a) % r != 0)) continue;
                VecI part = VecI::Zero(2);
                part(0) = a;
                part(1) = b;
                pparts.emplace_back(part, n);
            }
        } else {
            // rank-one block
            Int e = L.gram(pb.offset, pb.offset);
            Int c = p(pb.offset);
            Int denom = c * e;
            if (denom == 0 || m % denom != 0) return cands;
            Int a = m / denom;
            Int n = a * a * e;
            if (n <= s && !(r > 1 && (a * e) % r != 0)) {
                VecI part = VecI::Zero(1);
                part(0) = a;
                pparts.emplace_back(part, n);
            }
        }

        for (auto& [ppart, pn] : pparts) {
            Int rem0 = s - pn;
            if (rem0 < 0) continue;
            VecI v = VecI::Zero(L.rank());
            v.segment(pb.offset, pb.rank) = ppart;
            // distribute rem0 over the definite blocks
            std::function<void(std::size_t, const Int&)> rec = [&](std::size_t bi, const Int& rem) {
                if (bi == ctx.size()) {
                    if (rem != 0) return;
                    if (!is_root(L, v, squares)) return;
                    for (const VecI& w : accepted)
                        if (inner(L, v, w) > 0) return;
                    cands.push_back(v);
                    return;
                }
                BlockCtx& c = ctx[bi];
                Int step = 2 * c.b->scale;
                bool last = (bi + 1 == ctx.size());
                for (Int q = last ? rem : Int(0); q <= rem; q += step) {
                    if (q != 0 && q % step != 0) break;  // last-block remainder not attainable
                    const auto& lst = block_vectors(c, q, r);
                    for (const VecI& x : lst) {
                        v.segment(c.b->offset, c.b->rank) = x;
                        rec(bi + 1, rem - q);
                    }
                    v.segment(c.b->offset, c.b->rank).setZero();
                    if (last) break;
                }
            };
            rec(0, rem0);
        }
        std::sort(cands.begin(), cands.end(), [](const VecI& a, const VecI& b) {
            return LexLess{}(a, b);
        });
        cands.erase(std::unique(cands.begin(), cands.end(),
                                [](const VecI& a, const VecI& b) { return a == b; }),
                    cands.end());
        return cands;
    }
};

}  // namespace

bool allowed_square(const std::vector<Int>& squares, const Int& s) {
    return std::find(squares.begin(), squares.end(), s) != squares.end();
}

bool is_root(const Lattice& L, const VecI& v, const std::vector<Int>& squares) {
    Int s = norm(L, v);
    if (!allowed_square(squares, s)) return false;
    if (s == 2) return true;
    Int r = (s == 4) ? 2 : (s == 6) ? 3 : 0;
    if (r == 0) return false;
    VecI gv = L.gram * v;
    for (Eigen::Index i = 0; i < gv.size(); ++i)
        if (gv(i) % r != 0) return false;
    return true;
}

Int level_of(const Lattice& L, const VecI& p, const VecI& v) {
    Int s = norm(L, v);
    if (s <= 0) throw chiral_error("domain", "level of a non-positive vector");
    Int pv = inner(L, p, v);
    Int numv = 2 * pv * pv;
    if (numv % s != 0) throw chiral_error("domain", "level is not an integer");
    return numv / s;
}

VecI default_base_point(const Lattice& L) {
    for (const Block& b : L.blocks) {
        if (b.kind == BlockKind::U) {
            VecI p = VecI::Zero(L.rank());
            p(b.offset) = 1;
            p(b.offset + 1) = -1;
            return p;
        }
    }
    for (const Block& b : L.blocks) {
        if (b.rank == 1 && L.gram(b.offset, b.offset) == -2) {
            VecI p = VecI::Zero(L.rank());
            p(b.offset) = 1;
            return p;
        }
    }
    throw chiral_error("base_point", "no U summand or rank-one (-2) block for a base point");
}

std::vector<VecI> initial_simple_system(const Lattice& L, const VecI& p,
                                        const std::vector<Int>& squares) {
    Enumerator en(L, p, squares);
    std::set<VecI, LexLess> phi0;
    std::vector<VecI> none;
    for (const Int& s : squares)
        for (const VecI& v : en.candidates(s, 0, none)) phi0.insert(v);
    // positives: first nonzero coordinate positive
    std::set<VecI, LexLess> pos;
    for (const VecI& v : phi0) {
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            if (v(i) == 0) continue;
            if (v(i) > 0) pos.insert(v);
            break;
        }
    }
    std::vector<VecI> simple;
    for (const VecI& v : pos) {
        bool decomposable = false;
        for (const VecI& x : pos) {
            VecI y = v - x;
            if (y.isZero()) continue;
            if (pos.count(y)) { decomposable = true; break; }
        }
        if (!decomposable) simple.push_back(v);
    }
    return simple;
}

std::vector<Root> enumerate_level(const Lattice& L, const VecI& p, const Int& level,
                                  const std::vector<VecI>& accepted,
                                  const std::vector<Int>& squares) {
    if (level <= 0) throw chiral_error("domain", "level must be positive");
    Enumerator en(L, p, squares);
    // reconstruct cones from the level-0 part of the accepted set
    std::vector<VecI> lvl0;
    for (const VecI& w : accepted)
        if (inner(L, p, w) == 0) lvl0.push_back(w);
    en.activate_cones(lvl0);
    std::vector<Root> out;
    std::vector<VecI> acc = accepted;
    for (const Int& s : squares) {
        // level = 2 m^2 / s -> m^2 = level * s / 2
        Int m2num = level * s;
        if (m2num % 2 != 0) continue;
        Int m2 = m2num / 2, mr;
        if (!is_perfect_square(m2, mr)) continue;
        Int m = -mr;
        for (const VecI& v : en.candidates(s, m, acc)) {
            bool ok = true;
            for (const Root& w : out)
                if (inner(L, v, w.v) > 0) { ok = false; break; }
            if (!ok) continue;
            out.push_back(Root{v, s, level});
            acc.push_back(v);
        }
    }
    return out;
}

RootSequence run_vinberg(const Lattice& L, const VinbergConfig& cfg) {
    RootSequence seq;
    seq.L = L;
    seq.squares = cfg.squares;
    seq.p = cfg.base_point ? *cfg.base_point : default_base_point(L);
    if (norm(L, seq.p) >= 0) throw chiral_error("base_point", "base point must have negative square");

    Enumerator en(L, seq.p, cfg.squares);
    std::vector<VecI> accepted = initial_simple_system(L, seq.p, cfg.squares);
    for (const VecI& v : accepted) seq.roots.push_back(Root{v, norm(L, v), 0});
    en.activate_cones(accepted);

    auto volume_ok = [&]() -> bool {
        if (!cfg.certify_volume) return false;
        if (Eigen::Index(seq.roots.size()) < L.rank()) return false;
        std::vector<VecI> vs;
        for (const Root& r : seq.roots) vs.push_back(r.v);
        CoxeterGraph g = build_graph(L, vs);
        return finite_volume_check(g, int(L.rank()) - 1).finite;
    };

    if (volume_ok()) {
        seq.complete = true;
        return seq;
    }

    // gather (square, m) pairs sorted by level
    std::vector<std::tuple<Int, Int, Int>> pairs;  // (level, s, m)
    for (const Int& s : cfg.squares) {
        int r = (s == 4) ? 2 : (s == 6) ? 3 : 1;
        for (Int m = -1;; --m) {
            if (2 * m * m > cfg.max_level * s) break;
            if (r > 1 && m % r != 0) continue;
            Int numv = 2 * m * m;
            if (numv % s != 0) continue;
            pairs.emplace_back(numv / s, s, m);
        }
    }
    std::sort(pairs.begin(), pairs.end());

    for (const auto& [level, s, m] : pairs) {
        if (int(seq.roots.size()) >= cfg.max_roots) break;
        auto cands = en.candidates(s, m, accepted);
        bool added = false;
        for (const VecI& v : cands) {
            bool ok = true;
            for (const VecI& w : accepted)
                if (inner(L, v, w) > 0) { ok = false; break; }
            if (!ok) continue;
            seq.roots.push_back(Root{v, s, level});
            accepted.push_back(v);
            added = true;
        }
        seq.reached_level = level;
        if (added && volume_ok()) {
            seq.complete = true;
            break;
        }
    }
    return seq;
}

std::vector<VecI> short_vectors(const MatI& gram, const Int& nrm) {
    Signature sig = signature_of(to_rat(gram));
    if (sig.minus > 0 || sig.zero > 0)
        throw chiral_error("not_definite", "short vector enumeration needs a definite lattice");
    std::vector<VecI> out;
    fp_enumerate(to_rat(gram), Rat(nrm), false, [&](const VecI& x) { out.push_back(x); });
    return out;
}

}  // namespace chiral
