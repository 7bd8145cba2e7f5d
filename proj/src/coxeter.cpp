#include "chiral/coxeter.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace chiral {

namespace {

// connected components of a vertex subset under gram-adjacency
std::vector<std::vector<int>> components_of(const CoxeterGraph& g, const std::vector<int>& idx) {
    std::vector<std::vector<int>> comps;
    std::set<int> left(idx.begin(), idx.end());
    while (!left.empty()) {
        std::vector<int> comp;
        std::vector<int> stack = {*left.begin()};
        left.erase(left.begin());
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (auto it = left.begin(); it != left.end();) {
                if (g.gram(v, *it) != 0) {
                    stack.push_back(*it);
                    it = left.erase(it);
                } else {
                    ++it;
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

MatQ subgram(const CoxeterGraph& g, const std::vector<int>& idx) {
    MatQ s(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j)
            s(Eigen::Index(i), Eigen::Index(j)) = Rat(g.gram(idx[i], idx[j]));
    return s;
}

// Coxeter label of an edge: 2, 3, 4, 6; -1 for parallel, -2 for dotted.
int edge_label(const CoxeterGraph& g, int i, int j) {
    switch (g.edge(i, j)) {
        case EdgeClass::None: return 2;
        case EdgeClass::Simple: return 3;
        case EdgeClass::Four: return 4;
        case EdgeClass::Six: return 6;
        case EdgeClass::Parallel: return -1;
        default: return -2;
    }
}

std::string component_name(const CoxeterGraph& g, const std::vector<int>& comp,
                           DiagramClass cls) {
    const int k = int(comp.size());
    auto fallback = [&] { return "X" + std::to_string(k); };
    if (cls != DiagramClass::Elliptic && cls != DiagramClass::Parabolic) {
        if (cls == DiagramClass::Lanner) return "L" + std::to_string(k);
        return fallback();
    }
    // collect labels and degrees
    std::vector<int> deg(comp.size(), 0);
    std::multiset<int> labels;
    int n4 = 0, n6 = 0, npar = 0, ndot = 0, nedges = 0;
    for (std::size_t a = 0; a < comp.size(); ++a)
        for (std::size_t b = a + 1; b < comp.size(); ++b) {
            int m = edge_label(g, comp[a], comp[b]);
            if (m == 2) continue;
            ++nedges;
            ++deg[a];
            ++deg[b];
            labels.insert(m);
            if (m == 4) ++n4;
            if (m == 6) ++n6;
            if (m == -1) ++npar;
            if (m == -2) ++ndot;
        }
    if (ndot > 0) return fallback();
    std::vector<int> degs(deg);
    std::sort(degs.begin(), degs.end());
    int maxdeg = degs.empty() ? 0 : degs.back();
    int nbranch = int(std::count_if(deg.begin(), deg.end(), [](int d) { return d >= 3; }));
    bool is_tree = (nedges == k - 1);
    bool is_cycle = (nedges == k && maxdeg == 2);
    bool is_path = is_tree && maxdeg <= 2;

    // arm lengths from a branch node
    auto arms_of = [&](int centre_pos) {
        std::vector<int> arms;
        for (std::size_t b = 0; b < comp.size(); ++b) {
            if (int(b) == centre_pos || edge_label(g, comp[std::size_t(centre_pos)], comp[b]) == 2)
                continue;
            int len = 1, prev = centre_pos, cur = int(b);
            for (;;) {
                int next = -1;
                for (std::size_t c = 0; c < comp.size(); ++c) {
                    if (int(c) == prev || int(c) == cur) continue;
                    if (edge_label(g, comp[std::size_t(cur)], comp[c]) != 2) { next = int(c); break; }
                }
                if (next < 0) break;
                ++len;
                prev = cur;
                cur = next;
            }
            arms.push_back(len);
        }
        std::sort(arms.begin(), arms.end());
        return arms;
    };

    if (cls == DiagramClass::Elliptic) {
        if (k == 1) return "A1";
        if (n6 == 1 && k == 2) return "G2";
        if (npar || n6) return fallback();
        if (n4 == 1 && is_path) {
            // end edge -> B, central edge of a 4-path -> F4
            bool at_end = false;
            for (std::size_t a = 0; a < comp.size(); ++a)
                for (std::size_t b = a + 1; b < comp.size(); ++b)
                    if (edge_label(g, comp[a], comp[b]) == 4 && (deg[a] == 1 || deg[b] == 1))
                        at_end = true;
            if (at_end) return "B" + std::to_string(k);
            if (k == 4) return "F4";
            return fallback();
        }
        if (n4 == 0 && is_path) return "A" + std::to_string(k);
        if (n4 == 0 && is_tree && nbranch == 1) {
            int centre = int(std::find(deg.begin(), deg.end(), 3) - deg.begin());
            auto arms = arms_of(centre);
            if (arms == std::vector<int>{1, 1, k - 3}) return "D" + std::to_string(k);
            if (arms == std::vector<int>{1, 2, 2}) return "E6";
            if (arms == std::vector<int>{1, 2, 3}) return "E7";
            if (arms == std::vector<int>{1, 2, 4}) return "E8";
        }
        return fallback();
    }

    // parabolic component
    if (k == 2 && npar == 1) return "A1~";
    if (is_cycle && n4 == 0 && n6 == 0 && npar == 0) return "A" + std::to_string(k - 1) + "~";
    if (k == 3 && n6 == 1 && is_path) return "G2~";
    if (is_path && n4 == 2) return "C" + std::to_string(k - 1) + "~";
    if (is_path && n4 == 1 && k == 5) return "F4~";
    if (is_tree && nbranch == 1 && n4 == 1) return "B" + std::to_string(k - 1) + "~";
    if (is_tree && n4 == 0 && n6 == 0 && npar == 0) {
        if (maxdeg == 4 && k == 5) return "D4~";
        if (nbranch == 2) return "D" + std::to_string(k - 1) + "~";
        if (nbranch == 1) {
            int centre = int(std::find(deg.begin(), deg.end(), 3) - deg.begin());
            auto arms = arms_of(centre);
            if (arms == std::vector<int>{2, 2, 2}) return "E6~";
            if (arms == std::vector<int>{1, 3, 3}) return "E7~";
            if (arms == std::vector<int>{1, 2, 5}) return "E8~";
        }
    }
    return fallback();
}

// incremental rational LDL over a growing vertex subset
struct GrowingLdl {
    const CoxeterGraph* g = nullptr;
    std::vector<int> idx;
    std::vector<std::vector<Rat>> rows;  // unit-lower rows
    std::vector<Rat> d;

    // try to append vertex v keeping positive definiteness
    bool push(int v) {
        std::size_t k = idx.size();
        std::vector<Rat> l(k, Rat(0));
        for (std::size_t j = 0; j < k; ++j) {
            Rat s = Rat(g->gram(idx[j], v));
            for (std::size_t t = 0; t < j; ++t) s -= l[t] * rows[j][t] * d[t];
            l[j] = s / d[j];
        }
        Rat piv = Rat(g->gram(v, v));
        for (std::size_t t = 0; t < k; ++t) piv -= l[t] * l[t] * d[t];
        if (piv <= 0) return false;
        idx.push_back(v);
        rows.push_back(std::move(l));
        d.push_back(piv);
        return true;
    }
    void pop() {
        idx.pop_back();
        rows.pop_back();
        d.pop_back();
    }
};

// connected subsets: elliptic ones are extended, affine (parabolic corank-1)
// ones are reported; anything else is pruned.
std::vector<std::vector<int>> affine_components(const CoxeterGraph& g) {
    const int n = g.size();
    std::vector<std::vector<int>> out;
    std::vector<char> in(std::size_t(n), 0), banned(std::size_t(n), 0);
    std::vector<int> cur;

    std::function<void(const std::vector<int>&)> grow = [&](const std::vector<int>& ext) {
        for (std::size_t ei = 0; ei < ext.size(); ++ei) {
            int v = ext[ei];
            cur.push_back(v);
            in[std::size_t(v)] = 1;
            Signature sig = signature_of(subgram(g, cur));
            if (sig.minus == 0 && sig.zero == 0) {
                std::vector<int> next(ext.begin() + long(ei) + 1, ext.end());
                for (int w = 0; w < n; ++w) {
                    if (in[std::size_t(w)] || banned[std::size_t(w)]) continue;
                    if (std::find(next.begin(), next.end(), w) != next.end()) continue;
                    if (std::find(ext.begin(), ext.begin() + long(ei) + 1, w) != ext.begin() + long(ei) + 1)
                        continue;
                    if (g.gram(v, w) != 0) next.push_back(w);
                }
                grow(next);
            } else if (sig.minus == 0 && classify_subdiagram(g, cur) == DiagramClass::Parabolic &&
                       components_of(g, cur).size() == 1) {
                std::vector<int> s = cur;
                std::sort(s.begin(), s.end());
                out.push_back(std::move(s));
            }
            in[std::size_t(v)] = 0;
            cur.pop_back();
        }
    };

    for (int s = 0; s < n; ++s) {
        cur = {s};
        in[std::size_t(s)] = 1;
        std::vector<int> ext;
        for (int w = 0; w < n; ++w)
            if (!banned[std::size_t(w)] && w != s && g.gram(s, w) != 0) ext.push_back(w);
        grow(ext);
        in[std::size_t(s)] = 0;
        banned[std::size_t(s)] = 1;  // subsets containing s were all visited
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

EdgeClass CoxeterGraph::edge(int i, int j) const {
    Int p = gram(i, j);
    if (p == 0) return EdgeClass::None;
    Int w4num = 4 * p * p;           // compare 4 (v.w)^2 / (v^2 w^2) with 1..4
    Int d = squares[std::size_t(i)] * squares[std::size_t(j)];
    if (w4num < d) throw chiral_error("domain", "edge weight below the simple class");
    if (w4num == d) return EdgeClass::Simple;
    if (w4num == 2 * d) return EdgeClass::Four;
    if (w4num == 3 * d) return EdgeClass::Six;
    if (w4num == 4 * d) return EdgeClass::Parallel;
    if (w4num > 4 * d) return EdgeClass::Dotted;
    throw chiral_error("domain", "non-crystallographic wall angle");
}

CoxeterGraph build_graph(const Lattice& L, const std::vector<VecI>& roots) {
    CoxeterGraph g;
    g.roots = roots;
    const int n = int(roots.size());
    g.gram = MatI(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.gram(i, j) = inner(L, roots[std::size_t(i)], roots[std::size_t(j)]);
    for (int i = 0; i < n; ++i) g.squares.push_back(g.gram(i, i));
    return g;
}

DiagramClass classify_subdiagram(const CoxeterGraph& g, const std::vector<int>& idx) {
    if (idx.empty()) return DiagramClass::Elliptic;
    Signature sig = signature_of(subgram(g, idx));
    if (sig.minus == 0 && sig.zero == 0) return DiagramClass::Elliptic;
    if (sig.minus == 0) {
        for (const auto& comp : components_of(g, idx)) {
            Signature cs = signature_of(subgram(g, comp));
            if (!(cs.minus == 0 && cs.zero == 1)) return DiagramClass::Indefinite;
        }
        return DiagramClass::Parabolic;
    }
    if (sig.minus == 1 && sig.zero == 0 && components_of(g, idx).size() == 1) {
        // all maximal proper subdiagrams elliptic?
        for (std::size_t drop = 0; drop < idx.size(); ++drop) {
            std::vector<int> sub;
            for (std::size_t i = 0; i < idx.size(); ++i)
                if (i != drop) sub.push_back(idx[i]);
            if (sub.empty()) continue;
            Signature ss = signature_of(subgram(g, sub));
            if (!(ss.minus == 0 && ss.zero == 0)) return DiagramClass::Indefinite;
        }
        return DiagramClass::Lanner;
    }
    return DiagramClass::Indefinite;
}

std::string diagram_name(const CoxeterGraph& g, const std::vector<int>& idx) {
    std::vector<std::string> names;
    for (const auto& comp : components_of(g, idx))
        names.push_back(component_name(g, comp, classify_subdiagram(g, comp)));
    std::sort(names.begin(), names.end());
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += "+";
        out += names[i];
    }
    return out.empty() ? "(empty)" : out;
}

VolumeReport finite_volume_check(const CoxeterGraph& g, int n) {
    VolumeReport rep;
    const int N = g.size();
    if (n < 1) throw chiral_error("domain", "hyperbolic dimension must be at least 1");
    if (n == 1) {
        // walls are points of the line; the chamber is a finite segment
        // exactly when two walls diverge
        rep.has_edge = N >= 1;
        for (int i = 0; i < N && !rep.finite; ++i)
            for (int j = i + 1; j < N && !rep.finite; ++j)
                if (g.edge(i, j) == EdgeClass::Dotted) {
                    rep.finite = true;
                    rep.vertex_sets = {{i}, {j}};
                }
        return rep;
    }

    auto cusps = affine_components(g);
    // assemble maximal parabolic subdiagrams of rank n-1 from pairwise
    // orthogonal affine components
    std::vector<std::vector<int>> parabolics;
    {
        auto compatible = [&](const std::vector<int>& a, const std::vector<int>& b) {
            for (int x : a)
                for (int y : b)
                    if (x == y || g.gram(x, y) != 0) return false;
            return true;
        };
        std::vector<std::vector<int>> chosen;
        std::function<void(std::size_t, int)> rec = [&](std::size_t from, int rank) {
            if (rank == n - 1) {
                std::vector<int> all;
                for (const auto& c : chosen) all.insert(all.end(), c.begin(), c.end());
                std::sort(all.begin(), all.end());
                parabolics.push_back(std::move(all));
                return;
            }
            for (std::size_t i = from; i < cusps.size(); ++i) {
                int r = int(cusps[i].size()) - 1;
                if (rank + r > n - 1) continue;
                bool ok = true;
                for (const auto& c : chosen)
                    if (!compatible(c, cusps[i])) { ok = false; break; }
                if (!ok) continue;
                chosen.push_back(cusps[i]);
                rec(i + 1, rank + r);
                chosen.pop_back();
            }
        };
        rec(0, 0);
        std::sort(parabolics.begin(), parabolics.end());
        parabolics.erase(std::unique(parabolics.begin(), parabolics.end()), parabolics.end());
    }

    std::set<std::vector<int>> vertex_sets;
    GrowingLdl ldl;
    ldl.g = &g;
    bool ok = true;

    std::function<bool(int)> rec = [&](int from) -> bool {
        if (int(ldl.idx.size()) == n - 1) {
            rep.has_edge = true;
            std::vector<int> E = ldl.idx;
            std::sort(E.begin(), E.end());
            int count = 0;
            std::vector<std::vector<int>> verts;
            for (int v = 0; v < N; ++v) {
                if (std::find(E.begin(), E.end(), v) != E.end()) continue;
                if (ldl.push(v)) {
                    ldl.pop();
                    ++count;
                    std::vector<int> w = E;
                    w.push_back(v);
                    std::sort(w.begin(), w.end());
                    verts.push_back(std::move(w));
                }
            }
            for (const auto& P : parabolics)
                if (std::includes(P.begin(), P.end(), E.begin(), E.end())) ++count;
            if (count != 2) {
                rep.failing_edge = E;
                rep.failing_count = count;
                return false;
            }
            for (auto& w : verts) vertex_sets.insert(std::move(w));
            return true;
        }
        for (int v = from; v < N; ++v) {
            if (!ldl.push(v)) continue;
            bool cont = rec(v + 1);
            ldl.pop();
            if (!cont) return false;
        }
        return true;
    };
    ok = rec(0);
    rep.finite = ok && rep.has_edge;
    if (rep.finite) {
        rep.vertex_sets.assign(vertex_sets.begin(), vertex_sets.end());
        rep.cusp_sets = parabolics;
    }
    return rep;
}

std::vector<std::vector<int>> lanner_subdiagrams(const CoxeterGraph& g, int max_size) {
    const int n = g.size();
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int from) {
        if (!cur.empty() && components_of(g, cur).size() == 1 &&
            classify_subdiagram(g, cur) == DiagramClass::Lanner)
            out.push_back(cur);
        if (int(cur.size()) >= max_size) return;
        for (int v = from; v < n; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

std::vector<std::vector<int>> graph_symmetries(const CoxeterGraph& g) {
    const int n = g.size();
    if (n > 64) throw chiral_error("budget", "symmetry search limited to 64 walls");
    if (n == 0) return {{}};
    // small ids for gram values
    std::map<Int, int> vid;
    auto id_of = [&](const Int& x) {
        auto it = vid.find(x);
        if (it == vid.end()) it = vid.emplace(x, int(vid.size())).first;
        return it->second;
    };
    std::vector<std::vector<int>> eid(std::size_t(n), std::vector<int>(std::size_t(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) eid[std::size_t(i)][std::size_t(j)] = id_of(g.gram(i, j));

    // Weisfeiler-Leman refinement
    std::vector<int> col(std::size_t(n), 0);
    for (int i = 0; i < n; ++i) col[std::size_t(i)] = eid[std::size_t(i)][std::size_t(i)];
    for (;;) {
        std::map<std::vector<int>, int> seen;
        std::vector<int> next(std::size_t(n), 0);
        for (int i = 0; i < n; ++i) {
            std::vector<std::pair<int, int>> sig;
            for (int j = 0; j < n; ++j)
                if (j != i) sig.emplace_back(eid[std::size_t(i)][std::size_t(j)], col[std::size_t(j)]);
            std::sort(sig.begin(), sig.end());
            std::vector<int> key = {col[std::size_t(i)]};
            for (auto& [a, b] : sig) {
                key.push_back(a);
                key.push_back(b);
            }
            auto it = seen.find(key);
            if (it == seen.end()) it = seen.emplace(std::move(key), int(seen.size())).first;
            next[std::size_t(i)] = it->second;
        }
        if (next == col) break;
        col = next;
    }

    std::vector<std::vector<int>> autos;
    std::vector<int> perm(std::size_t(n), -1);
    std::vector<char> used(std::size_t(n), 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            autos.push_back(perm);
            return;
        }
        for (int t = 0; t < n; ++t) {
            if (used[std::size_t(t)]) continue;
            if (col[std::size_t(t)] != col[std::size_t(i)]) continue;
            bool ok = g.gram(t, t) == g.gram(i, i);
            for (int j = 0; ok && j < i; ++j)
                if (g.gram(t, perm[std::size_t(j)]) != g.gram(i, j)) ok = false;
            if (!ok) continue;
            perm[std::size_t(i)] = t;
            used[std::size_t(t)] = 1;
            rec(i + 1);
            used[std::size_t(t)] = 0;
            perm[std::size_t(i)] = -1;
        }
    };
    rec(0);
    return autos;
}

std::string emit_dot(const CoxeterGraph& g) {
    std::ostringstream os;
    os << "graph walls {\n  node [shape=circle];\n";
    for (int i = 0; i < g.size(); ++i) {
        os << "  v" << (i + 1) << " [label=\"v" << (i + 1) << "\"";
        if (g.squares[std::size_t(i)] == 4) os << ", shape=square";
        if (g.squares[std::size_t(i)] == 6) os << ", shape=doublecircle";
        os << "];\n";
    }
    for (int i = 0; i < g.size(); ++i)
        for (int j = i + 1; j < g.size(); ++j) {
            EdgeClass e = g.edge(i, j);
            if (e == EdgeClass::None) continue;
            os << "  v" << (i + 1) << " -- v" << (j + 1);
            switch (e) {
                case EdgeClass::Four: os << " [label=\"4\"]"; break;
                case EdgeClass::Six: os << " [label=\"6\"]"; break;
                case EdgeClass::Parallel: os << " [style=bold]"; break;
                case EdgeClass::Dotted: os << " [style=dashed]"; break;
                default: break;
            }
            os << ";\n";
        }
    os << "}\n";
    return os.str();
}

std::string graph_to_json(const CoxeterGraph& g) {
    nlohmann::json j;
    j["walls"] = nlohmann::json::array();
    for (int i = 0; i < g.size(); ++i) {
        nlohmann::json w;
        w["index"] = i + 1;
        w["square"] = g.squares[std::size_t(i)].convert_to<long long>();
        std::vector<long long> coords;
        for (Eigen::Index k = 0; k < g.roots[std::size_t(i)].size(); ++k)
            coords.push_back(g.roots[std::size_t(i)](k).convert_to<long long>());
        w["coords"] = coords;
        j["walls"].push_back(w);
    }
    j["edges"] = nlohmann::json::array();
    for (int i = 0; i < g.size(); ++i)
        for (int k = i + 1; k < g.size(); ++k) {
            EdgeClass e = g.edge(i, k);
            if (e == EdgeClass::None) continue;
            nlohmann::json ed;
            ed["ends"] = {i + 1, k + 1};
            ed["class"] = int(e);
            ed["product"] = g.gram(i, k).convert_to<long long>();
            j["edges"].push_back(ed);
        }
    return j.dump(2);
}

}  // namespace chiral
