// Wall graphs: edge classes, subdiagram classification and naming, the
// finite-volume criterion with its vertex/cusp witnesses, and graph
// symmetries.

#include "chiral/coxeter.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

#include "chiral/expr.hpp"
#include "util.hpp"

using namespace chiral;
using testutil::vec;

namespace {

// component names of a subdiagram as a sorted multiset
std::multiset<std::string> name_parts(const CoxeterGraph& g, const std::vector<int>& idx) {
    std::string name = diagram_name(g, idx);
    std::multiset<std::string> parts;
    std::size_t start = 0;
    while (start <= name.size()) {
        std::size_t plus = name.find('+', start);
        if (plus == std::string::npos) {
            parts.insert(name.substr(start));
            break;
        }
        parts.insert(name.substr(start, plus - start));
        start = plus + 1;
    }
    return parts;
}

std::vector<int> all_indices(const CoxeterGraph& g) {
    std::vector<int> idx(std::size_t(g.size()));
    for (int i = 0; i < g.size(); ++i) idx[std::size_t(i)] = i;
    return idx;
}

}  // namespace

TEST_CASE("edge classes from the defining ratio") {
    // definite examples inside A2 with both squares allowed
    Lattice A2 = parse_lattice("A2");
    std::vector<VecI> walls = {vec({1, 0}), vec({0, 1}), vec({1, -1})};
    CoxeterGraph g = build_graph(A2, walls);
    CHECK(g.edge(0, 1) == EdgeClass::Simple);  // two square-2 walls, ratio 1
    CHECK(g.edge(1, 2) == EdgeClass::Six);     // square 2 against square 6, ratio 3

    // hyperbolic examples: the quadrilateral of -A1+<6>+A1
    Lattice L = parse_lattice("-A1+<6>+A1");
    std::vector<VecI> quad = {vec({0, 1, 0}), vec({0, 0, 1}), vec({3, -1, -3}), vec({3, -2, 0})};
    CoxeterGraph q = build_graph(L, quad);
    CHECK(q.edge(0, 1) == EdgeClass::None);
    CHECK(q.edge(0, 2) == EdgeClass::Parallel);
    CHECK(q.edge(2, 3) == EdgeClass::Parallel);
    CHECK(q.edge(0, 3) == EdgeClass::Dotted);
    CHECK(q.edge(1, 2) == EdgeClass::Dotted);
    CHECK(q.edge(1, 3) == EdgeClass::None);
}

TEST_CASE("subdiagram classification by exact signature") {
    Lattice L = parse_lattice("-A1+<6>+A1");
    std::vector<VecI> quad = {vec({0, 1, 0}), vec({0, 0, 1}), vec({3, -1, -3}), vec({3, -2, 0})};
    CoxeterGraph q = build_graph(L, quad);
    CHECK(classify_subdiagram(q, {0}) == DiagramClass::Elliptic);
    CHECK(classify_subdiagram(q, {0, 1}) == DiagramClass::Elliptic);
    CHECK(classify_subdiagram(q, {0, 2}) == DiagramClass::Parabolic);  // parallel walls
    // dotted edges give connected signature (1,1) pairs, i.e. Lanner by the
    // signature definition
    CHECK(classify_subdiagram(q, {0, 3}) == DiagramClass::Lanner);

    Lattice D4 = parse_lattice("D4");
    CoxeterGraph gd = build_graph(D4, {vec({1, 0, 0, 0}), vec({0, 1, 0, 0}), vec({0, 0, 1, 0}),
                                       vec({0, 0, 0, 1})});
    CHECK(classify_subdiagram(gd, all_indices(gd)) == DiagramClass::Elliptic);
    CHECK(diagram_name(gd, all_indices(gd)) == "D4");

    Lattice A2 = parse_lattice("A2");
    CoxeterGraph gg = build_graph(A2, {vec({0, 1}), vec({1, -1})});
    CHECK(diagram_name(gg, {0, 1}) == "G2");
}

TEST_CASE("diagram names of mixed subsets") {
    Lattice L = parse_lattice("A2+D4+A1");
    std::vector<VecI> walls;
    for (int i = 0; i < 7; ++i) {
        VecI v = VecI::Zero(7);
        v(i) = 1;
        walls.push_back(v);
    }
    CoxeterGraph g = build_graph(L, walls);
    auto parts = name_parts(g, all_indices(g));
    CHECK(parts == std::multiset<std::string>{"A1", "A2", "D4"});
}

TEST_CASE("finite volume witnesses: quadrilateral with two ideal vertices") {
    auto seq = testutil::run("-A1+<6>+A1");
    REQUIRE(seq.complete);
    std::vector<VecI> walls;
    for (const Root& r : seq.roots) walls.push_back(r.v);
    CoxeterGraph g = build_graph(seq.L, walls);
    VolumeReport rep = finite_volume_check(g, 2);
    CHECK(rep.finite);
    CHECK(rep.has_edge);
    CHECK(rep.cusp_sets.size() == 2);  // the two parallel wall pairs
    // the truncated graph (one wall dropped) no longer closes up
    walls.pop_back();
    VolumeReport bad = finite_volume_check(build_graph(seq.L, walls), 2);
    CHECK_FALSE(bad.finite);
}

TEST_CASE("ideal vertices of the rank-8 chamber") {
    auto seq = testutil::run("U+A2+A1+D4", {Int(2), Int(6)}, 48);
    REQUIRE(seq.complete);
    REQUIRE(seq.roots.size() == 14);
    std::vector<VecI> walls;
    for (const Root& r : seq.roots) walls.push_back(r.v);
    CoxeterGraph g = build_graph(seq.L, walls);
    VolumeReport rep = finite_volume_check(g, int(seq.L.rank()) - 1);
    REQUIRE(rep.finite);
    std::set<std::multiset<std::string>> cusps;
    for (const auto& c : rep.cusp_sets) cusps.insert(name_parts(g, c));
    CHECK(cusps.count({"A1~", "D4~", "G2~"}) == 1);
    CHECK(cusps.count({"A1~", "D6~"}) == 1);
}

TEST_CASE("ideal vertices of the rank-10 chamber") {
    auto seq = testutil::run("-A1+<6>+E8");
    REQUIRE(seq.complete);
    REQUIRE(seq.roots.size() == 13);
    std::vector<VecI> walls;
    for (const Root& r : seq.roots) walls.push_back(r.v);
    CoxeterGraph g = build_graph(seq.L, walls);
    VolumeReport rep = finite_volume_check(g, int(seq.L.rank()) - 1);
    REQUIRE(rep.finite);
    std::set<std::multiset<std::string>> cusps;
    for (const auto& c : rep.cusp_sets) cusps.insert(name_parts(g, c));
    CHECK(cusps.count({"A1~", "E7~"}) == 1);
    CHECK(cusps.count({"D6~", "G2~"}) == 1);
}

TEST_CASE("graph symmetries preserve squares and the Gram matrix") {
    Lattice A2 = parse_lattice("A2");
    CoxeterGraph g2 = build_graph(A2, {vec({1, 0}), vec({0, 1})});
    CHECK(graph_symmetries(g2).size() == 2);  // identity and the swap

    Lattice D4 = parse_lattice("D4");
    CoxeterGraph gd = build_graph(D4, {vec({1, 0, 0, 0}), vec({0, 1, 0, 0}), vec({0, 0, 1, 0}),
                                       vec({0, 0, 0, 1})});
    auto syms = graph_symmetries(gd);
    CHECK(syms.size() == 6);  // the central node is fixed, the legs permute
    for (const auto& s : syms) CHECK(s[0] == 0);
}

TEST_CASE("Lanner subdiagrams are reported and classified consistently") {
    auto seq = testutil::run("-A1+<6>+2A1", {Int(2), Int(6)}, 16);
    REQUIRE(seq.complete);
    std::vector<VecI> walls;
    for (const Root& r : seq.roots) walls.push_back(r.v);
    CoxeterGraph g = build_graph(seq.L, walls);
    for (const auto& sub : lanner_subdiagrams(g))
        CHECK(classify_subdiagram(g, sub) == DiagramClass::Lanner);
}
