#include "chiral/roots.hpp"

#include "util.hpp"

#include <doctest.h>

using namespace chiral;
using namespace testutil;

TEST_CASE("root predicates") {
    Lattice L = parse_lattice("U(2)+A2");
    std::vector<Int> sq = {Int(2), Int(6)};
    CHECK(is_root(L, vec({0, 0, 0, 1}), sq));   // square 2
    CHECK(is_root(L, vec({0, 0, 1, -1}), sq));  // square 6, products divisible by 3
    Lattice M = parse_lattice("A1+A1");
    CHECK_FALSE(is_root(M, vec({1, 1}), sq));        // square 4 not allowed in {2,6}
    CHECK(is_root(M, vec({1, 1}), {Int(2), Int(4), Int(6)}));  // 4 with even products
    Lattice T = parse_lattice("A1+<4>");
    // square 6 but a product not divisible by 3
    CHECK(norm(T, vec({1, 1})) == 6);
    CHECK_FALSE(is_root(T, vec({1, 1}), sq));
}

TEST_CASE("default base points") {
    CHECK(default_base_point(parse_lattice("U+A2")) == vec({1, -1, 0, 0}));
    CHECK(default_base_point(parse_lattice("U(2)+A2")) == vec({1, -1, 0, 0}));
    CHECK(default_base_point(parse_lattice("-A1+<6>+A1")) == vec({1, 0, 0}));
}

TEST_CASE("short vector enumeration in definite blocks") {
    CHECK(short_vectors(make_A(2).gram, 2).size() == 6);
    CHECK(short_vectors(make_A(2).gram, 6).size() == 6);
    CHECK(short_vectors(make_D(4).gram, 2).size() == 24);
    CHECK(short_vectors(make_E(8).gram, 2).size() == 240);
}

TEST_CASE("chamber for U(2)+A2") {
    RootSequence seq = run("U(2)+A2");
    REQUIRE(seq.complete);
    REQUIRE(seq.roots.size() == 4);
    auto lv = level_counts(seq);
    CHECK(lv[0] == 2);
    CHECK(lv[4] == 2);
    CHECK(has_root(seq, vec({0, 0, 0, 1})));
    CHECK(has_root(seq, vec({0, 0, 1, -1})));
    CHECK(has_root(seq, vec({0, -1, -1, -1})));
    CHECK(has_root(seq, vec({1, 0, -1, -1})));
}

TEST_CASE("chamber for U+A2+D4") {
    RootSequence seq = run("U+A2+D4");
    REQUIRE(seq.complete);
    REQUIRE(seq.roots.size() == 9);
    auto lv = level_counts(seq);
    CHECK(lv[0] == 7);  // u1+u2, the A2 pair, and the four D4 nodes
    CHECK(lv[1] == 2);
    CHECK(has_root(seq, vec({1, 1, 0, 0, 0, 0, 0, 0})));
    CHECK(has_root(seq, vec({0, -1, -1, -1, 0, 0, 0, 0})));
    CHECK(has_root(seq, vec({0, -1, 0, 0, -2, -1, -1, -1})));
    for (int i = 0; i < 4; ++i) CHECK(has_root(seq, VecI(VecI::Unit(8, 4 + i))));
}

TEST_CASE("chamber for -A1+<6>+A1") {
    RootSequence seq = run("-A1+<6>+A1");
    REQUIRE(seq.complete);
    REQUIRE(seq.roots.size() == 4);
    auto lv = level_counts(seq);
    CHECK(lv[0] == 2);
    CHECK(lv[12] == 2);
    CHECK(has_root(seq, vec({0, 1, 0})));
    CHECK(has_root(seq, vec({0, 0, 1})));
    CHECK(has_root(seq, vec({3, -1, -3})));
    CHECK(has_root(seq, vec({3, -2, 0})));
}

TEST_CASE("first walls of -A1+<6>+2A1 through level 16") {
    RootSequence seq = run("-A1+<6>+2A1", {Int(2), Int(6)}, 16);
    REQUIRE(seq.roots.size() == 8);
    auto lv = level_counts(seq);
    CHECK(lv[0] == 3);
    CHECK(lv[4] == 1);
    CHECK(lv[12] == 3);
    CHECK(lv[16] == 1);
    CHECK(has_root(seq, vec({0, 1, 0, 0})));
    CHECK(has_root(seq, vec({0, 0, 1, 0})));
    CHECK(has_root(seq, vec({0, 0, 0, 1})));
    CHECK(has_root(seq, vec({1, 0, -1, -1})));
    CHECK(has_root(seq, vec({3, -1, -3, 0})));
    CHECK(has_root(seq, vec({3, -1, 0, -3})));
    CHECK(has_root(seq, vec({3, -2, 0, 0})));
    CHECK(has_root(seq, vec({2, -1, -1, -1})));
}

TEST_CASE("chamber for U+A2+A1+D4 through level 48") {
    Lattice L = parse_lattice("U+A2+A1+D4");
    RootSequence seq = run("U+A2+A1+D4", {Int(2), Int(6)}, 48);
    REQUIRE(seq.complete);
    REQUIRE(seq.roots.size() == 14);
    auto lv = level_counts(seq);
    CHECK(lv[0] == 8);  // u1+u2, A2 pair, the lone A1, four D4 nodes
    CHECK(lv[1] == 3);
    CHECK(lv[48] == 3);
    CHECK(has_root(seq, vec({1, 1, 0, 0, 0, 0, 0, 0, 0})));
    CHECK(has_root(seq, vec({0, -1, -1, -1, 0, 0, 0, 0, 0})));
    CHECK(has_root(seq, vec({0, -1, 0, 0, -1, 0, 0, 0, 0})));
    // (0,-1 | 0,0 | 0 | -d1*) and the level-48 orbit (6,-6 | -4,-2 | -3 | -6di*)
    CHECK(has_root(seq, plus_weight(L, vec({0, -1, 0, 0, 0, 0, 0, 0, 0}), 3, 0, -1)));
    for (int i = 1; i < 4; ++i)
        CHECK(has_root(seq, plus_weight(L, vec({6, -6, -4, -2, -3, 0, 0, 0, 0}), 3, i, -6)));
}

TEST_CASE("chamber for -A1+<6>+E8 through level 16") {
    Lattice L = parse_lattice("-A1+<6>+E8");
    RootSequence seq = run("-A1+<6>+E8", {Int(2), Int(6)}, 48);
    REQUIRE(seq.complete);
    REQUIRE(seq.roots.size() == 13);
    auto lv = level_counts(seq);
    CHECK(lv[0] == 9);
    CHECK(lv[4] == 1);
    CHECK(lv[12] == 2);
    CHECK(lv[16] == 1);
    VecI zero = VecI::Zero(10);
    CHECK(has_root(seq, vec({0, 1, 0, 0, 0, 0, 0, 0, 0, 0})));
    VecI v2 = plus_weight(L, vec({1, 0, 0, 0, 0, 0, 0, 0, 0, 0}), 2, 0, -1);
    CHECK(has_root(seq, v2));
    CHECK(has_root(seq, plus_weight(L, vec({3, -1, 0, 0, 0, 0, 0, 0, 0, 0}), 2, 7, -3)));
    CHECK(has_root(seq, vec({3, -2, 0, 0, 0, 0, 0, 0, 0, 0})));
    CHECK(has_root(seq, plus_weight(L, vec({2, -1, 0, 0, 0, 0, 0, 0, 0, 0}), 2, 0, -1)));
}

TEST_CASE("extended chamber for -A1+A2+4A1 through level 108") {
    RootSequence seq = run("-A1+A2+4A1", {Int(2), Int(4), Int(6)}, 108);
    REQUIRE(seq.complete);
    REQUIRE(seq.roots.size() == 10);
    auto lv = level_counts(seq);
    CHECK(lv[0] == 6);
    CHECK(lv[2] == 1);
    CHECK(lv[4] == 1);
    CHECK(lv[12] == 1);
    CHECK(lv[108] == 1);
    CHECK(has_root(seq, vec({0, 0, 1, 0, 0, 0, 0})));
    CHECK(has_root(seq, vec({0, 1, -1, 0, 0, 0, 0})));
    CHECK(has_root(seq, vec({0, 0, 0, 1, -1, 0, 0})));
    CHECK(has_root(seq, vec({0, 0, 0, 0, 1, -1, 0})));
    CHECK(has_root(seq, vec({0, 0, 0, 0, 0, 1, -1})));
    CHECK(has_root(seq, vec({0, 0, 0, 0, 0, 0, 1})));
    CHECK(has_root(seq, vec({1, 0, 0, -1, -1, -1, 0})));
    CHECK(has_root(seq, vec({1, -1, -1, -1, 0, 0, 0})));
    CHECK(has_root(seq, vec({3, -4, -2, 0, 0, 0, 0})));
    CHECK(has_root(seq, vec({9, -8, -4, -3, -3, -3, -3})));
}

TEST_CASE("extended chamber for -A1+A2+A1+D4 through level 12") {
    Lattice L = parse_lattice("-A1+A2+A1+D4");
    RootSequence seq = run("-A1+A2+A1+D4", {Int(2), Int(4), Int(6)}, 48);
    REQUIRE(seq.complete);
    REQUIRE(seq.roots.size() == 11);
    CHECK(seq.roots.back().level <= 12);
    auto lv = level_counts(seq);
    CHECK(lv[0] == 7);
    CHECK(lv[2] == 1);
    CHECK(lv[4] == 2);
    CHECK(lv[12] == 1);
    CHECK(has_root(seq, vec({0, 0, 1, 0, 0, 0, 0, 0})));
    CHECK(has_root(seq, vec({0, 1, -1, 0, 0, 0, 0, 0})));
    CHECK(has_root(seq, vec({0, 0, 0, 1, 0, 0, 0, 0})));
    CHECK(has_root(seq, vec({0, 0, 0, 0, 1, 0, 0, 0})));        // d1
    CHECK(has_root(seq, vec({0, 0, 0, 0, 0, 1, -1, 0})));       // d2 - d3
    CHECK(has_root(seq, vec({0, 0, 0, 0, 0, 0, 1, -1})));       // d3 - d4
    CHECK(has_root(seq, vec({0, 0, 0, 0, 0, 0, 0, 1})));        // d4
    CHECK(has_root(seq, plus_weight(L, vec({1, 0, 0, -1, 0, 0, 0, 0}), 3, 1, -2)));
    CHECK(has_root(seq, vec({1, -1, -1, -1, 0, 0, 0, 0})));
    CHECK(has_root(seq, plus_weight(L, vec({1, -1, -1, 0, 0, 0, 0, 0}), 3, 0, -1)));
    CHECK(has_root(seq, vec({3, -4, -2, 0, 0, 0, 0, 0})));
}

TEST_CASE("level formula agrees with stored levels on every run") {
    for (const char* e : {"U(2)+A2", "U+A2+D4", "-A1+<6>+A1", "-A1+<6>+2A1", "-A1+<6>+E8"}) {
        RootSequence seq = run(e, {Int(2), Int(6)}, 48);
        Lattice L = parse_lattice(e);
        for (const Root& r : seq.roots) {
            Int num = 2 * inner(L, seq.p, r.v) * inner(L, seq.p, r.v);
            CHECK(num == r.level * r.square);
            CHECK(norm(L, r.v) == r.square);
        }
    }
}

TEST_CASE("levels are non-decreasing and walls non-obtuse") {
    RootSequence seq = run("U+A2+A1+D4", {Int(2), Int(6)}, 48);
    Lattice L = parse_lattice("U+A2+A1+D4");
    for (std::size_t i = 0; i + 1 < seq.roots.size(); ++i)
        CHECK(seq.roots[i].level <= seq.roots[i + 1].level);
    for (std::size_t i = 0; i < seq.roots.size(); ++i)
        for (std::size_t j = i + 1; j < seq.roots.size(); ++j)
            CHECK(inner(L, seq.roots[i].v, seq.roots[j].v) <= 0);
}
