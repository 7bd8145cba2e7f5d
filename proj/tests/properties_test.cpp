// Randomized and exhaustive property suites: reflection products are
// automorphisms, delta_3 is a homomorphism computed consistently by both
// routes, chambers are non-obtuse, and the discriminant bilinear form is the
// polarization of the quadratic form on every tabled lattice.

#include <doctest.h>

#include <random>
#include <vector>

#include "chiral/chirality.hpp"
#include "chiral/discriminant.hpp"
#include "chiral/expr.hpp"
#include "chiral/tables.hpp"
#include "util.hpp"

using namespace chiral;

namespace {

// determinant of an integer matrix via its rational inverse-free expansion
Int det_of(const MatI& m) {
    MatQ q = to_rat(m);
    Rat d = 1;
    Eigen::Index n = q.rows();
    MatQ a = q;
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = c; r < n; ++r)
            if (a(r, c) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return 0;
        if (pivot != c) {
            a.row(pivot).swap(a.row(c));
            d = -d;
        }
        d *= a(c, c);
        for (Eigen::Index r = c + 1; r < n; ++r) {
            Rat f = a(r, c) / a(c, c);
            a.row(r) -= f * a.row(c);
        }
    }
    return boost::multiprecision::numerator(d) / boost::multiprecision::denominator(d);
}

// roots of the definite blocks of L, embedded in ambient coordinates
std::vector<VecI> block_roots(const Lattice& L, const std::vector<Int>& squares) {
    std::vector<VecI> out;
    for (const Block& b : L.blocks) {
        MatI g = L.gram.block(b.offset, b.offset, b.rank, b.rank);
        bool definite = true;
        for (int i = 0; i < b.rank; ++i) definite = definite && g(i, i) > 0;
        if (!definite) continue;
        for (const Int& s : squares)
            for (const VecI& v : short_vectors(g, s)) {
                VecI w = VecI::Zero(L.rank());
                w.segment(b.offset, b.rank) = v;
                if (is_root(L, w, squares)) out.push_back(w);
            }
    }
    return out;
}

}  // namespace

TEST_CASE("random reflection products are automorphisms of the tabled lattices") {
    std::mt19937 rng(20260826);
    const std::vector<Int> squares = {Int(2), Int(4), Int(6)};
    // cache roots per expression; sample lattices uniformly from the table
    auto entries = all_entries();
    std::vector<Lattice> lattices;
    std::vector<std::vector<VecI>> roots;
    for (const TableEntry& e : entries) {
        Lattice L = parse_lattice(e.expr);
        auto r = block_roots(L, squares);
        if (r.empty()) continue;
        lattices.push_back(std::move(L));
        roots.push_back(std::move(r));
    }
    REQUIRE(lattices.size() > 50);

    int checks = 0;
    std::uniform_int_distribution<std::size_t> pick_lattice(0, lattices.size() - 1);
    std::uniform_int_distribution<int> pick_len(1, 3);
    while (checks < 10000) {
        std::size_t li = pick_lattice(rng);
        const Lattice& L = lattices[li];
        const auto& rs = roots[li];
        std::uniform_int_distribution<std::size_t> pick_root(0, rs.size() - 1);
        MatI g = MatI::Identity(L.rank(), L.rank());
        int len = pick_len(rng);
        for (int k = 0; k < len; ++k) g = MatI(g * reflection(L, rs[pick_root(rng)]));
        bool iso = is_isometry(L, g);
        Int d = det_of(g);
        bool unimodular = (d == 1 || d == -1);
        if (!iso || !unimodular) {  // report the offending case once
            CAPTURE(li);
            CHECK(iso);
            CHECK(unimodular);
            break;
        }
        checks += 2;  // one Gram check, one determinant check
    }
    CHECK(checks >= 10000);
}

TEST_CASE("delta_3 is a homomorphism on reflection products") {
    std::mt19937 rng(7);
    for (const char* expr : {"U+A2", "-A1+<6>+A1", "U(2)+A2+D4", "-A1+A2+2A1"}) {
        Lattice L = parse_lattice(expr);
        auto rs = block_roots(L, {Int(2), Int(6)});
        REQUIRE(!rs.empty());
        std::uniform_int_distribution<std::size_t> pick(0, rs.size() - 1);
        std::uniform_int_distribution<int> pick_len(1, 3);
        for (int trial = 0; trial < 50; ++trial) {
            MatI g = MatI::Identity(L.rank(), L.rank());
            MatI h = MatI::Identity(L.rank(), L.rank());
            for (int k = pick_len(rng); k > 0; --k) g = MatI(g * reflection(L, rs[pick(rng)]));
            for (int k = pick_len(rng); k > 0; --k) h = MatI(h * reflection(L, rs[pick(rng)]));
            CHECK(delta3_disc(L, MatI(g * h)) == delta3_disc(L, g) * delta3_disc(L, h));
        }
    }
}

TEST_CASE("every enumerated chamber is non-obtuse") {
    struct Job {
        const char* expr;
        std::vector<Int> squares;
        Int max_level;
    };
    const Job jobs[] = {
        {"U(2)+A2", {Int(2), Int(6)}, 200},        {"U+A2+D4", {Int(2), Int(6)}, 200},
        {"-A1+<6>+2A1", {Int(2), Int(6)}, 16},     {"-A1+<6>+E8", {Int(2), Int(6)}, 200},
        {"-A1+A2+4A1", {Int(2), Int(4), Int(6)}, 200},
        {"-A1+A2+A1+D4", {Int(2), Int(4), Int(6)}, 12},
    };
    for (const Job& j : jobs) {
        auto seq = testutil::run(j.expr, j.squares, j.max_level);
        CHECK(!seq.roots.empty());
        for (std::size_t a = 0; a < seq.roots.size(); ++a)
            for (std::size_t b = a + 1; b < seq.roots.size(); ++b)
                CHECK(inner(seq.L, seq.roots[a].v, seq.roots[b].v) <= 0);
    }
}

TEST_CASE("the discriminant bilinear form polarizes the quadratic form on all 75 classes") {
    for (const TableEntry& e : all_entries()) {
        Lattice L = parse_lattice(e.expr);
        DiscriminantGroup D = discriminant_group(L);
        std::size_t n = D.ngen();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::vector<Int> x(n, Int(0)), y(n, Int(0)), xy(n, Int(0));
                x[i] = 1;
                y[j] = 1;
                xy[i] += 1;
                xy[j] += 1;
                Rat lhs = disc_b(D, x, y);
                Rat rhs = mod1((disc_q(D, xy) - disc_q(D, x) - disc_q(D, y)) / 2);
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("both routes to delta_3 agree wherever a square-6 wall exists") {
    std::mt19937 rng(11);
    for (const char* expr : {"U+A2", "U(2)+A2+D4", "-A1+<6>+A1", "-A1+A2+E8"}) {
        Lattice L = parse_lattice(expr);
        auto seq = testutil::run(expr, {Int(2), Int(6)}, 48, 128);
        std::vector<VecI> sixes;
        for (const Root& r : seq.roots)
            if (r.square == 6) sixes.push_back(r.v);
        REQUIRE(!sixes.empty());
        auto rs = block_roots(L, {Int(2), Int(6)});
        std::uniform_int_distribution<std::size_t> pick(0, rs.size() - 1);
        for (int trial = 0; trial < 25; ++trial) {
            MatI g = MatI(reflection(L, rs[pick(rng)]) * reflection(L, rs[pick(rng)]));
            int by_disc = delta3_disc(L, g);
            for (const VecI& six : sixes) CHECK(delta3_root(L, g, six) == by_disc);
        }
    }
}
