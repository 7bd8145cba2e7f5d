#pragma once

// shared helpers for the test suite

#include "chiral/expr.hpp"
#include "chiral/lattice.hpp"
#include "chiral/roots.hpp"

#include <initializer_list>
#include <map>

namespace testutil {

using namespace chiral;

inline VecI vec(std::initializer_list<long long> xs) {
    VecI v(Eigen::Index(xs.size()));
    Eigen::Index i = 0;
    for (long long x : xs) v(i++) = x;
    return v;
}

// ambient vector plus an integer multiple of a block dual-basis vector
inline VecI plus_weight(const Lattice& L, const VecI& base, std::size_t block, int node,
                        long long mult) {
    VecQ w = weight_vector(L, block, node);
    return to_int(VecQ(to_rat(base) + Rat(mult) * w));
}

inline bool has_root(const RootSequence& seq, const VecI& v) {
    for (const Root& r : seq.roots)
        if (r.v == v) return true;
    return false;
}

inline std::map<long long, int> level_counts(const RootSequence& seq) {
    std::map<long long, int> out;
    for (const Root& r : seq.roots) ++out[r.level.convert_to<long long>()];
    return out;
}

inline RootSequence run(const std::string& expr, std::vector<Int> squares = {Int(2), Int(6)},
                        Int max_level = 200, int max_roots = 512) {
    VinbergConfig cfg;
    cfg.squares = std::move(squares);
    cfg.max_level = std::move(max_level);
    cfg.max_roots = max_roots;
    return run_vinberg(parse_lattice(expr), cfg);
}

}  // namespace testutil
