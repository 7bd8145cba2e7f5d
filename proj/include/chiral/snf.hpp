#pragma once

// Smith normal form over Z with unimodular transforms: A = U * S * V where S
// is diagonal with the invariant-factor divisibility chain. U, V and their
// inverses are all returned (ranks here are small, so we simply invert).

#include "chiral/numeric.hpp"

namespace chiral {

struct SmithForm {
    MatI S;     // diagonal, s_1 | s_2 | ... | s_r, rest zero
    MatI U, V;  // unimodular, A = U S V
    MatI Uinv, Vinv;
    int rank = 0;
    std::vector<Int> invariant_factors() const {  // nonzero diagonal entries
        std::vector<Int> f;
        for (int i = 0; i < rank; ++i) f.push_back(S(i, i));
        return f;
    }
};

SmithForm smith_form(const MatI& A);

}  // namespace chiral
