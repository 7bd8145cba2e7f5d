#include "chiral/snf.hpp"

namespace chiral {

Int isqrt_floor(const Int& n) {
    if (n < 0) throw chiral_error("domain", "isqrt of negative");
    if (n == 0) return 0;
    Int x = Int(1) << (unsigned)((boost::multiprecision::msb(n) / 2) + 1);
    for (;;) {
        Int y = (x + n / x) / 2;
        if (y >= x) break;
        x = y;
    }
    return x;
}

bool is_perfect_square(const Int& n, Int& root) {
    if (n < 0) return false;
    root = isqrt_floor(n);
    return root * root == n;
}

MatQ inverse(const MatQ& m) {
    const Eigen::Index n = m.rows();
    if (n != m.cols()) throw chiral_error("shape", "inverse of non-square matrix");
    MatQ a = m;
    MatQ inv = MatQ::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) inv(i, i) = 1;
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index piv = -1;
        for (Eigen::Index r = c; r < n; ++r)
            if (a(r, c) != 0) { piv = r; break; }
        if (piv < 0) throw chiral_error("singular", "matrix is singular");
        if (piv != c) { a.row(piv).swap(a.row(c)); inv.row(piv).swap(inv.row(c)); }
        Rat d = a(c, c);
        for (Eigen::Index j = 0; j < n; ++j) { a(c, j) /= d; inv(c, j) /= d; }
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r == c || a(r, c) == 0) continue;
            Rat f = a(r, c);
            for (Eigen::Index j = 0; j < n; ++j) {
                a(r, j) -= f * a(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

Int det(const MatI& m) {
    const Eigen::Index n = m.rows();
    if (n != m.cols()) throw chiral_error("shape", "det of non-square matrix");
    if (n == 0) return 1;
    MatI a = m;
    Int prev = 1;
    int sign = 1;
    for (Eigen::Index k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            Eigen::Index piv = -1;
            for (Eigen::Index r = k + 1; r < n; ++r)
                if (a(r, k) != 0) { piv = r; break; }
            if (piv < 0) return 0;
            a.row(piv).swap(a.row(k));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i)
            for (Eigen::Index j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

int rank_of(const MatQ& m) {
    MatQ a = m;
    const Eigen::Index rows = a.rows(), cols = a.cols();
    int rank = 0;
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = r; i < rows; ++i)
            if (a(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        a.row(piv).swap(a.row(r));
        for (Eigen::Index i = r + 1; i < rows; ++i) {
            if (a(i, c) == 0) continue;
            Rat f = a(i, c) / a(r, c);
            for (Eigen::Index j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        ++rank;
        ++r;
    }
    return rank;
}

Signature signature_of(const MatQ& g) {
    const Eigen::Index n = g.rows();
    if (n != g.cols()) throw chiral_error("shape", "signature of non-square matrix");
    MatQ a = g;
    Signature sig;
    std::vector<bool> done(n, false);
    for (Eigen::Index step = 0; step < n; ++step) {
        // pick a pivot with nonzero diagonal
        Eigen::Index p = -1;
        for (Eigen::Index i = 0; i < n; ++i)
            if (!done[i] && a(i, i) != 0) { p = i; break; }
        if (p < 0) {
            // all remaining diagonal entries zero; find nonzero off-diagonal
            Eigen::Index bi = -1, bj = -1;
            for (Eigen::Index i = 0; i < n && bi < 0; ++i) {
                if (done[i]) continue;
                for (Eigen::Index j = 0; j < n; ++j) {
                    if (done[j] || j == i) continue;
                    if (a(i, j) != 0) { bi = i; bj = j; break; }
                }
            }
            if (bi < 0) {  // remaining block is zero
                for (Eigen::Index i = 0; i < n; ++i)
                    if (!done[i]) { ++sig.zero; done[i] = true; }
                break;
            }
            // congruence: row/col i += row/col j makes a(i,i) = 2 a(i,j) != 0
            a.row(bi) += a.row(bj);
            a.col(bi) += a.col(bj);
            p = bi;
        }
        Rat d = a(p, p);
        if (d > 0) ++sig.plus; else ++sig.minus;
        done[p] = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (done[i] || a(i, p) == 0) continue;
            Rat f = a(i, p) / d;
            a.row(i) -= f * a.row(p);
            a.col(i) -= f * a.col(p);
        }
    }
    return sig;
}

namespace {

// elementary row/col helpers tracking transforms
struct SnfWork {
    MatI A, U, V;  // invariant: original = U * A * V
    void row_swap(Eigen::Index i, Eigen::Index j) {
        A.row(i).swap(A.row(j));
        U.col(i).swap(U.col(j));
    }
    void col_swap(Eigen::Index i, Eigen::Index j) {
        A.col(i).swap(A.col(j));
        V.row(i).swap(V.row(j));
    }
    void row_add(Eigen::Index dst, Eigen::Index src, const Int& f) {
        A.row(dst) += f * A.row(src);   // original = U A V stays: U.col(src) -= f U.col(dst)
        U.col(src) -= f * U.col(dst);
    }
    void col_add(Eigen::Index dst, Eigen::Index src, const Int& f) {
        A.col(dst) += f * A.col(src);
        V.row(src) -= f * V.row(dst);
    }
    void row_neg(Eigen::Index i) {
        A.row(i) = -A.row(i);
        U.col(i) = -U.col(i);
    }
};

}  // namespace

SmithForm smith_form(const MatI& input) {
    const Eigen::Index rows = input.rows(), cols = input.cols();
    SnfWork w;
    w.A = input;
    w.U = MatI::Identity(rows, rows);
    w.V = MatI::Identity(cols, cols);

    const Eigen::Index rmax = std::min(rows, cols);
    Eigen::Index t = 0;
    while (t < rmax) {
        // find minimal nonzero pivot in remaining block
        Eigen::Index pi = -1, pj = -1;
        Int best = 0;
        for (Eigen::Index i = t; i < rows; ++i)
            for (Eigen::Index j = t; j < cols; ++j) {
                Int v = boost::multiprecision::abs(w.A(i, j));
                if (v != 0 && (pi < 0 || v < best)) { pi = i; pj = j; best = v; }
            }
        if (pi < 0) break;  // block is zero
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        if (w.A(t, t) < 0) w.row_neg(t);

        bool clean = true;
        for (Eigen::Index i = t + 1; i < rows; ++i) {
            if (w.A(i, t) == 0) continue;
            Int q = w.A(i, t) / w.A(t, t);
            w.row_add(i, t, -q);
            if (w.A(i, t) != 0) clean = false;
        }
        for (Eigen::Index j = t + 1; j < cols; ++j) {
            if (w.A(t, j) == 0) continue;
            Int q = w.A(t, j) / w.A(t, t);
            w.col_add(j, t, -q);
            if (w.A(t, j) != 0) clean = false;
        }
        if (!clean) continue;  // re-select a smaller pivot

        // enforce divisibility: pivot must divide everything below-right
        bool divides = true;
        for (Eigen::Index i = t + 1; i < rows && divides; ++i)
            for (Eigen::Index j = t + 1; j < cols && divides; ++j)
                if (w.A(i, j) % w.A(t, t) != 0) {
                    w.row_add(t, i, 1);  // bring the offending row into play
                    divides = false;
                }
        if (!divides) continue;
        ++t;
    }

    SmithForm out;
    out.S = MatI::Zero(rows, cols);
    out.rank = int(t);
    for (Eigen::Index i = 0; i < t; ++i) out.S(i, i) = w.A(i, i);
    out.U = w.U;
    out.V = w.V;
    out.Uinv = to_int(inverse(to_rat(w.U)));
    out.Vinv = to_int(inverse(to_rat(w.V)));
    return out;
}

}  // namespace chiral
