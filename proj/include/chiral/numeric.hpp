#pragma once

// Exact scalar types and dense matrix aliases used throughout the library.
// All arithmetic in the math core is exact: arbitrary-precision integers and
// rationals plugged into Eigen dense types. No floating point anywhere.

#include <boost/multiprecision/traits/is_byte_container.hpp>

// Boost 1.74's byte-container detection hard-errors on types whose
// const_iterator typedef is void (all two-dimensional Eigen expressions),
// and it is instantiated by mere conversion probes during overload
// resolution. Replace the trait for types that do carry a const_iterator
// typedef by a SFINAE-safe equivalent before cpp_int pulls it in.
namespace boost { namespace multiprecision { namespace detail {

template <class C>
struct is_byte_container_imp<C, true> {
    template <class U>
    static constexpr bool check(typename std::iterator_traits<typename U::const_iterator>::value_type*) {
        using vt = typename boost::remove_cv<
            typename std::iterator_traits<typename U::const_iterator>::value_type>::type;
        return boost::is_integral<vt>::value && sizeof(vt) == 1;
    }
    template <class U>
    static constexpr bool check(...) {
        return false;
    }
    static const bool value = check<C>(nullptr);
};

}}}  // namespace boost::multiprecision::detail

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace chiral {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using MatI = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using VecI = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using MatQ = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using VecQ = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

// Error used for all precondition violations; carries a stable code so the
// CLI can map failures to exit statuses.
struct chiral_error : std::runtime_error {
    std::string code;
    chiral_error(std::string c, const std::string& msg)
        : std::runtime_error(msg), code(std::move(c)) {}
};

inline MatQ to_rat(const MatI& m) {
    MatQ r(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
    return r;
}

inline VecQ to_rat(const VecI& v) {
    VecQ r(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) r(i) = Rat(v(i));
    return r;
}

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const Rat& q) { return den(q) == 1; }

inline bool is_integral(const VecQ& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!is_integral(v(i))) return false;
    return true;
}

inline VecI to_int(const VecQ& v) {
    VecI r(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!is_integral(v(i))) throw chiral_error("not_integral", "vector is not integral");
        r(i) = num(v(i));
    }
    return r;
}

inline bool is_integral(const MatQ& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (!is_integral(m(i, j))) return false;
    return true;
}

inline MatI to_int(const MatQ& m) {
    MatI r(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (!is_integral(m(i, j))) throw chiral_error("not_integral", "matrix is not integral");
            r(i, j) = num(m(i, j));
        }
    return r;
}

// Floor of sqrt for non-negative integers; exact square detection.
Int isqrt_floor(const Int& n);
bool is_perfect_square(const Int& n, Int& root);

// Exact inverse of a rational matrix (Gauss-Jordan with pivoting). Throws on
// singular input.
MatQ inverse(const MatQ& m);

// Exact determinant of an integer matrix (fraction-free Bareiss).
Int det(const MatI& m);

// Rank over Q.
int rank_of(const MatQ& m);

// Signature (n_plus, n_minus, n_zero) of an exact symmetric matrix via
// congruence diagonalization.
struct Signature {
    int plus = 0, minus = 0, zero = 0;
};
Signature signature_of(const MatQ& g);

inline std::string to_string(const Rat& q) {
    std::string s = num(q).str();
    if (den(q) != 1) s += "/" + den(q).str();
    return s;
}

}  // namespace chiral
