#include "chiral/discriminant.hpp"

#include <nlohmann/json.hpp>

namespace chiral {

Rat mod2(const Rat& q) {
    Int n = num(q), d = den(q);
    Int two_d = 2 * d;
    Int r = n % two_d;
    if (r < 0) r += two_d;
    return Rat(r, d);
}

Rat mod1(const Rat& q) {
    Int n = num(q), d = den(q);
    Int r = n % d;
    if (r < 0) r += d;
    return Rat(r, d);
}

DiscriminantGroup discriminant_group(const Lattice& L) {
    if (!L.is_even()) throw chiral_error("not_even", "lattice is not even");
    if (det(L) == 0) throw chiral_error("degenerate", "degenerate lattice");
    SmithForm sf = smith_form(L.gram);
    DiscriminantGroup D;
    D.gram = L.gram;
    MatQ ginv = inverse(to_rat(L.gram));
    // L*/L = Z^n / gram Z^n under x -> (<x, b_j>)_j; with gram = U S V the
    // cyclic factor of order s_i is generated by the class of U e_i, whose
    // lift in L* has basis coordinates gram^{-1} U e_i.
    for (int i = 0; i < sf.rank; ++i) {
        Int s = sf.S(i, i);
        if (s == 1) continue;
        VecQ lift = ginv * to_rat(VecI(sf.U.col(i)));
        D.orders.push_back(s);
        D.lifts.push_back(lift);
    }
    return D;
}

VecQ disc_lift(const DiscriminantGroup& D, const std::vector<Int>& exps) {
    if (exps.size() != D.ngen()) throw chiral_error("shape", "exponent count mismatch");
    VecQ x = VecQ::Zero(D.gram.rows());
    for (std::size_t i = 0; i < exps.size(); ++i) x += Rat(exps[i]) * D.lifts[i];
    return x;
}

Rat disc_q(const DiscriminantGroup& D, const std::vector<Int>& exps) {
    VecQ x = disc_lift(D, exps);
    Rat v = (x.transpose() * to_rat(D.gram) * x)(0, 0);
    return mod2(v);
}

Rat disc_b(const DiscriminantGroup& D, const std::vector<Int>& xe, const std::vector<Int>& ye) {
    VecQ x = disc_lift(D, xe), y = disc_lift(D, ye);
    Rat v = (x.transpose() * to_rat(D.gram) * y)(0, 0);
    return mod1(v);
}

DiscriminantGroup primary_part(const DiscriminantGroup& D, const Int& p) {
    if (p < 2) throw chiral_error("domain", "primary part needs a prime");
    DiscriminantGroup P;
    P.gram = D.gram;
    for (std::size_t i = 0; i < D.ngen(); ++i) {
        Int s = D.orders[i], pe = 1;
        while (s % p == 0) { s /= p; pe *= p; }
        if (pe == 1) continue;
        // multiply the generator by the coprime part to isolate order p^e
        P.orders.push_back(pe);
        P.lifts.push_back(Rat(s) * D.lifts[i]);
    }
    return P;
}

TwoRankParity two_rank_and_parity(const DiscriminantGroup& D) {
    DiscriminantGroup two = primary_part(D, 2);
    for (const auto& o : two.orders)
        if (o != 2)
            throw chiral_error("not_two_elementary",
                               "2-part of the discriminant is not 2-elementary");
    TwoRankParity out;
    out.d = int(two.orders.size());
    out.parity = Parity::Even;
    // odd iff some element of the 2-part has q = +-1/2 mod 2
    const std::size_t k = two.orders.size();
    std::vector<Int> exps(k, 0);
    for (Int mask = 1; mask < (Int(1) << unsigned(k)); ++mask) {
        for (std::size_t i = 0; i < k; ++i)
            exps[i] = boost::multiprecision::bit_test(mask, unsigned(i)) ? 1 : 0;
        Rat q = disc_q(two, exps);
        if (den(q) == 2) {  // q = 1/2 or 3/2 mod 2
            out.parity = Parity::Odd;
            break;
        }
    }
    return out;
}

ClassInvariants class_invariants(const Lattice& L) {
    Signature sig = signature(L);
    if (sig.minus != 1 || sig.zero != 0)
        throw chiral_error("bad_signature", "lattice is not hyperbolic of signature (rho-1,1)");
    DiscriminantGroup D = discriminant_group(L);
    // discriminant must be (2-group) + Z/3 with the <6> form on the 3-part
    DiscriminantGroup three = primary_part(D, 3);
    if (three.orders.size() != 1 || three.orders[0] != 3)
        throw chiral_error("bad_discriminant", "3-part of the discriminant is not Z/3");
    if (disc_q(three, {1}) != Rat(2, 3))
        throw chiral_error("bad_discriminant", "3-part does not carry the <6> form");
    Int rest = D.order() / 3;
    while (rest % 2 == 0) rest /= 2;
    if (rest != 1)
        throw chiral_error("bad_discriminant", "discriminant has torsion away from 2 and 3");
    TwoRankParity tp = two_rank_and_parity(D);
    ClassInvariants out;
    out.rho = int(L.rank());
    out.d = tp.d;
    out.parity = tp.parity;
    return out;
}

nlohmann::json disc_to_json(const DiscriminantGroup& D) {
    nlohmann::json j;
    j["orders"] = nlohmann::json::array();
    for (const auto& o : D.orders) j["orders"].push_back(o.str());
    j["generators"] = nlohmann::json::array();
    for (std::size_t i = 0; i < D.ngen(); ++i) {
        nlohmann::json g;
        g["order"] = D.orders[i].str();
        g["lift"] = nlohmann::json::array();
        for (Eigen::Index k = 0; k < D.lifts[i].size(); ++k)
            g["lift"].push_back(to_string(D.lifts[i](k)));
        std::vector<Int> e(D.ngen(), 0);
        e[i] = 1;
        g["q"] = to_string(disc_q(D, e));
        j["generators"].push_back(g);
    }
    j["b"] = nlohmann::json::array();
    for (std::size_t i = 0; i < D.ngen(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < D.ngen(); ++k) {
            std::vector<Int> a(D.ngen(), 0), b(D.ngen(), 0);
            a[i] = 1;
            b[k] = 1;
            row.push_back(to_string(disc_b(D, a, b)));
        }
        j["b"].push_back(row);
    }
    return j;
}

const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

}  // namespace chiral
