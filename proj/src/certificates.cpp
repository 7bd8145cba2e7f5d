#include "chiral/certificates.hpp"

#include "chiral/discriminant.hpp"
#include "chiral/expr.hpp"

#include <algorithm>
#include <set>

namespace chiral {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "chiral-certificate/1";

json int_to_json(const Int& x) { return json(x.convert_to<long long>()); }

json squares_to_json(const std::vector<Int>& squares) {
    json a = json::array();
    for (const Int& s : squares) a.push_back(int_to_json(s));
    return a;
}

std::vector<Int> squares_from_json(const json& j) {
    std::vector<Int> out;
    for (const auto& s : j) out.push_back(Int(s.get<long long>()));
    return out;
}

json roots_to_json(const std::vector<Root>& roots) {
    json a = json::array();
    for (const Root& r : roots) {
        json e;
        e["coords"] = vector_to_json(r.v);
        e["square"] = int_to_json(r.square);
        e["level"] = int_to_json(r.level);
        a.push_back(e);
    }
    return a;
}

json base_common(const std::string& kind, const std::string& expr, const char* verdict) {
    json c;
    c["format"] = kFormat;
    c["kind"] = kind;
    c["lattice"] = canonical_expr(expr);
    c["verdict"] = verdict;
    return c;
}

struct CheckedWalls {
    Lattice L;
    VecI p;
    std::vector<Int> squares;
    std::vector<Root> roots;
    std::vector<VecI> vecs;
    std::vector<VecI> sixes;
    std::vector<VecI> fours;
};

// Re-check every stored wall: root condition, level formula, side of the
// base point, pairwise non-obtuseness.
CheckedWalls check_walls(const json& cert) {
    CheckedWalls w;
    // extended-group certificates carry walls in the coordinates of the run
    // lattice, which represents the same class as the target
    std::string expr = cert.contains("run_lattice") ? cert.at("run_lattice").get<std::string>()
                                                    : cert.at("lattice").get<std::string>();
    w.L = parse_lattice(expr);
    w.p = vector_from_json(cert.at("base_point"));
    if (norm(w.L, w.p) >= 0) throw chiral_error("verify", "base point square not negative");
    w.squares = squares_from_json(cert.at("squares"));
    for (const auto& e : cert.at("roots")) {
        Root r;
        r.v = vector_from_json(e.at("coords"));
        r.square = Int(e.at("square").get<long long>());
        r.level = Int(e.at("level").get<long long>());
        if (norm(w.L, r.v) != r.square) throw chiral_error("verify", "stored square mismatch");
        if (!is_root(w.L, r.v, w.squares)) throw chiral_error("verify", "stored wall is not a root");
        if (level_of(w.L, w.p, r.v) != r.level) throw chiral_error("verify", "stored level mismatch");
        if (inner(w.L, w.p, r.v) > 0) throw chiral_error("verify", "wall on the wrong side of the base point");
        w.roots.push_back(r);
        w.vecs.push_back(r.v);
        if (r.square == 6) w.sixes.push_back(r.v);
        if (r.square == 4) w.fours.push_back(r.v);
    }
    for (std::size_t i = 0; i < w.vecs.size(); ++i)
        for (std::size_t j = i + 1; j < w.vecs.size(); ++j)
            if (inner(w.L, w.vecs[i], w.vecs[j]) > 0)
                throw chiral_error("verify", "wall system is not non-obtuse");
    return w;
}

bool walls_span_over_Z(const Lattice& L, const std::vector<VecI>& vecs) {
    if (vecs.empty()) return false;
    Saturation sat = saturation(L, vecs);
    return sat.basis.rows() == L.rank() && sat.index == 1;
}

bool walls_complete(const Lattice& L, const std::vector<VecI>& vecs) {
    if (Eigen::Index(vecs.size()) < L.rank()) return false;
    CoxeterGraph g = build_graph(L, vecs);
    return finite_volume_check(g, int(L.rank()) - 1).finite;
}

// no 2- or 6-roots by the doubled-lattice congruence: if every diagonal
// entry is divisible by 4 and every off-diagonal entry is even, all vector
// squares are divisible by 4
bool no_roots_by_congruence(const Lattice& L) {
    for (Eigen::Index i = 0; i < L.rank(); ++i) {
        if (L.gram(i, i) % 4 != 0) return false;
        for (Eigen::Index j = 0; j < L.rank(); ++j)
            if (i != j && L.gram(i, j) % 2 != 0) return false;
    }
    return true;
}

bool discr_period_divides_2(const Lattice& L) {
    DiscriminantGroup D = discriminant_group(L);
    for (const Int& o : D.orders)
        if (o != 2) return false;
    return true;
}

bool two_roots_span(const Lattice& Le) {
    Signature sig = signature(Le);
    if (sig.minus != 0 || sig.zero != 0) return false;
    auto vs = short_vectors(Le.gram, 2);
    if (vs.empty()) return false;
    Saturation sat = saturation(Le, vs);
    return sat.basis.rows() == Le.rank() && sat.index == 1;
}

bool same_class(const Lattice& a, const Lattice& b) {
    ClassInvariants ia = class_invariants(a), ib = class_invariants(b);
    return ia.rho == ib.rho && ia.d == ib.d && ia.parity == ib.parity;
}

// sheet-check vector for a sublattice given by rows of B inside L: the
// component of p orthogonal to the complement of the sublattice; here we
// simply project p onto the span of B over Q and clear denominators.
VecI project_to_rows(const Lattice& L, const MatI& B, const VecI& p) {
    // coords c solving (B G B^T) c = B G p; projection = B^T c
    MatQ gramB = to_rat(MatI(B * L.gram * B.transpose()));
    VecQ rhs = to_rat(VecI(B * L.gram * p));
    VecQ c = inverse(gramB) * rhs;
    Int denom = 1;
    for (Eigen::Index i = 0; i < c.size(); ++i) denom = boost::multiprecision::lcm(denom, den(c(i)));
    VecI out(c.size());
    for (Eigen::Index i = 0; i < c.size(); ++i) out(i) = num(c(i)) * (denom / den(c(i)));
    return out;  // coordinates in the rows of B
}

VerifyResult fail(const std::string& why) {
    VerifyResult r;
    r.ok = false;
    r.error = why;
    return r;
}

VerifyResult verify_impl(const json& cert, bool deep);

VerifyResult verify_direct_run(const json& cert, bool deep, bool extended) {
    CheckedWalls w = check_walls(cert);
    if (!walls_complete(w.L, w.vecs)) return fail("wall system is not a finite-volume chamber");
    if (deep) {
        VinbergConfig cfg;
        cfg.squares = w.squares;
        cfg.base_point = w.p;
        RootSequence seq = run_vinberg(w.L, cfg);
        if (!seq.complete) return fail("re-run did not terminate");
        if (seq.roots.size() != w.roots.size()) return fail("re-run produced a different wall count");
        for (std::size_t i = 0; i < w.roots.size(); ++i)
            if (seq.roots[i].v != w.roots[i].v) return fail("re-run produced different walls");
    }
    CoxeterGraph g = build_graph(w.L, w.vecs);
    for (const auto& perm : graph_symmetries(g)) {
        auto gi = realize_symmetry(w.L, w.vecs, perm);
        if (!gi) continue;
        if (!sheet_preserving(w.L, w.p, *gi)) continue;
        if (delta3(w.L, *gi, w.sixes) != 1) return fail("a chamber symmetry reverses the 3-torsion");
    }
    if (extended) {
        for (const VecI& v : w.fours)
            if (delta3(w.L, reflection(w.L, v), w.sixes) != 1)
                return fail("a square-4 wall reflection reverses the 3-torsion");
    }
    VerifyResult r;
    r.ok = true;
    r.verdict = "chiral";
    r.lattice = cert.at("lattice").get<std::string>();
    if (cert.contains("run_lattice")) {
        Lattice target = parse_lattice(r.lattice);
        Lattice run = parse_lattice(cert.at("run_lattice").get<std::string>());
        if (!same_class(target, run)) return fail("run lattice is not in the target class");
    }
    return r;
}

VerifyResult verify_achirality_symmetry(const json& cert, bool deep) {
    CheckedWalls w = check_walls(cert);
    if (!walls_span_over_Z(w.L, w.vecs) && !walls_complete(w.L, w.vecs))
        return fail("walls neither span over Z nor form a complete chamber");
    if (deep) {
        // the stored walls must all reappear in a fresh enumeration
        Int top = 0;
        for (const Root& r : w.roots) top = std::max(top, r.level);
        VinbergConfig cfg;
        cfg.squares = w.squares;
        cfg.base_point = w.p;
        cfg.max_level = top;
        cfg.max_roots = 4096;
        RootSequence seq = run_vinberg(w.L, cfg);
        for (const VecI& v : w.vecs) {
            bool present = false;
            for (const Root& r : seq.roots) present = present || r.v == v;
            if (!present) return fail("a stored wall is not produced by the enumeration");
        }
    }
    std::vector<int> perm = cert.at("perm").get<std::vector<int>>();
    if (perm.size() != w.vecs.size()) return fail("permutation length mismatch");
    MatI g = matrix_from_json(cert.at("matrix"));
    if (!is_isometry(w.L, g)) return fail("witness is not an isometry");
    for (std::size_t i = 0; i < w.vecs.size(); ++i)
        if (VecI(g * w.vecs[i]) != w.vecs[std::size_t(perm[i])])
            return fail("witness does not realize the stored wall permutation");
    if (!sheet_preserving(w.L, w.p, g)) return fail("witness swaps the sheets");
    if (delta3(w.L, g, w.sixes) != -1) return fail("witness does not reverse the 3-torsion");
    if (cert.at("delta3").get<int>() != -1) return fail("stored delta3 disagrees with the witness");
    VerifyResult r;
    r.ok = true;
    r.verdict = "achiral";
    r.lattice = cert.at("lattice").get<std::string>();
    return r;
}

VerifyResult verify_rootless(const json& cert, bool /*deep*/) {
    Lattice L = parse_lattice(cert.at("lattice").get<std::string>());
    if (!no_roots_by_congruence(L)) return fail("rootlessness congruence does not hold");
    MatI g = matrix_from_json(cert.at("matrix"));
    if (!is_isometry(L, g)) return fail("witness is not an isometry");
    VecI p = vector_from_json(cert.at("point"));
    if (norm(L, p) >= 0) return fail("test point square not negative");
    if (!sheet_preserving(L, p, g)) return fail("witness swaps the sheets");
    if (delta3_disc(L, g) != -1) return fail("witness does not reverse the 3-torsion");
    VerifyResult r;
    r.ok = true;
    r.verdict = "achiral";
    r.lattice = cert.at("lattice").get<std::string>();
    return r;
}

VerifyResult verify_extension(const json& cert, bool deep, bool restriction) {
    VerifyResult base = verify_impl(cert.at("input"), deep);
    if (!base.ok) return fail("input certificate: " + base.error);
    const char* need = restriction ? "chiral" : "achiral";
    if (base.verdict != need) return fail(std::string("input certificate is not ") + need);
    Lattice Le = parse_lattice(cert.at("summand").get<std::string>());
    if (!two_roots_span(Le)) return fail("summand is not generated by square-2 roots");
    if (!discr_period_divides_2(Le)) return fail("summand discriminant has period > 2");
    Lattice target = parse_lattice(cert.at("lattice").get<std::string>());
    Lattice inner_lat = parse_lattice(base.lattice);
    Lattice sum = restriction ? direct_sum(target, Le) : direct_sum(inner_lat, Le);
    const Lattice& cmp = restriction ? inner_lat : target;
    if (!same_class(sum, cmp)) return fail("class invariants do not match across the summand");
    VerifyResult r;
    r.ok = true;
    r.verdict = need;
    r.lattice = cert.at("lattice").get<std::string>();
    return r;
}

VerifyResult verify_reduction(const json& cert, bool deep) {
    const json& input = cert.at("input");
    VerifyResult base = verify_impl(input, deep);
    if (!base.ok) return fail("input certificate: " + base.error);
    if (base.verdict != "achiral" || input.at("kind") != "achirality_symmetry")
        return fail("input certificate is not a symmetry-based achirality witness");
    CheckedWalls w = check_walls(input);
    std::vector<int> perm = input.at("perm").get<std::vector<int>>();
    MatI g = matrix_from_json(input.at("matrix"));
    std::vector<int> J = cert.at("J").get<std::vector<int>>();
    std::set<int> Jset(J.begin(), J.end());
    if (Jset.empty() || *Jset.begin() < 0 || *Jset.rbegin() >= int(w.vecs.size()))
        return fail("J is not a subset of the wall indices");
    for (int i : Jset)
        if (!Jset.count(perm[std::size_t(i)])) return fail("J is not invariant under the witness");
    std::vector<VecI> roots_J;
    for (int i : Jset) roots_J.push_back(w.vecs[std::size_t(i)]);
    Lattice LJ = span_lattice(w.L, roots_J);
    Signature sig = signature(LJ);
    if (sig.minus != 0 || sig.zero != 0) return fail("J does not span an elliptic sublattice");
    Saturation sat = saturation(w.L, roots_J);
    if (sat.index != 1) return fail("J does not span a primitive sublattice");
    if (!discr_period_divides_2(LJ)) return fail("J-sublattice discriminant has period > 2");
    Sublattice K = orthogonal_complement(w.L, roots_J);
    // restrict the witness to the complement: columns C = basis^T,
    // g C = C H with H integral
    MatI C = K.basis.transpose();
    MatQ cq = to_rat(C);
    MatQ pseudo = inverse(MatQ(cq.transpose() * cq)) * cq.transpose();
    MatQ hq = pseudo * to_rat(MatI(g * C));
    if (!is_integral(hq)) return fail("witness does not restrict integrally to the complement");
    MatI H = to_int(hq);
    if (MatQ(to_rat(MatI(g * C)) - cq * hq) != MatQ::Zero(cq.rows(), hq.cols()))
        return fail("witness does not preserve the complement");
    Lattice Klat = K.lattice;
    if (!is_isometry(Klat, H)) return fail("restriction is not an isometry of the complement");
    if (delta3_disc(Klat, H) != -1) return fail("restriction does not reverse the 3-torsion");
    VecI pk = project_to_rows(w.L, K.basis, w.p);
    if (norm(Klat, pk) >= 0) return fail("projected base point is not negative on the complement");
    if (!sheet_preserving(Klat, pk, H)) return fail("restriction swaps the sheets of the complement");
    Lattice target = parse_lattice(cert.at("lattice").get<std::string>());
    if (!same_class(Klat, target)) return fail("complement invariants do not match the target class");
    VerifyResult r;
    r.ok = true;
    r.verdict = "achiral";
    r.lattice = cert.at("lattice").get<std::string>();
    return r;
}

VerifyResult verify_impl(const json& cert, bool deep) {
    try {
        if (cert.at("format") != kFormat) return fail("unknown certificate format");
        std::string kind = cert.at("kind").get<std::string>();
        std::string verdict = cert.at("verdict").get<std::string>();
        VerifyResult r;
        if (kind == "chirality_complete") r = verify_direct_run(cert, deep, false);
        else if (kind == "extended_group") r = verify_direct_run(cert, deep, true);
        else if (kind == "achirality_symmetry") r = verify_achirality_symmetry(cert, deep);
        else if (kind == "rootless") r = verify_rootless(cert, deep);
        else if (kind == "extension") r = verify_extension(cert, deep, false);
        else if (kind == "restriction") r = verify_extension(cert, deep, true);
        else if (kind == "reduction") r = verify_reduction(cert, deep);
        else return fail("unknown certificate kind: " + kind);
        if (r.ok && r.verdict != verdict) return fail("stored verdict does not match the checked one");
        return r;
    } catch (const std::exception& e) {
        return fail(std::string("exception: ") + e.what());
    }
}

}  // namespace

json vector_to_json(const VecI& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(int_to_json(v(i)));
    return a;
}

VecI vector_from_json(const json& j) {
    VecI v(Eigen::Index(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Int(j[std::size_t(i)].get<long long>());
    return v;
}

json matrix_to_json(const MatI& m) {
    json a = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(int_to_json(m(i, k)));
        a.push_back(row);
    }
    return a;
}

MatI matrix_from_json(const json& j) {
    Eigen::Index rows = Eigen::Index(j.size());
    Eigen::Index cols = rows ? Eigen::Index(j[0].size()) : 0;
    MatI m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index k = 0; k < cols; ++k)
            m(i, k) = Int(j[std::size_t(i)][std::size_t(k)].get<long long>());
    return m;
}

json root_sequence_to_json(const RootSequence& seq) {
    json j;
    j["lattice"] = print_expr(seq.L);
    j["base_point"] = vector_to_json(seq.p);
    j["squares"] = squares_to_json(seq.squares);
    j["roots"] = roots_to_json(seq.roots);
    j["status"] = seq.complete ? "complete" : "budget_exhausted";
    j["reached_level"] = int_to_json(seq.reached_level);
    return j;
}

json cert_chirality_complete(const Lattice& L, const std::string& expr, const RootSequence& seq,
                             const ChiralityResult& res) {
    if (res.verdict != Verdict::Chiral || !seq.complete)
        throw chiral_error("certificate", "only a verdict on a complete run can be certified");
    json c = base_common("chirality_complete", expr, "chiral");
    (void)L;
    c["base_point"] = vector_to_json(seq.p);
    c["squares"] = squares_to_json(seq.squares);
    c["roots"] = roots_to_json(seq.roots);
    c["symmetries"] = res.symmetries;
    c["realizable"] = res.realizable;
    return c;
}

json cert_achirality_symmetry(const Lattice& L, const std::string& expr, const RootSequence& seq,
                              const ChiralityWitness& w) {
    (void)L;
    json c = base_common("achirality_symmetry", expr, "achiral");
    c["base_point"] = vector_to_json(seq.p);
    c["squares"] = squares_to_json(seq.squares);
    std::vector<Root> listed = seq.roots;
    if (!w.subset.empty()) {
        listed.clear();
        for (int i : w.subset) listed.push_back(seq.roots[std::size_t(i)]);
    }
    c["roots"] = roots_to_json(listed);
    c["perm"] = w.perm;
    c["matrix"] = matrix_to_json(w.g);
    c["delta3"] = w.delta3;
    return c;
}

json cert_extended_group(const std::string& run_expr, const std::string& target_expr,
                         const RootSequence& seq, const ChiralityResult& res) {
    if (res.verdict != Verdict::Chiral || !seq.complete)
        throw chiral_error("certificate", "only a verdict on a complete run can be certified");
    json c = base_common("extended_group", target_expr, "chiral");
    c["run_lattice"] = canonical_expr(run_expr);
    c["base_point"] = vector_to_json(seq.p);
    c["squares"] = squares_to_json(seq.squares);
    c["roots"] = roots_to_json(seq.roots);
    c["symmetries"] = res.symmetries;
    c["realizable"] = res.realizable;
    return c;
}

json cert_rootless(const Lattice& L, const std::string& expr, const MatI& g, const VecI& p) {
    (void)L;
    json c = base_common("rootless", expr, "achiral");
    c["matrix"] = matrix_to_json(g);
    c["point"] = vector_to_json(p);
    return c;
}

json cert_extension(const std::string& target_expr, const std::string& summand_expr,
                    const json& base_cert) {
    json c = base_common("extension", target_expr, "achiral");
    c["summand"] = canonical_expr(summand_expr);
    c["input"] = base_cert;
    return c;
}

json cert_restriction(const std::string& target_expr, const std::string& summand_expr,
                      const json& base_cert) {
    json c = base_common("restriction", target_expr, "chiral");
    c["summand"] = canonical_expr(summand_expr);
    c["input"] = base_cert;
    return c;
}

json cert_reduction(const std::string& target_expr, const json& base_cert,
                    const std::vector<int>& J) {
    json c = base_common("reduction", target_expr, "achiral");
    c["J"] = J;
    c["input"] = base_cert;
    return c;
}

VerifyResult verify_certificate(const json& cert, bool deep) { return verify_impl(cert, deep); }

}  // namespace chiral
