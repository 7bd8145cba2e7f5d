#include "chiral/tables.hpp"

#include "chiral/discriminant.hpp"
#include "chiral/expr.hpp"

#include <algorithm>
#include <sstream>

namespace chiral {

using nlohmann::json;

namespace {

TableEntry entry(const std::string& expr, int rho, int d, Parity parity) {
    TableEntry e;
    e.expr = canonical_expr(expr);
    e.rho = rho;
    e.d = d;
    e.parity = parity;
    return e;
}

std::string with_A1(const std::string& prefix, int t) {
    if (t == 0) return prefix;
    if (t == 1) return prefix + "+A1";
    return prefix + "+" + std::to_string(t) + "A1";
}

}  // namespace

std::vector<TableEntry> even_entries() {
    std::vector<TableEntry> out;
    auto add = [&](const std::string& e, int rho, int d) {
        out.push_back(entry(e, rho, d, Parity::Even));
    };
    add("U+A2", 4, 0);
    add("U(2)+A2", 4, 2);
    add("U+A2+D4", 8, 2);
    add("U(2)+A2+D4", 8, 4);
    add("U+E6(2)", 8, 6);
    add("U(2)+E6(2)", 8, 8);
    add("U+A2+E8", 12, 0);
    add("U(2)+A2+E8", 12, 2);
    add("U+A2+2D4", 12, 4);
    add("U(2)+A2+2D4", 12, 6);
    add("U+E6(2)+D4", 12, 8);
    add("U(2)+E6(2)+D4", 12, 10);
    add("U+A2+D4+E8", 16, 2);
    add("U(2)+A2+D4+E8", 16, 4);
    add("U+A2+2E8", 20, 0);
    add("U(2)+A2+2E8", 20, 2);
    return out;
}

std::vector<TableEntry> odd_entries() {
    struct Row {
        const char* prefix;
        int rank0;     // rank at t = 0
        int d_offset;  // d = t + d_offset
        int t_lo, t_hi;
    };
    static const Row rows[] = {
        {"-A1+<6>", 2, 2, 0, 9},      {"-A1+A2", 3, 1, 0, 9},
        {"U+A2", 4, 0, 1, 9},         {"U+A2+D4", 8, 2, 1, 6},
        {"-A1+<6>+E8", 10, 2, 0, 5},  {"-A1+A2+E8", 11, 1, 0, 5},
        {"U+A2+E8", 12, 0, 1, 5},     {"U+A2+D4+E8", 16, 2, 1, 2},
        {"-A1+<6>+2E8", 18, 2, 0, 1}, {"-A1+A2+2E8", 19, 1, 0, 1},
        {"U+A2+2E8", 20, 0, 1, 1},
    };
    std::vector<TableEntry> out;
    for (const Row& r : rows)
        for (int t = r.t_lo; t <= r.t_hi; ++t)
            out.push_back(entry(with_A1(r.prefix, t), r.rank0 + t, t + r.d_offset, Parity::Odd));
    return out;
}

std::vector<TableEntry> all_entries() {
    std::vector<TableEntry> out = even_entries();
    std::vector<TableEntry> odd = odd_entries();
    out.insert(out.end(), odd.begin(), odd.end());
    return out;
}

std::vector<PlanStep> parse_plan(const std::string& text) {
    std::vector<PlanStep> plan;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        if (tok != "step") throw chiral_error("plan", "line " + std::to_string(lineno) + ": expected 'step'");
        PlanStep s;
        s.line = lineno;
        if (!(ls >> s.kind)) throw chiral_error("plan", "line " + std::to_string(lineno) + ": missing kind");
        while (ls >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos)
                throw chiral_error("plan", "line " + std::to_string(lineno) + ": expected key=value, got " + tok);
            std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "lattice") s.lattice = val;
            else if (key == "run") s.run = val;
            else if (key == "base") s.base = val;
            else if (key == "summand") s.summand = val;
            else if (key == "max_level") s.max_level = Int(val);
            else if (key == "max_roots") s.max_roots = std::stoi(val);
            else if (key == "J") {
                auto x = val.find('x');
                if (x == std::string::npos)
                    throw chiral_error("plan", "line " + std::to_string(lineno) + ": J must be <n>x<A1|D4>");
                s.J_count = std::stoi(val.substr(0, x));
                s.J_type = val.substr(x + 1);
                if ((s.J_type != "A1" && s.J_type != "D4") || s.J_count <= 0)
                    throw chiral_error("plan", "line " + std::to_string(lineno) + ": J must be <n>x<A1|D4>");
            } else
                throw chiral_error("plan", "line " + std::to_string(lineno) + ": unknown key " + key);
        }
        if (s.lattice.empty())
            throw chiral_error("plan", "line " + std::to_string(lineno) + ": missing lattice=");
        plan.push_back(s);
    }
    return plan;
}

std::string default_plan_path() { return std::string(CHIRAL_DATA_DIR) + "/derivation.plan"; }

namespace {

[[noreturn]] void step_fail(const PlanStep& s, const std::string& why) {
    throw chiral_error("plan", "step at line " + std::to_string(s.line) + " (" + s.kind + " " +
                                   s.lattice + "): " + why);
}

RootSequence run_step(const Lattice& L, const PlanStep& s, std::vector<Int> squares) {
    VinbergConfig cfg;
    cfg.squares = std::move(squares);
    cfg.max_level = s.max_level;
    cfg.max_roots = s.max_roots;
    return run_vinberg(L, cfg);
}

json make_direct(const PlanStep& s, bool extended) {
    std::string run_expr = extended && !s.run.empty() ? s.run : s.lattice;
    Lattice L = parse_lattice(run_expr);
    std::vector<Int> squares =
        extended ? std::vector<Int>{Int(2), Int(4), Int(6)} : std::vector<Int>{Int(2), Int(6)};
    RootSequence seq = run_step(L, s, squares);
    if (!seq.complete) step_fail(s, "wall enumeration did not terminate within the budget");
    ChiralityResult res = extended ? decide_chirality_extended(L, seq) : decide_chirality(L, seq);
    if (res.verdict != Verdict::Chiral) step_fail(s, "run did not establish chirality");
    return extended ? cert_extended_group(run_expr, s.lattice, seq, res)
                    : cert_chirality_complete(L, s.lattice, seq, res);
}

json make_achirality(const PlanStep& s) {
    Lattice L = parse_lattice(s.lattice);
    RootSequence seq = run_step(L, s, {Int(2), Int(6)});
    ChiralityResult res = decide_chirality(L, seq);
    if (res.verdict != Verdict::Achiral || !res.witness)
        step_fail(s, "run did not produce an achirality witness");
    return cert_achirality_symmetry(L, s.lattice, seq, *res.witness);
}

json make_rootless(const PlanStep& s) {
    Lattice L = parse_lattice(s.lattice);
    // witness: identity on the block holding the base point, -1 elsewhere
    MatI g = MatI::Zero(L.rank(), L.rank());
    for (std::size_t b = 0; b < L.blocks.size(); ++b)
        for (int i = 0; i < L.blocks[b].rank; ++i) {
            Eigen::Index k = L.blocks[b].offset + i;
            g(k, k) = (b == 0) ? 1 : -1;
        }
    return cert_rootless(L, s.lattice, g, default_base_point(L));
}

json make_reduction(const PlanStep& s, const json& base_cert) {
    if (base_cert.at("kind") != "achirality_symmetry")
        step_fail(s, "reduction input must be a symmetry-based achirality certificate");
    Lattice L = parse_lattice(base_cert.at("lattice").get<std::string>());
    std::vector<VecI> walls;
    for (const auto& e : base_cert.at("roots")) walls.push_back(vector_from_json(e.at("coords")));
    std::vector<int> perm = base_cert.at("perm").get<std::vector<int>>();
    int n = int(walls.size());
    // J must be invariant under the witness, so build it from whole cycles
    std::vector<std::vector<int>> cycles;
    std::vector<bool> seen(std::size_t(n), false);
    for (int i = 0; i < n; ++i) {
        if (seen[std::size_t(i)]) continue;
        std::vector<int> cyc;
        for (int j = i; !seen[std::size_t(j)]; j = perm[std::size_t(j)]) {
            seen[std::size_t(j)] = true;
            cyc.push_back(j);
        }
        bool square2 = std::all_of(cyc.begin(), cyc.end(), [&](int j) {
            return norm(L, walls[std::size_t(j)]) == 2;
        });
        if (square2) cycles.push_back(cyc);
    }
    int want = s.J_count * (s.J_type == "D4" ? 4 : 1);
    std::string want_name;
    for (int i = 0; i < s.J_count; ++i) want_name += (i ? "+" : "") + s.J_type;
    CoxeterGraph graph = build_graph(L, walls);
    json found;
    // depth-first over cycle unions of the right total size
    std::vector<int> J;
    auto search = [&](auto&& self, std::size_t from) -> bool {
        if (int(J.size()) == want) {
            std::vector<int> idx = J;
            std::sort(idx.begin(), idx.end());
            if (diagram_name(graph, idx) != want_name) return false;
            json cand = cert_reduction(s.lattice, base_cert, idx);
            if (!verify_certificate(cand).ok) return false;
            found = std::move(cand);
            return true;
        }
        for (std::size_t c = from; c < cycles.size(); ++c) {
            if (int(J.size() + cycles[c].size()) > want) continue;
            J.insert(J.end(), cycles[c].begin(), cycles[c].end());
            if (self(self, c + 1)) return true;
            J.resize(J.size() - cycles[c].size());
        }
        return false;
    };
    if (!search(search, 0))
        step_fail(s, "no invariant " + std::to_string(s.J_count) + "x" + s.J_type +
                         " subsystem admits the reduction");
    return found;
}

}  // namespace

ClassificationReport run_classification(const std::vector<PlanStep>& plan) {
    ClassificationReport rep;
    rep.entries = all_entries();
    std::map<std::tuple<int, int, int>, std::size_t> by_class;
    for (std::size_t i = 0; i < rep.entries.size(); ++i) {
        const TableEntry& e = rep.entries[i];
        // the tabled invariants must agree with the computed ones
        ClassInvariants ci = class_invariants(parse_lattice(e.expr));
        if (ci.rho != e.rho || ci.d != e.d || ci.parity != e.parity)
            throw chiral_error("tables", "tabled invariants disagree for " + e.expr);
        by_class[{e.parity == Parity::Even ? 0 : 1, e.rho, e.d}] = i;
    }
    for (const PlanStep& s : plan) {
        json cert;
        if (s.kind == "chirality_complete") cert = make_direct(s, false);
        else if (s.kind == "extended_group") cert = make_direct(s, true);
        else if (s.kind == "achirality_symmetry") cert = make_achirality(s);
        else if (s.kind == "rootless") cert = make_rootless(s);
        else if (s.kind == "extension" || s.kind == "restriction" || s.kind == "reduction") {
            auto it = rep.certificates.find(canonical_expr(s.base));
            if (it == rep.certificates.end()) step_fail(s, "base certificate not derived yet: " + s.base);
            if (s.kind == "extension") cert = cert_extension(s.lattice, s.summand, it->second);
            else if (s.kind == "restriction") cert = cert_restriction(s.lattice, s.summand, it->second);
            else cert = make_reduction(s, it->second);
        } else
            step_fail(s, "unknown step kind");
        VerifyResult vr = verify_certificate(cert);
        if (!vr.ok) step_fail(s, "certificate failed verification: " + vr.error);
        ClassInvariants ci = class_invariants(parse_lattice(s.lattice));
        auto it = by_class.find({ci.parity == Parity::Even ? 0 : 1, ci.rho, ci.d});
        if (it == by_class.end()) step_fail(s, "target class is not in the tables");
        TableEntry& e = rep.entries[it->second];
        if (!e.verdict.empty() && e.verdict != vr.verdict)
            step_fail(s, "conflicting verdicts for " + e.expr);
        e.verdict = vr.verdict;
        e.derived_by = cert.at("kind").get<std::string>();
        rep.certificates[canonical_expr(s.lattice)] = std::move(cert);
    }
    for (const TableEntry& e : rep.entries) {
        if (e.verdict == "chiral") ++rep.chiral;
        else if (e.verdict == "achiral") ++rep.achiral;
        else ++rep.unsettled;
    }
    return rep;
}

namespace {

struct Cell {
    std::string odd, even;
    std::string render() const {
        if (odd.empty() && even.empty()) return "";
        std::string bold = even.empty() ? "" : "**" + even + "**";
        if (odd.empty()) return bold;
        if (even.empty()) return odd;
        return odd + "(" + bold + ")";
    }
};

std::map<std::pair<int, int>, Cell> grid_of(const ClassificationReport& rep) {
    std::map<std::pair<int, int>, Cell> grid;
    for (const TableEntry& e : rep.entries) {
        std::string letter = e.verdict.empty() ? "?" : std::string(1, e.verdict[0]);
        Cell& c = grid[{e.d, e.rho}];
        (e.parity == Parity::Odd ? c.odd : c.even) = letter;
    }
    return grid;
}

}  // namespace

std::string table1_markdown(const ClassificationReport& rep) {
    auto grid = grid_of(rep);
    int rho_lo = 2, rho_hi = 21, d_hi = 11;
    std::ostringstream out;
    out << "| d \\ rho |";
    for (int r = rho_lo; r <= rho_hi; ++r) out << ' ' << r << " |";
    out << '\n' << "|---|";
    for (int r = rho_lo; r <= rho_hi; ++r) out << "---|";
    out << '\n';
    for (int d = d_hi; d >= 0; --d) {
        out << "| " << d << " |";
        for (int r = rho_lo; r <= rho_hi; ++r) {
            auto it = grid.find({d, r});
            out << ' ' << (it == grid.end() ? std::string() : it->second.render()) << " |";
        }
        out << '\n';
    }
    return out.str();
}

json table1_json(const ClassificationReport& rep) {
    json j;
    j["chiral"] = rep.chiral;
    j["achiral"] = rep.achiral;
    j["unsettled"] = rep.unsettled;
    // a chiral class consists of two enantiomorphic pure deformation classes
    j["pure_classes"] = rep.achiral + 2 * rep.chiral;
    j["entries"] = json::array();
    for (const TableEntry& e : rep.entries) {
        json je;
        je["lattice"] = e.expr;
        je["rho"] = e.rho;
        je["d"] = e.d;
        je["parity"] = to_string(e.parity);
        je["verdict"] = e.verdict;
        je["derived_by"] = e.derived_by;
        j["entries"].push_back(je);
    }
    auto grid = grid_of(rep);
    json cells = json::array();
    for (const auto& [key, cell] : grid) {
        json c;
        c["d"] = key.first;
        c["rho"] = key.second;
        c["cell"] = cell.render();
        cells.push_back(c);
    }
    j["grid"] = cells;
    return j;
}

}  // namespace chiral
