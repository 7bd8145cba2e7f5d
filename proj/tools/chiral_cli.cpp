// Command-line surface over the chirality library: lattice expressions in,
// root sequences / graphs / verdicts / certificates out.

#include "chiral/certificates.hpp"
#include "chiral/discriminant.hpp"
#include "chiral/expr.hpp"
#include "chiral/tables.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using chiral::Int;
using chiral::Lattice;
using chiral::MatI;
using chiral::VecI;
using nlohmann::json;

constexpr int kOk = 0, kUsage = 1, kBudget = 2, kVerifyFail = 3;

std::vector<Int> parse_squares(const std::string& s) {
    std::vector<Int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(Int(tok));
    if (out.empty()) throw CLI::ValidationError("--squares", "expected a comma-separated list");
    return out;
}

VecI parse_point(const std::string& s) {
    std::vector<Int> vals;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) vals.push_back(Int(tok));
    VecI p(Eigen::Index(vals.size()));
    for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = vals[std::size_t(i)];
    return p;
}

chiral::RootSequence run(const Lattice& L, const std::vector<Int>& squares, const Int& max_level,
                         int max_roots, const std::string& point) {
    chiral::VinbergConfig cfg;
    cfg.squares = squares;
    cfg.max_level = max_level;
    cfg.max_roots = max_roots;
    if (!point.empty()) cfg.base_point = parse_point(point);
    return run_vinberg(L, cfg);
}

// achirality of a lattice without roots: a sheet-preserving involution that
// is -1 away from the block holding the base point
std::optional<json> try_rootless(const Lattice& L, const std::string& expr) {
    for (Eigen::Index i = 0; i < L.rank(); ++i) {
        if (L.gram(i, i) % 4 != 0) return std::nullopt;
        for (Eigen::Index j = 0; j < L.rank(); ++j)
            if (i != j && L.gram(i, j) % 2 != 0) return std::nullopt;
    }
    MatI g = MatI::Zero(L.rank(), L.rank());
    for (std::size_t b = 0; b < L.blocks.size(); ++b)
        for (int i = 0; i < L.blocks[b].rank; ++i) {
            Eigen::Index k = L.blocks[b].offset + i;
            g(k, k) = (b == 0) ? 1 : -1;
        }
    json cert = chiral::cert_rootless(L, expr, g, chiral::default_base_point(L));
    if (!chiral::verify_certificate(cert).ok) return std::nullopt;
    return cert;
}

int cmd_info(const std::string& expr) {
    Lattice L = chiral::parse_lattice(expr);
    json j;
    j["lattice"] = chiral::canonical_expr(expr);
    auto sig = signature(L);
    j["signature"] = {sig.plus, sig.minus};
    j["det"] = chiral::det(L).str();
    j["even"] = L.is_even();
    j["discriminant"] = disc_to_json(discriminant_group(L));
    try {
        chiral::ClassInvariants ci = class_invariants(L);
        j["rho"] = ci.rho;
        j["d"] = ci.d;
        j["parity"] = to_string(ci.parity);
    } catch (const chiral::chiral_error&) {
        j["rho"] = nullptr;  // not in the family covered by the tables
    }
    std::cout << j.dump(2) << '\n';
    return kOk;
}

int cmd_chirality(const std::string& expr, const Int& max_level, int max_roots,
                  const std::string& out_path) {
    Lattice L = chiral::parse_lattice(expr);
    json cert;
    std::string verdict;
    if (auto rc = try_rootless(L, expr)) {
        cert = *rc;
        verdict = "achiral";
    } else {
        chiral::RootSequence seq = run(L, {Int(2), Int(6)}, max_level, max_roots, "");
        chiral::ChiralityResult res = decide_chirality(L, seq);
        if (res.verdict == chiral::Verdict::Achiral) {
            cert = cert_achirality_symmetry(L, expr, seq, *res.witness);
            verdict = "achiral";
        } else if (res.verdict == chiral::Verdict::Chiral) {
            cert = cert_chirality_complete(L, expr, seq, res);
            verdict = "chiral";
        } else {
            // widen the reflection group by the square-4 walls and retry
            chiral::RootSequence ext = run(L, {Int(2), Int(4), Int(6)}, max_level, max_roots, "");
            chiral::ChiralityResult eres = decide_chirality_extended(L, ext);
            if (eres.verdict == chiral::Verdict::Achiral) {
                cert = cert_achirality_symmetry(L, expr, ext, *eres.witness);
                verdict = "achiral";
            } else if (eres.verdict == chiral::Verdict::Chiral) {
                cert = cert_extended_group(expr, expr, ext, eres);
                verdict = "chiral";
            } else {
                std::cerr << "undecided within the budget (max level " << max_level << ", max roots "
                          << max_roots << ")\n";
                return kBudget;
            }
        }
    }
    chiral::VerifyResult vr = chiral::verify_certificate(cert);
    if (!vr.ok) {
        std::cerr << "internal error: produced certificate fails verification: " << vr.error << '\n';
        return kVerifyFail;
    }
    std::ofstream out(out_path);
    out << cert.dump(2) << '\n';
    std::cout << chiral::canonical_expr(expr) << ": " << verdict << " (certificate: " << out_path
              << ")\n";
    return kOk;
}

int cmd_tables(const std::string& parity, const std::string& emit, const std::string& plan_path) {
    std::ifstream in(plan_path);
    if (!in) {
        std::cerr << "cannot open plan file " << plan_path << '\n';
        return kUsage;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    chiral::ClassificationReport rep = run_classification(chiral::parse_plan(buf.str()));
    if (emit == "table1") {
        std::cout << table1_markdown(rep);
        return kOk;
    }
    for (const chiral::TableEntry& e : rep.entries) {
        if (parity == "even" && e.parity != chiral::Parity::Even) continue;
        if (parity == "odd" && e.parity != chiral::Parity::Odd) continue;
        std::cout << e.expr << "  rho=" << e.rho << " d=" << e.d << " " << to_string(e.parity)
                  << "  " << (e.verdict.empty() ? "unsettled" : e.verdict) << "  [" << e.derived_by
                  << "]\n";
    }
    std::cout << "chiral: " << rep.chiral << ", achiral: " << rep.achiral
              << ", unsettled: " << rep.unsettled << '\n';
    return rep.unsettled == 0 ? kOk : kBudget;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact chirality computations for even hyperbolic lattices"};
    app.require_subcommand(1);

    std::string expr, squares_s = "2,6", point, format = "dot", cert_path, out_path = "certificate.json";
    std::string parity = "all", emit, plan_path = chiral::default_plan_path();
    std::string max_level_s = "200";
    int max_roots = 512;
    bool deep = false;

    auto* info = app.add_subcommand("info", "invariants and discriminant form");
    info->add_option("expr", expr);

    auto* vinberg = app.add_subcommand("vinberg", "enumerate the fundamental chamber walls");
    vinberg->add_option("expr", expr);
    vinberg->add_option("--squares", squares_s, "root squares, e.g. 2,6 or 2,4,6");
    vinberg->add_option("--max-level", max_level_s);
    vinberg->add_option("--max-roots", max_roots);
    vinberg->add_option("--point", point, "base point coordinates, comma-separated");

    auto* graph = app.add_subcommand("graph", "Coxeter graph of the chamber");
    graph->add_option("expr", expr);
    graph->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));
    graph->add_option("--squares", squares_s);
    graph->add_option("--max-level", max_level_s);

    auto* volume = app.add_subcommand("volume", "finite-volume report for the chamber");
    volume->add_option("expr", expr);
    volume->add_option("--squares", squares_s);
    volume->add_option("--max-level", max_level_s);

    auto* symmetries = app.add_subcommand("symmetries", "symmetries of the chamber graph");
    symmetries->add_option("expr", expr);
    symmetries->add_option("--squares", squares_s);
    symmetries->add_option("--max-level", max_level_s);

    auto* chirality = app.add_subcommand("chirality", "decide chirality and emit a certificate");
    chirality->add_option("expr", expr);
    chirality->add_option("--max-level", max_level_s);
    chirality->add_option("--max-roots", max_roots);
    chirality->add_option("-o,--output", out_path, "certificate file to write");

    auto* verify = app.add_subcommand("verify", "re-check a certificate");
    verify->add_option("file", cert_path)->required();
    verify->add_flag("--deep", deep, "re-run the wall enumerations");

    auto* tables = app.add_subcommand("tables", "run the full classification");
    tables->add_option("--parity", parity)->check(CLI::IsMember({"even", "odd", "all"}));
    tables->add_option("--emit", emit)->check(CLI::IsMember({"table1"}));
    tables->add_option("--plan", plan_path, "derivation plan file");

    // lattice expressions may start with '-' (e.g. -A1+<6>); pull them out
    // before option parsing so they are not mistaken for flags
    std::vector<std::string> args;
    std::string negative_expr;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a.size() > 1 && a[0] == '-' && (std::isupper(a[1]) || a[1] == '<'))
            negative_expr = a;
        else
            args.push_back(a);
    }
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    if (!negative_expr.empty() && expr.empty()) expr = negative_expr;
    if (expr.empty() &&
        (info->parsed() || vinberg->parsed() || graph->parsed() || volume->parsed() ||
         symmetries->parsed() || chirality->parsed())) {
        std::cerr << "expr is required\n";
        return kUsage;
    }

    try {
        Int max_level(max_level_s);
        if (info->parsed()) return cmd_info(expr);
        if (vinberg->parsed()) {
            Lattice L = chiral::parse_lattice(expr);
            chiral::RootSequence seq = run(L, parse_squares(squares_s), max_level, max_roots, point);
            std::cout << root_sequence_to_json(seq).dump(2) << '\n';
            return seq.complete ? kOk : kBudget;
        }
        if (graph->parsed() || volume->parsed() || symmetries->parsed()) {
            Lattice L = chiral::parse_lattice(expr);
            chiral::RootSequence seq = run(L, parse_squares(squares_s), max_level, max_roots, "");
            std::vector<VecI> walls;
            for (const auto& r : seq.roots) walls.push_back(r.v);
            chiral::CoxeterGraph g = build_graph(L, walls);
            if (graph->parsed()) {
                std::cout << (format == "dot" ? emit_dot(g) : graph_to_json(g)) << '\n';
                return kOk;
            }
            if (volume->parsed()) {
                chiral::VolumeReport rep = finite_volume_check(g, int(L.rank()) - 1);
                json j;
                j["walls"] = walls.size();
                j["status"] = seq.complete ? "complete" : "budget_exhausted";
                j["finite_volume"] = rep.finite;
                j["elliptic_witnesses"] = rep.vertex_sets;
                j["cusp_witnesses"] = rep.cusp_sets;
                j["lanner_subdiagrams"] = lanner_subdiagrams(g);
                std::cout << j.dump(2) << '\n';
                return kOk;
            }
            json j = json::array();
            for (const auto& perm : graph_symmetries(g)) {
                json e;
                e["perm"] = perm;
                auto gi = realize_symmetry(L, walls, perm);
                e["realizable"] = bool(gi);
                if (gi) {
                    e["matrix"] = chiral::matrix_to_json(*gi);
                    e["sheet_preserving"] = sheet_preserving(L, seq.p, *gi);
                }
                j.push_back(e);
            }
            std::cout << j.dump(2) << '\n';
            return kOk;
        }
        if (chirality->parsed()) return cmd_chirality(expr, max_level, max_roots, out_path);
        if (verify->parsed()) {
            std::ifstream in(cert_path);
            if (!in) {
                std::cerr << "cannot open " << cert_path << '\n';
                return kUsage;
            }
            json cert = json::parse(in);
            chiral::VerifyResult vr = chiral::verify_certificate(cert, deep);
            if (vr.ok) {
                std::cout << "ok: " << vr.lattice << " is " << vr.verdict << '\n';
                return kOk;
            }
            std::cout << "FAIL: " << vr.error << '\n';
            return kVerifyFail;
        }
        if (tables->parsed()) return cmd_tables(parity, emit, plan_path);
    } catch (const chiral::chiral_error& e) {
        std::cerr << "error (" << e.code << "): " << e.what() << '\n';
        return e.code == "budget" ? kBudget : kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
