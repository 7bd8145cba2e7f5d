// Certificates: production and verification of every kind, plus a mutation
// suite showing the verifier rejects tampered documents.

#include "chiral/certificates.hpp"

#include <doctest.h>

#include <string>

#include "chiral/expr.hpp"
#include "chiral/tables.hpp"
#include "util.hpp"

using namespace chiral;
using nlohmann::json;

namespace {

json chiral_cert(const std::string& expr, Int max_level = 200) {
    Lattice L = parse_lattice(expr);
    auto seq = testutil::run(expr, {Int(2), Int(6)}, max_level);
    REQUIRE(seq.complete);
    auto res = decide_chirality(L, seq);
    REQUIRE(res.verdict == Verdict::Chiral);
    return cert_chirality_complete(L, expr, seq, res);
}

json achiral_cert(const std::string& expr, Int max_level = 200) {
    Lattice L = parse_lattice(expr);
    auto seq = testutil::run(expr, {Int(2), Int(6)}, max_level);
    auto res = decide_chirality(L, seq);
    REQUIRE(res.verdict == Verdict::Achiral);
    REQUIRE(res.witness);
    return cert_achirality_symmetry(L, expr, seq, *res.witness);
}

void expect_ok(const json& cert, const std::string& verdict) {
    VerifyResult r = verify_certificate(cert);
    INFO(r.error);
    CHECK(r.ok);
    CHECK(r.verdict == verdict);
}

void expect_reject(json cert, void (*mutate)(json&)) {
    mutate(cert);
    CHECK_FALSE(verify_certificate(cert).ok);
}

}  // namespace

TEST_CASE("chirality certificate from a complete run") {
    json cert = chiral_cert("U+A2");
    CHECK(cert.at("kind") == "chirality_complete");
    expect_ok(cert, "chiral");
    VerifyResult deep = verify_certificate(cert, true);
    INFO(deep.error);
    CHECK(deep.ok);
}

TEST_CASE("achirality certificate with a wall-system symmetry") {
    json cert = achiral_cert("-A1+<6>+2A1", 16);
    CHECK(cert.at("kind") == "achirality_symmetry");
    CHECK(cert.at("delta3") == -1);
    expect_ok(cert, "achiral");
    VerifyResult deep = verify_certificate(cert, true);
    INFO(deep.error);
    CHECK(deep.ok);
}

TEST_CASE("extended-group certificate transfers a verdict between classes") {
    std::string run_expr = "-A1+A2+4A1";
    Lattice L = parse_lattice(run_expr);
    auto seq = testutil::run(run_expr, {Int(2), Int(4), Int(6)});
    REQUIRE(seq.complete);
    auto res = decide_chirality_extended(L, seq);
    REQUIRE(res.verdict == Verdict::Chiral);
    json cert = cert_extended_group(run_expr, run_expr, seq, res);
    CHECK(cert.at("kind") == "extended_group");
    expect_ok(cert, "chiral");
}

TEST_CASE("rootless certificate") {
    Lattice L = parse_lattice("U(2)+E6(2)");
    MatI g = MatI::Identity(L.rank(), L.rank());
    for (Eigen::Index i = 2; i < L.rank(); ++i) g(i, i) = -1;
    json cert = cert_rootless(L, "U(2)+E6(2)", g, default_base_point(L));
    CHECK(cert.at("kind") == "rootless");
    expect_ok(cert, "achiral");
    // the same construction must be rejected on a lattice that has roots
    Lattice M = parse_lattice("U+A2");
    MatI h = MatI::Identity(4, 4);
    h(2, 2) = -1;
    h(3, 3) = -1;
    json bad = cert_rootless(M, "U+A2", h, default_base_point(M));
    CHECK_FALSE(verify_certificate(bad).ok);
}

TEST_CASE("extension and restriction by a definite summand") {
    json base = achiral_cert("U(2)+A2+D4", 48);
    json ext = cert_extension("U(2)+A2+2D4", "D4", base);
    CHECK(ext.at("kind") == "extension");
    expect_ok(ext, "achiral");

    json cbase = chiral_cert("-A1+<6>+A1");
    json res = cert_restriction("-A1+<6>", "A1", cbase);
    CHECK(res.at("kind") == "restriction");
    expect_ok(res, "chiral");
}

TEST_CASE("reduction along an invariant definite subsystem, via a plan") {
    std::string plan_text =
        "step achirality_symmetry lattice=U+A2+E8+A1 max_level=200\n"
        "step reduction lattice=-A1+A2+E8+A1 base=U+A2+E8+A1 J=1xA1\n";
    auto plan = parse_plan(plan_text);
    REQUIRE(plan.size() == 2);
    auto report = run_classification(plan);
    auto it = report.certificates.find(canonical_expr("-A1+A2+E8+A1"));
    REQUIRE(it != report.certificates.end());
    CHECK(it->second.at("kind") == "reduction");
    expect_ok(it->second, "achiral");
}

TEST_CASE("the verifier rejects mutated certificates") {
    json chi = chiral_cert("U+A2");
    json ach = achiral_cert("-A1+<6>+2A1", 16);
    json ext = cert_extension("U(2)+A2+2D4", "D4", achiral_cert("U(2)+A2+D4", 48));

    SUBCASE("flipped verdict") {
        expect_reject(chi, [](json& c) { c["verdict"] = "achiral"; });
        expect_reject(ach, [](json& c) { c["verdict"] = "chiral"; });
    }
    SUBCASE("corrupted wall coordinates") {
        expect_reject(chi, [](json& c) { c["roots"][0]["coords"][0] = 7; });
        expect_reject(ach, [](json& c) { c["roots"][2]["coords"][1] = 5; });
    }
    SUBCASE("wrong stored level or square") {
        expect_reject(chi, [](json& c) { c["roots"][1]["level"] = 99; });
        expect_reject(chi, [](json& c) { c["roots"][1]["square"] = 4; });
    }
    SUBCASE("tampered witness") {
        expect_reject(ach, [](json& c) { c["matrix"][0][0] = c["matrix"][0][0].get<long long>() + 1; });
        expect_reject(ach, [](json& c) { std::swap(c["perm"][0], c["perm"][1]); });
        expect_reject(ach, [](json& c) { c["delta3"] = 1; });
    }
    SUBCASE("substituted lattice") {
        expect_reject(chi, [](json& c) { c["lattice"] = "U(2)+A2"; });
    }
    SUBCASE("tampered nested input") {
        expect_reject(ext, [](json& c) { c["input"]["verdict"] = "chiral"; });
        expect_reject(ext, [](json& c) { c["summand"] = "E8"; });
        expect_reject(ext, [](json& c) { c["lattice"] = "U(2)+A2+D4+E8"; });
    }
    SUBCASE("unknown kind or format") {
        expect_reject(chi, [](json& c) { c["kind"] = "mystery"; });
        expect_reject(chi, [](json& c) { c["format"] = "chiral-certificate/99"; });
    }
}
