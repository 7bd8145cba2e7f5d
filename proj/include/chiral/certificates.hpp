#pragma once

// Self-contained, re-checkable certificates for chirality verdicts. Every
// certificate is a JSON document carrying all data a fresh verifier needs:
// the lattice expression, the wall system, witness automorphisms, and for
// derived verdicts the full input certificate nested inside.

#include "chiral/chirality.hpp"

#include <nlohmann/json.hpp>

namespace chiral {

// direct verdicts
nlohmann::json cert_chirality_complete(const Lattice& L, const std::string& expr,
                                       const RootSequence& seq, const ChiralityResult& res);
nlohmann::json cert_achirality_symmetry(const Lattice& L, const std::string& expr,
                                        const RootSequence& seq, const ChiralityWitness& w);
nlohmann::json cert_extended_group(const std::string& run_expr, const std::string& target_expr,
                                   const RootSequence& seq, const ChiralityResult& res);
nlohmann::json cert_rootless(const Lattice& L, const std::string& expr, const MatI& g,
                             const VecI& p);

// derived verdicts; the base certificate is embedded
nlohmann::json cert_extension(const std::string& target_expr, const std::string& summand_expr,
                              const nlohmann::json& base_cert);
nlohmann::json cert_restriction(const std::string& target_expr, const std::string& summand_expr,
                                const nlohmann::json& base_cert);
nlohmann::json cert_reduction(const std::string& target_expr, const nlohmann::json& base_cert,
                              const std::vector<int>& J);

struct VerifyResult {
    bool ok = false;
    std::string verdict;  // "chiral" | "achiral" when ok
    std::string lattice;  // canonical expression the verdict applies to
    std::string error;    // first failed check when !ok
};

// Structural verification re-checks every stored datum (roots, witnesses,
// preconditions of derivation rules, nested certificates). Deep verification
// additionally re-runs the wall enumeration and compares it to the stored
// one.
VerifyResult verify_certificate(const nlohmann::json& cert, bool deep = false);

// serialization helpers shared with the CLI
nlohmann::json root_sequence_to_json(const RootSequence& seq);
nlohmann::json matrix_to_json(const MatI& m);
MatI matrix_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const VecI& v);
VecI vector_from_json(const nlohmann::json& j);

}  // namespace chiral
