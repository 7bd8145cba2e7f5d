#pragma once

// The classification tables: the finite list of lattice classes under
// study, keyed by the invariants (rho, d, parity), together with a
// line-oriented derivation plan that assigns a certified chirality verdict
// to every class.

#include "chiral/certificates.hpp"
#include "chiral/discriminant.hpp"

#include <map>
#include <string>
#include <vector>

namespace chiral {

struct TableEntry {
    std::string expr;  // canonical representative expression
    int rho = 0;
    int d = 0;
    Parity parity = Parity::Even;
    std::string verdict;     // "", "chiral" or "achiral"
    std::string derived_by;  // certificate kind that settled the entry
};

// 16 even-parity classes.
std::vector<TableEntry> even_entries();
// 59 odd-parity classes.
std::vector<TableEntry> odd_entries();
// all 75, even first
std::vector<TableEntry> all_entries();

struct PlanStep {
    std::string kind;
    std::string lattice;
    std::string run;      // lattice to enumerate for extended_group
    std::string base;     // input certificate, by target expression
    std::string summand;  // for extension / restriction
    int J_count = 0;      // for reduction: number of components ...
    std::string J_type;   // ... of this type ("A1" or "D4")
    Int max_level = 200;
    int max_roots = 512;
    int line = 0;
};

std::vector<PlanStep> parse_plan(const std::string& text);

struct ClassificationReport {
    std::vector<TableEntry> entries;
    // certificates keyed by the canonical target expression
    std::map<std::string, nlohmann::json> certificates;
    int chiral = 0;
    int achiral = 0;
    int unsettled = 0;
};

// Execute every step of the plan, verify each certificate produced, and
// assign verdicts to the matching table entries. Throws on any failing
// step or failing verification.
ClassificationReport run_classification(const std::vector<PlanStep>& plan);

// Location of the shipped derivation plan.
std::string default_plan_path();

// The verdict grid, d by rho, odd verdicts plain and even verdicts bold:
// "c", "a", "**c**", "**a**", or "c(**a**)" when both parities occur.
std::string table1_markdown(const ClassificationReport& report);
nlohmann::json table1_json(const ClassificationReport& report);

}  // namespace chiral
