#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ebsql/gen.hpp"
#include "ebsql/translate.hpp"

namespace ebsql {

struct CheckOptions {
    TranslateOptions translate;
    /// Theorem 2 extras for the acceptance suites.
    bool check_permutations = false;    // every ordering gives the same database
    bool check_general_fallback = false;  // rules 9/10 give the same database
};

/// rep(sql2erc(EB2SQL(E), db)) = eb(E, rep(db)); nullopt means pass,
/// otherwise a human-readable mismatch description. Evaluator errors and
/// duplicate-freedom violations count as failures, not crashes.
std::optional<std::string> check_theorem1(const ExprPtr& e, const Database& db,
                                          const TypeEnv& env,
                                          const CheckOptions& opts = {});

/// rep(EB2SQL_RES(AS, db)) = eb_AS(AS, rep(db)).
std::optional<std::string> check_theorem2(const ActionSet& as, const Database& db,
                                          const TypeEnv& env,
                                          const CheckOptions& opts = {});

enum class FuzzMode { Expr, Actions };

struct FuzzConfig {
    GenConfig gen;
    int cases = 1000;
    FuzzMode mode = FuzzMode::Expr;
    CheckOptions check;
    bool shrink_failures = true;
    /// Stop after the first failure (mutation probes).
    bool stop_at_first_failure = false;
};

struct CaseResult {
    std::uint64_t case_seed = 0;
    int index = 0;
    std::string program;  // surface syntax of the shrunk failing input
    std::string db_text;  // one-line state description
    std::string detail;
    bool shrunk = false;
};

struct CheckReport {
    int cases_run = 0;
    std::vector<CaseResult> failures;
    bool passed() const { return failures.empty(); }
};

/// Runs the differential fuzz loop; deterministic in cfg.gen.seed.
CheckReport run_fuzz(const FuzzConfig& cfg);

/// One line per case plus a summary line; stable across reruns.
std::string report_to_text(const CheckReport& report, const FuzzConfig& cfg);

/// One-line state rendering used in reports (state-file statements joined
/// with "; ").
std::string db_to_line(const Database& db, const TypeEnv& env);

/// Exhaustively checks five set identities the assignment soundness
/// argument leans on (restriction/subtraction complements and the
/// intersection-difference identity) over every relation on
/// {0..n-1}x{0..n-1} paired with every subset of {0..n-1}. Returns the
/// number of (state, identity) combinations checked; throws on the first
/// violated identity.
std::size_t run_identity_suite(int n = 3);

/// Greedy reduction of a failing theorem-1 input: replace the expression
/// by failing subexpressions, drop literal elements, drop table rows.
std::pair<ExprPtr, Database> shrink_expr_case(const ExprPtr& e, const Database& db,
                                              const TypeEnv& env,
                                              const CheckOptions& opts);

/// Greedy reduction of a failing theorem-2 input: drop assignments, hoist
/// subexpressions, drop literal elements, drop table rows.
std::pair<ActionSet, Database> shrink_actions_case(const ActionSet& as,
                                                   const Database& db,
                                                   const TypeEnv& env,
                                                   const CheckOptions& opts);

}  // namespace ebsql
