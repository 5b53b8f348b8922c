#pragma once

#include <cstdint>
#include <random>

#include "ebsql/ast.hpp"
#include "ebsql/core.hpp"
#include "ebsql/typecheck.hpp"

namespace ebsql {

/// Bounds for random generation. The defaults match the differential
/// suites: small universe, few variables, small sets, so collisions (and
/// therefore joins and deletes) happen constantly.
struct GenConfig {
    std::uint64_t seed = 0;
    int max_depth = 5;
    int num_vars = 4;
    long long universe_min = -4;
    long long universe_max = 4;
    bool include_bools = true;
    int max_set_size = 6;
};

using Rng = std::mt19937_64;

/// Deterministic per-case seed derivation; workers may split on this.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t case_index);

/// Random database plus the type environment describing it. Variables are
/// named s0, s1, ... (sets) and r0, r1, ... (relations).
std::pair<Database, TypeEnv> gen_database(const GenConfig& cfg, Rng& rng);

/// Type-directed expression generation; the result always typechecks.
ExprPtr gen_expr(const GenConfig& cfg, const TypeEnv& env, const EbType& want,
                 Rng& rng, int depth);

/// Random predicate (for the expression-soundness suite).
ExprPtr gen_pred(const GenConfig& cfg, const TypeEnv& env, Rng& rng, int depth);

/// A theorem-1 test subject: set/relation expression, predicate, or a
/// cardinality query.
ExprPtr gen_check_expr(const GenConfig& cfg, const TypeEnv& env, Rng& rng);

/// 1..3 assignments with pairwise distinct targets. Roughly 60% of right
/// hand sides match one of the eight optimized translation forms, the rest
/// are general expressions of the target's type.
ActionSet gen_actions(const GenConfig& cfg, const TypeEnv& env, Rng& rng);

}  // namespace ebsql
