#include "ebsql/gen.hpp"

#include <algorithm>

namespace ebsql {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::size_t pick(Rng& rng, std::size_t n) { return n ? rng() % n : 0; }

bool chance(Rng& rng, int percent) {
    return static_cast<int>(rng() % 100) < percent;
}

Scalar gen_scalar(const GenConfig& cfg, ScalarKind kind, Rng& rng) {
    if (kind == ScalarKind::Bool) return Scalar(rng() % 2 == 0);
    const long long span = cfg.universe_max - cfg.universe_min + 1;
    return Scalar(Int(cfg.universe_min + static_cast<long long>(rng() % span)));
}

ScalarKind gen_kind(const GenConfig& cfg, Rng& rng) {
    if (cfg.include_bools && chance(rng, 30)) return ScalarKind::Bool;
    return ScalarKind::Int;
}

std::vector<std::string> vars_of_type(const TypeEnv& env, const EbType& want) {
    std::vector<std::string> out;
    for (const auto& [name, t] : env)
        if (t == want) out.push_back(name);
    return out;
}

ExprPtr gen_literal(const GenConfig& cfg, const EbType& want, Rng& rng) {
    if (want.tag == EbType::Tag::Int)
        return int_lit(gen_scalar(cfg, ScalarKind::Int, rng).as_int());
    if (want.tag == EbType::Tag::Bool)
        return bool_lit(rng() % 2 == 0);
    const std::size_t n = 1 + pick(rng, 3);
    if (want.is_set()) {
        std::vector<Scalar> elems;
        for (std::size_t i = 0; i < n; ++i)
            elems.push_back(gen_scalar(cfg, want.elem, rng));
        return set_lit(std::move(elems));
    }
    std::vector<std::pair<Scalar, Scalar>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        pairs.emplace_back(gen_scalar(cfg, want.elem, rng),
                           gen_scalar(cfg, want.value, rng));
    return rel_lit(std::move(pairs));
}

ExprPtr gen_terminal(const GenConfig& cfg, const TypeEnv& env, const EbType& want,
                     Rng& rng) {
    auto candidates = vars_of_type(env, want);
    if (!candidates.empty() && chance(rng, 70))
        return var(candidates[pick(rng, candidates.size())]);
    return gen_literal(cfg, want, rng);
}

/// A relation type anchored on existing variables when possible, so joins
/// hit real data.
EbType pick_rel_type(const GenConfig& cfg, const TypeEnv& env, Rng& rng) {
    std::vector<EbType> rels;
    for (const auto& [name, t] : env)
        if (t.is_rel()) rels.push_back(t);
    if (!rels.empty() && chance(rng, 60)) return rels[pick(rng, rels.size())];
    return EbType::rel_of(gen_kind(cfg, rng), gen_kind(cfg, rng));
}

EbType pick_set_type(const GenConfig& cfg, const TypeEnv& env, Rng& rng) {
    std::vector<EbType> sets;
    for (const auto& [name, t] : env)
        if (t.is_set()) sets.push_back(t);
    if (!sets.empty() && chance(rng, 60)) return sets[pick(rng, sets.size())];
    return EbType::set_of(gen_kind(cfg, rng));
}

}  // namespace

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t case_index) {
    return splitmix64(seed ^ splitmix64(case_index + 1));
}

std::pair<Database, TypeEnv> gen_database(const GenConfig& cfg, Rng& rng) {
    Database db;
    TypeEnv env;
    int sets = 0;
    int rels = 0;
    for (int i = 0; i < cfg.num_vars; ++i) {
        const bool rel = chance(rng, 45);
        const std::size_t size = pick(rng, cfg.max_set_size + 1);
        if (rel) {
            EbType t = EbType::rel_of(gen_kind(cfg, rng), gen_kind(cfg, rng));
            std::set<std::pair<Scalar, Scalar>> pairs;
            for (std::size_t k = 0; k < size; ++k)
                pairs.emplace(gen_scalar(cfg, t.elem, rng),
                              gen_scalar(cfg, t.value, rng));
            std::string name = "r" + std::to_string(rels++);
            env[name] = t;
            db = db_update(db, name, pair_relation(pairs));
        } else {
            EbType t = EbType::set_of(gen_kind(cfg, rng));
            std::set<Scalar> elems;
            for (std::size_t k = 0; k < size; ++k)
                elems.insert(gen_scalar(cfg, t.elem, rng));
            std::string name = "s" + std::to_string(sets++);
            env[name] = t;
            db = db_update(db, name, set_relation(elems));
        }
    }
    return {db, env};
}

ExprPtr gen_expr(const GenConfig& cfg, const TypeEnv& env, const EbType& want,
                 Rng& rng, int depth) {
    if (depth <= 0 || want.is_scalar()) {
        if (want.tag == EbType::Tag::Int && depth > 0 && chance(rng, 50)) {
            // card() is the one compound scalar form
            EbType arg = chance(rng, 50) ? pick_set_type(cfg, env, rng)
                                         : pick_rel_type(cfg, env, rng);
            return unary(ExprKind::Card, gen_expr(cfg, env, arg, rng, depth - 1));
        }
        return gen_terminal(cfg, env, want, rng);
    }
    if (want.is_set()) {
        switch (pick(rng, 7)) {
            case 0:
                return binary(ExprKind::Union, gen_expr(cfg, env, want, rng, depth - 1),
                              gen_expr(cfg, env, want, rng, depth - 1));
            case 1:
                return binary(ExprKind::Inter, gen_expr(cfg, env, want, rng, depth - 1),
                              gen_expr(cfg, env, want, rng, depth - 1));
            case 2:
                return binary(ExprKind::SetMinus,
                              gen_expr(cfg, env, want, rng, depth - 1),
                              gen_expr(cfg, env, want, rng, depth - 1));
            case 3: {
                EbType rel = EbType::rel_of(want.elem, gen_kind(cfg, rng));
                return unary(ExprKind::Dom, gen_expr(cfg, env, rel, rng, depth - 1));
            }
            case 4: {
                EbType rel = EbType::rel_of(gen_kind(cfg, rng), want.elem);
                return unary(ExprKind::Ran, gen_expr(cfg, env, rel, rng, depth - 1));
            }
            case 5: {
                ScalarKind k = gen_kind(cfg, rng);
                EbType rel = EbType::rel_of(k, want.elem);
                return binary(ExprKind::Image,
                              gen_expr(cfg, env, rel, rng, depth - 1),
                              gen_expr(cfg, env, EbType::set_of(k), rng, depth - 1));
            }
            default: return gen_terminal(cfg, env, want, rng);
        }
    }
    // relation-typed
    switch (pick(rng, 12)) {
        case 0:
            return binary(ExprKind::Union, gen_expr(cfg, env, want, rng, depth - 1),
                          gen_expr(cfg, env, want, rng, depth - 1));
        case 1:
            return binary(ExprKind::Inter, gen_expr(cfg, env, want, rng, depth - 1),
                          gen_expr(cfg, env, want, rng, depth - 1));
        case 2:
            return binary(ExprKind::SetMinus, gen_expr(cfg, env, want, rng, depth - 1),
                          gen_expr(cfg, env, want, rng, depth - 1));
        case 3:
            return binary(ExprKind::Ovl, gen_expr(cfg, env, want, rng, depth - 1),
                          gen_expr(cfg, env, want, rng, depth - 1));
        case 4:
            return binary(ExprKind::CProd,
                          gen_expr(cfg, env, EbType::set_of(want.elem), rng, depth - 1),
                          gen_expr(cfg, env, EbType::set_of(want.value), rng,
                                   depth - 1));
        case 5:
            return binary(ExprKind::DomRes,
                          gen_expr(cfg, env, EbType::set_of(want.elem), rng, depth - 1),
                          gen_expr(cfg, env, want, rng, depth - 1));
        case 6:
            return binary(ExprKind::DomSub,
                          gen_expr(cfg, env, EbType::set_of(want.elem), rng, depth - 1),
                          gen_expr(cfg, env, want, rng, depth - 1));
        case 7:
            return binary(ExprKind::RanRes, gen_expr(cfg, env, want, rng, depth - 1),
                          gen_expr(cfg, env, EbType::set_of(want.value), rng,
                                   depth - 1));
        case 8:
            return binary(ExprKind::RanSub, gen_expr(cfg, env, want, rng, depth - 1),
                          gen_expr(cfg, env, EbType::set_of(want.value), rng,
                                   depth - 1));
        case 9: {
            ScalarKind mid = gen_kind(cfg, rng);
            ExprPtr a = gen_expr(cfg, env, EbType::rel_of(want.elem, mid), rng,
                                 depth - 1);
            ExprPtr b = gen_expr(cfg, env, EbType::rel_of(mid, want.value), rng,
                                 depth - 1);
            return chance(rng, 50) ? binary(ExprKind::FComp, a, b)
                                   : binary(ExprKind::BComp, b, a);
        }
        case 10:
            return unary(ExprKind::Inverse,
                         gen_expr(cfg, env, EbType::rel_of(want.value, want.elem),
                                  rng, depth - 1));
        default: return gen_terminal(cfg, env, want, rng);
    }
}

ExprPtr gen_pred(const GenConfig& cfg, const TypeEnv& env, Rng& rng, int depth) {
    if (depth <= 0 || chance(rng, 35)) {
        // comparison leaves
        switch (pick(rng, 4)) {
            case 0: {  // scalar equality over card / literals
                if (chance(rng, 60)) {
                    EbType a = chance(rng, 50) ? pick_set_type(cfg, env, rng)
                                               : pick_rel_type(cfg, env, rng);
                    ExprPtr lhs = unary(ExprKind::Card,
                                        gen_expr(cfg, env, a, rng, depth - 1));
                    ExprPtr rhs = chance(rng, 50)
                                      ? int_lit(Int(static_cast<long long>(
                                            pick(rng, cfg.max_set_size + 2))))
                                      : unary(ExprKind::Card,
                                              gen_expr(cfg, env,
                                                       pick_set_type(cfg, env, rng),
                                                       rng, depth - 1));
                    return binary(ExprKind::Eq, lhs, rhs);
                }
                EbType t = chance(rng, 50) ? pick_set_type(cfg, env, rng)
                                           : pick_rel_type(cfg, env, rng);
                return binary(ExprKind::Eq, gen_expr(cfg, env, t, rng, depth - 1),
                              gen_expr(cfg, env, t, rng, depth - 1));
            }
            case 1: {  // membership
                EbType t = pick_set_type(cfg, env, rng);
                ExprPtr x;
                if (t.elem == ScalarKind::Bool) {
                    x = bool_lit(rng() % 2 == 0);
                } else if (chance(rng, 70)) {
                    x = int_lit(gen_scalar(cfg, ScalarKind::Int, rng).as_int());
                } else {
                    x = unary(ExprKind::Card,
                              gen_expr(cfg, env, pick_set_type(cfg, env, rng), rng,
                                       depth - 1));
                }
                return binary(ExprKind::In, x, gen_expr(cfg, env, t, rng, depth - 1));
            }
            case 2: {
                EbType t = chance(rng, 60) ? pick_set_type(cfg, env, rng)
                                           : pick_rel_type(cfg, env, rng);
                return binary(ExprKind::SubsetEq,
                              gen_expr(cfg, env, t, rng, depth - 1),
                              gen_expr(cfg, env, t, rng, depth - 1));
            }
            default: {
                EbType t = chance(rng, 60) ? pick_set_type(cfg, env, rng)
                                           : pick_rel_type(cfg, env, rng);
                return binary(ExprKind::Subset, gen_expr(cfg, env, t, rng, depth - 1),
                              gen_expr(cfg, env, t, rng, depth - 1));
            }
        }
    }
    switch (pick(rng, 3)) {
        case 0: return unary(ExprKind::Not, gen_pred(cfg, env, rng, depth - 1));
        case 1:
            return binary(ExprKind::And, gen_pred(cfg, env, rng, depth - 1),
                          gen_pred(cfg, env, rng, depth - 1));
        default:
            return binary(ExprKind::Or, gen_pred(cfg, env, rng, depth - 1),
                          gen_pred(cfg, env, rng, depth - 1));
    }
}

ExprPtr gen_check_expr(const GenConfig& cfg, const TypeEnv& env, Rng& rng) {
    const int roll = static_cast<int>(rng() % 100);
    if (roll < 35)
        return gen_expr(cfg, env, pick_set_type(cfg, env, rng), rng, cfg.max_depth);
    if (roll < 60)
        return gen_expr(cfg, env, pick_rel_type(cfg, env, rng), rng, cfg.max_depth);
    if (roll < 85) return gen_pred(cfg, env, rng, cfg.max_depth - 1);
    EbType arg = chance(rng, 50) ? pick_set_type(cfg, env, rng)
                                 : pick_rel_type(cfg, env, rng);
    return unary(ExprKind::Card, gen_expr(cfg, env, arg, rng, cfg.max_depth - 1));
}

ActionSet gen_actions(const GenConfig& cfg, const TypeEnv& env, Rng& rng) {
    std::vector<std::string> assignable;
    for (const auto& [name, t] : env)
        if (t.is_set() || t.is_rel()) assignable.push_back(name);
    if (assignable.empty()) return {};

    // deterministic shuffle
    for (std::size_t i = assignable.size(); i > 1; --i)
        std::swap(assignable[i - 1], assignable[pick(rng, i)]);
    const std::size_t count = std::min<std::size_t>(1 + pick(rng, 3),
                                                    assignable.size());

    ActionSet as;
    for (std::size_t i = 0; i < count; ++i) {
        const std::string& target = assignable[i];
        const EbType t = env.at(target);
        const int rhs_depth = cfg.max_depth - 2;
        if (chance(rng, 60)) {
            // one of the optimized assignment forms
            if (t.is_set()) {
                ExprPtr e1 = gen_expr(cfg, env, t, rng, rhs_depth);
                switch (pick(rng, 3)) {
                    case 0:
                        as.assignments.push_back(
                            {target, binary(ExprKind::Union, var(target), e1)});
                        break;
                    case 1:
                        as.assignments.push_back(
                            {target, binary(ExprKind::SetMinus, var(target), e1)});
                        break;
                    default:
                        as.assignments.push_back(
                            {target, binary(ExprKind::Inter, var(target), e1)});
                        break;
                }
            } else {
                switch (pick(rng, 5)) {
                    case 0:
                        as.assignments.push_back(
                            {target, binary(ExprKind::Ovl, var(target),
                                            gen_expr(cfg, env, t, rng, rhs_depth))});
                        break;
                    case 1:
                        as.assignments.push_back(
                            {target,
                             binary(ExprKind::DomSub,
                                    gen_expr(cfg, env, EbType::set_of(t.elem), rng,
                                             rhs_depth),
                                    var(target))});
                        break;
                    case 2:
                        as.assignments.push_back(
                            {target,
                             binary(ExprKind::DomRes,
                                    gen_expr(cfg, env, EbType::set_of(t.elem), rng,
                                             rhs_depth),
                                    var(target))});
                        break;
                    case 3:
                        as.assignments.push_back(
                            {target,
                             binary(ExprKind::RanSub, var(target),
                                    gen_expr(cfg, env, EbType::set_of(t.value), rng,
                                             rhs_depth))});
                        break;
                    default:
                        as.assignments.push_back(
                            {target,
                             binary(ExprKind::RanRes, var(target),
                                    gen_expr(cfg, env, EbType::set_of(t.value), rng,
                                             rhs_depth))});
                        break;
                }
            }
        } else {
            as.assignments.push_back(
                {target, gen_expr(cfg, env, t, rng, rhs_depth)});
        }
    }
    return as;
}

}  // namespace ebsql
