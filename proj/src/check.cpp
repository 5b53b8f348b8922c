#include "ebsql/check.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "ebsql/eb_eval.hpp"
#include "ebsql/parse.hpp"
#include "ebsql/rep.hpp"
#include "ebsql/statefile.hpp"

namespace ebsql {

namespace {

std::string describe_mismatch(const std::string& what, const std::string& sql,
                              const std::string& eb) {
    return what + ": sql-side " + sql + " vs eb-side " + eb;
}

std::vector<ActionSet> permutations_of(const ActionSet& as) {
    std::vector<std::size_t> idx(as.assignments.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::vector<ActionSet> out;
    do {
        ActionSet p;
        for (std::size_t i : idx) p.assignments.push_back(as.assignments[i]);
        out.push_back(std::move(p));
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

/// Enumerates one-step reductions of an expression: any node replaced by
/// one of its children, or one element dropped from a literal. Candidates
/// may be ill-typed; callers filter through typecheck.
void reductions(const ExprPtr& e, std::vector<ExprPtr>& out) {
    for (const auto& kid : e->kids) out.push_back(kid);
    if (e->kind == ExprKind::SetLit && e->set_elems.size() > 1) {
        for (std::size_t i = 0; i < e->set_elems.size(); ++i) {
            auto elems = e->set_elems;
            elems.erase(elems.begin() + i);
            out.push_back(set_lit(std::move(elems)));
        }
    }
    if (e->kind == ExprKind::RelLit && e->rel_elems.size() > 1) {
        for (std::size_t i = 0; i < e->rel_elems.size(); ++i) {
            auto elems = e->rel_elems;
            elems.erase(elems.begin() + i);
            out.push_back(rel_lit(std::move(elems)));
        }
    }
    for (std::size_t k = 0; k < e->kids.size(); ++k) {
        std::vector<ExprPtr> kid_reductions;
        reductions(e->kids[k], kid_reductions);
        for (auto& r : kid_reductions) {
            auto clone = std::make_shared<Expr>(*e);
            clone->kids[k] = std::move(r);
            out.push_back(std::move(clone));
        }
    }
}

std::vector<Database> db_reductions(const Database& db) {
    std::vector<Database> out;
    for (const auto& [name, rel] : db.tables()) {
        for (const auto& row : rel.rows()) {
            Relation smaller(rel.schema());
            for (const auto& other : rel.rows())
                if (!(other == row)) smaller.insert(other);
            out.push_back(db_update(db, name, smaller));
        }
    }
    return out;
}

bool typechecks(const ExprPtr& e, const TypeEnv& env) {
    try {
        typecheck_expr(e, env);
        return true;
    } catch (const Error&) {
        return false;
    }
}

bool typechecks(const ActionSet& as, const TypeEnv& env) {
    try {
        typecheck_actions(as, env);
        return true;
    } catch (const Error&) {
        return false;
    }
}

}  // namespace

std::optional<std::string> check_theorem1(const ExprPtr& e, const Database& db,
                                          const TypeEnv& env,
                                          const CheckOptions& opts) {
    try {
        typecheck_expr(e, env);
        TranslatedExpr te = eb2sql_expr(e, env, opts.translate);
        DupStats stats;
        EbValue sql_side;
        if (te.is_pred())
            sql_side = EbValue(eval_pred(te.pred, db, &stats));
        else
            sql_side = rep_value(eval_query(te.query, db, &stats));
        EbValue eb_side = eval_expr(e, rep_db(db));
        if (stats.violations > 0)
            return "duplicate rows at " + std::to_string(stats.violations) +
                   " observable point(s)";
        if (!(sql_side == eb_side))
            return describe_mismatch("value mismatch", sql_side.str(),
                                     eb_side.str());
        return std::nullopt;
    } catch (const Error& err) {
        return std::string("error: ") + err.what();
    }
}

std::optional<std::string> check_theorem2(const ActionSet& as, const Database& db,
                                          const TypeEnv& env,
                                          const CheckOptions& opts) {
    try {
        typecheck_actions(as, env);
        DupStats stats;
        Database result = eb2sql_res(as, db, env, opts.translate, &stats);
        MachineState sql_side = rep_db(result);
        MachineState eb_side = eval_actions(as, rep_db(db));
        if (stats.violations > 0)
            return "duplicate rows at " + std::to_string(stats.violations) +
                   " observable point(s)";
        if (sql_side != eb_side)
            return describe_mismatch("state mismatch", to_string(sql_side),
                                     to_string(eb_side));
        if (opts.check_permutations) {
            for (const auto& perm : permutations_of(as)) {
                Database other = eb2sql_res(perm, db, env, opts.translate);
                if (!(other == result))
                    return "permutation '" + print_actions(perm) +
                           "' changed the final database";
            }
        }
        if (opts.check_general_fallback) {
            TranslateOptions general = opts.translate;
            general.force_general = true;
            Database other = eb2sql_res(as, db, env, general);
            if (!(other == result))
                return "general rules 9/10 disagree with the optimized rules";
        }
        return std::nullopt;
    } catch (const Error& err) {
        return std::string("error: ") + err.what();
    }
}

std::size_t run_identity_suite(int n) {
    struct Identity {
        const char* lhs;
        const char* rhs;
        bool uses_rel;
    };
    static const Identity identities[] = {
        {"r \\ (s <| r)", "s <<| r", true},
        {"r \\ (s <<| r)", "s <| r", true},
        {"r |> (ran(r) \\ s)", "r |>> s", true},
        {"r \\ (r |>> s)", "r |> s", true},
        {"s \\ (s /\\ t)", "s \\ t", false},
    };
    std::vector<std::pair<ExprPtr, ExprPtr>> parsed;
    for (const auto& ident : identities)
        parsed.emplace_back(parse_expr(ident.lhs), parse_expr(ident.rhs));

    auto set_of_mask = [&](int mask) {
        EbValue::Set out;
        for (int v = 0; v < n; ++v)
            if (mask & (1 << v)) out.insert(Scalar(Int(v)));
        return out;
    };
    const int set_count = 1 << n;
    const int rel_count = 1 << (n * n);

    std::size_t checked = 0;
    for (int rel_mask = 0; rel_mask < rel_count; ++rel_mask) {
        EbValue::Rel rel;
        for (int bit = 0; bit < n * n; ++bit)
            if (rel_mask & (1 << bit))
                rel.emplace(Scalar(Int(bit / n)), Scalar(Int(bit % n)));
        for (int set_mask = 0; set_mask < set_count; ++set_mask) {
            MachineState m{{"r", EbValue(rel)},
                           {"s", EbValue(set_of_mask(set_mask))}};
            for (std::size_t i = 0; i < parsed.size(); ++i) {
                if (!identities[i].uses_rel) continue;
                if (!(eval_expr(parsed[i].first, m) ==
                      eval_expr(parsed[i].second, m)))
                    throw Error(std::string("identity violated: ") +
                                identities[i].lhs + " = " + identities[i].rhs +
                                " at " + to_string(m));
                ++checked;
            }
        }
    }
    for (int s_mask = 0; s_mask < set_count; ++s_mask) {
        for (int t_mask = 0; t_mask < set_count; ++t_mask) {
            MachineState m{{"s", EbValue(set_of_mask(s_mask))},
                           {"t", EbValue(set_of_mask(t_mask))}};
            for (std::size_t i = 0; i < parsed.size(); ++i) {
                if (identities[i].uses_rel) continue;
                if (!(eval_expr(parsed[i].first, m) ==
                      eval_expr(parsed[i].second, m)))
                    throw Error(std::string("identity violated: ") +
                                identities[i].lhs + " = " + identities[i].rhs +
                                " at " + to_string(m));
                ++checked;
            }
        }
    }
    return checked;
}

std::string db_to_line(const Database& db, const TypeEnv& env) {
    std::string text = write_state(db, env);
    std::string line;
    for (char c : text) {
        if (c == '\n') {
            if (!line.empty() && line.back() != ' ') line += "; ";
        } else {
            line += c;
        }
    }
    while (!line.empty() && (line.back() == ' ' || line.back() == ';'))
        line.pop_back();
    return line;
}

std::pair<ExprPtr, Database> shrink_expr_case(const ExprPtr& e, const Database& db,
                                              const TypeEnv& env,
                                              const CheckOptions& opts) {
    if (!check_theorem1(e, db, env, opts))
        throw Error("shrink precondition: the input does not fail");
    ExprPtr cur = e;
    Database cur_db = db;
    auto fails = [&](const ExprPtr& cand, const Database& cand_db) {
        return typechecks(cand, env) &&
               check_theorem1(cand, cand_db, env, opts).has_value();
    };
    bool progress = true;
    int budget = 2000;
    while (progress && budget-- > 0) {
        progress = false;
        std::vector<ExprPtr> cands;
        reductions(cur, cands);
        for (const auto& cand : cands) {
            if (fails(cand, cur_db)) {
                cur = cand;
                progress = true;
                break;
            }
        }
        if (progress) continue;
        for (const auto& cand_db : db_reductions(cur_db)) {
            if (fails(cur, cand_db)) {
                cur_db = cand_db;
                progress = true;
                break;
            }
        }
    }
    return {cur, cur_db};
}

std::pair<ActionSet, Database> shrink_actions_case(const ActionSet& as,
                                                   const Database& db,
                                                   const TypeEnv& env,
                                                   const CheckOptions& opts) {
    if (!check_theorem2(as, db, env, opts))
        throw Error("shrink precondition: the input does not fail");
    ActionSet cur = as;
    Database cur_db = db;
    auto fails = [&](const ActionSet& cand, const Database& cand_db) {
        return typechecks(cand, env) &&
               check_theorem2(cand, cand_db, env, opts).has_value();
    };
    bool progress = true;
    int budget = 2000;
    while (progress && budget-- > 0) {
        progress = false;
        // drop a whole assignment
        for (std::size_t i = 0; i < cur.assignments.size(); ++i) {
            ActionSet cand = cur;
            cand.assignments.erase(cand.assignments.begin() + i);
            if (fails(cand, cur_db)) {
                cur = cand;
                progress = true;
                break;
            }
        }
        if (progress) continue;
        // reduce one right hand side
        for (std::size_t i = 0; i < cur.assignments.size() && !progress; ++i) {
            std::vector<ExprPtr> cands;
            reductions(cur.assignments[i].rhs, cands);
            for (const auto& r : cands) {
                ActionSet cand = cur;
                cand.assignments[i].rhs = r;
                if (fails(cand, cur_db)) {
                    cur = cand;
                    progress = true;
                    break;
                }
            }
        }
        if (progress) continue;
        for (const auto& cand_db : db_reductions(cur_db)) {
            if (fails(cur, cand_db)) {
                cur_db = cand_db;
                progress = true;
                break;
            }
        }
    }
    return {cur, cur_db};
}

CheckReport run_fuzz(const FuzzConfig& cfg) {
    if (cfg.gen.universe_min > cfg.gen.universe_max)
        throw Error("empty universe: --universe-min exceeds --universe-max");
    if (cfg.cases < 0) throw Error("negative case count");
    CheckReport report;
    for (int i = 0; i < cfg.cases; ++i) {
        const std::uint64_t case_seed = sub_seed(cfg.gen.seed, i);
        Rng rng(case_seed);
        auto [db, env] = gen_database(cfg.gen, rng);
        report.cases_run++;
        if (cfg.mode == FuzzMode::Expr) {
            ExprPtr e = gen_check_expr(cfg.gen, env, rng);
            auto failure = check_theorem1(e, db, env, cfg.check);
            if (failure) {
                CaseResult res;
                res.case_seed = case_seed;
                res.index = i;
                res.detail = *failure;
                if (cfg.shrink_failures) {
                    auto [se, sdb] = shrink_expr_case(e, db, env, cfg.check);
                    res.program = print_expr(se);
                    res.db_text = db_to_line(sdb, env);
                    res.shrunk = true;
                    auto final_detail = check_theorem1(se, sdb, env, cfg.check);
                    if (final_detail) res.detail = *final_detail;
                } else {
                    res.program = print_expr(e);
                    res.db_text = db_to_line(db, env);
                }
                report.failures.push_back(std::move(res));
                if (cfg.stop_at_first_failure) return report;
            }
        } else {
            ActionSet as = gen_actions(cfg.gen, env, rng);
            auto failure = check_theorem2(as, db, env, cfg.check);
            if (failure) {
                CaseResult res;
                res.case_seed = case_seed;
                res.index = i;
                res.detail = *failure;
                if (cfg.shrink_failures) {
                    auto [sas, sdb] = shrink_actions_case(as, db, env, cfg.check);
                    res.program = print_actions(sas);
                    res.db_text = db_to_line(sdb, env);
                    res.shrunk = true;
                    auto final_detail = check_theorem2(sas, sdb, env, cfg.check);
                    if (final_detail) res.detail = *final_detail;
                } else {
                    res.program = print_actions(as);
                    res.db_text = db_to_line(db, env);
                }
                report.failures.push_back(std::move(res));
                if (cfg.stop_at_first_failure) return report;
            }
        }
    }
    return report;
}

std::string report_to_text(const CheckReport& report, const FuzzConfig& cfg) {
    std::ostringstream os;
    std::map<int, const CaseResult*> failed;
    for (const auto& f : report.failures) failed[f.index] = &f;
    for (int i = 0; i < report.cases_run; ++i) {
        const std::uint64_t case_seed = sub_seed(cfg.gen.seed, i);
        os << "seed=" << case_seed << " case=" << i;
        auto it = failed.find(i);
        if (it == failed.end()) {
            os << " verdict=pass\n";
        } else {
            const CaseResult& f = *it->second;
            os << " verdict=fail shrunk=" << (f.shrunk ? "yes" : "no")
               << " program=\"" << f.program << "\" db=\"" << f.db_text
               << "\" detail=\"" << f.detail << "\"\n";
        }
    }
    os << "summary cases=" << report.cases_run
       << " failures=" << report.failures.size() << "\n";
    return os.str();
}

}  // namespace ebsql
