#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ebsql/check.hpp"
#include "ebsql/eb_eval.hpp"
#include "ebsql/parse.hpp"
#include "ebsql/rep.hpp"
#include "ebsql/statefile.hpp"
#include "ebsql/translate.hpp"

namespace {

using namespace ebsql;

constexpr int kExitPass = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitUsage = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Dialect parse_dialect(const std::string& name) {
    if (name == "mysql") return Dialect::MySql;
    if (name == "sqlite") return Dialect::Sqlite;
    throw Error("unknown dialect '" + name + "' (mysql or sqlite)");
}

std::optional<Mutation> parse_mutation(const std::string& name) {
    if (name.empty() || name == "none") return Mutation::None;
    if (name == "inter-as-minus") return Mutation::InterAsMinus;
    if (name == "domres-domsub-swap") return Mutation::DomResDomSubSwap;
    if (name == "ovl-insert-first") return Mutation::OvlInsertFirst;
    if (name == "dom-no-distinct") return Mutation::DomNoDistinct;
    if (name == "insert-no-ignore") return Mutation::InsertNoIgnore;
    return std::nullopt;
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write '" + out_path + "'");
    out << text;
    if (!text.empty() && text.back() != '\n') out << "\n";
}

struct CommonArgs {
    std::string dialect = "mysql";
    std::string out_path;
};

int cmd_translate(const std::string& expr_text, const std::string& actions_path,
                  const std::string& env_path, bool force_general,
                  const CommonArgs& common) {
    StateFile state = read_state_file(env_path);
    Dialect dialect = parse_dialect(common.dialect);
    TranslateOptions opts;
    opts.force_general = force_general;

    if (!expr_text.empty()) {
        ExprPtr e = parse_expr(expr_text);
        TranslatedExpr te = eb2sql_expr(e, state.env, opts);
        std::string sql =
            te.is_pred() ? emit_sql(te.pred, dialect) : emit_sql(te.query, dialect);
        write_output(common.out_path, sql);
        return kExitPass;
    }
    ActionSet as = parse_actions(slurp(actions_path));
    typecheck_actions(as, state.env);
    std::ostringstream os;
    for (std::size_t i = 0; i < as.assignments.size(); ++i) {
        TranslatedAssignment ta =
            eb2sql_assignment(as.assignments[i], state.env, opts);
        if (i) os << "\n";
        os << emit_sql(ta.statements, dialect);
    }
    write_output(common.out_path, os.str());
    return kExitPass;
}

int cmd_eval_eb(const std::string& state_path, const std::string& expr_text,
                const CommonArgs& common) {
    StateFile state = read_state_file(state_path);
    ExprPtr e = parse_expr(expr_text);
    typecheck_expr(e, state.env);
    EbValue value = eval_expr(e, rep_db(state.db));
    write_output(common.out_path, value.str());
    return kExitPass;
}

int cmd_eval_sql(const std::string& db_path, const std::string& expr_text,
                 const CommonArgs& common) {
    StateFile state = read_state_file(db_path);
    ExprPtr e = parse_expr(expr_text);
    TranslatedExpr te = eb2sql_expr(e, state.env);
    EbValue value = te.is_pred() ? EbValue(eval_pred(te.pred, state.db))
                                 : rep_value(eval_query(te.query, state.db));
    write_output(common.out_path, value.str());
    return kExitPass;
}

int cmd_exec(const std::string& db_path, const std::string& actions_path,
             bool force_general, const CommonArgs& common) {
    StateFile state = read_state_file(db_path);
    ActionSet as = parse_actions(slurp(actions_path));
    typecheck_actions(as, state.env);
    TranslateOptions opts;
    opts.force_general = force_general;
    Database result = eb2sql_res(as, state.db, state.env, opts);
    write_output(common.out_path, write_state(result, state.env));
    return kExitPass;
}

int cmd_check(const std::string& db_path, const std::string& actions_path,
              bool force_general) {
    StateFile state = read_state_file(db_path);
    ActionSet as = parse_actions(slurp(actions_path));
    typecheck_actions(as, state.env);
    CheckOptions opts;
    opts.translate.force_general = force_general;
    auto failure = check_theorem2(as, state.db, state.env, opts);
    if (!failure) {
        std::cout << "pass\n";
        return kExitPass;
    }
    auto [sas, sdb] = shrink_actions_case(as, state.db, state.env, opts);
    std::cout << "counterexample: " << *failure << "\n"
              << "shrunk program: " << print_actions(sas) << "\n"
              << "shrunk db: " << db_to_line(sdb, state.env) << "\n";
    return kExitCounterexample;
}

int cmd_fuzz(const FuzzConfig& cfg, const CommonArgs& common) {
    CheckReport report = run_fuzz(cfg);
    write_output(common.out_path, report_to_text(report, cfg));
    return report.passed() ? kExitPass : kExitCounterexample;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Event-B assignment to SQL translation workbench"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonArgs common;
    app.add_option("--dialect", common.dialect, "SQL dialect (mysql|sqlite)")
        ->default_val("mysql");
    app.add_option("--out", common.out_path, "write output to a file");
    std::uint64_t global_seed = 0;
    auto* seed_opt =
        app.add_option("--seed", global_seed, "generator seed (fuzz)");

    // translate
    auto* translate = app.add_subcommand(
        "translate", "translate an expression or an actions file to SQL");
    std::string expr_text, actions_path, env_path, state_path;
    bool force_general = false;
    translate->add_option("--expr", expr_text, "expression or predicate text");
    translate->add_option("--actions", actions_path, "file with v := E || ...");
    translate->add_option("--env", env_path, "state file giving variable types");
    translate->add_option("--state", state_path,
                          "state file giving variable types (alias for --env)");
    translate->add_flag("--force-general", force_general,
                        "use only the two general assignment rules");

    // eval-eb
    auto* eval_eb = app.add_subcommand(
        "eval-eb", "evaluate an expression under the Event-B interpreter");
    std::string ee_state, ee_expr;
    eval_eb->add_option("--state", ee_state, "state file")->required();
    eval_eb->add_option("--expr", ee_expr, "expression text")->required();

    // eval-sql
    auto* eval_sql = app.add_subcommand(
        "eval-sql",
        "translate an expression and evaluate the SQL; prints the rep value");
    std::string es_db, es_expr;
    eval_sql->add_option("--db", es_db, "state file")->required();
    eval_sql->add_option("--expr", es_expr, "expression text")->required();

    // exec
    auto* exec = app.add_subcommand(
        "exec", "run translated statements against a state file");
    std::string ex_db, ex_actions;
    bool ex_force_general = false;
    exec->add_option("--db", ex_db, "state file")->required();
    exec->add_option("--actions", ex_actions, "actions file")->required();
    exec->add_flag("--force-general", ex_force_general,
                   "use only the two general assignment rules");

    // check
    auto* check = app.add_subcommand(
        "check", "differentially check one actions file against one state");
    std::string ck_db, ck_actions;
    bool ck_force_general = false;
    check->add_option("--db", ck_db, "state file")->required();
    check->add_option("--actions", ck_actions, "actions file")->required();
    check->add_flag("--force-general", ck_force_general,
                    "use only the two general assignment rules");

    // fuzz
    auto* fuzz = app.add_subcommand(
        "fuzz", "random differential testing of the two soundness theorems");
    FuzzConfig fuzz_cfg;
    std::string mode = "expr";
    std::string mutation_name;
    bool fz_force_general = false;
    fuzz->add_option("--cases", fuzz_cfg.cases, "number of cases")
        ->default_val(1000);
    fuzz->add_option("--max-depth", fuzz_cfg.gen.max_depth,
                     "expression depth bound")
        ->default_val(5);
    fuzz->add_option("--num-vars", fuzz_cfg.gen.num_vars, "variables per case")
        ->default_val(4);
    fuzz->add_option("--max-set-size", fuzz_cfg.gen.max_set_size,
                     "table size bound")
        ->default_val(6);
    fuzz->add_option("--universe-min", fuzz_cfg.gen.universe_min,
                     "smallest integer element")
        ->default_val(-4);
    fuzz->add_option("--universe-max", fuzz_cfg.gen.universe_max,
                     "largest integer element")
        ->default_val(4);
    fuzz->add_option("--mode", mode, "expr|actions")->default_val("expr");
    fuzz->add_option("--mutate", mutation_name,
                     "enable one translator mutation (self-test)");
    fuzz->add_flag("--force-general", fz_force_general,
                   "use only the two general assignment rules");
    fuzz->add_flag("--check-permutations", fuzz_cfg.check.check_permutations,
                   "also require permutation invariance (actions mode)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (translate->parsed()) {
            if (expr_text.empty() == actions_path.empty())
                throw Error("translate needs exactly one of --expr / --actions");
            std::string types_path = !env_path.empty() ? env_path : state_path;
            if (types_path.empty())
                throw Error("translate needs --env FILE (or --state FILE)");
            return cmd_translate(expr_text, actions_path, types_path,
                                 force_general, common);
        }
        if (eval_eb->parsed()) return cmd_eval_eb(ee_state, ee_expr, common);
        if (eval_sql->parsed()) return cmd_eval_sql(es_db, es_expr, common);
        if (exec->parsed())
            return cmd_exec(ex_db, ex_actions, ex_force_general, common);
        if (check->parsed())
            return cmd_check(ck_db, ck_actions, ck_force_general);
        if (fuzz->parsed()) {
            if (seed_opt->count() > 0) fuzz_cfg.gen.seed = global_seed;
            if (mode == "expr")
                fuzz_cfg.mode = FuzzMode::Expr;
            else if (mode == "actions")
                fuzz_cfg.mode = FuzzMode::Actions;
            else
                throw Error("unknown mode '" + mode + "' (expr or actions)");
            auto mutation = parse_mutation(mutation_name);
            if (!mutation) throw Error("unknown mutation '" + mutation_name + "'");
            fuzz_cfg.check.translate.mutation = *mutation;
            fuzz_cfg.check.translate.force_general = fz_force_general;
            return cmd_fuzz(fuzz_cfg, common);
        }
    } catch (const ebsql::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
