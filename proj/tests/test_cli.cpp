#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(EBSQL_CLI_PATH) + " " + args + " 2>&1";
    std::string output;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe))
        output.append(buf, n);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, output};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("ebsql_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& content) const {
        fs::path p = path / name;
        std::ofstream out(p);
        out << content;
        return p.string();
    }
    std::string slurp(const std::string& name) const {
        std::ifstream in(path / name);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }
};

}  // namespace

TEST_CASE("translate emits the documented strings") {
    TempDir tmp;
    std::string env = tmp.file(
        "env.state", "set s = {1}\nrel r = {(1, 2)}\nset t : int = {}\n");
    auto dom = run_cli("translate --expr \"dom(r)\" --env " + env);
    CHECK(dom.exit_code == 0);
    CHECK(dom.output ==
          "select distinct rtmp1.id from (select rtmp0.id, rtmp0.value from r "
          "rtmp0) rtmp1\n");

    std::string actions = tmp.file("a.act", "s := s \\/ t");
    auto ins = run_cli("translate --actions " + actions + " --env " + env);
    CHECK(ins.exit_code == 0);
    CHECK(ins.output ==
          "insert ignore into s select stmp0.refkey from s__prime stmp0;\n");

    auto sqlite = run_cli("--dialect sqlite translate --actions " + actions +
                          " --env " + env);
    CHECK(sqlite.exit_code == 0);
    CHECK(sqlite.output ==
          "insert or ignore into s select stmp0.refkey from s__prime stmp0;\n");

    std::string multi = tmp.file("m.act", "s := t || r := r <+ {1 |-> 1}");
    auto stmts = run_cli("translate --actions " + multi + " --env " + env);
    CHECK(stmts.exit_code == 0);
    CHECK(stmts.output ==
          "delete from s;\n"
          "insert ignore into s select s1tmp0.refkey from s__prime s1tmp0;\n"
          "delete from r where r.id in (select r1tmp0.id from r__prime "
          "r1tmp0);\n"
          "insert ignore into r select r2tmp1.id, r2tmp1.value from r__prime "
          "r2tmp1;\n");
}

TEST_CASE("parse and type failures exit 2") {
    TempDir tmp;
    std::string env = tmp.file("env.state", "set s = {1}\n");
    CHECK(run_cli("translate --expr \"s +\" --env " + env).exit_code == 2);
    CHECK(run_cli("translate --expr \"s \\/ r\" --env " + env).exit_code == 2);
    CHECK(run_cli("translate --expr \"s\"").exit_code == 2);  // no env
    CHECK(run_cli("eval-eb --state /does/not/exist --expr \"card(s)\"")
              .exit_code == 2);
}

TEST_CASE("eval-eb and eval-sql print matching values") {
    TempDir tmp;
    std::string state = tmp.file("s.state", "set s = {1, 2}\nrel r = {(1, 5)}\n");
    auto card = run_cli("eval-eb --state " + state + " --expr \"card(s)\"");
    CHECK(card.exit_code == 0);
    CHECK(card.output == "2\n");

    auto eb = run_cli("eval-eb --state " + state + " --expr \"r[s] \\/ s\"");
    auto sql = run_cli("eval-sql --db " + state + " --expr \"r[s] \\/ s\"");
    CHECK(eb.exit_code == 0);
    CHECK(sql.exit_code == 0);
    CHECK(eb.output == sql.output);
}

TEST_CASE("exec writes the post-state in state-file format") {
    TempDir tmp;
    std::string state = tmp.file("in.state", "set s = {1}\nset t = {2}\n");
    std::string actions = tmp.file("swap.act", "s := t || t := s");
    std::string out_path = (tmp.path / "out.state").string();
    auto run = run_cli("exec --db " + state + " --actions " + actions + " --out " +
                       out_path);
    CHECK(run.exit_code == 0);
    CHECK(tmp.slurp("out.state") == "set s = {2}\nset t = {1}\n");
}

TEST_CASE("check passes on sound translations") {
    TempDir tmp;
    std::string state =
        tmp.file("in.state", "set s = {1, 2}\nrel r = {(1, 2), (2, 3)}\n");
    std::string actions = tmp.file("a.act", "s := s \\/ dom(r) || r := s <| r");
    auto run = run_cli("check --db " + state + " --actions " + actions);
    CHECK(run.exit_code == 0);
    CHECK(run.output == "pass\n");
}

TEST_CASE("fuzz is deterministic, honors --cases 0, and reports mutants") {
    auto a = run_cli("fuzz --seed 42 --cases 60 --mode expr");
    auto b = run_cli("fuzz --seed 42 --cases 60 --mode expr");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("summary cases=60 failures=0") != std::string::npos);

    auto empty = run_cli("fuzz --cases 0");
    CHECK(empty.exit_code == 0);
    CHECK(empty.output.find("summary cases=0 failures=0") != std::string::npos);

    auto mutant = run_cli(
        "fuzz --seed 42 --cases 400 --mode expr --mutate inter-as-minus");
    CHECK(mutant.exit_code == 1);
    CHECK(mutant.output.find("verdict=fail") != std::string::npos);

    CHECK(run_cli("fuzz --mutate bogus").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("fuzz --no-such-flag").exit_code == 2);
    CHECK(run_cli("fuzz --universe-min 3 --universe-max 1 --cases 5").exit_code ==
          2);
    CHECK(run_cli("fuzz --num-vars 0 --cases 30 --mode actions").exit_code == 0);
}
