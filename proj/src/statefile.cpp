#include "ebsql/statefile.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace ebsql {

namespace {

struct LineParser {
    const std::string& line;
    std::size_t pos = 0;
    int lineno;

    [[noreturn]] void fail(const std::string& expected) {
        throw Error("state file line " + std::to_string(lineno) + ": expected " +
                    expected);
    }

    void skip_ws() {
        while (pos < line.size() &&
               std::isspace(static_cast<unsigned char>(line[pos])))
            ++pos;
    }

    bool accept(char c) {
        skip_ws();
        if (pos < line.size() && line[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("'") + c + "'");
    }

    bool at_end() {
        skip_ws();
        return pos >= line.size();
    }

    std::string word() {
        skip_ws();
        std::size_t start = pos;
        while (pos < line.size() &&
               (std::isalnum(static_cast<unsigned char>(line[pos])) ||
                line[pos] == '_'))
            ++pos;
        if (pos == start) fail("a word");
        return line.substr(start, pos - start);
    }

    Scalar scalar() {
        skip_ws();
        if (pos < line.size() &&
            (std::isdigit(static_cast<unsigned char>(line[pos])) ||
             line[pos] == '-')) {
            std::size_t start = pos;
            if (line[pos] == '-') ++pos;
            while (pos < line.size() &&
                   std::isdigit(static_cast<unsigned char>(line[pos])))
                ++pos;
            if (pos == start + (line[start] == '-' ? 1 : 0)) fail("digits");
            return Scalar(Int(line.substr(start, pos - start)));
        }
        std::string w = word();
        if (w == "true") return Scalar(true);
        if (w == "false") return Scalar(false);
        fail("an integer or true/false");
    }

    ScalarKind kind_word() {
        std::string w = word();
        if (w == "int") return ScalarKind::Int;
        if (w == "bool") return ScalarKind::Bool;
        fail("'int' or 'bool'");
    }
};

void check_kind(const Scalar& s, ScalarKind want, int lineno) {
    if (s.kind() != want)
        throw Error("state file line " + std::to_string(lineno) + ": " + s.str() +
                    " is not of kind " + to_string(want));
}

}  // namespace

StateFile read_state(std::istream& in) {
    StateFile out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        LineParser p{line, 0, lineno};
        if (p.at_end()) continue;
        if (p.accept('#')) continue;
        std::string keyword = p.word();
        if (keyword != "set" && keyword != "rel")
            p.fail("'set' or 'rel' (or a '#' comment)");
        const bool is_rel = keyword == "rel";
        std::string name = p.word();
        if (is_primed(name))
            throw Error("state file line " + std::to_string(lineno) +
                        ": primed name '" + name + "' not allowed");
        if (out.env.count(name))
            throw Error("state file line " + std::to_string(lineno) +
                        ": duplicate name '" + name + "'");

        bool annotated = false;
        ScalarKind k1 = ScalarKind::Int;
        ScalarKind k2 = ScalarKind::Int;
        if (p.accept(':')) {
            annotated = true;
            k1 = p.kind_word();
            if (is_rel) k2 = p.kind_word();
        }
        p.expect('=');
        p.expect('{');

        if (is_rel) {
            std::set<std::pair<Scalar, Scalar>> pairs;
            if (!p.accept('}')) {
                do {
                    p.expect('(');
                    Scalar a = p.scalar();
                    p.expect(',');
                    Scalar b = p.scalar();
                    p.expect(')');
                    pairs.emplace(std::move(a), std::move(b));
                } while (p.accept(','));
                p.expect('}');
            }
            if (pairs.empty() && !annotated)
                throw Error("state file line " + std::to_string(lineno) +
                            ": empty relation needs a kind annotation, e.g. 'rel " +
                            name + " : int int = {}'");
            if (!pairs.empty()) {
                if (!annotated) {
                    k1 = pairs.begin()->first.kind();
                    k2 = pairs.begin()->second.kind();
                }
                for (const auto& [a, b] : pairs) {
                    check_kind(a, k1, lineno);
                    check_kind(b, k2, lineno);
                }
            }
            if (!p.at_end()) p.fail("end of line");
            out.env[name] = EbType::rel_of(k1, k2);
            out.db = db_update(out.db, name, pair_relation(pairs));
        } else {
            std::set<Scalar> elems;
            if (!p.accept('}')) {
                do {
                    elems.insert(p.scalar());
                } while (p.accept(','));
                p.expect('}');
            }
            if (elems.empty() && !annotated)
                throw Error("state file line " + std::to_string(lineno) +
                            ": empty set needs a kind annotation, e.g. 'set " +
                            name + " : int = {}'");
            if (!elems.empty()) {
                if (!annotated) k1 = elems.begin()->kind();
                for (const auto& e : elems) check_kind(e, k1, lineno);
            }
            if (!p.at_end()) p.fail("end of line");
            out.env[name] = EbType::set_of(k1);
            out.db = db_update(out.db, name, set_relation(elems));
        }
    }
    return out;
}

StateFile read_state_text(const std::string& text) {
    std::istringstream in(text);
    return read_state(in);
}

StateFile read_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open state file '" + path + "'");
    return read_state(in);
}

std::string write_state(const Database& db, const TypeEnv& env) {
    std::ostringstream os;
    for (const auto& [name, rel] : db.tables()) {
        auto it = env.find(name);
        const bool is_rel = rel.schema().size() == 2;
        os << (is_rel ? "rel " : "set ") << name;
        if (rel.empty()) {
            if (it == env.end())
                throw Error("cannot write empty table '" + name +
                            "' without a type for it");
            if (is_rel)
                os << " : " << to_string(it->second.elem) << " "
                   << to_string(it->second.value);
            else
                os << " : " << to_string(it->second.elem);
        }
        os << " = {";
        bool first = true;
        if (is_rel) {
            for (const auto& [a, b] : relation_as_pairs(rel)) {
                if (!first) os << ", ";
                first = false;
                os << "(" << a.str() << ", " << b.str() << ")";
            }
        } else {
            for (const auto& e : relation_as_set(rel)) {
                if (!first) os << ", ";
                first = false;
                os << e.str();
            }
        }
        os << "}\n";
    }
    return os.str();
}

void write_state_file(const std::string& path, const Database& db,
                      const TypeEnv& env) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write state file '" + path + "'");
    out << write_state(db, env);
}

}  // namespace ebsql
