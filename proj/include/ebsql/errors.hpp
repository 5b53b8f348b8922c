#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ebsql {

/// Base for all diagnosable failures in the toolkit. Callers that only need
/// a verdict catch this; tests catch the concrete types.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : Error {
    std::size_t position;
    std::string expected;
    ParseError(std::size_t pos, const std::string& exp)
        : Error("parse error at offset " + std::to_string(pos) + ": expected " + exp),
          position(pos),
          expected(exp) {}
};

struct DuplicateTarget : Error {
    std::string name;
    explicit DuplicateTarget(const std::string& n)
        : Error("variable '" + n + "' assigned more than once"), name(n) {}
};

struct TypeError : Error {
    explicit TypeError(const std::string& msg) : Error("type error: " + msg) {}
};

struct UnboundVariable : Error {
    std::string name;
    explicit UnboundVariable(const std::string& n)
        : Error("unbound variable '" + n + "'"), name(n) {}
};

struct KindMismatch : Error {
    explicit KindMismatch(const std::string& msg) : Error("kind mismatch: " + msg) {}
};

struct SchemaMismatch : Error {
    explicit SchemaMismatch(const std::string& msg) : Error("schema mismatch: " + msg) {}
};

struct SchemaError : Error {
    explicit SchemaError(const std::string& msg) : Error("schema error: " + msg) {}
};

struct UnboundTable : Error {
    std::string name;
    explicit UnboundTable(const std::string& n)
        : Error("unbound table '" + n + "'"), name(n) {}
};

struct PrimedNamePresent : Error {
    std::string name;
    explicit PrimedNamePresent(const std::string& n)
        : Error("primed table '" + n + "' present in a state given to rep"), name(n) {}
};

struct Untranslatable : Error {
    explicit Untranslatable(const std::string& msg)
        : Error("no translation rule: " + msg) {}
};

/// Raised by the statement executor when insert-ignore semantics are
/// disabled (mutation hook) and a duplicate row arrives.
struct DuplicateRow : Error {
    explicit DuplicateRow(const std::string& msg) : Error("duplicate row: " + msg) {}
};

}  // namespace ebsql
