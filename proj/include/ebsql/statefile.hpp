#pragma once

#include <iosfwd>
#include <string>

#include "ebsql/core.hpp"
#include "ebsql/typecheck.hpp"

namespace ebsql {

/// Parsed state file: the database plus the type environment it implies.
struct StateFile {
    Database db;
    TypeEnv env;
};

/// Line-based format:
///   # comment
///   set NAME = {v1, v2, ...}
///   set NAME : int = {}
///   rel NAME = {(k1, v1), (k2, v2), ...}
///   rel NAME : int bool = {}
/// Kinds are inferred from elements; empty collections need the
/// annotation. Integers are decimal, booleans true/false.
StateFile read_state(std::istream& in);
StateFile read_state_text(const std::string& text);
StateFile read_state_file(const std::string& path);

/// Inverse of read_state on (db, env): deterministic, annotated only where
/// required (empty tables).
std::string write_state(const Database& db, const TypeEnv& env);
void write_state_file(const std::string& path, const Database& db,
                      const TypeEnv& env);

}  // namespace ebsql
