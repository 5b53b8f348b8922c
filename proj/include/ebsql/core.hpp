#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ebsql/errors.hpp"

namespace ebsql {

using Int = boost::multiprecision::cpp_int;

/// Marker suffix for pre-state snapshot tables. Conceptually these are
/// primed names (s'); apostrophes are not legal SQL identifiers, so both
/// the generated SQL and the internal database keys spell it <name>__prime.
inline const std::string kPrimeSuffix = "__prime";

inline std::string primed(const std::string& name) { return name + kPrimeSuffix; }

inline bool is_primed(const std::string& name) {
    return name.size() > kPrimeSuffix.size() &&
           name.compare(name.size() - kPrimeSuffix.size(), kPrimeSuffix.size(),
                        kPrimeSuffix) == 0;
}

enum class ScalarKind { Int, Bool };

std::string to_string(ScalarKind k);

/// An atomic database/Event-B value: an arbitrary-precision integer or a
/// boolean. Ordered across kinds (ints before bools) so scalars can key
/// sets and maps; semantic comparisons between different kinds go through
/// eq_checked / compare_checked, which refuse mixed kinds.
class Scalar {
  public:
    Scalar() : value_(Int(0)) {}
    explicit Scalar(Int v) : value_(std::move(v)) {}
    explicit Scalar(bool b) : value_(b) {}
    static Scalar from_int(long long v) { return Scalar(Int(v)); }

    ScalarKind kind() const {
        return std::holds_alternative<Int>(value_) ? ScalarKind::Int : ScalarKind::Bool;
    }
    bool is_int() const { return kind() == ScalarKind::Int; }
    bool is_bool() const { return kind() == ScalarKind::Bool; }
    const Int& as_int() const;
    bool as_bool() const;

    /// Container order: total across kinds. Not a semantic comparison.
    friend bool operator<(const Scalar& a, const Scalar& b);
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::string str() const;

  private:
    std::variant<Int, bool> value_;
};

/// Semantic equality; throws KindMismatch on Int-vs-Bool instead of
/// silently answering false.
bool eq_checked(const Scalar& a, const Scalar& b);
/// Three-way semantic comparison (<0, 0, >0); ordering only defined for
/// integers, equality for both kinds.
int compare_checked(const Scalar& a, const Scalar& b);

/// One tuple of a relation: attribute name -> value. Keyed storage makes
/// row equality independent of attribute order.
using TupleRow = std::map<std::string, Scalar>;

/// A duplicate-free table. The schema carries emission order ([id, value]);
/// rows are a set, so inserting an existing row is a no-op.
class Relation {
  public:
    Relation() = default;
    explicit Relation(std::vector<std::string> schema) : schema_(std::move(schema)) {}

    const std::vector<std::string>& schema() const { return schema_; }
    const std::set<TupleRow>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }

    /// Inserts a row after checking it matches the schema exactly.
    void insert(TupleRow row);
    void erase(const TupleRow& row) { rows_.erase(row); }
    bool contains(const TupleRow& row) const { return rows_.count(row) > 0; }

    friend bool operator==(const Relation& a, const Relation& b) {
        return a.schema_ == b.schema_ && a.rows_ == b.rows_;
    }
    friend bool operator!=(const Relation& a, const Relation& b) { return !(a == b); }

  private:
    std::vector<std::string> schema_;
    std::set<TupleRow> rows_;
};

/// Convenience constructors for the two table shapes of the translation.
Relation set_relation(const std::set<Scalar>& elems);
Relation pair_relation(const std::set<std::pair<Scalar, Scalar>>& pairs);

/// Inverse bridges; schema-checked.
std::set<Scalar> relation_as_set(const Relation& rel);
std::set<std::pair<Scalar, Scalar>> relation_as_pairs(const Relation& rel);

/// A database state: table name -> relation. Immutable value; every
/// update returns a fresh database.
class Database {
  public:
    Database() = default;

    const Relation& table(const std::string& name) const;
    bool has_table(const std::string& name) const { return tables_.count(name) > 0; }
    const std::map<std::string, Relation>& tables() const { return tables_; }

    friend bool operator==(const Database& a, const Database& b) {
        return a.tables_ == b.tables_;
    }
    friend bool operator!=(const Database& a, const Database& b) { return !(a == b); }

    friend Database db_update(const Database& db, const std::string& name,
                              const Relation& rel);
    friend Database db_remove(const Database& db, const std::string& name);

  private:
    std::map<std::string, Relation> tables_;
};

Database db_update(const Database& db, const std::string& name, const Relation& rel);
Database db_remove(const Database& db, const std::string& name);

/// The Event-B value universe: integers, booleans, finite sets of scalars,
/// finite relations between scalars. Sets are ordered containers, so value
/// equality is structural equality; the empty set and the empty relation
/// compare equal (there is only one empty collection, the split is
/// representational).
class EbValue {
  public:
    using Set = std::set<Scalar>;
    using Rel = std::set<std::pair<Scalar, Scalar>>;

    EbValue() : value_(Int(0)) {}
    explicit EbValue(Int v) : value_(std::move(v)) {}
    explicit EbValue(bool b) : value_(b) {}
    explicit EbValue(Set s) : value_(std::move(s)) {}
    explicit EbValue(Rel r) : value_(std::move(r)) {}

    bool is_int() const { return std::holds_alternative<Int>(value_); }
    bool is_bool() const { return std::holds_alternative<bool>(value_); }
    bool is_set() const { return std::holds_alternative<Set>(value_); }
    bool is_rel() const { return std::holds_alternative<Rel>(value_); }

    const Int& as_int() const;
    bool as_bool() const;
    const Set& as_set() const;
    const Rel& as_rel() const;

    friend bool operator==(const EbValue& a, const EbValue& b) {
        if (a.value_.index() != b.value_.index()) {
            auto empty_collection = [](const EbValue& v) {
                return (v.is_set() && v.as_set().empty()) ||
                       (v.is_rel() && v.as_rel().empty());
            };
            return empty_collection(a) && empty_collection(b);
        }
        return a.value_ == b.value_;
    }
    friend bool operator!=(const EbValue& a, const EbValue& b) { return !(a == b); }

    std::string str() const;

  private:
    std::variant<Int, bool, Set, Rel> value_;
};

/// An Event-B machine state: variable name -> value. Primed names never
/// appear here; rep_db guards that invariant.
using MachineState = std::map<std::string, EbValue>;

const EbValue& state_lookup(const MachineState& m, const std::string& name);
MachineState state_update(const MachineState& m, const std::string& name,
                          EbValue value);

std::string to_string(const MachineState& m);

}  // namespace ebsql
