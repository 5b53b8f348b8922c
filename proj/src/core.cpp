#include "ebsql/core.hpp"

#include <sstream>

namespace ebsql {

std::string to_string(ScalarKind k) {
    return k == ScalarKind::Int ? "int" : "bool";
}

const Int& Scalar::as_int() const {
    if (!is_int()) throw KindMismatch("expected int scalar, found bool");
    return std::get<Int>(value_);
}

bool Scalar::as_bool() const {
    if (!is_bool()) throw KindMismatch("expected bool scalar, found int");
    return std::get<bool>(value_);
}

bool operator<(const Scalar& a, const Scalar& b) {
    if (a.value_.index() != b.value_.index()) return a.value_.index() < b.value_.index();
    return a.value_ < b.value_;
}

bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }

std::string Scalar::str() const {
    if (is_int()) return as_int().str();
    return as_bool() ? "true" : "false";
}

bool eq_checked(const Scalar& a, const Scalar& b) {
    if (a.kind() != b.kind())
        throw KindMismatch("comparing " + to_string(a.kind()) + " with " +
                           to_string(b.kind()));
    return a == b;
}

int compare_checked(const Scalar& a, const Scalar& b) {
    if (a.kind() != b.kind())
        throw KindMismatch("ordering " + to_string(a.kind()) + " against " +
                           to_string(b.kind()));
    if (a.is_bool())
        throw KindMismatch("booleans admit only equality comparison");
    const Int& x = a.as_int();
    const Int& y = b.as_int();
    if (x < y) return -1;
    if (y < x) return 1;
    return 0;
}

void Relation::insert(TupleRow row) {
    if (row.size() != schema_.size())
        throw SchemaMismatch("row has " + std::to_string(row.size()) +
                             " attributes, schema has " + std::to_string(schema_.size()));
    for (const auto& attr : schema_) {
        if (row.find(attr) == row.end())
            throw SchemaMismatch("row missing attribute '" + attr + "'");
    }
    rows_.insert(std::move(row));
}

Relation set_relation(const std::set<Scalar>& elems) {
    Relation rel({"refkey"});
    for (const auto& e : elems) rel.insert({{"refkey", e}});
    return rel;
}

Relation pair_relation(const std::set<std::pair<Scalar, Scalar>>& pairs) {
    Relation rel({"id", "value"});
    for (const auto& [k, v] : pairs) rel.insert({{"id", k}, {"value", v}});
    return rel;
}

std::set<Scalar> relation_as_set(const Relation& rel) {
    if (rel.schema() != std::vector<std::string>{"refkey"})
        throw SchemaMismatch("expected schema [refkey]");
    std::set<Scalar> out;
    for (const auto& row : rel.rows()) out.insert(row.at("refkey"));
    return out;
}

std::set<std::pair<Scalar, Scalar>> relation_as_pairs(const Relation& rel) {
    if (rel.schema() != std::vector<std::string>{"id", "value"})
        throw SchemaMismatch("expected schema [id, value]");
    std::set<std::pair<Scalar, Scalar>> out;
    for (const auto& row : rel.rows()) out.emplace(row.at("id"), row.at("value"));
    return out;
}

const Relation& Database::table(const std::string& name) const {
    auto it = tables_.find(name);
    if (it == tables_.end()) throw UnboundTable(name);
    return it->second;
}

Database db_update(const Database& db, const std::string& name, const Relation& rel) {
    Database out = db;
    out.tables_[name] = rel;
    return out;
}

Database db_remove(const Database& db, const std::string& name) {
    Database out = db;
    out.tables_.erase(name);
    return out;
}

const Int& EbValue::as_int() const {
    if (!is_int()) throw KindMismatch("expected integer value");
    return std::get<Int>(value_);
}

bool EbValue::as_bool() const {
    if (!is_bool()) throw KindMismatch("expected boolean value");
    return std::get<bool>(value_);
}

const EbValue::Set& EbValue::as_set() const {
    if (!is_set()) throw KindMismatch("expected set value");
    return std::get<Set>(value_);
}

const EbValue::Rel& EbValue::as_rel() const {
    if (!is_rel()) throw KindMismatch("expected relation value");
    return std::get<Rel>(value_);
}

std::string EbValue::str() const {
    std::ostringstream os;
    if (is_int()) {
        os << as_int().str();
    } else if (is_bool()) {
        os << (as_bool() ? "true" : "false");
    } else if (is_set()) {
        os << "{";
        bool first = true;
        for (const auto& e : as_set()) {
            if (!first) os << ", ";
            first = false;
            os << e.str();
        }
        os << "}";
    } else {
        os << "{";
        bool first = true;
        for (const auto& [k, v] : as_rel()) {
            if (!first) os << ", ";
            first = false;
            os << "(" << k.str() << ", " << v.str() << ")";
        }
        os << "}";
    }
    return os.str();
}

const EbValue& state_lookup(const MachineState& m, const std::string& name) {
    auto it = m.find(name);
    if (it == m.end()) throw UnboundVariable(name);
    return it->second;
}

MachineState state_update(const MachineState& m, const std::string& name,
                          EbValue value) {
    MachineState out = m;
    out[name] = std::move(value);
    return out;
}

std::string to_string(const MachineState& m) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [name, value] : m) {
        if (!first) os << ", ";
        first = false;
        os << name << " = " << value.str();
    }
    os << "}";
    return os.str();
}

}  // namespace ebsql
