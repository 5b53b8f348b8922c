#include "ebsql/rep.hpp"

namespace ebsql {

EbValue rep_value(const Relation& rel) {
    const auto& schema = rel.schema();
    if (schema == std::vector<std::string>{"refkey"})
        return EbValue(relation_as_set(rel));
    if (schema == std::vector<std::string>{"id", "value"})
        return EbValue(relation_as_pairs(rel));
    if (schema.size() == 1 && rel.size() == 1) {
        const Scalar& s = rel.rows().begin()->begin()->second;
        return s.is_int() ? EbValue(s.as_int()) : EbValue(s.as_bool());
    }
    throw SchemaMismatch("relation shape has no Event-B meaning");
}

EbValue rep_value(const Scalar& s) {
    return s.is_int() ? EbValue(s.as_int()) : EbValue(s.as_bool());
}

MachineState rep_db(const Database& db) {
    MachineState m;
    for (const auto& [name, rel] : db.tables()) {
        if (is_primed(name)) throw PrimedNamePresent(name);
        m[name] = rep_value(rel);
    }
    return m;
}

}  // namespace ebsql
