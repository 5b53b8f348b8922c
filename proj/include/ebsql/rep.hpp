#pragma once

#include "ebsql/core.hpp"

namespace ebsql {

/// Maps a table to the Event-B value it represents: [refkey] tables to
/// scalar sets, [id, value] tables to relations, and any other one-row
/// one-attribute table to the scalar it wraps (count results).
EbValue rep_value(const Relation& rel);

/// Scalars pass through unchanged.
EbValue rep_value(const Scalar& s);

/// Pointwise rep over all tables. Refuses primed names: rep applies only
/// to fully resolved states.
MachineState rep_db(const Database& db);

}  // namespace ebsql
