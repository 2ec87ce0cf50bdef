#pragma once

// Structured (JSON) reports.
//
// Every report is an object {"format": "promov-report", "version": "1",
// "verb": ..., ...}. Integers, indices included, are decimal strings. A
// verdict is
//
//   {"property", "status", "exact", "horizon": {mu_max, lambda_max,
//    muprime_max, cone_max}, "records": [record], "refutation": null | {...}}
//
// and a record is {"mu", "status", "lambda" (or null), "rule", "witnesses",
// "index_set", "chain", "note"}. Witness morphisms and chain images carry
// their source, target or ambient object so that a verdict reads back
// without the instance it came from.

#include "document.hpp"

#include <string>
#include <vector>

namespace promov::cli {

template <CategoryBackend C>
json verdict_to_json(const Verdict<C>& v);

/// Inverse of verdict_to_json. Throws InputError naming the offending pointer.
template <CategoryBackend C>
Verdict<C> verdict_from_json(const json& j);

json violation_to_json(const Violation& v, const IndexSet& index);

/// {"format", "version", "verb"} plus the given fields.
json envelope(const std::string& verb);

/// Structural check of a report against the layout above; one message per
/// problem, empty when the report conforms.
std::vector<std::string> schema_errors(const json& report);

}  // namespace promov::cli
