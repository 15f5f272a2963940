#pragma once

#include <cstddef>

namespace confalg::witness_audit {

// Process-wide tallies backing the suite-level soundness assertion: every
// witness a solver hands out must have passed an exact re-verification by
// substitution first. Solvers call record_verified() right after their
// re-check succeeds and record_emitted() when the witness object leaves the
// solver; the two counts must agree at all times.
void record_emitted();
void record_verified();
std::size_t emitted();
std::size_t verified();
void reset();

}  // namespace confalg::witness_audit
