#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypertile/classify.hpp"
#include "hypertile/mapcore.hpp"
#include "hypertile/search.hpp"

namespace hypertile {

enum class Outcome { Refuted, Witness, Inconclusive };

std::string to_string(Outcome o);

// Result of the exhaustive bounded search.  Refuted(r) means the complete
// tree over all fan completions out to r layers, for every root fan up to
// rotation and reflection, is exhausted with no valid patch.
struct Certificate {
  Outcome outcome = Outcome::Inconclusive;
  VertexTuple tuple;
  int radius = 0;
  std::int64_t nodes = 0;
  std::int64_t backtracks = 0;
  std::optional<CombMap> witness;
};

// Complete depth-first refutation search: build the root fan (one
// representative per cyclic class), then complete every boundary vertex,
// layer by layer, radius-1 times.  Deterministic for fixed inputs.
Certificate refute(const VertexTuple& t, int radius = 3,
                   std::int64_t budget = 10'000'000);

// classify/refute agreement over a family of tuples.
struct CrossCheckRow {
  VertexTuple tuple;
  Verdict verdict;
  Outcome outcome = Outcome::Inconclusive;
  std::int64_t nodes = 0;
  // OK: agreement.  WEAK: classify says No but the search only exhausted its
  // budget.  FATAL: witness for a No tuple or refutation of a Yes tuple.
  enum Flag { OK, WEAK, FATAL } flag = OK;
};

struct CrossCheckReport {
  std::vector<CrossCheckRow> rows;
  int fatal = 0;
  int weak = 0;
};

// Reference implementation: one tuple after another.
CrossCheckReport cross_check_serial(const std::vector<VertexTuple>& family,
                                    int radius = 3,
                                    std::int64_t budget = 10'000'000);

// Same results, OpenMP-parallel over tuples; rows keep family order, so the
// report is identical to the serial one regardless of thread schedule.
CrossCheckReport cross_check(const std::vector<VertexTuple>& family,
                             int radius = 3, std::int64_t budget = 10'000'000,
                             int threads = 0);

// All degree-d multisets with entries in [3, max_entry] and angle sum >= 2.
std::vector<VertexTuple> tuple_family(int degree, int max_entry);

}  // namespace hypertile
