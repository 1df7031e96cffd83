#pragma once

#include <cstdint>
#include <vector>

#include "hypertile/mapcore.hpp"

namespace hypertile {

// Depth-first completion of vertex fans over a growing disk patch.  Both the
// builder and the refutation oracle drive this engine; a "round" completes
// the fan of every vertex that was on the boundary when the round started,
// matching the inductive layer construction X_k -> X_{k+1}.

struct SearchOptions {
  std::int64_t budget = 10'000'000;  // attach attempts
  // Move ordering; every order explores the same complete space.
  enum Order {
    kSizeAscending,   // face sizes ascending, lazy closing
    kSizeDescending,  // face sizes descending
    kEagerClose,      // closing moves first, then sizes ascending
    kShuffled,        // seeded pseudo-random permutation
  };
  Order order = kSizeAscending;
  unsigned shuffle_seed = 0;
  // Completion horizon: kRounds completes whole boundary layers (the X_k
  // construction); kDistance completes every vertex within the given
  // dart-graph distance of the root vertex.
  enum Horizon { kRounds, kDistance };
  Horizon horizon = kRounds;
};

struct SearchStats {
  std::int64_t nodes = 0;
  std::int64_t backtracks = 0;
};

class LayeredSearch {
 public:
  LayeredSearch(CombMap map, TypeConstraint constraint, SearchOptions opt);

  // Runs the search out to the given horizon (completion rounds, or the
  // graph-distance ball).  Returns true when a completion exists (the map
  // holds it); false when the space is exhausted or the budget was hit --
  // budget_exhausted() tells which.
  bool run(int rounds);

  CombMap& map() { return map_; }
  const CombMap& map() const { return map_; }
  const SearchStats& stats() const { return stats_; }
  bool budget_exhausted() const { return budget_hit_; }

 private:
  bool affected_fans_valid(const AttachRecord& rec);
  bool gap_completable(VertexId v);

  bool run_rounds(int rounds);
  bool run_distance(int radius);

  CombMap map_;
  TypeConstraint constraint_;
  SearchOptions opt_;
  SearchStats stats_;
  bool budget_hit_ = false;
  int degree_ = 0;
  std::vector<int> size_choices_;  // distinct sizes, ascending
  int round_layer_ = 0;
};

// Distinct cyclic arrangements of the tuple up to rotation and reflection,
// in lexicographic order of their canonical words.  The refutation search
// explores one root fan per class.
std::vector<std::vector<int>> root_fan_words(const VertexTuple& t);

// Restart portfolio: runs the layered search over the same start map under
// a fixed schedule of move orders and budget slices (diverse cheap slices
// first, one exhaustive full-budget slice last).  Completions found by any
// slice count; "exhausted" from any slice proves there is no completion.
struct PortfolioResult {
  bool found = false;
  bool exhausted = false;  // search space fully explored by some slice
  SearchStats stats;
  CombMap map;  // the completion when found
};

PortfolioResult run_portfolio(const CombMap& start,
                              const TypeConstraint& constraint, int rounds,
                              std::int64_t budget, bool guided_first,
                              unsigned seed = 0,
                              SearchOptions::Horizon horizon =
                                  SearchOptions::kRounds);

}  // namespace hypertile
