#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "hypertile/mapcore.hpp"
#include "hypertile/search.hpp"

namespace hypertile {

enum class BuildMode { Pseudo, Homogeneous };
enum class BuildStrategy { PaperGuided, Backtrack };

struct BuildSpec {
  VertexTuple tuple;                // pseudo constraint (multiset)
  std::optional<CyclicType> word;   // homogeneous constraint
  int layers = 3;                   // X_layers; the root fan is X_1
  BuildMode mode = BuildMode::Pseudo;
  BuildStrategy strategy = BuildStrategy::PaperGuided;
  std::int64_t budget = 10'000'000;
  unsigned seed = 0;   // rotates the root-fan arrangement tried first
  bool force = false;  // probe tuples the classifier rejects
};

struct BuildResult {
  CombMap map;
  int layers_built = 0;
  BuildStrategy strategy_used = BuildStrategy::PaperGuided;
  SearchStats stats;
};

struct BuildError : std::runtime_error {
  enum Kind { NotAdmissible, BudgetExhausted, NoValidFan, BadParams };
  BuildError(Kind k, const std::string& msg)
      : std::runtime_error(msg), kind(k) {}
  Kind kind;
};

// Layer-by-layer construction of a patch of the requested type.  With the
// guided strategy, tuples whose existence proof goes through a derived
// construction (edge contraction, rectify-truncate, restricted cantellation)
// are built that way; everything else runs the depth-first layer search.
BuildResult build(const BuildSpec& spec);

// One more completed layer on an existing patch (uses the map's stored
// type).  Throws BuildError(NoValidFan) when no completion exists.
CombMap extend_layer(const CombMap& m,
                     BuildStrategy strategy = BuildStrategy::PaperGuided,
                     std::int64_t budget = 10'000'000);

// Contract the edges shared by the 2q-gons and 2s-gons of a homogeneous
// [2p,2q,2s] patch, producing a homogeneous [2p,q,2p,s] patch.
CombMap contract_even_pairs(const CombMap& m);

// Rectify along one edge color and truncate along the other: homogeneous
// [2p,2q,2p,2q] -> pseudo-homogeneous [3,3,3p,3q].
CombMap rect_truncate(const CombMap& m);

// Restricted cantellation: homogeneous [k3/2,4,k4/2,k3,k4] with k3 = 4p,
// k4 = 4q (p,q >= 2, k3 != k4) -> pseudo-homogeneous [3,4,k3,k4].
CombMap cantellate_restricted(const CombMap& m);

// Homogeneous patch of cyclic type [3,5,k,5,l,5,m,5,l,5,k,5,l,5].  Default
// validation requires mutually distinct even k,l,m >= 6; relax_params allows
// the weaker "distinct and >= 4".
CombMap build_kh(int k, int l, int m, int layers,
                 std::int64_t budget = 10'000'000, bool relax_params = false);

// The cyclic word of the homogeneous family above.
CyclicType kh_word(int k, int l, int m);

}  // namespace hypertile
