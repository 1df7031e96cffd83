#include "hypertile/search.hpp"

#include <algorithm>
#include <climits>
#include <random>
#include <set>

namespace hypertile {

namespace {

struct Move {
  int size = 0;
  int b = 0;  // backward run extension (closes trailing boundary vertices)
  int f = 0;  // forward run extension (closes v, then its successors)
};

struct Step {
  VertexId v = -1;
  size_t target_idx = 0;   // rounds mode bookkeeping
  size_t rounds_size = 0;  // rounds mode bookkeeping
  size_t journal_mark = 0; // distance mode bookkeeping
  int round_layer = 0;
  std::vector<Move> moves;
  size_t pos = 0;  // move applied (or next to try while descending)
  AttachRecord rec;
};

}  // namespace

LayeredSearch::LayeredSearch(CombMap map, TypeConstraint constraint,
                             SearchOptions opt)
    : map_(std::move(map)), constraint_(std::move(constraint)), opt_(opt) {
  degree_ = constraint_.tuple.degree();
  std::set<int> sizes;
  for (const auto& e : constraint_.tuple.entries()) sizes.insert(e.sides());
  size_choices_.assign(sizes.begin(), sizes.end());
  for (VertexId v = 0; v < map_.vertex_count(); ++v)
    round_layer_ = std::max(round_layer_, map_.vertex(v).layer);
}

bool LayeredSearch::gap_completable(VertexId v) {
  const int gap = degree_ - map_.fan_count(v);
  if (gap >= 3) return true;  // the middle of a wide gap is unconstrained
  std::vector<int> arc = map_.fan_sizes(v);
  DartId d_out = map_.vertex(v).outer_dart;
  VertexId succ = map_.target(d_out);
  VertexId pred = map_.dart(map_.dart(d_out).prev).origin;
  std::vector<int> arc_p = map_.fan_sizes(pred);
  std::vector<int> arc_n = map_.fan_sizes(succ);

  if (gap == 1) {
    // one face closes v and lands on both of its boundary edges
    std::vector<int> word = arc;
    word.push_back(0);
    for (int s : size_choices_) {
      word.back() = s;
      if (!constraint_.fan_matches(word)) continue;
      if (constraint_.arc_extendable_with(arc_p, s) &&
          constraint_.arc_extendable_with(arc_n, s))
        return true;
    }
    return false;
  }
  // gap == 2: one face against the incoming edge, one against the outgoing
  std::vector<int> word;
  word.reserve(arc.size() + 2);
  word.push_back(0);
  word.insert(word.end(), arc.begin(), arc.end());
  word.push_back(0);
  for (int s1 : size_choices_) {
    word.front() = s1;
    if (!constraint_.arc_extendable_with(arc_p, s1)) continue;
    for (int s2 : size_choices_) {
      word.back() = s2;
      if (!constraint_.fan_matches(word)) continue;
      if (constraint_.arc_extendable_with(arc_n, s2)) return true;
    }
  }
  return false;
}

bool LayeredSearch::affected_fans_valid(const AttachRecord& rec) {
  // Vertices strictly inside the glue run became interior: their fans must
  // match the constraint exactly.  The run endpoints keep a gap: their arcs
  // must stay extendable.
  DartId e = rec.run_first;
  VertexId a = map_.dart(rec.run_first).origin;
  for (int i = 0; i < rec.run_len; ++i) {
    if (i > 0) {
      VertexId closed = map_.dart(e).origin;
      if (!constraint_.fan_matches(map_.fan_sizes(closed))) return false;
    }
    e = map_.dart(e).next;
  }
  VertexId b = map_.dart(rec.old_next_of_run_last).origin;
  if (!constraint_.arc_extendable(map_.fan_sizes(a))) return false;
  if (!constraint_.arc_extendable(map_.fan_sizes(b))) return false;

  // Consistency around the modified stretch, from a's boundary predecessor
  // to b's successor: every nearly-closed vertex must still admit a joint
  // completion, and every boundary edge a face extending both of its ends.
  DartId start = map_.dart(map_.vertex(a).outer_dart).prev;
  DartId stop = map_.dart(map_.vertex(b).outer_dart).next;
  if (!gap_completable(map_.dart(start).origin)) return false;
  std::vector<int> arc_u = map_.fan_sizes(map_.dart(start).origin);
  for (DartId d = start; d != stop; d = map_.dart(d).next) {
    VertexId w = map_.target(d);
    if (!gap_completable(w)) return false;
    std::vector<int> arc_w = map_.fan_sizes(w);
    bool feasible = false;
    for (int s : size_choices_) {
      if (constraint_.arc_extendable_with(arc_u, s) &&
          constraint_.arc_extendable_with(arc_w, s)) {
        feasible = true;
        break;
      }
    }
    if (!feasible) return false;
    arc_u = std::move(arc_w);
  }
  return true;
}

namespace {

// Enumerate the placements of the next face into the gap of v, in the
// order requested by the options.
void generate_moves(const CombMap& map, const TypeConstraint&, int degree,
                    const std::vector<int>& size_choices,
                    const SearchOptions& opt, VertexId v,
                    std::vector<Move>& moves) {
  moves.clear();
  const DartId d_out = map.vertex(v).outer_dart;
  const DartId d_in = map.dart(d_out).prev;
  const int boundary_len = map.boundary_length();

  int b_max = 0;
  {
    DartId cur = d_in;
    while (b_max < boundary_len - 2) {
      VertexId u = map.dart(cur).origin;
      if (map.fan_count(u) != degree - 1) break;
      cur = map.dart(cur).prev;
      if (cur == d_out) break;
      ++b_max;
    }
  }
  int f_max = 0;
  {
    VertexId w = v;
    DartId fcur = d_out;
    while (f_max < boundary_len - 2) {
      if (map.fan_count(w) != degree - 1) break;
      ++f_max;
      w = map.target(fcur);
      fcur = map.dart(fcur).next;
    }
  }
  for (int s : size_choices) {
    for (int b = 0; b <= b_max; ++b) {
      for (int f = 0; f <= f_max; ++f) {
        int run_len = b + 1 + f;
        if (run_len + 1 > s) continue;
        if (run_len >= boundary_len) continue;
        moves.push_back({s, b, f});
      }
    }
  }
  switch (opt.order) {
    case SearchOptions::kSizeAscending:
      break;
    case SearchOptions::kSizeDescending:
      std::stable_sort(moves.begin(), moves.end(),
                       [](const Move& x, const Move& y) { return x.size > y.size; });
      break;
    case SearchOptions::kEagerClose:
      std::stable_sort(moves.begin(), moves.end(),
                       [](const Move& x, const Move& y) { return x.f > y.f; });
      break;
    case SearchOptions::kShuffled: {
      std::mt19937 rng(opt.shuffle_seed * 2654435761u + 0x9e3779b9u +
                       static_cast<unsigned>(v) * 40503u);
      std::shuffle(moves.begin(), moves.end(), rng);
      break;
    }
  }
}

}  // namespace

bool LayeredSearch::run(int n) {
  if (n <= 0) return true;
  return opt_.horizon == SearchOptions::kDistance ? run_distance(n)
                                                  : run_rounds(n);
}

bool LayeredSearch::run_rounds(int rounds) {
  std::vector<std::vector<VertexId>> round_targets;
  round_targets.push_back(map_.boundary_cycle());
  ++round_layer_;
  std::vector<Step> steps;

  // Most-constrained target first: the vertex with the fewest missing
  // faces propagates its constraints soonest.  Any completion order reaches
  // the same set of finished patches, so the search stays complete.
  auto pick_target = [&](const std::vector<VertexId>& targets) -> size_t {
    size_t best = targets.size();
    int best_gap = INT_MAX;
    for (size_t i = 0; i < targets.size(); ++i) {
      VertexId v = targets[i];
      if (!map_.is_boundary_vertex(v)) continue;
      int gap = degree_ - map_.fan_count(v);
      if (gap < best_gap) {
        best_gap = gap;
        best = i;
      }
    }
    return best;
  };

  auto try_moves = [&](Step& st) {
    for (; st.pos < st.moves.size(); ++st.pos) {
      const Move& mv = st.moves[st.pos];
      const int run_len = mv.b + 1 + mv.f;
      DartId d_out = map_.vertex(st.v).outer_dart;
      DartId run_first = map_.dart(d_out).prev;
      for (int i = 0; i < mv.b; ++i) run_first = map_.dart(run_first).prev;
      if (mv.size == run_len + 1) {
        // the single fresh edge must not duplicate an existing edge
        VertexId a = map_.dart(run_first).origin;
        DartId last = run_first;
        for (int i = 1; i < run_len; ++i) last = map_.dart(last).next;
        VertexId bb = map_.target(last);
        if (map_.adjacent(a, bb)) continue;
      }
      ++stats_.nodes;
      if (stats_.nodes > opt_.budget) {
        budget_hit_ = true;
        return false;
      }
      st.rec = map_.attach_face(run_first, run_len, mv.size, round_layer_);
      if (affected_fans_valid(st.rec)) return true;
      map_.undo_attach(st.rec);
      ++stats_.backtracks;
    }
    return false;
  };

  while (true) {
    if (budget_hit_) return false;
    std::vector<VertexId>& targets = round_targets.back();
    size_t cur_idx = pick_target(targets);
    if (cur_idx == targets.size()) {
      if (static_cast<int>(round_targets.size()) >= rounds) return true;
      round_targets.push_back(map_.boundary_cycle());
      ++round_layer_;
      continue;
    }

    Step st;
    st.v = targets[cur_idx];
    st.target_idx = cur_idx;
    st.rounds_size = round_targets.size();
    st.round_layer = round_layer_;
    generate_moves(map_, constraint_, degree_, size_choices_, opt_, st.v,
                   st.moves);

    while (!try_moves(st)) {
      if (budget_hit_) return false;
      if (steps.empty()) return false;  // space exhausted
      st = std::move(steps.back());
      steps.pop_back();
      map_.undo_attach(st.rec);
      ++stats_.backtracks;
      round_targets.resize(st.rounds_size);
      round_layer_ = st.round_layer;
      ++st.pos;
    }
    steps.push_back(std::move(st));
  }
}

bool LayeredSearch::run_distance(int radius) {
  // Dart-graph distances from the root vertex, kept exact under surgeries:
  // new edges can only shorten distances, undo restores from the journal.
  std::vector<int> dist(static_cast<size_t>(map_.vertex_count()), INT_MAX);
  struct DistChange {
    VertexId v;
    int old;
  };
  std::vector<DistChange> journal;
  std::vector<VertexId> queue;

  auto relax_from = [&](std::initializer_list<VertexId> seeds, bool record) {
    queue.assign(seeds.begin(), seeds.end());
    while (!queue.empty()) {
      VertexId v = queue.back();
      queue.pop_back();
      if (dist[static_cast<size_t>(v)] == INT_MAX) continue;
      DartId start = map_.vertex(v).any_dart;
      DartId d = start;
      do {
        VertexId w = map_.target(d);
        if (dist[static_cast<size_t>(w)] >
            dist[static_cast<size_t>(v)] + 1) {
          if (record)
            journal.push_back({w, dist[static_cast<size_t>(w)]});
          dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(v)] + 1;
          queue.push_back(w);
        }
        d = map_.rotate_ccw(d);
      } while (d != start);
    }
  };
  dist[0] = 0;
  relax_from({0}, false);

  std::vector<Step> steps;

  auto pick_target = [&]() -> VertexId {
    VertexId best = -1;
    int best_gap = INT_MAX, best_dist = INT_MAX;
    for (VertexId v = 0; v < map_.vertex_count(); ++v) {
      if (!map_.is_boundary_vertex(v)) continue;
      if (dist[static_cast<size_t>(v)] > radius) continue;
      int gap = degree_ - map_.fan_count(v);
      if (gap < best_gap ||
          (gap == best_gap && dist[static_cast<size_t>(v)] < best_dist)) {
        best_gap = gap;
        best_dist = dist[static_cast<size_t>(v)];
        best = v;
      }
    }
    return best;
  };

  auto try_moves = [&](Step& st) {
    for (; st.pos < st.moves.size(); ++st.pos) {
      const Move& mv = st.moves[st.pos];
      const int run_len = mv.b + 1 + mv.f;
      DartId d_out = map_.vertex(st.v).outer_dart;
      DartId run_first = map_.dart(d_out).prev;
      for (int i = 0; i < mv.b; ++i) run_first = map_.dart(run_first).prev;
      if (mv.size == run_len + 1) {
        VertexId a = map_.dart(run_first).origin;
        DartId last = run_first;
        for (int i = 1; i < run_len; ++i) last = map_.dart(last).next;
        VertexId bb = map_.target(last);
        if (map_.adjacent(a, bb)) continue;
      }
      ++stats_.nodes;
      if (stats_.nodes > opt_.budget) {
        budget_hit_ = true;
        return false;
      }
      st.journal_mark = journal.size();
      st.rec = map_.attach_face(run_first, run_len, mv.size, round_layer_);
      if (affected_fans_valid(st.rec)) {
        // settle distances of the fresh vertices and any shortcuts
        dist.resize(static_cast<size_t>(map_.vertex_count()), INT_MAX);
        VertexId a = map_.dart(st.rec.run_first).origin;
        VertexId b = map_.dart(st.rec.old_next_of_run_last).origin;
        relax_from({a, b}, true);
        return true;
      }
      map_.undo_attach(st.rec);
      ++stats_.backtracks;
    }
    return false;
  };

  auto undo_step = [&](const Step& st) {
    map_.undo_attach(st.rec);
    dist.resize(static_cast<size_t>(map_.vertex_count()));
    for (size_t i = journal.size(); i > st.journal_mark; --i)
      dist[static_cast<size_t>(journal[i - 1].v)] = journal[i - 1].old;
    journal.resize(st.journal_mark);
  };

  while (true) {
    if (budget_hit_) return false;
    VertexId v = pick_target();
    if (v == -1) {
      for (VertexId x = 0; x < map_.vertex_count(); ++x)
        map_.set_layer(x, dist[static_cast<size_t>(x)] == INT_MAX
                              ? 0
                              : dist[static_cast<size_t>(x)]);
      return true;
    }

    Step st;
    st.v = v;
    st.round_layer = round_layer_;
    generate_moves(map_, constraint_, degree_, size_choices_, opt_, st.v,
                   st.moves);

    while (!try_moves(st)) {
      if (budget_hit_) return false;
      if (steps.empty()) return false;
      st = std::move(steps.back());
      steps.pop_back();
      undo_step(st);
      ++stats_.backtracks;
      round_layer_ = st.round_layer;
      ++st.pos;
    }
    steps.push_back(std::move(st));
  }
}

PortfolioResult run_portfolio(const CombMap& start,
                              const TypeConstraint& constraint, int rounds,
                              std::int64_t budget, bool guided_first,
                              unsigned seed, SearchOptions::Horizon horizon) {
  struct Slice {
    SearchOptions::Order order;
    unsigned shuffle;
    int denom;  // fraction of the total budget, 0 = the full remainder
  };
  std::vector<Slice> schedule;
  if (guided_first) {
    schedule = {{SearchOptions::kSizeDescending, 0, 64},
                {SearchOptions::kEagerClose, 0, 64},
                {SearchOptions::kSizeAscending, 0, 64}};
  } else {
    schedule = {{SearchOptions::kSizeAscending, 0, 64},
                {SearchOptions::kSizeDescending, 0, 64},
                {SearchOptions::kEagerClose, 0, 64}};
  }
  for (unsigned s = 0; s < 6; ++s)
    schedule.push_back({SearchOptions::kShuffled, seed * 31 + s, 64});
  schedule.push_back({SearchOptions::kSizeDescending, 0, 16});
  schedule.push_back({SearchOptions::kShuffled, seed * 31 + 6, 16});
  schedule.push_back({SearchOptions::kShuffled, seed * 31 + 7, 16});
  schedule.push_back({SearchOptions::kSizeAscending, 0, 0});  // exhaustive tail

  PortfolioResult result;
  std::int64_t spent = 0;
  for (const Slice& slice : schedule) {
    std::int64_t remaining = budget - spent;
    if (remaining <= 0) break;
    SearchOptions opt;
    opt.horizon = horizon;
    opt.order = slice.order;
    opt.shuffle_seed = slice.shuffle;
    opt.budget = slice.denom == 0
                     ? remaining
                     : std::min(remaining, std::max<std::int64_t>(
                                               budget / slice.denom, 1000));
    LayeredSearch search(start, constraint, opt);
    bool found = search.run(rounds);
    spent += search.stats().nodes;
    result.stats.nodes += search.stats().nodes;
    result.stats.backtracks += search.stats().backtracks;
    if (found) {
      result.found = true;
      result.map = std::move(search.map());
      return result;
    }
    if (!search.budget_exhausted()) {
      result.exhausted = true;  // complete tree explored, no completion
      return result;
    }
  }
  return result;
}

std::vector<std::vector<int>> root_fan_words(const VertexTuple& t) {
  std::vector<int> sizes;
  for (const auto& e : t.entries()) sizes.push_back(e.sides());
  std::sort(sizes.begin(), sizes.end());
  if (sizes.size() > 9) {
    // full necklace enumeration explodes; large-degree tuples are decided
    // by the angle sum anyway, one representative is enough for a witness
    return {CyclicType(sizes).canonical_word()};
  }
  std::set<std::vector<int>> canon;
  do {
    canon.insert(CyclicType(sizes).canonical_word());
  } while (std::next_permutation(sizes.begin(), sizes.end()));
  return {canon.begin(), canon.end()};
}

}  // namespace hypertile
