#include "hypertile/builder.hpp"

#include <algorithm>

#include "hypertile/classify.hpp"

namespace hypertile {

namespace {

BuildResult layered_build(const VertexTuple& tuple,
                          const std::optional<CyclicType>& word,
                          const BuildSpec& spec) {
  std::vector<std::vector<int>> roots;
  if (word) {
    roots.push_back(word->word());
  } else {
    roots = root_fan_words(tuple);
    if (spec.seed != 0)
      std::rotate(roots.begin(),
                  roots.begin() + static_cast<long>(spec.seed % roots.size()),
                  roots.end());
  }

  SearchStats total;
  bool any_budget_hit = false;
  for (const auto& root : roots) {
    std::int64_t remaining = spec.budget - total.nodes;
    if (remaining <= 0) {
      any_budget_hit = true;
      break;
    }
    CombMap fan = new_fan(root);
    fan.set_tuple(tuple);
    if (word) fan.set_cyclic(*word);
    TypeConstraint constraint =
        word ? TypeConstraint::cyclic(*word) : TypeConstraint::multiset(tuple);
    PortfolioResult found = run_portfolio(
        fan, constraint, spec.layers - 1, remaining,
        spec.strategy == BuildStrategy::PaperGuided, spec.seed);
    total.nodes += found.stats.nodes;
    total.backtracks += found.stats.backtracks;
    if (found.found) {
      BuildResult result;
      found.map.set_tuple(tuple);
      if (word) found.map.set_cyclic(*word);
      result.map = canonicalize(found.map);
      result.layers_built = spec.layers;
      result.strategy_used = spec.strategy;
      result.stats = total;
      VerifyReport report = verify(result.map, constraint);
      if (!report.pass)
        throw std::logic_error("build: constructed map fails verification");
      return result;
    }
    if (!found.exhausted) any_budget_hit = true;
  }
  if (any_budget_hit)
    throw BuildError(BuildError::BudgetExhausted,
                     "BUDGET_EXHAUSTED: no completion within the node budget");
  throw BuildError(BuildError::NoValidFan,
                   "NO_VALID_FAN: the layer search space is exhausted");
}

// Input patch for a derived construction, built homogeneous and large
// enough that the derived interior spans the requested number of layers.
CombMap homogeneous_input(const CyclicType& word, int layers,
                          std::int64_t budget) {
  BuildSpec inner;
  inner.tuple = word.multiset();
  inner.word = word;
  inner.layers = layers;
  inner.mode = BuildMode::Homogeneous;
  inner.budget = budget;
  return layered_build(inner.tuple, inner.word, inner).map;
}

BuildResult derived_build(const BuildSpec& spec, const std::string& hint) {
  const VertexTuple& t = spec.tuple;
  BuildResult result;
  result.layers_built = spec.layers;
  result.strategy_used = BuildStrategy::PaperGuided;

  if (hint == "CONTRACT") {
    // {x, x, q, s} with x even: lemma input is the homogeneous [x, 2q, 2s].
    int x = 0;
    std::vector<int> rest;
    for (int i = 0; i < t.degree(); ++i) {
      int n = t.sides(i);
      if (i + 1 < t.degree() && t.sides(i + 1) == n && n % 2 == 0 && x == 0) {
        x = n;
        ++i;
      } else {
        rest.push_back(n);
      }
    }
    if (x == 0 || rest.size() != 2)
      throw BuildError(BuildError::BadParams,
                       "contract path needs a doubled even entry");
    CombMap input = homogeneous_input(CyclicType({x, 2 * rest[0], 2 * rest[1]}),
                                      spec.layers + 3, spec.budget);
    result.map = canonicalize(contract_even_pairs(input));
  } else if (hint == "RECT_TRUNCATE") {
    // {3,3,3p,3q} from homogeneous [2p,2q,2p,2q].
    int p = t.sides(2) / 3, q = t.sides(3) / 3;
    CombMap input = homogeneous_input(CyclicType({2 * p, 2 * q, 2 * p, 2 * q}),
                                      spec.layers + 2, spec.budget);
    result.map = canonicalize(rect_truncate(input));
  } else if (hint == "CANTELLATE") {
    // {3,4,4p,4q} from homogeneous [2p,4,2q,4p,4q].
    int k3 = t.sides(2), k4 = t.sides(3);
    CombMap input = homogeneous_input(
        CyclicType({k3 / 2, 4, k4 / 2, k3, k4}), spec.layers + 1, spec.budget);
    result.map = canonicalize(cantellate_restricted(input));
  } else {
    throw BuildError(BuildError::BadParams, "unknown derived hint " + hint);
  }

  result.map.set_tuple(t);
  VerifyReport report = verify(result.map, TypeConstraint::multiset(t));
  if (!report.pass)
    throw std::logic_error("build: derived construction fails verification");
  return result;
}

}  // namespace

BuildResult build(const BuildSpec& spec) {
  if (spec.layers < 1)
    throw BuildError(BuildError::BadParams, "layers must be >= 1");
  if (spec.budget <= 0)
    throw BuildError(BuildError::BadParams, "budget must be positive");

  if (spec.mode == BuildMode::Homogeneous) {
    if (!spec.word)
      throw BuildError(BuildError::BadParams,
                       "homogeneous build needs a cyclic word");
    if (!(angle_sum(spec.word->multiset()).value >= Rational(2)) && !spec.force)
      throw BuildError(BuildError::NotAdmissible,
                       "NOT_ADMISSIBLE: angle sum below 2");
    return layered_build(spec.word->multiset(), spec.word, spec);
  }

  if (!spec.tuple.all_finite())
    throw BuildError(BuildError::BadParams,
                     "apeirogon faces are not materialized");
  Verdict verdict = classify(spec.tuple);
  if (!verdict.exists && !spec.force)
    throw BuildError(BuildError::NotAdmissible,
                     "NOT_ADMISSIBLE: classify rejects " + spec.tuple.str() +
                         " by rule " + verdict.rule);

  if (spec.strategy == BuildStrategy::PaperGuided && !spec.force &&
      (verdict.construction_hint == "CONTRACT" ||
       verdict.construction_hint == "RECT_TRUNCATE" ||
       verdict.construction_hint == "CANTELLATE"))
    return derived_build(spec, verdict.construction_hint);

  return layered_build(spec.tuple, std::nullopt, spec);
}

CombMap extend_layer(const CombMap& m, BuildStrategy strategy,
                     std::int64_t budget) {
  TypeConstraint constraint =
      m.cyclic() ? TypeConstraint::cyclic(*m.cyclic())
                 : (m.tuple() ? TypeConstraint::multiset(*m.tuple())
                              : throw BuildError(BuildError::BadParams,
                                                 "map carries no type"));
  PortfolioResult result = run_portfolio(
      m, constraint, 1, budget, strategy == BuildStrategy::PaperGuided);
  if (!result.found) {
    if (!result.exhausted)
      throw BuildError(BuildError::BudgetExhausted, "BUDGET_EXHAUSTED");
    throw BuildError(BuildError::NoValidFan,
                     "NO_VALID_FAN: layer cannot be completed");
  }
  return std::move(result.map);
}

CyclicType kh_word(int k, int l, int m) {
  return CyclicType({3, 5, k, 5, l, 5, m, 5, l, 5, k, 5, l, 5});
}

CombMap build_kh(int k, int l, int m, int layers, std::int64_t budget,
                 bool relax_params) {
  auto valid = [&](int n) { return relax_params ? n >= 4 : (n >= 6 && n % 2 == 0); };
  if (k == l || l == m || k == m || !valid(k) || !valid(l) || !valid(m))
    throw BuildError(BuildError::BadParams,
                     relax_params
                         ? "k, l, m must be mutually distinct and >= 4"
                         : "k, l, m must be mutually distinct even and >= 6");
  BuildSpec spec;
  spec.word = kh_word(k, l, m);
  spec.tuple = spec.word->multiset();
  spec.mode = BuildMode::Homogeneous;
  spec.layers = layers;
  spec.budget = budget;
  return build(spec).map;
}

}  // namespace hypertile
