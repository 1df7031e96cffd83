#include "hypertile/oracle.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hypertile {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Refuted: return "refuted";
    case Outcome::Witness: return "witness";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

Certificate refute(const VertexTuple& t, int radius, std::int64_t budget) {
  if (!t.all_finite())
    throw std::invalid_argument("refute: apeirogon entries not searchable");
  if (radius < 1) throw std::invalid_argument("refute: radius below 1");

  Certificate cert;
  cert.tuple = t;
  cert.radius = radius;

  bool any_budget_hit = false;
  for (const auto& word : root_fan_words(t)) {
    std::int64_t remaining = budget - cert.nodes;
    if (remaining <= 0) {
      any_budget_hit = true;
      break;
    }
    CombMap fan = new_fan(word);
    fan.set_tuple(t);
    // radius counts completed rounds past the root fan
    PortfolioResult result = run_portfolio(fan, TypeConstraint::multiset(t),
                                           radius, remaining, false);
    cert.nodes += result.stats.nodes;
    cert.backtracks += result.stats.backtracks;
    if (result.found) {
      cert.outcome = Outcome::Witness;
      result.map.set_tuple(t);
      cert.witness = canonicalize(result.map);
      return cert;
    }
    if (!result.exhausted) any_budget_hit = true;
  }
  cert.outcome = any_budget_hit ? Outcome::Inconclusive : Outcome::Refuted;
  return cert;
}

namespace {

CrossCheckRow check_one(const VertexTuple& t, int radius, std::int64_t budget) {
  CrossCheckRow row;
  row.tuple = t;
  row.verdict = classify(t);
  Certificate cert = refute(t, radius, budget);
  row.outcome = cert.outcome;
  row.nodes = cert.nodes;
  if (row.verdict.exists) {
    if (cert.outcome == Outcome::Refuted)
      row.flag = CrossCheckRow::FATAL;
    else if (cert.outcome == Outcome::Inconclusive)
      row.flag = CrossCheckRow::WEAK;
  } else {
    if (cert.outcome == Outcome::Witness)
      row.flag = CrossCheckRow::FATAL;
    else if (cert.outcome == Outcome::Inconclusive)
      row.flag = CrossCheckRow::WEAK;
  }
  return row;
}

void summarize(CrossCheckReport& report) {
  for (const auto& row : report.rows) {
    if (row.flag == CrossCheckRow::FATAL) ++report.fatal;
    if (row.flag == CrossCheckRow::WEAK) ++report.weak;
  }
}

}  // namespace

CrossCheckReport cross_check_serial(const std::vector<VertexTuple>& family,
                                    int radius, std::int64_t budget) {
  CrossCheckReport report;
  report.rows.resize(family.size());
  for (size_t i = 0; i < family.size(); ++i)
    report.rows[i] = check_one(family[i], radius, budget);
  summarize(report);
  return report;
}

CrossCheckReport cross_check(const std::vector<VertexTuple>& family, int radius,
                             std::int64_t budget, int threads) {
  CrossCheckReport report;
  report.rows.resize(family.size());
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(family.size()); ++i)
    report.rows[static_cast<size_t>(i)] =
        check_one(family[static_cast<size_t>(i)], radius, budget);
#else
  (void)threads;
  for (size_t i = 0; i < family.size(); ++i)
    report.rows[i] = check_one(family[i], radius, budget);
#endif
  summarize(report);
  return report;
}

std::vector<VertexTuple> tuple_family(int degree, int max_entry) {
  std::vector<VertexTuple> out;
  std::vector<int> cur(static_cast<size_t>(degree), 3);
  auto rec = [&](auto&& self, int pos, int lo) -> void {
    if (pos == degree) {
      VertexTuple t = [&] {
        std::vector<PolygonSize> es;
        for (int n : cur) es.push_back(PolygonSize::finite(n));
        return VertexTuple(std::move(es));
      }();
      if (angle_sum(t).value >= Rational(2)) out.push_back(t);
      return;
    }
    for (int n = lo; n <= max_entry; ++n) {
      cur[static_cast<size_t>(pos)] = n;
      self(self, pos + 1, n);
    }
  };
  rec(rec, 0, 3);
  return out;
}

}  // namespace hypertile
