#include "hypertile/tuples.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hypertile {

namespace {

constexpr int kMaxSides = 1 << 20;
constexpr int kMaxDegree = 1 << 10;

[[noreturn]] void bad(const std::string& msg) {
  throw std::invalid_argument("tuple: " + msg);
}

}  // namespace

PolygonSize PolygonSize::finite(int sides) {
  if (sides < 3) bad("entry " + std::to_string(sides) + " below 3");
  if (sides > kMaxSides) bad("entry too large");
  return PolygonSize(sides, false);
}

PolygonSize PolygonSize::infinite() { return PolygonSize(0, true); }

int PolygonSize::sides() const {
  if (infinite_) throw std::logic_error("sides() on an apeirogon");
  return sides_;
}

std::strong_ordering PolygonSize::operator<=>(const PolygonSize& o) const {
  if (infinite_ != o.infinite_)
    return infinite_ ? std::strong_ordering::greater
                     : std::strong_ordering::less;
  return sides_ <=> o.sides_;
}

std::string PolygonSize::str() const {
  return infinite_ ? "inf" : std::to_string(sides_);
}

std::string to_string(GeometryClass g) {
  switch (g) {
    case GeometryClass::Spherical: return "spherical";
    case GeometryClass::Euclidean: return "euclidean";
    case GeometryClass::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

VertexTuple::VertexTuple(std::vector<PolygonSize> entries)
    : entries_(std::move(entries)) {
  canonicalize();
}

VertexTuple::VertexTuple(std::initializer_list<int> finite_sides) {
  entries_.reserve(finite_sides.size());
  for (int n : finite_sides) entries_.push_back(PolygonSize::finite(n));
  canonicalize();
}

void VertexTuple::canonicalize() {
  if (entries_.size() < 3) bad("degree below 3");
  if (entries_.size() > kMaxDegree) bad("degree too large");
  std::sort(entries_.begin(), entries_.end());
}

bool VertexTuple::all_finite() const {
  return entries_.empty() || !entries_.back().is_infinite();
}

int VertexTuple::infinite_count() const {
  int c = 0;
  for (const auto& e : entries_)
    if (e.is_infinite()) ++c;
  return c;
}

int VertexTuple::count(int n) const {
  int c = 0;
  for (const auto& e : entries_)
    if (!e.is_infinite() && e.sides() == n) ++c;
  return c;
}

std::string VertexTuple::str() const {
  std::ostringstream out;
  size_t i = 0;
  bool first = true;
  while (i < entries_.size()) {
    size_t j = i;
    while (j < entries_.size() && entries_[j] == entries_[i]) ++j;
    if (!first) out << ",";
    out << entries_[i].str();
    if (j - i > 1) out << "^" << (j - i);
    first = false;
    i = j;
  }
  return out.str();
}

CyclicType::CyclicType(std::vector<int> word) : word_(std::move(word)) {
  if (word_.size() < 3) bad("cyclic word shorter than 3");
  for (int n : word_)
    if (n < 3) bad("cyclic word entry below 3");
}

VertexTuple CyclicType::multiset() const {
  std::vector<PolygonSize> es;
  es.reserve(word_.size());
  for (int n : word_) es.push_back(PolygonSize::finite(n));
  return VertexTuple(std::move(es));
}

std::vector<int> CyclicType::canonical_word() const {
  const size_t d = word_.size();
  std::vector<int> best;
  auto consider = [&](const std::vector<int>& w) {
    for (size_t r = 0; r < d; ++r) {
      std::vector<int> rot(d);
      for (size_t i = 0; i < d; ++i) rot[i] = w[(r + i) % d];
      if (best.empty() || rot < best) best = rot;
    }
  };
  consider(word_);
  std::vector<int> rev(word_.rbegin(), word_.rend());
  consider(rev);
  return best;
}

bool CyclicType::operator==(const CyclicType& o) const {
  return word_.size() == o.word_.size() && canonical_word() == o.canonical_word();
}

std::string CyclicType::str() const {
  std::ostringstream out;
  for (size_t i = 0; i < word_.size(); ++i) {
    if (i) out << ",";
    out << word_[i];
  }
  return out.str();
}

VertexTuple parse_tuple(const std::string& text) {
  std::vector<PolygonSize> entries;
  std::string token;
  std::istringstream in(text);
  bool any = false;
  while (std::getline(in, token, ',')) {
    any = true;
    // strip blanks
    size_t b = token.find_first_not_of(" \t");
    size_t e = token.find_last_not_of(" \t");
    if (b == std::string::npos) bad("empty token");
    token = token.substr(b, e - b + 1);

    std::string base = token;
    long reps = 1;
    if (size_t caret = token.find('^'); caret != std::string::npos) {
      base = token.substr(0, caret);
      std::string rep = token.substr(caret + 1);
      if (rep.empty() || rep.find_first_not_of("0123456789") != std::string::npos)
        bad("malformed repetition in '" + token + "'");
      reps = std::strtol(rep.c_str(), nullptr, 10);
      if (reps < 1) bad("repetition below 1 in '" + token + "'");
      if (reps > kMaxDegree) bad("repetition too large");
    }

    PolygonSize p = PolygonSize::infinite();
    if (base == "inf") {
      // keep p
    } else if (!base.empty() &&
               base.find_first_not_of("0123456789") == std::string::npos) {
      p = PolygonSize::finite(static_cast<int>(std::strtol(base.c_str(), nullptr, 10)));
    } else {
      bad("malformed token '" + token + "'");
    }
    for (long r = 0; r < reps; ++r) entries.push_back(p);
  }
  if (!any) bad("empty tuple text");
  return VertexTuple(std::move(entries));
}

AngleSum angle_sum(const VertexTuple& t) {
  Rational sum;
  for (const auto& e : t.entries()) {
    if (e.is_infinite())
      sum += Rational(1);
    else
      sum += Rational(e.sides() - 2, e.sides());
  }
  return AngleSum{sum};
}

GeometryClass geometry_class(const VertexTuple& t) {
  Rational v = angle_sum(t).value;
  Rational two(2);
  if (v < two) return GeometryClass::Spherical;
  if (v == two) return GeometryClass::Euclidean;
  return GeometryClass::Hyperbolic;
}

}  // namespace hypertile
