#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "hypertile/builder.hpp"

namespace hypertile {

namespace {

[[noreturn]] void bad_input(const std::string& msg) {
  throw BuildError(BuildError::BadParams, msg);
}

// --- generic assembly --------------------------------------------------------

// Make face orientations consistent (every shared edge traversed once in
// each direction) by flipping faces along a breadth-first sweep.
void orient_faces(std::vector<std::vector<VertexId>>& faces) {
  std::map<std::pair<VertexId, VertexId>, std::vector<size_t>> touch;
  for (size_t i = 0; i < faces.size(); ++i) {
    const auto& f = faces[i];
    for (size_t j = 0; j < f.size(); ++j) {
      VertexId a = f[j], b = f[(j + 1) % f.size()];
      touch[{std::min(a, b), std::max(a, b)}].push_back(i);
    }
  }
  for (auto& [e, fs] : touch)
    if (fs.size() > 2) bad_input("derived construction: edge used three times");

  auto traverses = [&](size_t i, VertexId a, VertexId b) {
    const auto& f = faces[i];
    for (size_t j = 0; j < f.size(); ++j)
      if (f[j] == a && f[(j + 1) % f.size()] == b) return true;
    return false;
  };

  std::vector<int> state(faces.size(), 0);  // 0 unvisited, 1 kept, 2 flipped
  for (size_t root = 0; root < faces.size(); ++root) {
    if (state[root]) continue;
    state[root] = 1;
    std::deque<size_t> queue{root};
    while (!queue.empty()) {
      size_t i = queue.front();
      queue.pop_front();
      const auto f = faces[i];
      for (size_t j = 0; j < f.size(); ++j) {
        VertexId a = f[j], b = f[(j + 1) % f.size()];
        for (size_t o : touch[{std::min(a, b), std::max(a, b)}]) {
          if (o == i || state[o]) continue;
          // neighbor must traverse the edge the other way
          if (traverses(o, a, b)) {
            std::reverse(faces[o].begin(), faces[o].end());
            state[o] = 2;
          } else {
            state[o] = 1;
          }
          queue.push_back(o);
        }
      }
    }
  }
  // verify
  std::map<std::pair<VertexId, VertexId>, int> directed;
  for (const auto& f : faces)
    for (size_t j = 0; j < f.size(); ++j) {
      VertexId a = f[j], b = f[(j + 1) % f.size()];
      if (++directed[{a, b}] > 1)
        bad_input("derived construction: orientation conflict");
    }
}

// Drop faces until the complex is a disk with a simple boundary, then build
// the map.  Derived constructions trim their input's boundary fringe; the
// fringe can leave bowtie vertices and disconnected shards behind.
CombMap assemble_disk(std::vector<std::vector<VertexId>> faces) {
  if (faces.empty()) bad_input("derived construction: no interior faces left");
  orient_faces(faces);

  while (true) {
    if (faces.empty()) bad_input("derived construction: no interior faces left");

    // largest edge-connected component
    std::map<std::pair<VertexId, VertexId>, std::vector<size_t>> touch;
    for (size_t i = 0; i < faces.size(); ++i)
      for (size_t j = 0; j < faces[i].size(); ++j) {
        VertexId a = faces[i][j], b = faces[i][(j + 1) % faces[i].size()];
        touch[{std::min(a, b), std::max(a, b)}].push_back(i);
      }
    std::vector<int> comp(faces.size(), -1);
    int ncomp = 0;
    for (size_t i = 0; i < faces.size(); ++i) {
      if (comp[i] != -1) continue;
      std::deque<size_t> queue{i};
      comp[i] = ncomp;
      while (!queue.empty()) {
        size_t x = queue.front();
        queue.pop_front();
        for (size_t j = 0; j < faces[x].size(); ++j) {
          VertexId a = faces[x][j], b = faces[x][(j + 1) % faces[x].size()];
          for (size_t o : touch[{std::min(a, b), std::max(a, b)}])
            if (comp[o] == -1) {
              comp[o] = ncomp;
              queue.push_back(o);
            }
        }
      }
      ++ncomp;
    }
    std::vector<int> size_of(static_cast<size_t>(ncomp), 0);
    for (size_t i = 0; i < faces.size(); ++i) ++size_of[static_cast<size_t>(comp[i])];
    int keep = static_cast<int>(std::max_element(size_of.begin(), size_of.end()) -
                                size_of.begin());

    // pinch vertices: corner count minus shared-edge count must be <= 1
    std::map<VertexId, int> corners, shared;
    for (size_t i = 0; i < faces.size(); ++i) {
      if (comp[i] != keep) continue;
      for (VertexId v : faces[i]) ++corners[v];
    }
    for (auto& [e, fs] : touch) {
      int cnt = 0;
      for (size_t o : fs)
        if (comp[o] == keep) ++cnt;
      if (cnt == 2) {
        ++shared[e.first];
        ++shared[e.second];
      }
    }
    std::set<VertexId> pinched;
    for (auto& [v, c] : corners)
      if (c - shared[v] > 1) pinched.insert(v);

    std::vector<std::vector<VertexId>> next;
    for (size_t i = 0; i < faces.size(); ++i) {
      if (comp[i] != keep) continue;
      bool drop = false;
      for (VertexId v : faces[i]) drop |= pinched.count(v) > 0;
      if (!drop) next.push_back(faces[i]);
    }
    bool stable = next.size() == faces.size();
    faces = std::move(next);
    if (stable) break;
  }
  CombMap m = CombMap::from_faces(faces);
  // annotate layers with the graph distance from vertex 0
  std::vector<int> dist(static_cast<size_t>(m.vertex_count()), -1);
  std::deque<VertexId> queue{0};
  dist[0] = 0;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    DartId start = m.vertex(v).any_dart;
    DartId d = start;
    do {
      VertexId w = m.target(d);
      if (dist[static_cast<size_t>(w)] == -1) {
        dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(v)] + 1;
        queue.push_back(w);
      }
      d = m.rotate_ccw(d);
    } while (d != start);
  }
  for (VertexId v = 0; v < m.vertex_count(); ++v)
    m.set_layer(v, std::max(dist[static_cast<size_t>(v)], 0));
  return m;
}

// --- face roles over a homogeneous patch -------------------------------------

// Assigns to every face reachable from interior vertices its position class
// in the cyclic word (up to the word's symmetry, fixed deterministically).
// Faces seen only from the boundary stay at -1.
std::vector<int> face_roles(const CombMap& m, const std::vector<int>& word) {
  const int d = static_cast<int>(word.size());
  const int all = (1 << d) - 1;
  std::vector<int> mask(static_cast<size_t>(m.face_count()), 0);
  for (FaceId f = 0; f < m.face_count(); ++f) {
    for (int r = 0; r < d; ++r)
      if (word[static_cast<size_t>(r)] == m.face(f).size)
        mask[static_cast<size_t>(f)] |= 1 << r;
    if (mask[static_cast<size_t>(f)] == 0)
      bad_input("face size not in the cyclic word");
  }

  std::vector<VertexId> interior;
  for (VertexId v = 0; v < m.vertex_count(); ++v)
    if (!m.is_boundary_vertex(v)) interior.push_back(v);

  auto propagate_vertex = [&](VertexId v, bool& changed) {
    std::vector<FaceId> ring = m.fan_faces(v);
    if (static_cast<int>(ring.size()) != d)
      bad_input("interior vertex degree does not match the word");
    std::vector<int> gained(static_cast<size_t>(d), 0);
    bool any = false;
    for (int shift = 0; shift < d; ++shift) {
      for (int dir : {1, -1}) {
        bool ok = true;
        for (int i = 0; i < d && ok; ++i) {
          int role = ((shift + dir * i) % d + d) % d;
          FaceId f = ring[static_cast<size_t>(i)];
          if (!(mask[static_cast<size_t>(f)] & (1 << role))) ok = false;
        }
        if (!ok) continue;
        any = true;
        for (int i = 0; i < d; ++i) {
          int role = ((shift + dir * i) % d + d) % d;
          gained[static_cast<size_t>(i)] |= 1 << role;
        }
      }
    }
    if (!any) bad_input("no word alignment at an interior vertex");
    for (int i = 0; i < d; ++i) {
      FaceId f = ring[static_cast<size_t>(i)];
      int next_mask = mask[static_cast<size_t>(f)] & gained[static_cast<size_t>(i)];
      if (next_mask != mask[static_cast<size_t>(f)]) {
        mask[static_cast<size_t>(f)] = next_mask;
        changed = true;
      }
      if (next_mask == 0) bad_input("face role contradiction");
    }
  };

  while (true) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (VertexId v : interior) propagate_vertex(v, changed);
    }
    // seed the lowest ambiguous face touching the interior
    FaceId seed = -1;
    for (VertexId v : interior) {
      for (FaceId f : m.fan_faces(v))
        if (__builtin_popcount(static_cast<unsigned>(mask[static_cast<size_t>(f)])) > 1 &&
            (seed == -1 || f < seed))
          seed = f;
    }
    if (seed == -1) break;
    mask[static_cast<size_t>(seed)] &=
        -mask[static_cast<size_t>(seed)];  // keep lowest bit
  }

  std::vector<int> role(static_cast<size_t>(m.face_count()), -1);
  std::set<FaceId> near_interior;
  for (VertexId v : interior)
    for (FaceId f : m.fan_faces(v)) near_interior.insert(f);
  for (FaceId f : near_interior) {
    int bits = mask[static_cast<size_t>(f)];
    role[static_cast<size_t>(f)] = __builtin_ctz(static_cast<unsigned>(bits));
  }
  (void)all;
  return role;
}

bool all_vertices_interior(const CombMap& m, FaceId f) {
  DartId d0 = m.face(f).any_dart;
  DartId d = d0;
  do {
    if (m.is_boundary_vertex(m.dart(d).origin)) return false;
    d = m.dart(d).next;
  } while (d != d0);
  return true;
}

}  // namespace

// --- contraction ---------------------------------------------------------------

CombMap contract_even_pairs(const CombMap& m) {
  if (!m.cyclic()) bad_input("contract: input map carries no cyclic word");
  std::vector<int> word = m.cyclic()->word();
  if (word.size() != 3) bad_input("contract: input word must have degree 3");
  int p2 = word[0], q2 = word[1], s2 = word[2];
  if (q2 % 2 || s2 % 2 || p2 % 2) bad_input("contract: entries must be even");
  if (q2 / 2 < 3 || s2 / 2 < 3)
    bad_input("contract: q and s must be at least 3");

  std::vector<int> role = face_roles(m, word);  // 0 = 2p, 1 = 2q, 2 = 2s

  // contracted edges: interior-side faces with roles {1, 2}
  std::vector<char> contracted(static_cast<size_t>(m.dart_count()), 0);
  std::vector<VertexId> parent(static_cast<size_t>(m.vertex_count()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](VertexId v) {
    while (parent[static_cast<size_t>(v)] != v) {
      parent[static_cast<size_t>(v)] =
          parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
      v = parent[static_cast<size_t>(v)];
    }
    return v;
  };
  for (DartId d = 0; d < m.dart_count(); ++d) {
    if (m.dart(d).opp < d) continue;
    FaceId f = m.dart(d).face, g = m.dart(m.dart(d).opp).face;
    if (f == kOuterFace || g == kOuterFace) continue;
    int rf = role[static_cast<size_t>(f)], rg = role[static_cast<size_t>(g)];
    if (rf == -1 || rg == -1) continue;
    if ((rf == 1 && rg == 2) || (rf == 2 && rg == 1)) {
      contracted[static_cast<size_t>(d)] = 1;
      contracted[static_cast<size_t>(m.dart(d).opp)] = 1;
      VertexId a = find(m.dart(d).origin), b = find(m.target(d));
      if (a != b) parent[static_cast<size_t>(a)] = b;
    }
  }

  std::vector<std::vector<VertexId>> out_faces;
  for (FaceId f = 0; f < m.face_count(); ++f) {
    if (role[static_cast<size_t>(f)] == -1) continue;
    if (!all_vertices_interior(m, f)) continue;
    // a fully contractible face: all its role-pair edges must be present
    std::vector<VertexId> vs;
    bool full = true;
    DartId d0 = m.face(f).any_dart;
    DartId d = d0;
    do {
      FaceId g = m.dart(m.dart(d).opp).face;
      if (g == kOuterFace || role[static_cast<size_t>(g)] == -1) full = false;
      if (!contracted[static_cast<size_t>(d)])
        vs.push_back(find(m.dart(d).origin));
      d = m.dart(d).next;
    } while (d != d0);
    if (!full) continue;
    out_faces.push_back(std::move(vs));
  }

  CombMap out = assemble_disk(std::move(out_faces));
  out.set_tuple(VertexTuple({p2, q2 / 2, p2, s2 / 2}));
  out.set_cyclic(CyclicType({p2, q2 / 2, p2, s2 / 2}));
  return out;
}

// --- rectify + truncate ---------------------------------------------------------

CombMap rect_truncate(const CombMap& m) {
  if (!m.cyclic()) bad_input("rect_truncate: input map carries no cyclic word");
  std::vector<int> word = m.cyclic()->word();
  if (word.size() != 4 || word[0] != word[2] || word[1] != word[3])
    bad_input("rect_truncate: input word must be [2p,2q,2p,2q]");
  int p = word[0] / 2, q = word[1] / 2;
  if (word[0] % 2 || word[1] % 2 || p < 2 || q < 2)
    bad_input("rect_truncate: entries must be even, p,q >= 2");

  // Proper 2-coloring of edges: adjacent edges around every face differ.
  // Seeded at dart 0; breadth-first over faces.
  std::vector<int> color(static_cast<size_t>(m.dart_count()), -1);
  auto edge_color = [&](DartId d) { return color[static_cast<size_t>(d)]; };
  auto set_color = [&](DartId d, int c) {
    DartId o = m.dart(d).opp;
    if (color[static_cast<size_t>(d)] != -1) {
      if (color[static_cast<size_t>(d)] != c)
        bad_input("rect_truncate: edge two-coloring failed");
      return false;
    }
    color[static_cast<size_t>(d)] = c;
    color[static_cast<size_t>(o)] = c;
    return true;
  };
  {
    std::deque<FaceId> queue;
    std::vector<char> seen(static_cast<size_t>(m.face_count()), 0);
    set_color(0, 0);
    FaceId f0 = m.dart(0).face;
    if (f0 == kOuterFace) f0 = m.dart(m.dart(0).opp).face;
    queue.push_back(f0);
    seen[static_cast<size_t>(f0)] = 1;
    while (!queue.empty()) {
      FaceId f = queue.front();
      queue.pop_front();
      // find a colored dart on f, then alternate around the cycle
      DartId d0 = m.face(f).any_dart;
      DartId anchor = kNoDart;
      DartId d = d0;
      do {
        if (edge_color(d) != -1) anchor = d;
        d = m.dart(d).next;
      } while (d != d0);
      if (anchor == kNoDart) continue;  // disconnected; unreachable on disks
      int c = edge_color(anchor);
      d = anchor;
      do {
        set_color(d, c);
        c = 1 - c;
        d = m.dart(d).next;
      } while (d != anchor);
      d = anchor;
      do {
        FaceId g = m.dart(m.dart(d).opp).face;
        if (g != kOuterFace && !seen[static_cast<size_t>(g)]) {
          seen[static_cast<size_t>(g)] = 1;
          queue.push_back(g);
        }
        d = m.dart(d).next;
      } while (d != anchor);
    }
  }

  // New vertex ids: dotted edge (color 0) -> midpoint; smooth edge (color 1)
  // -> one point per (edge, endpoint).
  std::map<std::pair<DartId, VertexId>, VertexId> ids;
  VertexId next_id = 0;
  auto edge_key = [&](DartId d) { return std::min(d, m.dart(d).opp); };
  auto midpoint = [&](DartId d) {
    auto key = std::make_pair(edge_key(d), VertexId(-1));
    auto it = ids.find(key);
    if (it == ids.end()) it = ids.emplace(key, next_id++).first;
    return it->second;
  };
  auto side_point = [&](DartId d, VertexId v) {
    auto key = std::make_pair(edge_key(d), v);
    auto it = ids.find(key);
    if (it == ids.end()) it = ids.emplace(key, next_id++).first;
    return it->second;
  };
  auto corner_point = [&](DartId d, VertexId v) {
    return edge_color(d) == 0 ? midpoint(d) : side_point(d, v);
  };

  std::vector<std::vector<VertexId>> out_faces;

  // two triangles per interior vertex (the split corner quadrilateral)
  for (VertexId v = 0; v < m.vertex_count(); ++v) {
    if (m.is_boundary_vertex(v)) continue;
    std::vector<DartId> ring;
    DartId start = m.vertex(v).any_dart;
    DartId d = start;
    do {
      ring.push_back(d);
      d = m.rotate_ccw(d);
    } while (d != start);
    if (ring.size() != 4) bad_input("rect_truncate: vertex degree is not 4");
    if (edge_color(ring[0]) == 1) std::rotate(ring.begin(), ring.begin() + 1, ring.end());
    for (size_t i = 0; i < 4; ++i)
      if (edge_color(ring[i]) != static_cast<int>(i % 2))
        bad_input("rect_truncate: colors do not alternate at a vertex");
    VertexId c0 = corner_point(ring[0], v);  // dotted
    VertexId c1 = corner_point(ring[1], v);  // smooth
    VertexId c2 = corner_point(ring[2], v);  // dotted
    VertexId c3 = corner_point(ring[3], v);  // smooth
    out_faces.push_back({c0, c1, c3});
    out_faces.push_back({c1, c2, c3});
  }

  // one shrunken 3p- or 3q-gon per fully interior face
  for (FaceId f = 0; f < m.face_count(); ++f) {
    if (!all_vertices_interior(m, f)) continue;
    std::vector<VertexId> vs;
    DartId d0 = m.face(f).any_dart;
    DartId d = d0;
    do {
      VertexId u = m.dart(d).origin;
      VertexId w = m.target(d);
      if (edge_color(d) == 0) {
        vs.push_back(midpoint(d));
      } else {
        vs.push_back(side_point(d, u));
        vs.push_back(side_point(d, w));
      }
      d = m.dart(d).next;
    } while (d != d0);
    out_faces.push_back(std::move(vs));
  }

  CombMap out = assemble_disk(std::move(out_faces));
  out.set_tuple(VertexTuple({3, 3, 3 * p, 3 * q}));
  return out;
}

// --- restricted cantellation ------------------------------------------------------

CombMap cantellate_restricted(const CombMap& m) {
  if (!m.cyclic()) bad_input("cantellate: input map carries no cyclic word");
  std::vector<int> word = m.cyclic()->word();
  if (word.size() != 5) bad_input("cantellate: input word must have degree 5");
  // [k3/2, 4, k4/2, k3, k4]
  int k3 = word[3], k4 = word[4];
  if (word[0] != k3 / 2 || word[2] != k4 / 2 || word[1] != 4 || k3 % 4 ||
      k4 % 4 || k3 <= 4 || k4 <= 4 || k3 == k4)
    bad_input("cantellate: input word must be [k3/2,4,k4/2,k3,k4], k3=4p, "
              "k4=4q, k3 != k4, both > 4");

  std::vector<int> role = face_roles(m, word);
  constexpr int kRoleP = 0, kRole4 = 1, kRoleQ = 2, kRoleK3 = 3, kRoleK4 = 4;

  // triangle corners: one point per (interior vertex, pointed role)
  std::map<std::pair<VertexId, int>, VertexId> ids;
  VertexId next_id = 0;
  auto point = [&](VertexId v, int r) {
    auto it = ids.find({v, r});
    if (it == ids.end()) it = ids.emplace(std::make_pair(v, r), next_id++).first;
    return it->second;
  };
  auto pointed = [&](int r) { return r == kRole4 || r == kRoleK3 || r == kRoleK4; };

  auto role_of = [&](FaceId f) {
    return f == kOuterFace ? -1 : role[static_cast<size_t>(f)];
  };
  auto roles_known_around = [&](VertexId v) {
    if (m.is_boundary_vertex(v)) return false;
    for (FaceId f : m.fan_faces(v))
      if (role_of(f) == -1) return false;
    return true;
  };

  std::vector<std::vector<VertexId>> out_faces;

  // triangles around vertices, corners in rotation order
  for (VertexId v = 0; v < m.vertex_count(); ++v) {
    if (!roles_known_around(v)) continue;
    std::vector<VertexId> tri;
    for (FaceId f : m.fan_faces(v))
      if (pointed(role_of(f))) tri.push_back(point(v, role_of(f)));
    if (tri.size() != 3) bad_input("cantellate: vertex without three corners");
    out_faces.push_back(std::move(tri));
  }

  // quadrilateral across every (k3, k4) edge
  for (DartId d = 0; d < m.dart_count(); ++d) {
    if (m.dart(d).opp < d) continue;
    FaceId f = m.dart(d).face, g = m.dart(m.dart(d).opp).face;
    int rf = role_of(f), rg = role_of(g);
    if (!((rf == kRoleK3 && rg == kRoleK4) || (rf == kRoleK4 && rg == kRoleK3)))
      continue;
    VertexId u = m.dart(d).origin, w = m.target(d);
    if (!roles_known_around(u) || !roles_known_around(w)) continue;
    out_faces.push_back({point(u, kRoleK3), point(w, kRoleK3),
                         point(w, kRoleK4), point(u, kRoleK4)});
  }

  // per input face: shrink (own points) or expand (neighbours' points)
  for (FaceId f = 0; f < m.face_count(); ++f) {
    int rf = role_of(f);
    if (rf == -1) continue;
    bool usable = true;
    {
      DartId d0 = m.face(f).any_dart;
      DartId d = d0;
      do {
        if (!roles_known_around(m.dart(d).origin)) usable = false;
        d = m.dart(d).next;
      } while (d != d0 && usable);
    }
    if (!usable) continue;

    std::vector<VertexId> vs;
    DartId d0 = m.face(f).any_dart;
    DartId d = d0;
    if (pointed(rf)) {
      do {
        vs.push_back(point(m.dart(d).origin, rf));
        d = m.dart(d).next;
      } while (d != d0);
    } else {
      do {
        int across = role_of(m.dart(m.dart(d).opp).face);
        if (across == -1 || !pointed(across))
          bad_input("cantellate: unexpected neighbour role");
        vs.push_back(point(m.dart(d).origin, across));
        vs.push_back(point(m.target(d), across));
        d = m.dart(d).next;
      } while (d != d0);
    }
    out_faces.push_back(std::move(vs));
  }

  CombMap out = assemble_disk(std::move(out_faces));
  out.set_tuple(VertexTuple({3, 4, k3, k4}));
  return out;
}

}  // namespace hypertile
