#include "ideal/triangulation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "ideal/errors.hpp"

namespace ideal {

namespace {

Face sorted_face(Face f) {
  std::sort(f.begin(), f.end());
  return f;
}

std::string label_pair(int u, int v) {
  std::ostringstream os;
  os << (u + 1) << "-" << (v + 1);
  return os.str();
}

// Coherent orientation of a face list, starting from faces[0] as given.
// Assumes every edge lies in exactly two faces.
std::optional<std::vector<Face>> orient_faces(std::span<const Face> faces, std::string* why) {
  std::map<Edge, std::vector<int>> incident;
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    for (int k = 0; k < 3; ++k) incident[Edge(faces[f][k], faces[f][(k + 1) % 3])].push_back(f);
  }
  std::vector<Face> oriented(faces.begin(), faces.end());
  std::vector<char> seen(faces.size(), 0);
  std::queue<int> todo;
  todo.push(0);
  seen[0] = 1;
  while (!todo.empty()) {
    const int f = todo.front();
    todo.pop();
    for (int k = 0; k < 3; ++k) {
      const int a = oriented[f][k];
      const int b = oriented[f][(k + 1) % 3];
      for (int g : incident[Edge(a, b)]) {
        if (g == f) continue;
        // g must traverse b->a.
        Face cand = faces[g];
        bool forward = false;
        for (int j = 0; j < 3; ++j) {
          if (cand[j] == a && cand[(j + 1) % 3] == b) forward = true;
        }
        if (forward) std::swap(cand[1], cand[2]);
        if (seen[g]) {
          if (cand != oriented[g]) {
            if (why) *why = "not orientable";
            return std::nullopt;
          }
          continue;
        }
        oriented[g] = cand;
        seen[g] = 1;
        todo.push(g);
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    if (why) *why = "not connected";
    return std::nullopt;
  }
  return oriented;
}

}  // namespace

ValidationReport validate(int n, std::span<const Face> faces) {
  if (n < 4) return ValidationReport::fail("fewer than 4 vertices");
  if (faces.empty()) return ValidationReport::fail("no faces");
  std::set<Face> distinct;
  std::map<Edge, int> count;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Face& f = faces[i];
    for (int x : f) {
      if (x < 0 || x >= n) {
        return ValidationReport::fail("face " + std::to_string(i + 1) + " has a label outside 1.." + std::to_string(n));
      }
    }
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) {
      return ValidationReport::fail("not simple: face " + std::to_string(i + 1) + " has a loop");
    }
    if (!distinct.insert(sorted_face(f)).second) {
      return ValidationReport::fail("not simple: repeated face " + std::to_string(i + 1));
    }
    for (int k = 0; k < 3; ++k) ++count[Edge(f[k], f[(k + 1) % 3])];
  }
  for (const auto& [e, c] : count) {
    if (c == 2) continue;
    if (c % 2 == 0) return ValidationReport::fail("not simple: parallel edges between " + label_pair(e.u, e.v));
    return ValidationReport::fail("not a closed surface: edge " + label_pair(e.u, e.v) + " lies in " +
                                  std::to_string(c) + " face(s)");
  }
  std::string why;
  const auto oriented = orient_faces(faces, &why);
  if (!oriented) return ValidationReport::fail(why);

  std::vector<std::map<int, int>> next(n);
  for (const Face& f : *oriented) {
    for (int k = 0; k < 3; ++k) next[f[k]][f[(k + 1) % 3]] = f[(k + 2) % 3];
  }
  for (int v = 0; v < n; ++v) {
    if (next[v].empty()) return ValidationReport::fail("vertex " + std::to_string(v + 1) + " is unused");
    // The successor map must be a single cycle through all neighbours.
    int w = next[v].begin()->first;
    std::size_t steps = 0;
    do {
      auto it = next[v].find(w);
      if (it == next[v].end()) break;
      w = it->second;
      ++steps;
    } while (w != next[v].begin()->first && steps <= next[v].size());
    if (steps != next[v].size() || w != next[v].begin()->first) {
      return ValidationReport::fail("vertex " + std::to_string(v + 1) + " link is not a single cycle");
    }
  }
  const long euler = static_cast<long>(n) - static_cast<long>(count.size()) + static_cast<long>(faces.size());
  if (euler != 2) return ValidationReport::fail("Euler characteristic " + std::to_string(euler) + " != 2");
  return ValidationReport::pass();
}

ValidationReport validate(const MarkedTriangulation& t) {
  const auto f = t.faces();
  auto report = validate(t.vertex_count(), f);
  if (!report) return report;
  const int n = t.vertex_count();
  if (static_cast<int>(t.edges().size()) != 3 * n - 6 || static_cast<int>(f.size()) != 2 * n - 4) {
    return ValidationReport::fail("edge/face counts differ from 3N-6 / 2N-4");
  }
  return report;
}

MarkedTriangulation MarkedTriangulation::from_faces(int n, std::span<const Face> faces) {
  if (auto report = validate(n, faces); !report) throw InvalidTriangulation(report.violation);
  const auto oriented = orient_faces(faces, nullptr);
  MarkedTriangulation t(n);
  for (const Face& f : *oriented) t.set_face(f[0], f[1], f[2]);
  return t;
}

MarkedTriangulation MarkedTriangulation::tetrahedron() {
  const std::vector<Face> f{{0, 1, 3}, {1, 0, 2}, {3, 1, 2}, {0, 3, 2}};
  return from_faces(4, f);
}

MarkedTriangulation MarkedTriangulation::bipyramid(int n) {
  if (n < 5) throw InvalidTriangulation("bipyramid needs at least 5 vertices");
  std::vector<Face> f;
  const int m = n - 2;
  for (int i = 0; i < m; ++i) {
    const int a = 2 + i;
    const int b = 2 + (i + 1) % m;
    f.push_back({0, a, b});
    f.push_back({1, b, a});
  }
  return from_faces(n, f);
}

void MarkedTriangulation::set_face(int a, int b, int c) {
  apex_[index(a, b)] = c;
  apex_[index(b, c)] = a;
  apex_[index(c, a)] = b;
}

void MarkedTriangulation::clear_face(int a, int b, int c) {
  apex_[index(a, b)] = -1;
  apex_[index(b, c)] = -1;
  apex_[index(c, a)] = -1;
}

std::vector<Face> MarkedTriangulation::faces() const {
  // A face whose smallest vertex is u is seen once, via its directed edge
  // u->v with v > u and apex > u.
  std::vector<Face> out;
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      const int w = apex(u, v);
      if (w > u) out.push_back({u, v, w});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> MarkedTriangulation::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      if (has_edge(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

int MarkedTriangulation::degree(int v) const {
  int d = 0;
  for (int w = 0; w < n_; ++w) d += has_edge(v, w) ? 1 : 0;
  return d;
}

std::vector<int> MarkedTriangulation::link(int v) const {
  int start = -1;
  for (int w = 0; w < n_ && start < 0; ++w) {
    if (has_edge(v, w)) start = w;
  }
  std::vector<int> out;
  if (start < 0) return out;
  int w = start;
  do {
    out.push_back(w);
    w = apex(v, w);
  } while (w != start && static_cast<int>(out.size()) <= n_);
  return out;
}

Quad MarkedTriangulation::quad(Edge e) const {
  if (!has_edge(e)) throw IllegalFlip("no edge " + label_pair(e.u, e.v));
  return Quad{e.u, apex(e.v, e.u), e.v, apex(e.u, e.v)};
}

std::optional<std::string> MarkedTriangulation::flip_obstruction(Edge e) const {
  if (e.u < 0 || e.v >= n_ || e.u == e.v) return "edge " + label_pair(e.u, e.v) + " out of range";
  if (!has_edge(e)) return "no edge " + label_pair(e.u, e.v);
  const Quad q = quad(e);
  if (q.b == q.d) return "shared vertex: both faces of " + label_pair(e.u, e.v) + " have apex " + std::to_string(q.b + 1);
  if (has_edge(q.b, q.d)) return "existing diagonal " + label_pair(q.b, q.d);
  return std::nullopt;
}

Edge MarkedTriangulation::flip(FlipMove move) {
  if (auto why = flip_obstruction(move.edge)) throw IllegalFlip(*why);
  const Quad q = quad(move.edge);
  clear_face(q.a, q.b, q.c);
  clear_face(q.c, q.d, q.a);
  set_face(q.a, q.b, q.d);
  set_face(q.c, q.d, q.b);
  return Edge(q.b, q.d);
}

MarkedTriangulation MarkedTriangulation::flipped(FlipMove move) const {
  MarkedTriangulation copy = *this;
  copy.flip(move);
  return copy;
}

std::string MarkedTriangulation::fingerprint() const {
  std::vector<Face> f = faces();
  for (Face& x : f) x = sorted_face(x);
  std::sort(f.begin(), f.end());
  std::ostringstream os;
  os << n_ << ":";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) os << ",";
    os << f[i][0] + 1 << "-" << f[i][1] + 1 << "-" << f[i][2] + 1;
  }
  return os.str();
}

MarkedTriangulation apply_path(const MarkedTriangulation& t, const FlipPath& path) {
  MarkedTriangulation out = t;
  for (const FlipMove& m : path.moves) out.flip(m);
  return out;
}

MarkedTriangulation canonical_triangulation(int n) {
  if (n < 4) throw InvalidTriangulation("fewer than 4 vertices");
  std::vector<Face> f{{0, 1, 2}, {0, 1, n - 1}};
  for (int i = 2; i + 1 < n; ++i) {
    f.push_back({0, i, i + 1});
    f.push_back({1, i, i + 1});
  }
  return MarkedTriangulation::from_faces(n, f);
}

std::vector<std::pair<Edge, Edge>> canonicalizing_flips(MarkedTriangulation t) {
  const int n = t.vertex_count();
  std::vector<std::pair<Edge, Edge>> log;
  const auto flip = [&](Edge e) {
    const Edge created = t.flip({e});
    log.emplace_back(e, created);
  };

  // Stage 1: cone vertex 0 to every other vertex. Either some link edge of 0
  // has an outer apex not adjacent to 0 (flip it, degree grows), or the
  // non-neighbours sit in a region bounded by chords, one of which flips
  // legally and removes a chord.
  while (t.degree(0) < n - 1) {
    const auto nbrs = t.link(0);
    bool done = false;
    for (std::size_t i = 0; i < nbrs.size() && !done; ++i) {
      const int w = nbrs[i];
      const int x = nbrs[(i + 1) % nbrs.size()];
      const int z = t.apex(x, w);
      if (z != 0 && !t.has_edge(0, z) && t.can_flip(Edge(w, x))) {
        flip(Edge(w, x));
        done = true;
      }
    }
    for (std::size_t i = 0; i < nbrs.size() && !done; ++i) {
      for (std::size_t j = i + 1; j < nbrs.size() && !done; ++j) {
        const int p = nbrs[i];
        const int q = nbrs[j];
        if (!t.has_edge(p, q) || t.apex(p, q) == 0 || t.apex(q, p) == 0) continue;
        const int y1 = t.apex(p, q);
        const int y2 = t.apex(q, p);
        const bool inner = !t.has_edge(0, y1) || !t.has_edge(0, y2);
        if (inner && t.can_flip(Edge(p, q))) {
          flip(Edge(p, q));
          done = true;
        }
      }
    }
    if (!done) throw std::logic_error("canonicalizing_flips: no progress while coning vertex 1");
  }

  // Stage 2: inside the polygon link(0), fan from vertex 1.
  while (t.degree(1) < n - 1) {
    const auto nbrs = t.link(1);
    bool done = false;
    for (std::size_t i = 0; i < nbrs.size() && !done; ++i) {
      const int a = nbrs[i];
      const int b = nbrs[(i + 1) % nbrs.size()];
      if (a == 0 || b == 0) continue;
      const int c = t.apex(b, a);
      if (c != 0 && !t.has_edge(1, c) && t.can_flip(Edge(a, b))) {
        flip(Edge(a, b));
        done = true;
      }
    }
    if (!done) throw std::logic_error("canonicalizing_flips: no progress while fanning from vertex 2");
  }

  // Stage 3: both 0 and 1 are coned and the other vertices form a path
  // a_1..a_m (the link of 0 read from 1). Sort it to 2..n-1 by moving
  // k = n-1, ..., 2 to the front: detach k to degree 3 inside a face of 0,
  // then walk it toward 1 two flips per face.
  const auto path_from_one = [&]() {
    auto l = t.link(0);
    std::rotate(l.begin(), std::find(l.begin(), l.end(), 1), l.end());
    return l;  // l[0] == 1
  };
  for (int k = n - 1; k >= 2; --k) {
    auto path = path_from_one();
    const int m = static_cast<int>(path.size()) - 1;
    const int pos = static_cast<int>(std::find(path.begin(), path.end(), k) - path.begin());
    if (pos == 1) continue;  // already leading
    if (pos < m) flip(Edge(k, 1));
    for (;;) {
      path = path_from_one();
      const auto it = std::find(path.begin(), path.end(), k);
      const int b = *std::prev(it);
      if (b == 1) break;
      const int c = (std::next(it) == path.end()) ? 1 : *std::next(it);
      flip(Edge(0, b));
      flip(Edge(k, c));
    }
  }
  return log;
}

FlipPath flip_path(const MarkedTriangulation& t1, const MarkedTriangulation& t2) {
  if (t1.vertex_count() != t2.vertex_count()) {
    throw LabelMismatch("triangulations have " + std::to_string(t1.vertex_count()) + " and " +
                        std::to_string(t2.vertex_count()) + " vertices");
  }
  FlipPath path{t1.fingerprint(), {}};
  if (t1.fingerprint() == t2.fingerprint()) return path;

  auto first = canonicalizing_flips(t1);
  const auto second = canonicalizing_flips(t2);
  for (auto it = second.rbegin(); it != second.rend(); ++it) first.emplace_back(it->second, it->first);

  // Cancel adjacent move/undo pairs.
  std::vector<std::pair<Edge, Edge>> kept;
  for (const auto& step : first) {
    if (!kept.empty() && kept.back().second == step.first && kept.back().first == step.second) {
      kept.pop_back();
    } else {
      kept.push_back(step);
    }
  }
  for (const auto& step : kept) path.moves.push_back({step.first});
  return path;
}

std::vector<MarkedTriangulation> enumerate_triangulations(int n) {
  if (n < 4) throw InvalidTriangulation("fewer than 4 vertices");
  const std::size_t target = static_cast<std::size_t>(2 * n - 4);
  std::vector<int> count(static_cast<std::size_t>(n) * n, 0);
  const auto cnt = [&](int a, int b) -> int& { return count[static_cast<std::size_t>(std::min(a, b)) * n + std::max(a, b)]; };
  std::vector<Face> faces;
  std::set<Face> used;
  std::map<std::string, MarkedTriangulation> found;

  const auto add = [&](Face f) {
    faces.push_back(f);
    used.insert(sorted_face(f));
    ++cnt(f[0], f[1]);
    ++cnt(f[1], f[2]);
    ++cnt(f[0], f[2]);
  };
  const auto remove = [&]() {
    const Face f = faces.back();
    faces.pop_back();
    used.erase(sorted_face(f));
    --cnt(f[0], f[1]);
    --cnt(f[1], f[2]);
    --cnt(f[0], f[2]);
  };

  std::function<void()> grow = [&]() {
    int u = -1, v = -1;
    for (int a = 0; a < n && u < 0; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (cnt(a, b) == 1) {
          u = a;
          v = b;
          break;
        }
      }
    }
    if (u < 0) {
      if (faces.size() == target && validate(n, faces)) {
        auto t = MarkedTriangulation::from_faces(n, faces);
        found.emplace(t.fingerprint(), std::move(t));
      }
      return;
    }
    if (faces.size() >= target) return;
    for (int w = 0; w < n; ++w) {
      if (w == u || w == v) continue;
      if (cnt(u, w) >= 2 || cnt(v, w) >= 2) continue;
      const Face f{u, v, w};
      if (used.count(sorted_face(f))) continue;
      add(f);
      grow();
      remove();
    }
  };

  // Every triangulation has a face at vertex 0; smallest such face first.
  for (int a = 1; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      add({0, a, b});
      grow();
      remove();
    }
  }
  std::vector<MarkedTriangulation> out;
  out.reserve(found.size());
  for (auto& [fp, t] : found) out.push_back(std::move(t));
  return out;
}

FlipGraph flip_graph(int n, int n_max) {
  if (n > n_max) {
    throw ResourceBound("flip graph enumeration limited to N <= " + std::to_string(n_max));
  }
  FlipGraph g;
  g.n = n;
  const auto nodes = enumerate_triangulations(n);
  std::unordered_map<std::string, int> index;
  for (const auto& t : nodes) {
    index.emplace(t.fingerprint(), static_cast<int>(g.nodes.size()));
    g.nodes.push_back(t.fingerprint());
  }
  g.adjacency.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (const Edge& e : nodes[i].edges()) {
      if (!nodes[i].can_flip(e)) continue;
      const auto it = index.find(nodes[i].flipped({e}).fingerprint());
      if (it == index.end()) throw std::logic_error("flip left the enumerated node set");
      g.adjacency[i].push_back(it->second);
    }
    std::sort(g.adjacency[i].begin(), g.adjacency[i].end());
    g.edge_count += g.adjacency[i].size();
  }
  g.edge_count /= 2;

  std::vector<char> seen(nodes.size(), 0);
  std::queue<int> todo;
  if (!nodes.empty()) {
    todo.push(0);
    seen[0] = 1;
  }
  std::size_t reached = 0;
  while (!todo.empty()) {
    const int x = todo.front();
    todo.pop();
    ++reached;
    for (int y : g.adjacency[x]) {
      if (!seen[y]) {
        seen[y] = 1;
        todo.push(y);
      }
    }
  }
  g.connected = reached == nodes.size();
  return g;
}

}  // namespace ideal
