#include <doctest.h>

#include <map>
#include <random>
#include <set>
#include <string>

#include "ideal/errors.hpp"
#include "ideal/triangulation.hpp"
#include "support.hpp"

using namespace ideal;

namespace {

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

// Euler count straight from a face list, independent of the class.
int euler_characteristic(int n, const std::vector<Face>& faces) {
  std::set<Edge> edges;
  for (const Face& f : faces) {
    for (int k = 0; k < 3; ++k) edges.insert(Edge(f[k], f[(k + 1) % 3]));
  }
  return n - static_cast<int>(edges.size()) + static_cast<int>(faces.size());
}

// Relabel through a permutation.
MarkedTriangulation relabeled(const MarkedTriangulation& t, const std::vector<int>& perm) {
  std::vector<Face> faces;
  for (const Face& f : t.faces()) faces.push_back({perm[f[0]], perm[f[1]], perm[f[2]]});
  return MarkedTriangulation::from_faces(t.vertex_count(), faces);
}

}  // namespace

TEST_CASE("validation of small triangulations") {
  const auto tet = MarkedTriangulation::tetrahedron();
  CHECK(validate(tet).ok);
  CHECK(tet.edges().size() == 6);
  CHECK(tet.faces().size() == 4);

  const auto bp = MarkedTriangulation::bipyramid(5);
  CHECK(validate(bp).ok);
  CHECK(bp.edges().size() == 9);
  CHECK(bp.faces().size() == 6);
  CHECK(euler_characteristic(5, bp.faces()) == 2);

  for (int n = 4; n <= 12; ++n) {
    const auto c = canonical_triangulation(n);
    CHECK(validate(c).ok);
    CHECK(static_cast<int>(c.edges().size()) - n == 2 * n - 6);
    CHECK(c.degree(0) == n - 1);
    CHECK(c.degree(1) == n - 1);
  }
}

TEST_CASE("validation reports the first violation") {
  // Two bigons glued along a doubled edge 1-2, each holding two vertices.
  const std::vector<Face> doubled{{0, 1, 2}, {0, 2, 3}, {1, 3, 2}, {1, 0, 3},
                                  {1, 0, 4}, {1, 4, 5}, {0, 5, 4}, {0, 1, 5}};
  auto r = validate(6, doubled);
  CHECK_FALSE(r.ok);
  CHECK(contains(r.violation, "not simple"));
  CHECK_THROWS_AS(MarkedTriangulation::from_faces(6, doubled), InvalidTriangulation);

  std::vector<Face> open = MarkedTriangulation::tetrahedron().faces();
  open.pop_back();
  r = validate(4, open);
  CHECK_FALSE(r.ok);
  CHECK(contains(r.violation, "closed"));

  const std::vector<Face> loop{{0, 0, 1}, {0, 1, 2}, {0, 2, 3}, {1, 3, 2}};
  CHECK(contains(validate(4, loop).violation, "loop"));

  std::vector<Face> unused = MarkedTriangulation::tetrahedron().faces();
  r = validate(5, unused);
  CHECK_FALSE(r.ok);
  CHECK(contains(r.violation, "unused"));

  CHECK_FALSE(validate(3, std::vector<Face>{{0, 1, 2}, {0, 2, 1}}).ok);

  // Two disjoint tetrahedra: closed, simple, but chi = 4.
  std::vector<Face> two = MarkedTriangulation::tetrahedron().faces();
  for (Face f : MarkedTriangulation::tetrahedron().faces()) two.push_back({f[0] + 4, f[1] + 4, f[2] + 4});
  CHECK_FALSE(validate(8, two).ok);
}

TEST_CASE("flips") {
  auto tet = MarkedTriangulation::tetrahedron();
  for (const Edge& e : tet.edges()) {
    CHECK_FALSE(tet.can_flip(e));
    CHECK_THROWS_AS(tet.flip({e}), IllegalFlip);
  }

  const auto bp = MarkedTriangulation::bipyramid(5);
  const Edge equator(2, 3);
  REQUIRE(bp.can_flip(equator));
  auto t = bp;
  const Edge added = t.flip({equator});
  CHECK(added == Edge(0, 1));
  CHECK(validate(t).ok);
  CHECK(t.edges().size() == bp.edges().size());
  CHECK(t.faces().size() == bp.faces().size());
  CHECK_FALSE(t.has_edge(equator));
  t.flip({added});
  CHECK(t == bp);
  CHECK(t.fingerprint() == bp.fingerprint());

  // A flip that would double an existing edge is refused with a reason.
  const auto why = MarkedTriangulation::bipyramid(6).flip_obstruction(Edge(0, 2));
  CHECK_FALSE(why.has_value());
  auto t6 = MarkedTriangulation::bipyramid(6);
  t6.flip({Edge(2, 3)});  // creates 0-1
  const auto blocked = t6.flip_obstruction(Edge(4, 5));
  REQUIRE(blocked.has_value());
  CHECK(contains(*blocked, "exist"));
}

TEST_CASE("random flip walks keep every invariant") {
  std::mt19937_64 rng(21);
  for (int n = 4; n <= 10; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      auto t = testing_support::random_triangulation(n, rng, 50);
      CHECK(validate(t).ok);
      CHECK(static_cast<int>(t.edges().size()) - n == 2 * n - 6);
      for (const Edge& e : t.edges()) {
        if (!t.can_flip(e)) continue;
        auto u = t;
        const Edge back = u.flip({e});
        CHECK(validate(u).ok);
        u.flip({back});
        CHECK(u == t);
      }
    }
  }
}

TEST_CASE("fingerprints") {
  CHECK(MarkedTriangulation::tetrahedron().fingerprint() == "4:1-2-3,1-2-4,1-3-4,2-3-4");
  const auto bp = MarkedTriangulation::bipyramid(5);
  const auto moved = relabeled(bp, {2, 3, 0, 1, 4});
  CHECK(moved.fingerprint() != bp.fingerprint());
  CHECK(relabeled(bp, {0, 1, 3, 4, 2}).fingerprint() == bp.fingerprint());  // rotating the equator
  // Orientation does not enter the identity.
  std::vector<Face> reversed;
  for (const Face& f : bp.faces()) reversed.push_back({f[0], f[2], f[1]});
  CHECK(MarkedTriangulation::from_faces(5, reversed).fingerprint() == bp.fingerprint());
}

TEST_CASE("flip graph") {
  const std::map<int, std::pair<std::size_t, std::size_t>> frozen{{4, {1, 0}}, {5, {10, 15}}, {6, {195, 540}}};
  for (const auto& [n, counts] : frozen) {
    const FlipGraph g = flip_graph(n);
    CHECK(g.connected);
    CHECK(g.nodes.size() == counts.first);
    CHECK(g.edge_count == counts.second);
    CHECK(enumerate_triangulations(n).size() == counts.first);
    // Adjacency is symmetric and every edge is one flip.
    std::size_t degree_sum = 0;
    for (std::size_t i = 0; i < g.adjacency.size(); ++i) {
      degree_sum += g.adjacency[i].size();
      for (int j : g.adjacency[i]) {
        const auto& back = g.adjacency[static_cast<std::size_t>(j)];
        CHECK(std::find(back.begin(), back.end(), static_cast<int>(i)) != back.end());
      }
    }
    CHECK(degree_sum == 2 * g.edge_count);
  }
  CHECK_THROWS_AS(flip_graph(8), ResourceBound);
  CHECK_NOTHROW(flip_graph(5, 5));
  CHECK_THROWS_AS(flip_graph(6, 5), ResourceBound);
}

TEST_CASE("flip paths") {
  const auto bp = MarkedTriangulation::bipyramid(6);
  CHECK(flip_path(bp, bp).moves.empty());
  CHECK_THROWS_AS(flip_path(bp, MarkedTriangulation::bipyramid(5)), LabelMismatch);

  std::mt19937_64 rng(31);
  for (int n = 4; n <= 9; ++n) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto t1 = testing_support::random_triangulation(n, rng);
      const auto t2 = testing_support::random_triangulation(n, rng);
      const FlipPath path = flip_path(t1, t2);
      CHECK(path.start == t1.fingerprint());
      CHECK(apply_path(t1, path).fingerprint() == t2.fingerprint());
      CHECK(apply_path(t1, FlipPath{t1.fingerprint(), {}}) == t1);
    }
  }

  // Relabelled bipyramids at N = 5.
  const auto b5 = MarkedTriangulation::bipyramid(5);
  for (const std::vector<int>& perm : {std::vector<int>{2, 3, 0, 1, 4}, std::vector<int>{4, 0, 1, 2, 3}}) {
    const auto other = relabeled(b5, perm);
    const auto path = flip_path(b5, other);
    CHECK(path.moves.size() <= 12);
    CHECK(apply_path(b5, path).fingerprint() == other.fingerprint());
  }

  // Canonicalizing flips land on the canonical form.
  for (int trial = 0; trial < 30; ++trial) {
    auto t = testing_support::random_triangulation(8, rng);
    for (const auto& [removed, added] : canonicalizing_flips(t)) CHECK(t.flip({removed}) == added);
    CHECK(t.fingerprint() == canonical_triangulation(8).fingerprint());
  }
}
