#include <algorithm>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "cblocks/fixtures.hpp"
#include "cblocks/verlinde.hpp"
#include "cblocks/weights.hpp"

using namespace cblocks;

TEST_CASE("closed-form values") {
  // (3/2)(4/3 + 4/3) = 4
  CHECK(verlinde_dim(2, 1) == 4);
  CHECK(verlinde_dim(2, 0) == 1);
  CHECK(verlinde_dim(3, 2) == 36);
  // raw float is close to the integer
  auto r = verlinde_dim_full(2, 1);
  CHECK(std::abs(r.raw - 4.0) < 1e-9);
}

TEST_CASE("closed form equals enumeration") {
  for (const char* name : {"theta", "dumbbell", "double-theta", "ladder-4", "nonplanar-g4"}) {
    Graph g = fixture_by_name(name)->graph;
    for (int k = 0; k <= 12; ++k)
      CHECK(verlinde_dim(g.genus(), k) == static_cast<std::int64_t>(count_weights(g, k)));
  }
  Graph g5 = nonplanar_g5_fixture().graph;
  for (int k = 0; k <= 8; ++k)
    CHECK(verlinde_dim(5, k) == static_cast<std::int64_t>(count_weights(g5, k, {}, 2)));
}

TEST_CASE("boundary labels") {
  Graph theta = theta_fixture().graph;
  auto cut = cut_edge(theta, "f3");  // genus 1, two legs
  const Graph& piece = cut.first;
  REQUIRE(piece.genus() == 1);
  for (int k = 1; k <= 6; ++k) {
    for (int a = 0; a <= k; ++a)
      for (int b = 0; b <= k; ++b) {
        std::map<std::string, int> labels{{cut.leg_a, a}, {cut.leg_b, b}};
        CHECK(verlinde_dim_graph(piece, k, labels).value ==
              static_cast<std::int64_t>(count_weights(piece, k, labels)));
      }
  }
  // permutation invariance
  std::mt19937 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    int k = 2 + static_cast<int>(rng() % 7);
    std::vector<int> labels(4);
    for (auto& x : labels) x = static_cast<int>(rng() % (k + 1));
    auto sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    CHECK(verlinde_dim(1, k, labels) == verlinde_dim(1, k, sorted));
  }
  // odd doubled-label sum forces zero
  CHECK(verlinde_dim(1, 3, {1, 0}) == 0);
  CHECK(verlinde_dim(1, 3, {1, 2}) == 0);
  CHECK(verlinde_dim(2, 5, {5}) == 0);
  // out-of-range label
  CHECK_THROWS_AS(verlinde_dim(1, 2, {3}), input_error);
}

TEST_CASE("factorization identities") {
  // theta cut at f3: non-separating, hand value 10 at k=2
  Graph theta = theta_fixture().graph;
  auto rep = check_factorization(theta, "f3", 2);
  CHECK(rep.lhs == 10);
  CHECK(rep.rhs == 10);
  CHECK_FALSE(rep.separating);
  CHECK(rep.pass);

  // dumbbell cut at the bridge: separating, product form; hand value 20 at k=3
  Graph db = dumbbell_fixture().graph;
  auto rd = check_factorization(db, "f2", 3);
  CHECK(rd.separating);
  CHECK(rd.lhs == 20);
  CHECK(rd.pass);

  Graph dt = double_theta_fixture().graph;
  auto rt = check_factorization(dt, "f1", 4);
  CHECK(rt.pass);

  // every internal edge of the small fixtures, k <= 4
  for (const char* name : {"theta", "dumbbell", "double-theta", "nonplanar-g4"}) {
    Graph g = fixture_by_name(name)->graph;
    for (int e = 0; e < g.edge_count(); ++e)
      for (int k = 0; k <= 4; ++k)
        CHECK(check_factorization(g, g.edge(e).id, k).pass);
  }

  // legs cannot be cut
  auto cut = cut_edge(theta, "f3");
  CHECK_THROWS_AS(check_factorization(cut.first, cut.leg_a, 2, {{cut.leg_a, 0}, {cut.leg_b, 0}}),
                  input_error);
}

TEST_CASE("genus-0 pieces from a double cut") {
  // theta cut at f3 and then at f2 leaves a 4-point tree (genus 0, 4 legs)
  Graph theta = theta_fixture().graph;
  auto c1 = cut_edge(theta, "f3");
  auto c2 = cut_edge(c1.first, "f2");
  REQUIRE_FALSE(c2.separating);
  const Graph& tree = c2.first;
  CHECK(tree.genus() == 0);
  CHECK(tree.legs().size() == 4);
  for (int k = 1; k <= 5; ++k)
    for (int a = 0; a <= k; ++a)
      for (int b = 0; b <= k; ++b)
        for (int c = 0; c <= k; ++c)
          for (int d = 0; d <= k; ++d) {
            std::map<std::string, int> labels{
                {c1.leg_a, a}, {c1.leg_b, b}, {c2.leg_a, c}, {c2.leg_b, d}};
            CHECK(verlinde_dim_graph(tree, k, labels).value ==
                  static_cast<std::int64_t>(count_weights(tree, k, labels)));
          }
}

TEST_CASE("factorization with boundary labels") {
  Graph theta = theta_fixture().graph;
  auto cut = cut_edge(theta, "f3");  // genus-1 with legs f3a, f3b
  const Graph& piece = cut.first;
  for (int a = 0; a <= 3; ++a) {
    std::map<std::string, int> labels{{cut.leg_a, a}, {cut.leg_b, a}};
    auto rep = check_factorization(piece, "f1", 3, labels);
    CHECK(rep.pass);
  }
}
