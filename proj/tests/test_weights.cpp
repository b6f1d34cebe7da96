#include <map>
#include <random>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "cblocks/fixtures.hpp"
#include "cblocks/graph.hpp"
#include "cblocks/weights.hpp"

using namespace cblocks;

namespace {

// Independent oracle: full product scan over (k+1)^E assignments, checking the
// vertex conditions directly from their definition. Only usable at small size.
std::set<WeightVec> brute_force(const Graph& g, int k,
                                const std::map<std::string, int>& labels = {}) {
  std::set<WeightVec> out;
  int E = g.edge_count();
  WeightVec a(E, 0);
  auto vertex_ok = [&](int v) {
    if (g.is_univalent(v)) return true;
    const auto& inc = g.incident(v);
    int x = a[inc[0]], y = a[inc[1]], z = a[inc[2]];
    if ((x + y + z) % 2 != 0) return false;
    if (x + y + z > 2 * k) return false;
    return x <= y + z && y <= x + z && z <= x + y;
  };
  std::function<void(int)> rec = [&](int e) {
    if (e == E) {
      for (const auto& [id, val] : labels)
        if (a[g.edge_index(id)] != val) return;
      for (int v = 0; v < g.vertex_count(); ++v)
        if (!vertex_ok(v)) return;
      out.insert(a);
      return;
    }
    for (int x = 0; x <= k; ++x) {
      a[e] = static_cast<std::uint8_t>(x);
      rec(e + 1);
    }
  };
  rec(0);
  return out;
}

std::set<WeightVec> as_set(const WeightSet& ws) {
  std::set<WeightVec> out;
  for (std::size_t i = 0; i < ws.size(); ++i) out.insert(ws.weight(i));
  return out;
}

}  // namespace

TEST_CASE("admissible triple") {
  CHECK(admissible_triple(0, 0, 0, 0));
  CHECK(admissible_triple(1, 1, 0, 1));
  CHECK_FALSE(admissible_triple(1, 0, 0, 1));   // parity
  CHECK_FALSE(admissible_triple(2, 0, 0, 1));   // level bound via triangle? 2 > 0+0
  CHECK_FALSE(admissible_triple(1, 1, 2, 1));   // level: sum 4 > 2k
  CHECK(admissible_triple(1, 1, 2, 2));
  // a triple (k/2, k/2, a) is admissible iff a is even and a <= k
  for (int k = 2; k <= 8; k += 2)
    for (int a = 0; a <= k; ++a)
      CHECK(admissible_triple(a, k / 2, k / 2, k) == (a % 2 == 0));
}

TEST_CASE("theta level 1 enumeration") {
  Graph theta = theta_fixture().graph;
  WeightSet ws(theta, 1);
  REQUIRE(ws.size() == 4);
  CHECK(ws.weight(0) == WeightVec{0, 0, 0});
  CHECK(ws.weight(1) == WeightVec{0, 1, 1});
  CHECK(ws.weight(2) == WeightVec{1, 0, 1});
  CHECK(ws.weight(3) == WeightVec{1, 1, 0});
}

TEST_CASE("level 0 forces the zero weight") {
  for (const char* name : {"theta", "dumbbell", "double-theta", "nonplanar-g4", "nonplanar-g5"}) {
    Graph g = fixture_by_name(name)->graph;
    WeightSet ws(g, 0);
    REQUIRE(ws.size() == 1);
    CHECK(ws.weight(0) == WeightVec(g.edge_count(), 0));
  }
}

TEST_CASE("enumeration matches the brute-force oracle") {
  struct Case { const char* name; int kmax; };
  for (Case c : {Case{"theta", 5}, Case{"dumbbell", 4}, Case{"double-theta", 3}}) {
    Graph g = fixture_by_name(c.name)->graph;
    for (int k = 0; k <= c.kmax; ++k) {
      WeightSet ws(g, k);
      CHECK(as_set(ws) == brute_force(g, k));
      CHECK(count_weights(g, k) == ws.size());
    }
  }
}

TEST_CASE("enumeration with boundary labels") {
  Graph db = dumbbell_fixture().graph;
  auto cut = cut_edge(db, "f2");  // two loop-with-leg pieces
  const Graph& piece = cut.first;
  // loop piece, label a: admissible iff a even, with k - a + 1 loop values
  for (int k = 2; k <= 5; ++k) {
    for (int a = 0; a <= k; ++a) {
      std::map<std::string, int> labels{{cut.leg_a, a}};
      std::uint64_t expect = (a % 2 == 0) ? static_cast<std::uint64_t>(k - a + 1) : 0;
      CHECK(count_weights(piece, k, labels) == expect);
      CHECK(as_set(WeightSet(piece, k, labels)) == brute_force(piece, k, labels));
    }
  }
  // odd half-integer sum obstruction
  CHECK(count_weights(piece, 3, {{cut.leg_a, 1}}) == 0);
  // label out of range
  CHECK_THROWS_AS(count_weights(piece, 2, {{cut.leg_a, 3}}), input_error);
  CHECK_THROWS_AS(count_weights(piece, 2, std::map<std::string, int>{}), input_error);
}

TEST_CASE("canonical order is lexicographic in input edge order") {
  Graph dt = double_theta_fixture().graph;
  WeightSet ws(dt, 3);
  for (std::size_t i = 1; i < ws.size(); ++i)
    CHECK(ws.weight(i - 1) < ws.weight(i));
  // position lookup round-trips
  for (std::size_t i = 0; i < ws.size(); ++i) {
    auto idx = ws.index_of(ws[i]);
    REQUIRE(idx.has_value());
    CHECK(*idx == i);
  }
}

TEST_CASE("cycle action") {
  Graph dt = double_theta_fixture().graph;
  Bits lam = dt.edge_set({"f1", "f2"});
  int k = 4;
  WeightSet ws(dt, k);
  for (std::size_t i = 0; i < ws.size(); ++i) {
    WeightVec w = ws.weight(i);
    WeightVec acted = act_cycle(w, lam, k);
    // flips exactly the support entries
    CHECK(acted[0] == k - w[0]);
    CHECK(acted[1] == k - w[1]);
    for (int l = 2; l < 6; ++l) CHECK(acted[l] == w[l]);
    // stays admissible
    CHECK(ws.index_of(acted.data()).has_value());
    // involution
    CHECK(act_cycle(acted, lam, k) == w);
    // identity
    CHECK(act_cycle(w, 0, k) == w);
  }
}

TEST_CASE("cycle action is a group action of the cycle space") {
  Graph dt = double_theta_fixture().graph;
  auto basis = cycle_basis(dt);
  int k = 3;
  WeightSet ws(dt, k);
  for (std::size_t i = 0; i < ws.size(); ++i) {
    WeightVec w = ws.weight(i);
    for (Bits l1 : basis)
      for (Bits l2 : basis)
        CHECK(act_cycle(act_cycle(w, l2, k), l1, k) == act_cycle(w, l1 ^ l2, k));
  }
}

TEST_CASE("fixed points") {
  Graph dt = double_theta_fixture().graph;
  Bits lam = dt.edge_set({"f1", "f2"});

  // Example: 8 fixed weights at level 2 on the genus-3 fixture
  WeightSet ws(dt, 2);
  auto fixed = fixed_point_indices(ws, lam);
  CHECK(fixed.size() == 8);

  // filter criterion vs direct a = k/2 criterion
  std::size_t by_filter = 0;
  for (std::size_t i = 0; i < ws.size(); ++i)
    if (act_cycle(ws.weight(i), lam, 2) == ws.weight(i)) ++by_filter;
  CHECK(by_filter == fixed.size());

  // streaming enumeration agrees
  std::size_t streamed = 0;
  for_each_fixed_weight(dt, 2, lam, [&](const int*) { ++streamed; });
  CHECK(streamed == 8);

  // odd level: empty for lambda != 0
  for (int k : {1, 3, 5}) {
    std::size_t n = 0;
    for_each_fixed_weight(dt, k, lam, [&](const int*) { ++n; });
    CHECK(n == 0);
  }

  // lambda = 0: the whole set
  CHECK(fixed_point_indices(ws, 0).size() == ws.size());
}

TEST_CASE("parity functional") {
  Graph theta = theta_fixture().graph;
  WeightSet ws(theta, 1);
  Bits e1 = theta.edge_set({"f1"});
  CHECK(parity_mu(WeightVec{0, 1, 1}, e1) == 0);
  CHECK(parity_mu(WeightVec{1, 0, 1}, e1) == 1);
  CHECK(parity_mu(WeightVec{1, 1, 0}, 0) == 0);

  // lift independence: XOR-ing a vertex relation vector changes nothing
  for (const char* name : {"theta", "dumbbell", "double-theta"}) {
    Graph g = fixture_by_name(name)->graph;
    std::vector<Bits> relations;
    for (int v = 0; v < g.vertex_count(); ++v) {
      Bits row = 0;
      for (int e : g.incident(v))
        if (!g.is_loop(e)) row ^= with_bit(0, e);
      relations.push_back(row);
    }
    for (int k = 1; k <= 3; ++k) {
      WeightSet wsk(g, k);
      for (std::size_t i = 0; i < wsk.size(); ++i) {
        for (Bits mu = 0; mu < (Bits{1} << g.edge_count()); mu += 3)  // sampled lifts
          for (Bits rel : relations)
            CHECK(parity_mu(wsk[i], mu) == parity_mu(wsk[i], mu ^ rel));
      }
    }
  }

  // GF(2) linearity in mu
  Graph dt = double_theta_fixture().graph;
  WeightSet w2(dt, 2);
  for (std::size_t i = 0; i < w2.size(); ++i)
    for (Bits m1 = 0; m1 < 64; m1 += 5)
      for (Bits m2 = 0; m2 < 64; m2 += 7)
        CHECK(parity_mu(w2[i], m1 ^ m2) ==
              ((parity_mu(w2[i], m1) + parity_mu(w2[i], m2) + 2 * parity(m1 & m2)) & 1));
}

TEST_CASE("shift relation") {
  Graph theta = theta_fixture().graph;
  int k = 2;
  WeightSet ws(theta, k);
  auto basis = cycle_basis(theta);
  for (std::size_t i = 0; i < ws.size(); ++i)
    for (Bits mu = 0; mu < 8; ++mu)
      for (std::uint32_t m = 0; m < 4; ++m) {
        Bits lam = 0;
        for (std::size_t h = 0; h < basis.size(); ++h)
          if ((m >> h) & 1) lam ^= basis[h];
        CHECK(shift_relation_holds(ws.weight(i), mu, lam, k));
      }

  Graph dt = double_theta_fixture().graph;
  int k4 = 4;
  WeightSet w4(dt, k4);
  auto b4 = cycle_basis(dt);
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 100; ++trial) {
    WeightVec w = w4.weight(rng() % w4.size());
    Bits mu = rng() & ((Bits{1} << 6) - 1);
    Bits lam = 0;
    std::uint32_t m = rng() & 7;
    for (std::size_t h = 0; h < b4.size(); ++h)
      if ((m >> h) & 1) lam ^= b4[h];
    CHECK(shift_relation_holds(w, mu, lam, k4));
  }
}

TEST_CASE("parallel count matches") {
  Graph g5 = nonplanar_g5_fixture().graph;
  std::map<std::string, int> no_labels;
  for (int k : {3, 4}) {
    std::uint64_t a = count_weights(g5, k, no_labels, 1);
    std::uint64_t b = count_weights(g5, k, no_labels, 4);
    CHECK(a == b);
  }
}
