#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cblocks/gf2.hpp"
#include "cblocks/graph.hpp"
#include "cblocks/weights.hpp"

namespace cblocks {

// Raised when a coefficient vector produces an odd integer sum on an
// admissible weight, i.e. the formula does not define a Z/2 value.
struct integrality_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// Runs fn over tasks [0, n) on up to jobs threads.
template <class Fn>
void run_tasks(std::size_t n, int jobs, Fn&& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) break;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  int nthreads = std::min<int>(jobs, static_cast<int>(n));
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

// Materialized basis values bound to one level: a bit per (basis cycle,
// weight), plus the basis-action permutations of the weight set.
struct CocycleTable {
  std::shared_ptr<const WeightSet> ws;
  std::vector<std::vector<std::uint8_t>> bits;   // [basis][weight index]
  std::vector<std::vector<std::uint32_t>> perm;  // [basis][weight index]
};

}  // namespace detail

// A twisted 1-cocycle determined by its values on a cycle basis plus the
// twisted extension  delta(lh + rest) = delta(lh) + lh . delta(rest), folded
// in basis order. Basis values come from one of two backings:
//  - integer coefficient formulas: delta_j(lh) = (sum_l c_l a_l)/2 mod 2 in
//    doubled units, level-independent. Coefficients stay signed: +1 and -1
//    differ mod 2 exactly when the edge weight is odd.
//  - a materialized bit table over the weight set of one level (used by the
//    bundled non-planar fixtures, where no coefficient formula exists).
class CocycleSpec {
 public:
  static CocycleSpec make(const Graph& g, std::vector<Bits> basis,
                          std::vector<std::vector<int>> coeffs) {
    CocycleSpec s = common(g, std::move(basis));
    if (s.basis_.size() != coeffs.size())
      throw input_error("cocycle: one coefficient vector per basis cycle required");
    for (const auto& c : coeffs)
      if (c.size() != static_cast<std::size_t>(g.edge_count()))
        throw input_error("coefficient vector length must equal the edge count");
    s.coeffs_ = std::move(coeffs);
    for (const auto& c : s.coeffs_) {
      std::vector<std::pair<int, std::uint8_t>> sparse;
      for (int l = 0; l < s.edges_; ++l)
        if (c[l] % 4 != 0) sparse.emplace_back(l, static_cast<std::uint8_t>(((c[l] % 4) + 4) % 4));
      s.sparse_mod4_.push_back(std::move(sparse));
    }
    return s;
  }

  static CocycleSpec make_table(const Graph& g, std::vector<Bits> basis,
                                std::shared_ptr<detail::CocycleTable> table) {
    CocycleSpec s = common(g, std::move(basis));
    if (table->bits.size() != s.basis_.size())
      throw input_error("cocycle table: one value row per basis cycle required");
    s.table_ = std::move(table);
    return s;
  }

  int size() const { return static_cast<int>(basis_.size()); }
  int edge_count() const { return edges_; }
  const std::vector<Bits>& basis() const { return basis_; }
  bool table_backed() const { return table_ != nullptr; }
  const std::vector<std::vector<int>>& coeffs() const { return coeffs_; }
  const detail::CocycleTable& table() const { return *table_; }

  int bound_level() const {  // -1 when level-independent
    return table_ ? table_->ws->level() : -1;
  }
  void require_level(int k) const {
    if (table_ && table_->ws->level() != k)
      throw input_error("cocycle value table is bound to level " +
                        std::to_string(table_->ws->level()));
  }

  // Value on the h-th basis cycle at weight a; ok cleared on an odd
  // coefficient sum (coefficient backing only).
  int eval_basis(int h, const std::uint8_t* a, bool& ok) const {
    if (table_) {
      auto idx = table_->ws->index_of(a);
      if (!idx) throw std::logic_error("weight not in the bound weight set");
      return table_->bits[h][*idx];
    }
    unsigned s = 0;
    for (auto [l, c] : sparse_mod4_[h]) s += c * a[l];
    s &= 3;
    if (s & 1) { ok = false; return 0; }
    return static_cast<int>(s >> 1);
  }

  int eval_basis_checked(int h, const std::uint8_t* a) const {
    bool ok = true;
    int r = eval_basis(h, a, ok);
    if (!ok) throw integrality_error("coefficient formula gives an odd sum (basis cycle " +
                                     std::to_string(h) + ")");
    return r;
  }

  // Twisted extension over the basis combination given as a mask, folded in
  // basis order. scratch must hold edge_count() bytes.
  int evaluate_mask(std::uint32_t mask, const std::uint8_t* a, int k, std::uint8_t* scratch,
                    bool& ok) const {
    if (mask == 0) return 0;
    require_level_ok(k);
    for (int l = 0; l < edges_; ++l) scratch[l] = a[l];
    int r = 0;
    for (int h = 0; h < size(); ++h) {
      if (!((mask >> h) & 1)) continue;
      r ^= eval_basis(h, scratch, ok);
      if (!ok) return 0;
      act_cycle_inplace(scratch, edges_, basis_[h], k);
    }
    return r;
  }

  int evaluate_mask_checked(std::uint32_t mask, const std::uint8_t* a, int k) const {
    std::vector<std::uint8_t> scratch(edges_);
    bool ok = true;
    int r = evaluate_mask(mask, a, k, scratch.data(), ok);
    if (!ok) throw integrality_error("coefficient formula gives an odd sum");
    return r;
  }

  std::uint32_t decompose(Bits lambda) const {
    auto m = gf2_decompose(basis_, lambda);
    if (!m) throw input_error("cycle is not in the span of the cocycle basis");
    return *m;
  }

  // delta_j(lambda) for an arbitrary cycle class.
  int evaluate(Bits lambda, const WeightVec& w, int k) const {
    return evaluate_mask_checked(decompose(lambda), w.data(), k);
  }

  // Combined support of the basis cycles selected by mask (the cycle itself).
  Bits cycle_of_mask(std::uint32_t mask) const {
    Bits c = 0;
    for (int h = 0; h < size(); ++h)
      if ((mask >> h) & 1) c ^= basis_[h];
    return c;
  }

 private:
  static CocycleSpec common(const Graph& g, std::vector<Bits> basis) {
    CocycleSpec s;
    s.edges_ = g.edge_count();
    if (basis.empty()) throw input_error("cocycle basis is empty");
    if (basis.size() != static_cast<std::size_t>(g.genus()))
      throw input_error("cocycle basis must have g cycles");
    for (Bits b : basis)
      if (!g.even_subgraph(b)) throw input_error("cocycle basis entry is not a cycle");
    if (gf2_rank(basis) != g.genus())
      throw input_error("cocycle basis cycles are not independent");
    s.basis_ = std::move(basis);
    return s;
  }

  void require_level_ok(int k) const { require_level(k); }

  int edges_ = 0;
  std::vector<Bits> basis_;
  std::vector<std::vector<int>> coeffs_;
  std::vector<std::vector<std::pair<int, std::uint8_t>>> sparse_mod4_;
  std::shared_ptr<const detail::CocycleTable> table_;
};

inline CocycleSpec zero_cocycle(const Graph& g) {
  auto basis = cycle_basis(g);
  std::vector<std::vector<int>> coeffs(basis.size(), std::vector<int>(g.edge_count(), 0));
  return CocycleSpec::make(g, std::move(basis), std::move(coeffs));
}

struct CocycleViolation {
  enum Kind { commutation, integrality } kind = commutation;
  int h1 = -1, h2 = -1;  // basis pair under test
  WeightVec weight;      // witness
  std::string describe(const Graph&) const {
    std::string s = kind == commutation ? "commutation" : "integrality";
    s += " pair=(" + std::to_string(h1) + "," + std::to_string(h2) + ") weight=[";
    for (std::size_t i = 0; i < weight.size(); ++i)
      s += (i ? "," : "") + std::to_string(int(weight[i]));
    return s + "]";
  }
};

// Checks the commutation relation
//   delta_j(lh) + delta_{lh.j}(lh') = delta_j(lh') + delta_{lh'.j}(lh)
// for every basis pair over every admissible weight; exactly what makes the
// twisted extension well defined. Returns the lowest violation by
// (pair index, weight position); integrality breaches are reported the same
// way.
inline std::optional<CocycleViolation> check_cocycle(const CocycleSpec& spec, const Graph& g,
                                                     int k, int jobs = 1) {
  spec.require_level(k);
  const int E = g.edge_count();
  const int n = spec.size();
  std::vector<std::pair<int, int>> pairs;
  for (int h1 = 0; h1 < n; ++h1)
    for (int h2 = h1 + 1; h2 < n; ++h2) pairs.emplace_back(h1, h2);

  if (spec.table_backed()) {
    // permutation path: everything is an array read
    const auto& tab = spec.table();
    const std::size_t nw = tab.ws->size();
    struct Best {
      bool found = false;
      std::size_t idx = 0;
    };
    std::vector<Best> best(pairs.size());
    detail::run_tasks(pairs.size(), jobs, [&](std::size_t pi) {
      auto [h1, h2] = pairs[pi];
      const auto& b1 = tab.bits[h1];
      const auto& b2 = tab.bits[h2];
      const auto& p1 = tab.perm[h1];
      const auto& p2 = tab.perm[h2];
      for (std::size_t i = 0; i < nw; ++i) {
        if ((b1[i] ^ b2[p1[i]]) != (b2[i] ^ b1[p2[i]])) {
          best[pi] = {true, i};
          break;
        }
      }
    });
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
      if (!best[pi].found) continue;
      CocycleViolation v;
      v.kind = CocycleViolation::commutation;
      v.h1 = pairs[pi].first;
      v.h2 = pairs[pi].second;
      v.weight = tab.ws->weight(best[pi].idx);
      return v;
    }
    return std::nullopt;
  }

  struct Best {
    bool found = false;
    std::size_t pair_idx = 0;
    std::uint64_t key = 0;
    CocycleViolation v;
  };

  // weight key in input edge order (lexicographic tie-break)
  std::vector<std::uint64_t> radix(E);
  {
    std::uint64_t place = 1;
    bool overflow = false;
    for (int l = E - 1; l >= 0; --l) {
      radix[l] = place;
      if (l > 0) {
        if (place > std::uint64_t(-1) / (k + 1)) overflow = true;
        if (!overflow) place *= k + 1;
      }
    }
    if (overflow)
      for (auto& r : radix) r = 0;
  }

  // split the search tree on the first edge in BFS order
  std::vector<int> order = bfs_edge_order(g);
  int split_edge = order.empty() ? 0 : order[0];
  std::vector<int> values;
  for (int x = 0; x <= k; ++x) values.push_back(x);
  std::vector<Best> best(values.size());

  detail::run_tasks(values.size(), jobs, [&](std::size_t vi) {
    std::vector<int> forced(E, -1);
    forced[split_edge] = values[vi];
    std::vector<std::uint8_t> a8(E);
    std::vector<std::vector<std::uint8_t>> acted(n, std::vector<std::uint8_t>(E));
    Best& b = best[vi];
    for_each_weight(g, k, forced, [&](const int* a) {
      for (int l = 0; l < E; ++l) a8[l] = static_cast<std::uint8_t>(a[l]);
      std::uint64_t key = 0;
      for (int l = 0; l < E; ++l) key += a8[l] * radix[l];
      for (int h = 0; h < n; ++h) {
        acted[h].assign(a8.begin(), a8.end());
        act_cycle_inplace(acted[h].data(), E, spec.basis()[h], k);
      }
      for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        if (b.found && (b.pair_idx < pi || (b.pair_idx == pi && b.key <= key))) continue;
        auto [h1, h2] = pairs[pi];
        bool ok = true;
        int lhs = spec.eval_basis(h1, a8.data(), ok) ^ spec.eval_basis(h2, acted[h1].data(), ok);
        int rhs = spec.eval_basis(h2, a8.data(), ok) ^ spec.eval_basis(h1, acted[h2].data(), ok);
        if (ok && lhs == rhs) continue;
        b.found = true;
        b.pair_idx = pi;
        b.key = key;
        b.v.kind = ok ? CocycleViolation::commutation : CocycleViolation::integrality;
        b.v.h1 = h1;
        b.v.h2 = h2;
        b.v.weight = WeightVec(a8.begin(), a8.end());
      }
    });
  });

  std::optional<CocycleViolation> out;
  std::size_t bp = 0;
  std::uint64_t bk = 0;
  for (const auto& b : best) {
    if (!b.found) continue;
    if (!out || b.pair_idx < bp || (b.pair_idx == bp && b.key < bk)) {
      out = b.v;
      bp = b.pair_idx;
      bk = b.key;
    }
  }
  return out;
}

struct ExViolation {
  std::uint32_t lambda_mask = 0;
  WeightVec weight;
  int got = 0, want = 0;
  std::string describe(const CocycleSpec& spec, const Graph& g) const {
    std::string s = "lambda={";
    auto ids = g.edge_ids(spec.cycle_of_mask(lambda_mask));
    for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "+" : "") + ids[i];
    s += "} weight=[";
    for (std::size_t i = 0; i < weight.size(); ++i)
      s += (i ? "," : "") + std::to_string(int(weight[i]));
    return s + "] got=" + std::to_string(got) + " want=" + std::to_string(want);
  }
};

// External edge condition, exhaustively over all 2^g cycle classes: on every
// lambda-fixed weight, delta_j(lambda) must equal the external-edge sum
// sum_{Ex(lambda)} j_l mod 2. (Every edge incident to the fixed cycle carries
// an even doubled weight, so the sum is an integer.) First violation by
// (lambda mask, weight key).
inline std::optional<ExViolation> check_external_edge(const CocycleSpec& spec, const Graph& g,
                                                      int k, int jobs = 1) {
  spec.require_level(k);
  const int E = g.edge_count();
  const int n = spec.size();
  std::uint32_t nmask = 1u << n;
  struct Best {
    bool found = false;
    WeightVec key;  // lexicographic tie-break = weight position
    ExViolation v;
  };
  std::vector<Best> best(nmask);

  detail::run_tasks(nmask - 1, jobs, [&](std::size_t t) {
    std::uint32_t mask = static_cast<std::uint32_t>(t + 1);
    Bits lambda = spec.cycle_of_mask(mask);
    Bits ex = external_internal_edges(g, lambda).external;
    std::vector<std::uint8_t> a8(E), scratch(E);
    Best& b = best[mask];
    for_each_fixed_weight(g, k, lambda, [&](const int* a) {
      for (int l = 0; l < E; ++l) a8[l] = static_cast<std::uint8_t>(a[l]);
      if (b.found && WeightVec(a8.begin(), a8.end()) >= b.key) return;
      bool ok = true;
      int got = spec.evaluate_mask(mask, a8.data(), k, scratch.data(), ok);
      int ext_sum = 0;
      for (int l = 0; l < E; ++l)
        if (test_bit(ex, l)) ext_sum += a[l];
      int want = (ext_sum / 2) & 1;
      if (ok && got == want) return;
      b.found = true;
      b.key = WeightVec(a8.begin(), a8.end());
      b.v.lambda_mask = mask;
      b.v.weight = b.key;
      b.v.got = ok ? got : -1;
      b.v.want = want;
    });
  });

  for (std::uint32_t mask = 1; mask < nmask; ++mask)
    if (best[mask].found) return best[mask].v;
  return std::nullopt;
}

// Planar face construction: basis = bounded-face cycles of the embedding,
// coefficient 1 on external and 2 on internal edges of each face.
inline CocycleSpec build_planar(const Graph& g, const RotationSystem& rot, int k,
                                bool verify = true) {
  std::vector<Bits> basis = bounded_faces(g, rot);
  std::vector<std::vector<int>> coeffs;
  for (Bits face : basis) {
    ExIn exin = external_internal_edges(g, face);
    std::vector<int> c(g.edge_count(), 0);
    for (int l = 0; l < g.edge_count(); ++l) {
      if (test_bit(exin.external, l)) c[l] = 1;
      else if (test_bit(exin.internal, l)) c[l] = 2;
    }
    coeffs.push_back(std::move(c));
  }
  CocycleSpec spec = CocycleSpec::make(g, std::move(basis), std::move(coeffs));
  if (verify) {
    if (auto v = check_cocycle(spec, g, k))
      throw std::logic_error("planar construction failed the cocycle check: " + v->describe(g));
    if (auto v = check_external_edge(spec, g, k))
      throw std::logic_error("planar construction failed the external edge condition: " +
                             v->describe(spec, g));
  }
  return spec;
}

// Backing for the bundled non-planar fixtures: materializes a twisted
// 1-cocycle satisfying the external edge condition at the given level, as bit
// tables over the weight set. Transport construction: on each weight orbit of
// the cycle-class group, values on the stabilizer of the lowest-index
// representative are prescribed by the external-edge sums and transported by
// the cocycle law; free coset directions get value 0. Orbits whose
// prescription is not a homomorphism (levels where the condition cannot hold)
// fall back to 0 there, which keeps the result a twisted cocycle but lets the
// external-edge check report the failure honestly. alt_rep picks the
// highest-index representative instead, giving an independent construction.
inline CocycleSpec materialize_ex_cocycle(const Graph& g, std::vector<Bits> basis, int k,
                                          bool alt_rep = false, int jobs = 1) {
  jobs = std::max(1, jobs);
  auto ws = std::make_shared<WeightSet>(g, k);
  const std::size_t n = ws->size();
  const int G = static_cast<int>(basis.size());
  const int E = g.edge_count();
  if (G > 7) throw input_error("value-table cocycles support genus at most 7");

  auto table = std::make_shared<detail::CocycleTable>();
  table->ws = ws;
  table->perm.assign(G, std::vector<std::uint32_t>(n));
  const std::size_t chunks = static_cast<std::size_t>(jobs);
  for (int h = 0; h < G; ++h) {
    const Bits supp = basis[h];
    detail::run_tasks(chunks, jobs, [&](std::size_t t) {
      std::size_t lo = n * t / chunks;
      std::size_t hi = n * (t + 1) / chunks;
      std::vector<std::uint8_t> buf(E);
      for (std::size_t i = lo; i < hi; ++i) {
        const std::uint8_t* a = (*ws)[i];
        for (int l = 0; l < E; ++l) buf[l] = a[l];
        act_cycle_inplace(buf.data(), E, supp, k);
        auto idx = ws->index_of(buf.data());
        if (!idx) throw std::logic_error("cycle action left the weight set");
        table->perm[h][i] = *idx;
      }
    });
  }

  // external-edge sums per group mask
  std::vector<Bits> ex(std::size_t{1} << G, 0);
  for (std::uint32_t m = 1; m < (1u << G); ++m) {
    Bits lam = 0;
    for (int h = 0; h < G; ++h)
      if ((m >> h) & 1) lam ^= basis[h];
    ex[m] = external_internal_edges(g, lam).external;
  }
  auto exsum = [&](std::uint32_t m, const std::uint8_t* a) {
    int s = 0;
    Bits e = ex[m];
    while (e) {
      int l = std::countr_zero(e);
      s += a[l];
      e &= e - 1;
    }
    return (s / 2) & 1;
  };

  // orbit representatives via union-find (min index roots)
  std::vector<std::uint32_t> uf(n);
  for (std::size_t i = 0; i < n; ++i) uf[i] = static_cast<std::uint32_t>(i);
  std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
    while (uf[x] != x) {
      uf[x] = uf[uf[x]];
      x = uf[x];
    }
    return x;
  };
  for (int h = 0; h < G; ++h)
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t a = find(static_cast<std::uint32_t>(i)), b = find(table->perm[h][i]);
      if (a != b) uf[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::uint32_t> rep_of_root(n, 0);
  if (alt_rep) {
    for (std::size_t i = 0; i < n; ++i) rep_of_root[find(static_cast<std::uint32_t>(i))] =
        static_cast<std::uint32_t>(i);  // last write wins: highest index
  } else {
    for (std::size_t i = n; i-- > 0;) rep_of_root[find(static_cast<std::uint32_t>(i))] =
        static_cast<std::uint32_t>(i);  // lowest index
  }

  table->bits.assign(G, std::vector<std::uint8_t>(n, 0));
  std::vector<std::uint8_t> rep_mask(n, 0xff);
  std::vector<std::uint32_t> act_point(std::size_t{1} << G);

  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t rep = rep_of_root[find(static_cast<std::uint32_t>(i))];
    if (rep != i) continue;
    // sweep the orbit in ascending mask order
    for (std::uint32_t m = 0; m < (1u << G); ++m) {
      std::uint32_t p = rep;
      for (int h = 0; h < G; ++h)
        if ((m >> h) & 1) p = table->perm[h][p];
      act_point[m] = p;
      if (rep_mask[p] == 0xff) rep_mask[p] = static_cast<std::uint8_t>(m);
    }
    std::vector<std::uint32_t> stab_masks;
    for (std::uint32_t m = 0; m < (1u << G); ++m)
      if (act_point[m] == rep) stab_masks.push_back(m);
    // prescription on the stabilizer
    std::vector<std::uint8_t> hom(std::size_t{1} << G, 0);
    const std::uint8_t* ar = (*ws)[rep];
    for (std::uint32_t s : stab_masks) hom[s] = static_cast<std::uint8_t>(exsum(s, ar));
    bool consistent = true;
    for (std::uint32_t s1 : stab_masks) {
      for (std::uint32_t s2 : stab_masks)
        if ((hom[s1] ^ hom[s2]) != hom[s1 ^ s2]) { consistent = false; break; }
      if (!consistent) break;
    }
    // transported values: delta_p(e_h) = hom(nu ^ e_h ^ rep_mask[perm_h(p)])
    for (std::uint32_t m = 0; m < (1u << G); ++m) {
      std::uint32_t p = act_point[m];
      if (rep_mask[p] != static_cast<std::uint8_t>(m)) continue;  // visit each point once
      for (int h = 0; h < G; ++h) {
        std::uint32_t q = table->perm[h][p];
        std::uint32_t arg = (m ^ (1u << h)) ^ rep_mask[q];
        if (act_point[arg] != rep)
          throw std::logic_error("orbit transport left the stabilizer");
        table->bits[h][p] = consistent ? hom[arg] : 0;
      }
    }
  }

  return CocycleSpec::make_table(g, std::move(basis), std::move(table));
}

// Coboundary criterion for twisted cocycles over a finite orbit set: the class
// vanishes iff the value is 0 on every lambda-fixed weight, for every lambda.
template <class Value>
bool vanishes_on_fixed_points(const Graph& g, int k, const CocycleSpec& group_basis,
                              Value&& value) {
  const int n = group_basis.size();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    Bits lambda = group_basis.cycle_of_mask(mask);
    bool bad = false;
    for_each_fixed_weight(g, k, lambda, [&](const int* a) {
      if (bad) return;
      if (value(mask, lambda, a) != 0) bad = true;
    });
    if (bad) return false;
  }
  return true;
}

inline bool is_coboundary(const CocycleSpec& spec, const Graph& g, int k) {
  spec.require_level(k);
  const int E = g.edge_count();
  std::vector<std::uint8_t> a8(E), scratch(E);
  return vanishes_on_fixed_points(g, k, spec, [&](std::uint32_t mask, Bits, const int* a) {
    for (int l = 0; l < E; ++l) a8[l] = static_cast<std::uint8_t>(a[l]);
    bool ok = true;
    int r = spec.evaluate_mask(mask, a8.data(), k, scratch.data(), ok);
    if (!ok) throw integrality_error("coefficient formula gives an odd sum");
    return r;
  });
}

// The pointwise difference of two twisted cocycles is again a twisted cocycle;
// it is a coboundary iff the two classes agree.
inline bool difference_is_coboundary(const CocycleSpec& a, const CocycleSpec& b, const Graph& g,
                                     int k) {
  a.require_level(k);
  b.require_level(k);
  const int E = g.edge_count();
  std::vector<std::uint8_t> a8(E), scratch(E);
  return vanishes_on_fixed_points(g, k, a, [&](std::uint32_t mask, Bits lambda, const int* w) {
    for (int l = 0; l < E; ++l) a8[l] = static_cast<std::uint8_t>(w[l]);
    bool ok = true;
    int va = a.evaluate_mask(mask, a8.data(), k, scratch.data(), ok);
    std::uint32_t bmask = b.decompose(lambda);
    int vb = b.evaluate_mask(bmask, a8.data(), k, scratch.data(), ok);
    if (!ok) throw integrality_error("coefficient formula gives an odd sum");
    return va ^ vb;
  });
}

}  // namespace cblocks
