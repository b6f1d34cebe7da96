#pragma once

#include <atomic>
#include <cstdint>
#include <cstring>
#include <functional>
#include <map>
#include <optional>
#include <thread>
#include <unordered_map>
#include <vector>

#include "cblocks/graph.hpp"

namespace cblocks {

// All weight values are doubled half-integers a = 2j in {0..k}, so everything
// stays in exact integer arithmetic.
using WeightVec = std::vector<std::uint8_t>;

// Quantum Clebsch-Gordan condition for one trivalent vertex, doubled units:
// parity, triangle inequalities, and the level bound a+b+c <= 2k.
inline bool admissible_triple(int a, int b, int c, int k) {
  if ((a + b + c) & 1) return false;
  if (a + b + c > 2 * k) return false;
  if (a > b + c || b > a + c || c > a + b) return false;
  return true;
}

namespace detail {

// Precomputed assignment plan: edges in traversal order (forced edges first),
// and for each step the vertex conditions that become fully determined there.
struct EnumPlan {
  int k = 0;
  std::vector<int> order;
  struct Constraint {
    enum Kind { triple, loop_value, bridge_of_loop } kind;
    int o1 = -1, o2 = -1;  // already-assigned edge indices
  };
  std::vector<std::vector<Constraint>> step_constraints;
};

inline EnumPlan make_plan(const Graph& g, int k, const std::vector<int>& forced) {
  EnumPlan plan;
  plan.k = k;
  std::vector<int> bfs = bfs_edge_order(g);
  // Forced edges first (stable): their singleton candidates prune the tree
  // before any free branching happens.
  for (int e : bfs)
    if (forced[e] >= 0) plan.order.push_back(e);
  for (int e : bfs)
    if (forced[e] < 0) plan.order.push_back(e);

  std::vector<int> pos(g.edge_count(), -1);
  for (std::size_t s = 0; s < plan.order.size(); ++s) pos[plan.order[s]] = static_cast<int>(s);

  plan.step_constraints.resize(plan.order.size());
  for (std::size_t s = 0; s < plan.order.size(); ++s) {
    int e = plan.order[s];
    int u = g.edge(e).u, v = g.edge(e).v;
    if (u == v) {
      // e is a loop; the third incidence at u is the bridge.
      int bridge = -1;
      for (int x : g.incident(u))
        if (x != e) bridge = x;
      if (bridge >= 0 && pos[bridge] < static_cast<int>(s))
        plan.step_constraints[s].push_back({EnumPlan::Constraint::loop_value, bridge, -1});
      continue;
    }
    for (int w : {u, v}) {
      if (g.is_univalent(w)) continue;
      const auto& inc = g.incident(w);  // three entries, loops twice
      int loop_edge = -1;
      std::vector<int> others;
      for (int x : inc)
        if (x != e) {
          if (g.is_loop(x)) loop_edge = x;
          else others.push_back(x);
        }
      if (loop_edge >= 0) {
        if (pos[loop_edge] < static_cast<int>(s))
          plan.step_constraints[s].push_back({EnumPlan::Constraint::bridge_of_loop, loop_edge, -1});
      } else {
        if (others.size() == 2 && pos[others[0]] < static_cast<int>(s) &&
            pos[others[1]] < static_cast<int>(s))
          plan.step_constraints[s].push_back({EnumPlan::Constraint::triple, others[0], others[1]});
      }
    }
  }
  return plan;
}

struct Range {
  int lo = 0, hi = 0, par = -1;  // par: -1 free, else required value parity
  bool empty = false;
};

inline Range candidate_range(const EnumPlan& plan, std::size_t step, const int* a,
                             const std::vector<int>& forced) {
  const int k = plan.k;
  Range r;
  r.lo = 0;
  r.hi = k;
  for (const auto& c : plan.step_constraints[step]) {
    switch (c.kind) {
      case EnumPlan::Constraint::triple: {
        int b = a[c.o1], cc = a[c.o2];
        int p = (b + cc) & 1;
        if (r.par < 0) r.par = p;
        else if (r.par != p) { r.empty = true; return r; }
        r.lo = std::max(r.lo, b > cc ? b - cc : cc - b);
        r.hi = std::min(r.hi, b + cc);
        r.hi = std::min(r.hi, 2 * k - b - cc);
        break;
      }
      case EnumPlan::Constraint::loop_value: {
        int b = a[c.o1];
        if (b & 1) { r.empty = true; return r; }
        r.lo = std::max(r.lo, b / 2);
        r.hi = std::min(r.hi, k - b / 2);
        break;
      }
      case EnumPlan::Constraint::bridge_of_loop: {
        int y = a[c.o1];
        if (r.par < 0) r.par = 0;
        else if (r.par != 0) { r.empty = true; return r; }
        r.hi = std::min(r.hi, 2 * y);
        r.hi = std::min(r.hi, 2 * k - 2 * y);
        break;
      }
    }
  }
  int e = plan.order[step];
  if (forced[e] >= 0) {
    int f = forced[e];
    if (f < r.lo || f > r.hi || (r.par >= 0 && (f & 1) != r.par)) r.empty = true;
    else { r.lo = r.hi = f; r.par = -1; }
  }
  if (r.par >= 0) r.lo += (r.lo ^ r.par) & 1;
  if (r.lo > r.hi) r.empty = true;
  return r;
}

// Depth-first assignment. Emit receives the values in input edge order.
template <class Emit>
void dfs(const EnumPlan& plan, const std::vector<int>& forced, std::size_t step, int* a,
         Emit&& emit) {
  if (step == plan.order.size()) {
    emit(a);
    return;
  }
  Range r = candidate_range(plan, step, a, forced);
  if (r.empty) return;
  int e = plan.order[step];
  int stride = r.par >= 0 ? 2 : 1;
  for (int x = r.lo; x <= r.hi; x += stride) {
    a[e] = x;
    dfs(plan, forced, step + 1, a, emit);
  }
  a[e] = -1;
}

// Counting variant: the last level is summed in O(1) from the range.
inline void dfs_count(const EnumPlan& plan, const std::vector<int>& forced, std::size_t step,
                      int* a, std::uint64_t& n) {
  Range r = candidate_range(plan, step, a, forced);
  if (r.empty) return;
  int stride = r.par >= 0 ? 2 : 1;
  if (step + 1 == plan.order.size()) {
    n += static_cast<std::uint64_t>((r.hi - r.lo) / stride + 1);
    return;
  }
  int e = plan.order[step];
  for (int x = r.lo; x <= r.hi; x += stride) {
    a[e] = x;
    dfs_count(plan, forced, step + 1, a, n);
  }
  a[e] = -1;
}

inline std::vector<int> forced_from_labels(const Graph& g, int k,
                                           const std::map<std::string, int>& labels) {
  std::vector<int> forced(g.edge_count(), -1);
  for (const auto& [id, val] : labels) {
    int e = g.edge_index(id);
    if (!g.is_leg(e)) throw input_error("label on non-leg edge: " + id);
    if (val < 0 || val > k)
      throw input_error("label out of range on " + id + ": " + std::to_string(val));
    forced[e] = val;
  }
  for (int e : g.legs())
    if (forced[e] < 0) throw input_error("missing boundary label for leg " + g.edge(e).id);
  return forced;
}

}  // namespace detail

// Streams every admissible weight (respecting forced values) through emit, in
// search order. Emit receives a pointer to edge_count() ints in input order.
template <class Emit>
void for_each_weight(const Graph& g, int k, const std::vector<int>& forced, Emit&& emit) {
  if (k < 0) throw input_error("level must be non-negative");
  detail::EnumPlan plan = detail::make_plan(g, k, forced);
  std::vector<int> a(g.edge_count(), -1);
  detail::dfs(plan, forced, 0, a.data(), emit);
}

// Exact number of admissible weights. jobs > 1 splits the search tree at the
// first free edge; the sum is order-independent.
inline std::uint64_t count_weights_forced(const Graph& g, int k, const std::vector<int>& forced,
                                          int jobs = 1) {
  if (k < 0) throw input_error("level must be non-negative");
  detail::EnumPlan plan = detail::make_plan(g, k, forced);
  if (plan.order.empty()) return 0;
  if (jobs <= 1) {
    std::uint64_t n = 0;
    std::vector<int> a(g.edge_count(), -1);
    detail::dfs_count(plan, forced, 0, a.data(), n);
    return n;
  }
  // advance through the forced prefix, then fan out on the first free edge
  std::vector<int> a(g.edge_count(), -1);
  std::size_t p = 0;
  for (; p < plan.order.size() && forced[plan.order[p]] >= 0; ++p) {
    detail::Range r = detail::candidate_range(plan, p, a.data(), forced);
    if (r.empty) return 0;
    a[plan.order[p]] = r.lo;
  }
  if (p == plan.order.size()) return 1;
  detail::Range r = detail::candidate_range(plan, p, a.data(), forced);
  if (r.empty) return 0;
  if (p + 1 == plan.order.size()) return (r.hi - r.lo) / (r.par >= 0 ? 2 : 1) + 1;
  std::vector<int> values;
  for (int x = r.lo; x <= r.hi; x += r.par >= 0 ? 2 : 1) values.push_back(x);
  std::vector<std::uint64_t> counts(values.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    std::vector<int> local = a;
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= values.size()) break;
      local[plan.order[p]] = values[i];
      std::uint64_t n = 0;
      detail::dfs_count(plan, forced, p + 1, local.data(), n);
      counts[i] = n;
    }
  };
  std::vector<std::thread> pool;
  int nthreads = std::min<int>(jobs, static_cast<int>(values.size()));
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

inline std::uint64_t count_weights(const Graph& g, int k,
                                   const std::map<std::string, int>& labels = {}, int jobs = 1) {
  return count_weights_forced(g, k, detail::forced_from_labels(g, k, labels), jobs);
}

// All admissible weights for (graph, level, boundary labels), ordered
// lexicographically in input edge order; the canonical basis of the block
// space. Position lookup goes through the mixed-radix key (a perfect hash of
// the value vector): hash map up to 2M weights, binary search on the sorted
// key array above that. Immutable after construction.
class WeightSet {
 public:
  WeightSet(const Graph& g, int k, const std::map<std::string, int>& labels = {})
      : WeightSet(g, k, detail::forced_from_labels(g, k, labels)) {}

  WeightSet(const Graph& g, int k, const std::vector<int>& forced) : k_(k), edges_(g.edge_count()) {
    radix_.resize(edges_);
    std::uint64_t place = 1;
    for (int l = edges_ - 1; l >= 0; --l) {
      radix_[l] = place;
      if (l > 0) {
        if (place > std::uint64_t(-1) / (k + 1))
          throw input_error("weight set too large to index");
        place *= k + 1;
      }
    }
    for_each_weight(g, k, forced, [&](const int* a) {
      std::uint64_t key = 0;
      for (int l = 0; l < edges_; ++l) key += static_cast<std::uint64_t>(a[l]) * radix_[l];
      keys_.push_back(key);
    });
    std::sort(keys_.begin(), keys_.end());
    flat_.resize(keys_.size() * edges_);
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      std::uint64_t key = keys_[i];
      for (int l = 0; l < edges_; ++l) {
        flat_[i * edges_ + l] = static_cast<std::uint8_t>(key / radix_[l]);
        key %= radix_[l];
      }
    }
    if (keys_.size() <= kHashLimit) {
      index_.reserve(keys_.size());
      for (std::size_t i = 0; i < keys_.size(); ++i)
        index_.emplace(keys_[i], static_cast<std::uint32_t>(i));
    }
  }

  int level() const { return k_; }
  int edge_count() const { return edges_; }
  std::size_t size() const { return keys_.size(); }
  const std::uint8_t* operator[](std::size_t i) const { return flat_.data() + i * edges_; }

  WeightVec weight(std::size_t i) const {
    return WeightVec((*this)[i], (*this)[i] + edges_);
  }

  std::uint64_t key_of(const std::uint8_t* w) const {
    std::uint64_t key = 0;
    for (int l = 0; l < edges_; ++l) key += static_cast<std::uint64_t>(w[l]) * radix_[l];
    return key;
  }

  std::optional<std::uint32_t> index_of(const std::uint8_t* w) const { return find_key(key_of(w)); }

  std::optional<std::uint32_t> find_key(std::uint64_t key) const {
    if (!index_.empty() || keys_.empty()) {
      auto it = index_.find(key);
      if (it == index_.end()) return std::nullopt;
      return it->second;
    }
    auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
    if (it == keys_.end() || *it != key) return std::nullopt;
    return static_cast<std::uint32_t>(it - keys_.begin());
  }

 private:
  static constexpr std::size_t kHashLimit = std::size_t{1} << 21;
  int k_;
  int edges_;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint8_t> flat_;
  std::vector<std::uint64_t> radix_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
};

inline WeightSet enumerate_weights(const Graph& g, int k,
                                   const std::map<std::string, int>& labels = {}) {
  return WeightSet(g, k, labels);
}

// lambda action: a_l -> k - a_l on the support. Involutive, and preserves
// admissibility.
inline void act_cycle_inplace(std::uint8_t* a, int edges, Bits support, int k) {
  for (int l = 0; l < edges; ++l)
    if (test_bit(support, l)) a[l] = static_cast<std::uint8_t>(k - a[l]);
}

inline WeightVec act_cycle(const WeightVec& w, Bits support, int k) {
  WeightVec out = w;
  act_cycle_inplace(out.data(), static_cast<int>(out.size()), support, k);
  return out;
}

// Parity functional 2*j_mu mod 2 for a 0/1 lift mu given as an edge set.
// Independent of the lift modulo vertex relations by the QCG parity condition.
inline int parity_mu(const std::uint8_t* a, Bits mu) {
  int s = 0;
  while (mu) {
    int l = std::countr_zero(mu);
    s += a[l];
    mu &= mu - 1;
  }
  return s & 1;
}

inline int parity_mu(const WeightVec& w, Bits mu) { return parity_mu(w.data(), mu); }

// (lambda . j)_mu = (k/2) lambda.mu + j_mu mod Z, in doubled units.
inline bool shift_relation_holds(const WeightVec& w, Bits mu, Bits lambda, int k) {
  WeightVec acted = act_cycle(w, lambda, k);
  int lhs = parity_mu(acted, mu);
  int rhs = (k * parity(mu & lambda) + parity_mu(w, mu)) & 1;
  return lhs == rhs;
}

// Streams the lambda-fixed weights: support edges pinned to k/2 (empty when k
// is odd and lambda != 0).
template <class Emit>
void for_each_fixed_weight(const Graph& g, int k, Bits lambda, Emit&& emit,
                           const std::map<std::string, int>& labels = {}) {
  if ((k & 1) && lambda != 0) return;
  std::vector<int> forced = detail::forced_from_labels(g, k, labels);
  for (int l = 0; l < g.edge_count(); ++l)
    if (test_bit(lambda, l)) forced[l] = k / 2;
  for_each_weight(g, k, forced, emit);
}

inline std::vector<std::uint32_t> fixed_point_indices(const WeightSet& ws, Bits lambda) {
  std::vector<std::uint32_t> out;
  int k = ws.level();
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const std::uint8_t* a = ws[i];
    bool fixed = true;
    Bits s = lambda;
    while (s) {
      int l = std::countr_zero(s);
      if (2 * a[l] != k) { fixed = false; break; }
      s &= s - 1;
    }
    if (fixed) out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

}  // namespace cblocks
