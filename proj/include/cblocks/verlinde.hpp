#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cblocks/graph.hpp"
#include "cblocks/weights.hpp"

namespace cblocks {

struct VerlindeResult {
  std::int64_t value = 0;
  double raw = 0.0;
};

// Closed-form dimension: ((k+2)/2)^(g-1) * sum_{l=1}^{k+1}
// prod_m sin((a_m+1) l pi/(k+2)) / sin(l pi/(k+2))^(2g-2+n), labels doubled.
// Evaluated in double precision with a guarded integer rounding.
inline VerlindeResult verlinde_dim_full(int g, int k, const std::vector<int>& labels = {}) {
  if (g < 0) throw input_error("genus must be non-negative");
  if (k < 0) throw input_error("level must be non-negative");
  int n = static_cast<int>(labels.size());
  if (2 * g - 2 + n <= 0) throw input_error("verlinde formula needs 2g-2+n > 0");
  for (int a : labels)
    if (a < 0 || a > k) throw input_error("label out of range: " + std::to_string(a));
  const double pi = 3.14159265358979323846;
  double total = 0.0;
  for (int l = 1; l <= k + 1; ++l) {
    double s = std::sin(l * pi / (k + 2));
    double term = 1.0;
    for (int a : labels) term *= std::sin((a + 1) * l * pi / (k + 2));
    term /= std::pow(s, 2 * g - 2 + n);
    total += term;
  }
  total *= std::pow((k + 2) / 2.0, g - 1);
  double rounded = std::round(total);
  if (std::abs(total - rounded) >= 1e-6 * std::max(1.0, std::abs(rounded)))
    throw std::runtime_error("verlinde rounding tolerance exceeded (level too large for the float path)");
  if (std::abs(rounded) > 9.0e18)
    throw std::runtime_error("verlinde value exceeds the 64-bit integer range");
  VerlindeResult r;
  r.raw = total;
  r.value = static_cast<std::int64_t>(rounded);
  return r;
}

inline std::int64_t verlinde_dim(int g, int k, const std::vector<int>& labels = {}) {
  return verlinde_dim_full(g, k, labels).value;
}

// Genus and leg count are always derived from the graph, labels taken in leg
// input order.
inline VerlindeResult verlinde_dim_graph(const Graph& g, int k,
                                         const std::map<std::string, int>& labels = {}) {
  std::vector<int> vals;
  for (int e : g.legs()) {
    auto it = labels.find(g.edge(e).id);
    if (it == labels.end()) throw input_error("missing boundary label for leg " + g.edge(e).id);
    vals.push_back(it->second);
  }
  if (labels.size() != vals.size()) throw input_error("label given for a non-leg edge");
  return verlinde_dim_full(g.genus(), k, vals);
}

struct FactorizationReport {
  std::uint64_t lhs = 0;
  std::uint64_t rhs = 0;
  bool separating = false;
  bool pass = false;
};

// Cut-and-sum identity: counts before cutting vs the sum over the matched
// label j on the two new legs (product form when the edge separates).
inline FactorizationReport check_factorization(const Graph& g, const std::string& edge_id, int k,
                                               const std::map<std::string, int>& labels = {},
                                               int jobs = 1) {
  FactorizationReport rep;
  rep.lhs = count_weights(g, k, labels, jobs);
  CutResult cut = cut_edge(g, edge_id);
  rep.separating = cut.separating;
  for (int a = 0; a <= k; ++a) {
    if (!cut.separating) {
      auto l2 = labels;
      l2[cut.leg_a] = a;
      l2[cut.leg_b] = a;
      rep.rhs += count_weights(cut.first, k, l2, jobs);
    } else {
      auto pick = [&](const Graph& piece, const std::string& new_leg) {
        std::map<std::string, int> l2;
        for (const auto& [id, val] : labels)
          if (piece.has_edge(id)) l2[id] = val;
        l2[new_leg] = a;
        return count_weights(piece, k, l2, jobs);
      };
      rep.rhs += pick(cut.first, cut.leg_a) * pick(*cut.second, cut.leg_b);
    }
  }
  rep.pass = rep.lhs == rep.rhs;
  return rep;
}

}  // namespace cblocks
