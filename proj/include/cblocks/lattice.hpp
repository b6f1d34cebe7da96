#pragma once

#include <vector>

#include "cblocks/gf2.hpp"
#include "cblocks/graph.hpp"

namespace cblocks {

// The quotient of the edge lattice by twice the vertex lattice, over GF(2):
// classes of 0/1 lifts modulo the vertex relation vectors (sum of incident
// edges, loops dropping out mod 2). Dimension g for a closed trivalent graph.
class MuQuotient {
 public:
  explicit MuQuotient(const Graph& g) {
    if (!g.closed()) throw input_error("mu quotient requires a closed trivalent graph");
    int expected_rank = 2 * g.genus() - 3;
    for (int v = 0; v < g.vertex_count(); ++v) {
      Bits row = 0;
      for (int e : g.incident(v))
        if (!g.is_loop(e)) row ^= with_bit(0, e);
      relations_.add(row);
      relation_rows_.push_back(row);
    }
    if (relations_.rank() != expected_rank)
      throw input_error("vertex relation rank " + std::to_string(relations_.rank()) +
                        " != " + std::to_string(expected_rank) + " (malformed graph)");
    // non-pivot unit vectors span the quotient
    for (int e = 0; e < g.edge_count(); ++e) {
      Bits u = with_bit(0, e);
      if (relations_.reduce(u) == u) basis_.push_back(u);
    }
  }

  int dimension() const { return static_cast<int>(basis_.size()); }
  int relation_rank() const { return relations_.rank(); }
  const std::vector<Bits>& basis() const { return basis_; }
  const std::vector<Bits>& vertex_relations() const { return relation_rows_; }

  // Canonical coset representative of a 0/1 lift.
  Bits reduce(Bits lift) const { return relations_.reduce(lift); }
  bool same_class(Bits a, Bits b) const { return reduce(a ^ b) == 0; }

  // Class of a subset mask over the quotient basis.
  Bits class_of_mask(std::uint32_t mask) const {
    Bits m = 0;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if ((mask >> i) & 1) m ^= basis_[i];
    return m;
  }

 private:
  Gf2Span relations_;
  std::vector<Bits> relation_rows_;
  std::vector<Bits> basis_;
};

// Natural pairing between the two quotients: coordinatewise dot of the lifts
// mod 2. Vertex relations pair to zero against any even-degree cycle, so this
// is well defined on classes.
inline int pairing(Bits mu_lift, Bits lambda) { return parity(mu_lift & lambda); }

struct H1Class {
  Bits mu = 0;      // 0/1 lift of the mu part
  Bits lambda = 0;  // cycle support
};

// Mod-2 symplectic form on mu + lambda pairs.
inline int symplectic_form(const H1Class& a, const H1Class& b) {
  return (pairing(a.mu, b.lambda) + pairing(b.mu, a.lambda)) & 1;
}

}  // namespace cblocks
