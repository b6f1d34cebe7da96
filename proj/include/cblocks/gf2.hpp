#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

namespace cblocks {

// Subsets of edges (or vertices) as bit masks; bit index = position in input order.
using Bits = std::uint64_t;

inline bool test_bit(Bits s, int i) { return (s >> i) & 1u; }
inline Bits with_bit(Bits s, int i) { return s | (Bits{1} << i); }
inline int parity(Bits s) { return std::popcount(s) & 1; }

// Row-reduced GF(2) span. Rows are kept mutually reduced (each leading bit
// occurs in exactly one row), so reduce() yields a canonical coset
// representative.
class Gf2Span {
 public:
  // Adds v to the span; returns false if v was already contained.
  bool add(Bits v) {
    v = reduce(v);
    if (v == 0) return false;
    int lead = top_bit(v);
    for (auto& r : rows_)
      if (test_bit(r, lead)) r ^= v;
    rows_.push_back(v);
    leads_.push_back(lead);
    return true;
  }

  Bits reduce(Bits v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (test_bit(v, leads_[i])) v ^= rows_[i];
    return v;
  }

  bool contains(Bits v) const { return reduce(v) == 0; }
  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  static int top_bit(Bits v) { return 63 - std::countl_zero(v); }
  std::vector<Bits> rows_;
  std::vector<int> leads_;
};

// Expresses target as a XOR combination of vecs. Returns the combination as a
// mask over indices into vecs, or nullopt if target is outside the span.
inline std::optional<std::uint32_t> gf2_decompose(const std::vector<Bits>& vecs, Bits target) {
  std::vector<Bits> rows;
  std::vector<std::uint32_t> combos;
  std::vector<int> leads;
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    Bits v = vecs[i];
    std::uint32_t c = 1u << i;
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (test_bit(v, leads[r])) { v ^= rows[r]; c ^= combos[r]; }
    if (v == 0) continue;  // dependent generator
    rows.push_back(v);
    combos.push_back(c);
    leads.push_back(63 - std::countl_zero(v));
  }
  Bits v = target;
  std::uint32_t c = 0;
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (test_bit(v, leads[r])) { v ^= rows[r]; c ^= combos[r]; }
  if (v != 0) return std::nullopt;
  return c;
}

inline int gf2_rank(const std::vector<Bits>& vecs) {
  Gf2Span span;
  for (Bits v : vecs) span.add(v);
  return span.rank();
}

}  // namespace cblocks
