#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cblocks/cocycle.hpp"
#include "cblocks/graph.hpp"
#include "cblocks/lattice.hpp"
#include "cblocks/verlinde.hpp"
#include "cblocks/weights.hpp"

namespace cblocks {

// Element (c, mu, lambda) of the Z/4-central extension: c = i^c4, mu a
// canonical 0/1 lift, lambda a cycle. Multiplication twists by (-1)^{l2.m1}.
struct HeisenbergElement {
  std::uint8_t c4 = 0;
  Bits mu = 0;
  Bits lambda = 0;
  bool operator==(const HeisenbergElement&) const = default;
};

inline HeisenbergElement h_identity() { return {}; }

inline HeisenbergElement h_mul(const HeisenbergElement& a, const HeisenbergElement& b) {
  HeisenbergElement r;
  r.c4 = static_cast<std::uint8_t>((a.c4 + b.c4 + 2 * pairing(a.mu, b.lambda)) & 3);
  r.mu = a.mu ^ b.mu;
  r.lambda = a.lambda ^ b.lambda;
  return r;
}

inline HeisenbergElement h_inv(const HeisenbergElement& a) {
  HeisenbergElement r;
  r.c4 = static_cast<std::uint8_t>((4 - a.c4 + 2 * pairing(a.mu, a.lambda)) & 3);
  r.mu = a.mu;
  r.lambda = a.lambda;
  return r;
}

// Signed permutation matrix: column j carries a single entry i^{ipow[j]} in
// row row[j].
struct RepMatrix {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> row;
  std::vector<std::uint8_t> ipow;
  bool operator==(const RepMatrix&) const = default;
};

inline RepMatrix rep_identity(std::uint32_t n) {
  RepMatrix m;
  m.n = n;
  m.row.resize(n);
  m.ipow.assign(n, 0);
  for (std::uint32_t j = 0; j < n; ++j) m.row[j] = j;
  return m;
}

inline RepMatrix rep_mul(const RepMatrix& a, const RepMatrix& b) {
  if (a.n != b.n) throw input_error("matrix dimension mismatch");
  RepMatrix m;
  m.n = a.n;
  m.row.resize(a.n);
  m.ipow.resize(a.n);
  for (std::uint32_t j = 0; j < a.n; ++j) {
    std::uint32_t mid = b.row[j];
    m.row[j] = a.row[mid];
    m.ipow[j] = static_cast<std::uint8_t>((a.ipow[mid] + b.ipow[j]) & 3);
  }
  return m;
}

inline RepMatrix rep_inv(const RepMatrix& a) {
  RepMatrix m;
  m.n = a.n;
  m.row.resize(a.n);
  m.ipow.resize(a.n);
  for (std::uint32_t j = 0; j < a.n; ++j) {
    m.row[a.row[j]] = j;
    m.ipow[a.row[j]] = static_cast<std::uint8_t>((4 - a.ipow[j]) & 3);
  }
  return m;
}

// rho(c,mu,lambda)|j> = c^k (-1)^{2 j_mu} gamma_j(lambda) |lambda.j>
inline RepMatrix represent(const HeisenbergElement& el, const CocycleSpec& spec,
                           const WeightSet& ws) {
  const int k = ws.level();
  const int E = ws.edge_count();
  std::uint32_t lmask = spec.decompose(el.lambda);
  RepMatrix m;
  m.n = static_cast<std::uint32_t>(ws.size());
  m.row.resize(m.n);
  m.ipow.resize(m.n);
  std::vector<std::uint8_t> acted(E), scratch(E);
  int central = (el.c4 * k) & 3;
  for (std::uint32_t j = 0; j < m.n; ++j) {
    const std::uint8_t* a = ws[j];
    for (int l = 0; l < E; ++l) acted[l] = a[l];
    act_cycle_inplace(acted.data(), E, el.lambda, k);
    auto target = ws.index_of(acted.data());
    if (!target) throw std::logic_error("cycle action left the weight set");
    bool ok = true;
    int d = spec.evaluate_mask(lmask, a, k, scratch.data(), ok);
    if (!ok) throw integrality_error("coefficient formula gives an odd sum");
    int sign2 = (parity_mu(a, el.mu) + d) & 1;
    m.row[j] = *target;
    m.ipow[j] = static_cast<std::uint8_t>((central + 2 * sign2) & 3);
  }
  return m;
}

// trace = coeff * i^ipow with an exact integer coefficient.
struct TraceValue {
  std::int64_t coeff = 0;
  std::uint8_t ipow = 0;
  bool operator==(const TraceValue&) const = default;
  // canonical form: i^2 folded into the sign, ipow in {0,1}
  TraceValue canonical() const {
    TraceValue t = *this;
    if (t.ipow >= 2) { t.coeff = -t.coeff; t.ipow = static_cast<std::uint8_t>(t.ipow - 2); }
    if (t.coeff == 0) t.ipow = 0;
    return t;
  }
};

// Trace over the lambda-fixed weights only; off-fixed columns contribute 0.
inline TraceValue trace(const HeisenbergElement& el, const CocycleSpec& spec, const Graph& g,
                        int k) {
  std::uint32_t lmask = spec.decompose(el.lambda);
  const int E = g.edge_count();
  std::vector<std::uint8_t> a8(E), scratch(E);
  std::int64_t sum = 0;
  for_each_fixed_weight(g, k, el.lambda, [&](const int* a) {
    for (int l = 0; l < E; ++l) a8[l] = static_cast<std::uint8_t>(a[l]);
    bool ok = true;
    int d = spec.evaluate_mask(lmask, a8.data(), k, scratch.data(), ok);
    if (!ok) throw integrality_error("coefficient formula gives an odd sum");
    sum += ((parity_mu(a8.data(), el.mu) + d) & 1) ? -1 : 1;
  });
  TraceValue t;
  t.coeff = sum;
  t.ipow = static_cast<std::uint8_t>((el.c4 * k) & 3);
  return t.canonical();
}

// Character target for (1, mu, lambda) != identity:
// (-1)^{(k/2) mu.lambda} * ((1+(-1)^k)/2) * ((k+2)/2)^{g-1}.
inline std::int64_t trace_target(int g, int k, int mu_dot_lambda) {
  if (k & 1) return 0;
  std::int64_t pw = 1;
  std::int64_t base = (k + 2) / 2;
  for (int i = 0; i < g - 1; ++i) {
    if (pw > std::numeric_limits<std::int64_t>::max() / base)
      throw std::overflow_error("trace target exceeds the 64-bit integer range");
    pw *= base;
  }
  return (((k / 2) * mu_dot_lambda) & 1) ? -pw : pw;
}

struct CharRow {
  std::uint32_t mu_mask = 0, lambda_mask = 0;
  Bits mu = 0, lambda = 0;
  std::int64_t trace = 0;
  std::int64_t target = 0;
  bool pass = false;
};

// Full character table of the (1, mu, lambda) elements. 4^g rows, mu major.
// Rows for one lambda share the fixed-point enumeration: weights are bucketed
// by (parities against the mu basis, delta value).
inline std::vector<CharRow> character_table(const Graph& g, const CocycleSpec& spec, int k,
                                            const MuQuotient& muq, int jobs = 1) {
  const int gen = g.genus();
  const int E = g.edge_count();
  const std::uint32_t n = 1u << gen;
  std::int64_t dim = verlinde_dim(gen, k);

  // buckets[lambda_mask][parity_bits * 2 + delta]
  std::vector<std::vector<std::int64_t>> buckets(n);
  detail::run_tasks(n, jobs, [&](std::size_t t) {
    std::uint32_t lmask = static_cast<std::uint32_t>(t);
    Bits lambda = spec.cycle_of_mask(lmask);
    std::vector<std::int64_t> cnt(std::size_t{2} << gen, 0);
    std::vector<std::uint8_t> a8(E), scratch(E);
    for_each_fixed_weight(g, k, lambda, [&](const int* a) {
      for (int l = 0; l < E; ++l) a8[l] = static_cast<std::uint8_t>(a[l]);
      std::uint32_t bits = 0;
      for (int i = 0; i < gen; ++i)
        bits |= static_cast<std::uint32_t>(parity_mu(a8.data(), muq.basis()[i])) << i;
      bool ok = true;
      int d = lmask == 0 ? 0 : spec.evaluate_mask(lmask, a8.data(), k, scratch.data(), ok);
      if (!ok) throw integrality_error("coefficient formula gives an odd sum");
      ++cnt[bits * 2 + d];
    });
    buckets[lmask] = std::move(cnt);
  });

  std::vector<CharRow> rows;
  rows.reserve(std::size_t(n) * n);
  for (std::uint32_t mmask = 0; mmask < n; ++mmask) {
    Bits mu = muq.class_of_mask(mmask);
    for (std::uint32_t lmask = 0; lmask < n; ++lmask) {
      CharRow r;
      r.mu_mask = mmask;
      r.lambda_mask = lmask;
      r.mu = mu;
      r.lambda = spec.cycle_of_mask(lmask);
      std::int64_t tr = 0;
      const auto& cnt = buckets[lmask];
      for (std::uint32_t bits = 0; bits < n; ++bits) {
        for (int d = 0; d < 2; ++d) {
          std::int64_t c = cnt[bits * 2 + d];
          if (!c) continue;
          int sign = (parity(bits & mmask) + d) & 1;
          tr += sign ? -c : c;
        }
      }
      r.trace = tr;
      r.target = (mmask == 0 && lmask == 0) ? dim : trace_target(gen, k, pairing(mu, r.lambda));
      r.pass = r.trace == r.target;
      rows.push_back(r);
    }
  }
  return rows;
}

// Cocycle-level reduction to the mod-4 extension: with the componentwise 0/1
// section s and q(mu,lambda) = i^{<lambda,mu>_Z} (integer dot of the lifts),
// the extension cocycle tau2 derived from the mod-4 intersection form
// satisfies tau1 * tau2^{-1} = dq. The tau2 exponent carries the section
// correction -2*w4(s(a+b), s(a)&s(b)) forced by the non-additivity of s.
inline bool verify_q_reduction(const Graph& g) {
  MuQuotient muq(g);
  auto cyc = cycle_basis(g);
  const int gen = g.genus();
  if (gen > 8) throw input_error("exhaustive q-reduction check is limited to genus <= 8");
  std::vector<H1Class> elems;
  elems.reserve(std::size_t(1) << (2 * gen));
  for (std::uint32_t mm = 0; mm < (1u << gen); ++mm) {
    Bits mu = muq.class_of_mask(mm);
    for (std::uint32_t lm = 0; lm < (1u << gen); ++lm) {
      Bits lam = 0;
      for (int i = 0; i < gen; ++i)
        if ((lm >> i) & 1) lam ^= cyc[i];
      elems.push_back({mu, lam});
    }
  }
  auto dot = [](Bits x, Bits y) { return std::popcount(x & y); };
  auto w4 = [&](const H1Class& x, const H1Class& y) {
    return dot(x.lambda, y.mu) - dot(x.mu, y.lambda);
  };
  auto q_exp = [&](const H1Class& x) { return dot(x.lambda, x.mu); };
  for (const auto& a : elems) {
    for (const auto& b : elems) {
      H1Class ab{a.mu ^ b.mu, a.lambda ^ b.lambda};
      H1Class w{a.mu & b.mu, a.lambda & b.lambda};
      int tau1 = 2 * (dot(a.mu, b.lambda) & 1);
      int tau2 = w4(a, b) - 2 * w4(ab, w);
      int lhs = tau1 - tau2;
      int rhs = q_exp(a) + q_exp(b) - q_exp(ab);
      if (((lhs - rhs) % 4 + 4) % 4 != 0) return false;
    }
  }
  return true;
}

}  // namespace cblocks
