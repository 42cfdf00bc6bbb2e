#pragma once

#include <vector>

#include "tstruct/ring.hpp"

namespace tstruct {

/// One twisted, optionally localized free rank-1 summand R_S(a): the
/// generator sits in degree `twist`, so the degree-d piece is spanned by
/// the monomial with exponent d - twist when that monomial is legal.
struct Summand {
  Degree twist;
  unsigned inverted = 0;  // bitmask of inverted variables

  bool operator==(const Summand& o) const {
    return twist == o.twist && inverted == o.inverted;
  }
};

/// Finite direct sum of summands.
struct GradedTerm {
  std::vector<Summand> summands;

  int size() const { return static_cast<int>(summands.size()); }
  bool zero() const { return summands.empty(); }
  bool operator==(const GradedTerm& o) const { return summands == o.summands; }
};

inline void validate_term(const GradedRing& r, const GradedTerm& t) {
  for (const auto& s : t.summands) {
    if (static_cast<int>(s.twist.size()) != r.nvars())
      throw std::invalid_argument("summand twist arity mismatch");
    if (!legal_inversion(r, s.inverted))
      throw std::invalid_argument("illegal inverted set for ring family");
  }
}

/// k-dimension of the degree-d piece: one per summand whose monomial
/// exponent d - twist is legal.
inline int graded_piece_dim(const GradedRing& r, const GradedTerm& t,
                            const Degree& d) {
  if (static_cast<int>(d.size()) != r.nvars())
    throw std::invalid_argument("degree arity mismatch");
  int n = 0;
  for (const auto& s : t.summands)
    if (legal_exponent(r, s.inverted, deg_sub(d, s.twist))) ++n;
  return n;
}

/// Indices of summands contributing a basis vector in degree d, in order.
inline std::vector<int> piece_basis(const GradedRing& r, const GradedTerm& t,
                                    const Degree& d) {
  std::vector<int> out;
  for (int i = 0; i < t.size(); ++i)
    if (legal_exponent(r, t.summands[i].inverted, deg_sub(d, t.summands[i].twist)))
      out.push_back(i);
  return out;
}

inline GradedTerm term_twist(const GradedTerm& t, const Degree& a) {
  GradedTerm out = t;
  for (auto& s : out.summands) s.twist = deg_add(s.twist, a);
  return out;
}

inline GradedTerm term_sum(const GradedTerm& a, const GradedTerm& b) {
  GradedTerm out = a;
  out.summands.insert(out.summands.end(), b.summands.begin(), b.summands.end());
  return out;
}

/// Componentwise twist range over a set of terms; the generator box used to
/// anchor cohomology windows. Empty when there are no summands.
struct DegreeBox {
  Degree lo, hi;
  bool empty = true;

  void absorb(const Degree& d) {
    if (empty) {
      lo = hi = d;
      empty = false;
      return;
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
      lo[i] = std::min(lo[i], d[i]);
      hi[i] = std::max(hi[i], d[i]);
    }
  }
  void absorb(const DegreeBox& b) {
    if (b.empty) return;
    absorb(b.lo);
    absorb(b.hi);
  }
  void expand(int margin) {
    if (empty) return;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      lo[i] -= margin;
      hi[i] += margin;
    }
  }
  bool contains(const Degree& d) const {
    if (empty) return false;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] < lo[i] || d[i] > hi[i]) return false;
    return true;
  }
  std::vector<Degree> all_degrees() const {
    std::vector<Degree> out;
    if (empty) return out;
    Degree cur = lo;
    while (true) {
      out.push_back(cur);
      std::size_t i = 0;
      for (; i < cur.size(); ++i) {
        if (cur[i] < hi[i]) { ++cur[i]; break; }
        cur[i] = lo[i];
      }
      if (i == cur.size()) break;
    }
    return out;
  }
};

inline DegreeBox generator_box(const GradedTerm& t) {
  DegreeBox b;
  for (const auto& s : t.summands) b.absorb(s.twist);
  return b;
}

}  // namespace tstruct
