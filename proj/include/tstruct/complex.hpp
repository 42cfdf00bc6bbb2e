#pragma once

#include <limits>
#include <map>

#include "tstruct/matrix.hpp"

namespace tstruct {

/// Sentinel for "all cohomological degrees are meaningful".
constexpr int kNegInfDeg = std::numeric_limits<int>::min() / 4;

/// Bounded complex of graded terms. `valid_above` marks the cohomological
/// degree at and above which the cohomology of this representation is
/// meaningful; constructions that approximate a truncation may leave
/// uncontrolled cohomology strictly below it. Honest complexes use
/// kNegInfDeg.
struct FreeComplex {
  GradedRing ring;
  std::map<int, GradedTerm> terms;
  std::map<int, GradedMatrix> diffs;  // diffs[i] : term(i) -> term(i+1)
  int valid_above = kNegInfDeg;

  const GradedTerm& term(int i) const {
    static const GradedTerm empty;
    auto it = terms.find(i);
    return it == terms.end() ? empty : it->second;
  }

  GradedMatrix diff(int i) const {
    auto it = diffs.find(i);
    if (it != diffs.end()) return it->second;
    return zero_matrix(term(i + 1), term(i));
  }

  bool zero() const { return terms.empty(); }
  int bottom() const { return terms.empty() ? 0 : terms.begin()->first; }
  int top() const { return terms.empty() ? 0 : terms.rbegin()->first; }
};

inline void validate_complex(const FreeComplex& e) {
  for (const auto& [i, t] : e.terms) {
    validate_term(e.ring, t);
    if (t.zero()) throw std::invalid_argument("complex: stored empty term");
  }
  for (const auto& [i, d] : e.diffs) {
    if (!(d.src == e.term(i)) || !(d.tgt == e.term(i + 1)))
      throw std::invalid_argument("complex: differential shape mismatch");
  }
  for (const auto& [i, t] : e.terms) {
    if (e.term(i + 2).zero() || e.term(i + 1).zero()) continue;
    if (!is_zero_matrix(e.ring.field, compose(e.ring, e.diff(i + 1), e.diff(i))))
      throw std::invalid_argument("complex: d^2 != 0 at degree " + std::to_string(i));
  }
}

inline FreeComplex make_complex(GradedRing ring, std::map<int, GradedTerm> terms,
                                std::map<int, GradedMatrix> diffs,
                                int valid_above = kNegInfDeg) {
  for (auto it = terms.begin(); it != terms.end();)
    it = it->second.zero() ? terms.erase(it) : std::next(it);
  FreeComplex e{std::move(ring), std::move(terms), {}, valid_above};
  for (auto& [i, d] : diffs) {
    if (e.term(i).zero() || e.term(i + 1).zero()) continue;
    reduce_matrix(e.ring, d);
    if (is_zero_matrix(e.ring.field, d)) continue;
    e.diffs.emplace(i, std::move(d));
  }
  validate_complex(e);
  return e;
}

inline FreeComplex zero_complex(const GradedRing& r) { return {r, {}, {}}; }

/// Single term sitting in cohomological degree n.
inline FreeComplex stalk(const GradedRing& r, GradedTerm t, int n) {
  if (t.zero()) return zero_complex(r);
  return make_complex(r, {{n, std::move(t)}}, {});
}

inline FreeComplex ring_complex(const GradedRing& r) {
  return stalk(r, {{Summand{Degree(r.nvars(), 0), 0}}}, 0);
}

/// (E[s])^j = E^{j+s}, differential scaled by (-1)^s.
inline FreeComplex shift(const FreeComplex& e, int s) {
  FreeComplex out{e.ring, {}, {}, e.valid_above == kNegInfDeg ? kNegInfDeg : e.valid_above - s};
  for (const auto& [i, t] : e.terms) out.terms.emplace(i - s, t);
  for (const auto& [i, d] : e.diffs) {
    GradedMatrix m = d;
    if (s & 1) m = mat_neg(e.ring.field, m);
    out.diffs.emplace(i - s, std::move(m));
  }
  return out;
}

/// Degree-homogeneous chain map between complexes over the same ring.
struct ChainMap {
  FreeComplex src, tgt;
  std::map<int, GradedMatrix> comps;  // comps[i] : src.term(i) -> tgt.term(i)

  GradedMatrix comp(int i) const {
    auto it = comps.find(i);
    if (it != comps.end()) return it->second;
    return zero_matrix(tgt.term(i), src.term(i));
  }
};

inline void validate_chain_map(const ChainMap& f) {
  if (!(f.src.ring == f.tgt.ring)) throw std::invalid_argument("chain map: ring mismatch");
  const GradedRing& r = f.src.ring;
  for (const auto& [i, m] : f.comps)
    if (!(m.src == f.src.term(i)) || !(m.tgt == f.tgt.term(i)))
      throw std::invalid_argument("chain map: component shape mismatch");
  int lo = std::min(f.src.bottom(), f.tgt.bottom());
  int hi = std::max(f.src.top(), f.tgt.top());
  for (int i = lo; i <= hi; ++i) {
    GradedMatrix a = compose(r, f.tgt.diff(i), f.comp(i));
    GradedMatrix b = compose(r, f.comp(i + 1), f.src.diff(i));
    for (int y = 0; y < a.tgt.size(); ++y)
      for (int x = 0; x < a.src.size(); ++x)
        if (!r.field.eq(a.c[y][x], b.c[y][x]))
          throw std::invalid_argument("not a chain map at degree " + std::to_string(i));
  }
}

inline ChainMap make_chain_map(FreeComplex src, FreeComplex tgt,
                               std::map<int, GradedMatrix> comps) {
  ChainMap f{std::move(src), std::move(tgt), {}};
  for (auto& [i, m] : comps) {
    if (m.src.zero() || m.tgt.zero()) continue;
    reduce_matrix(f.src.ring, m);
    if (is_zero_matrix(f.src.ring.field, m)) continue;
    f.comps.emplace(i, std::move(m));
  }
  validate_chain_map(f);
  return f;
}

inline ChainMap identity_chain_map(const FreeComplex& e) {
  std::map<int, GradedMatrix> comps;
  for (const auto& [i, t] : e.terms) comps.emplace(i, identity_matrix(t));
  return make_chain_map(e, e, std::move(comps));
}

inline ChainMap compose_chain_maps(const ChainMap& g, const ChainMap& f) {
  std::map<int, GradedMatrix> comps;
  int lo = f.src.bottom(), hi = f.src.top();
  for (int i = lo; i <= hi; ++i) {
    if (f.src.term(i).zero() || g.tgt.term(i).zero()) continue;
    comps.emplace(i, compose(f.src.ring, g.comp(i), f.comp(i)));
  }
  return make_chain_map(f.src, g.tgt, std::move(comps));
}

namespace detail {
inline int va_shifted(int va, int delta) {
  return va == kNegInfDeg ? kNegInfDeg : va + delta;
}
}  // namespace detail

/// cone(f: A -> B): degree j term A^{j+1} + B^j (A block first),
/// d(a, b) = (-d_A a, f(a) + d_B b). Also returns the natural maps
/// B -> cone and cone -> A[1].
struct ConeResult {
  FreeComplex cone;
  ChainMap from_tgt;      // B -> cone
  ChainMap to_src_shift;  // cone -> A[1]
};

inline ConeResult cone_with_maps(const ChainMap& f) {
  const GradedRing& r = f.src.ring;
  const Field& k = r.field;
  const FreeComplex &a = f.src, &b = f.tgt;
  FreeComplex c{r, {}, {}, std::max(detail::va_shifted(a.valid_above, -1), b.valid_above)};
  if (a.valid_above == kNegInfDeg && b.valid_above == kNegInfDeg)
    c.valid_above = kNegInfDeg;

  int lo = std::min(a.bottom() - 1, b.bottom());
  int hi = std::max(a.top() - 1, b.top());
  for (int j = lo; j <= hi; ++j) {
    GradedTerm t = term_sum(a.term(j + 1), b.term(j));
    if (!t.zero()) c.terms.emplace(j, std::move(t));
  }
  for (int j = lo; j < hi; ++j) {
    if (c.term(j).zero() || c.term(j + 1).zero()) continue;
    GradedMatrix d = zero_matrix(c.term(j + 1), c.term(j));
    int an = a.term(j + 1).size();
    int an1 = a.term(j + 2).size();
    place_block(k, d, 0, 0, a.diff(j + 1), /*negate=*/true);
    place_block(k, d, an1, 0, f.comp(j + 1));
    place_block(k, d, an1, an, b.diff(j));
    reduce_matrix(r, d);
    if (!is_zero_matrix(k, d)) c.diffs.emplace(j, std::move(d));
  }
  validate_complex(c);

  std::map<int, GradedMatrix> inc;
  for (const auto& [j, t] : b.terms) {
    if (c.term(j).zero()) continue;
    GradedMatrix m = zero_matrix(c.term(j), t);
    place_block(k, m, a.term(j + 1).size(), 0, identity_matrix(t));
    inc.emplace(j, std::move(m));
  }
  ChainMap from_tgt = make_chain_map(b, c, std::move(inc));

  FreeComplex a1 = shift(a, 1);
  std::map<int, GradedMatrix> proj;
  for (const auto& [j, t] : c.terms) {
    if (a1.term(j).zero()) continue;
    GradedMatrix m = zero_matrix(a1.term(j), t);
    place_block(k, m, 0, 0, identity_matrix(a.term(j + 1)));
    proj.emplace(j, std::move(m));
  }
  ChainMap to_src_shift = make_chain_map(c, a1, std::move(proj));
  return {std::move(c), std::move(from_tgt), std::move(to_src_shift)};
}

inline FreeComplex cone(const ChainMap& f) { return cone_with_maps(f).cone; }

/// fib(f: A -> B): degree j term A^j + B^{j-1}, d(a, b) = (d_A a, f(a) - d_B b);
/// comes with the natural projection fib -> A.
struct FibResult {
  FreeComplex fib;
  ChainMap to_src;  // fib -> A
};

inline FibResult fib_with_maps(const ChainMap& f) {
  const GradedRing& r = f.src.ring;
  const Field& k = r.field;
  const FreeComplex &a = f.src, &b = f.tgt;
  FreeComplex c{r, {}, {}, std::max(a.valid_above, detail::va_shifted(b.valid_above, 1))};
  if (a.valid_above == kNegInfDeg && b.valid_above == kNegInfDeg)
    c.valid_above = kNegInfDeg;

  int lo = std::min(a.bottom(), b.bottom() + 1);
  int hi = std::max(a.top(), b.top() + 1);
  for (int j = lo; j <= hi; ++j) {
    GradedTerm t = term_sum(a.term(j), b.term(j - 1));
    if (!t.zero()) c.terms.emplace(j, std::move(t));
  }
  for (int j = lo; j < hi; ++j) {
    if (c.term(j).zero() || c.term(j + 1).zero()) continue;
    GradedMatrix d = zero_matrix(c.term(j + 1), c.term(j));
    int an = a.term(j).size();
    int an1 = a.term(j + 1).size();
    place_block(k, d, 0, 0, a.diff(j));
    place_block(k, d, an1, 0, f.comp(j));
    place_block(k, d, an1, an, b.diff(j - 1), /*negate=*/true);
    reduce_matrix(r, d);
    if (!is_zero_matrix(k, d)) c.diffs.emplace(j, std::move(d));
  }
  validate_complex(c);

  std::map<int, GradedMatrix> proj;
  for (const auto& [j, t] : c.terms) {
    if (a.term(j).zero()) continue;
    GradedMatrix m = zero_matrix(a.term(j), t);
    place_block(k, m, 0, 0, identity_matrix(a.term(j)));
    proj.emplace(j, std::move(m));
  }
  ChainMap to_src = make_chain_map(c, a, std::move(proj));
  return {std::move(c), std::move(to_src)};
}

namespace detail {
/// Shared enumeration of tensor summands: for total degree n, triples
/// (i, a_idx, b_idx) over E^i x F^{n-i}, skipping zero localizations, in a
/// fixed deterministic order.
struct TensorIndex {
  int i, a, b;
  Summand summand;
};

inline std::vector<TensorIndex> tensor_summands(const GradedRing& r,
                                                const FreeComplex& e,
                                                const FreeComplex& f, int n) {
  std::vector<TensorIndex> out;
  for (const auto& [i, te] : e.terms) {
    const GradedTerm& tf = f.term(n - i);
    if (tf.zero()) continue;
    for (int ai = 0; ai < te.size(); ++ai)
      for (int bi = 0; bi < tf.size(); ++bi) {
        unsigned inv = te.summands[ai].inverted | tf.summands[bi].inverted;
        if (localization_is_zero(r, inv)) continue;
        out.push_back({i, ai, bi,
                       {deg_add(te.summands[ai].twist, tf.summands[bi].twist), inv}});
      }
  }
  return out;
}

inline GradedTerm tensor_term(const std::vector<TensorIndex>& idx) {
  GradedTerm t;
  for (const auto& x : idx) t.summands.push_back(x.summand);
  return t;
}
}  // namespace detail

/// Tensor product over R with Koszul signs: d(e (x) f) = de (x) f + (-1)^i e (x) df.
inline FreeComplex tensor(const FreeComplex& e, const FreeComplex& f) {
  if (!(e.ring == f.ring)) throw std::invalid_argument("tensor: ring mismatch");
  const GradedRing& r = e.ring;
  FreeComplex out{r, {}, {}};
  if (e.valid_above != kNegInfDeg || f.valid_above != kNegInfDeg) {
    int va = kNegInfDeg;
    if (e.valid_above != kNegInfDeg) va = std::max(va, e.valid_above + f.top());
    if (f.valid_above != kNegInfDeg) va = std::max(va, f.valid_above + e.top());
    out.valid_above = va;
  }
  if (e.zero() || f.zero()) return out;
  int lo = e.bottom() + f.bottom(), hi = e.top() + f.top();
  std::map<int, std::vector<detail::TensorIndex>> idx;
  for (int n = lo; n <= hi; ++n) {
    auto v = detail::tensor_summands(r, e, f, n);
    if (!v.empty()) out.terms.emplace(n, detail::tensor_term(v));
    idx.emplace(n, std::move(v));
  }
  for (int n = lo; n < hi; ++n) {
    const auto &sv = idx[n], &tv = idx[n + 1];
    if (sv.empty() || tv.empty()) continue;
    GradedMatrix d = zero_matrix(out.term(n + 1), out.term(n));
    for (std::size_t col = 0; col < sv.size(); ++col) {
      const auto& s = sv[col];
      GradedMatrix de = e.diff(s.i);
      GradedMatrix df = f.diff(n - s.i);
      for (std::size_t row = 0; row < tv.size(); ++row) {
        const auto& t = tv[row];
        if (t.i == s.i + 1 && t.b == s.b)
          d.c[row][col] = de.c[t.a][s.a];
        else if (t.i == s.i && t.a == s.a) {
          Rational v = df.c[t.b][s.b];
          d.c[row][col] = (s.i & 1) ? r.field.neg(v) : v;
        }
      }
    }
    reduce_matrix(r, d);
    if (!is_zero_matrix(r.field, d)) out.diffs.emplace(n, std::move(d));
  }
  validate_complex(out);
  return out;
}

/// f (x) id_E : tensor(f.src, E) -> tensor(f.tgt, E).
inline ChainMap tensor_map_left(const ChainMap& f, const FreeComplex& e) {
  const GradedRing& r = e.ring;
  FreeComplex src = tensor(f.src, e), tgt = tensor(f.tgt, e);
  std::map<int, GradedMatrix> comps;
  if (!src.zero() && !tgt.zero()) {
    for (int n = src.bottom(); n <= src.top(); ++n) {
      auto sv = detail::tensor_summands(r, f.src, e, n);
      auto tv = detail::tensor_summands(r, f.tgt, e, n);
      if (sv.empty() || tv.empty()) continue;
      GradedMatrix m = zero_matrix(tgt.term(n), src.term(n));
      for (std::size_t col = 0; col < sv.size(); ++col) {
        GradedMatrix fc = f.comp(sv[col].i);
        for (std::size_t row = 0; row < tv.size(); ++row)
          if (tv[row].i == sv[col].i && tv[row].b == sv[col].b)
            m.c[row][col] = fc.c[tv[row].a][sv[col].a];
      }
      comps.emplace(n, std::move(m));
    }
  }
  return make_chain_map(std::move(src), std::move(tgt), std::move(comps));
}

inline FreeComplex direct_sum(const FreeComplex& a, const FreeComplex& b) {
  if (!(a.ring == b.ring)) throw std::invalid_argument("direct_sum: ring mismatch");
  FreeComplex out{a.ring, {}, {}, std::max(a.valid_above, b.valid_above)};
  if (a.valid_above == kNegInfDeg && b.valid_above == kNegInfDeg)
    out.valid_above = kNegInfDeg;
  int lo = std::min(a.bottom(), b.bottom()), hi = std::max(a.top(), b.top());
  if (a.zero() && b.zero()) return out;
  for (int j = lo; j <= hi; ++j) {
    GradedTerm t = term_sum(a.term(j), b.term(j));
    if (!t.zero()) out.terms.emplace(j, std::move(t));
  }
  for (int j = lo; j < hi; ++j) {
    if (out.term(j).zero() || out.term(j + 1).zero()) continue;
    GradedMatrix d = zero_matrix(out.term(j + 1), out.term(j));
    place_block(a.ring.field, d, 0, 0, a.diff(j));
    place_block(a.ring.field, d, a.term(j + 1).size(), a.term(j).size(), b.diff(j));
    if (!is_zero_matrix(a.ring.field, d)) out.diffs.emplace(j, std::move(d));
  }
  validate_complex(out);
  return out;
}

/// Koszul complex on homogeneous monomial generators, as the iterated
/// tensor of the two-term complexes R(g) -> R in degrees [-1, 0].
inline FreeComplex koszul(const GradedRing& r, const std::vector<Degree>& gens) {
  FreeComplex k = ring_complex(r);
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != r.nvars())
      throw std::invalid_argument("koszul: generator arity mismatch");
    if (!legal_exponent(r, 0, g))
      throw std::invalid_argument("koszul: generator is not a nonzero monomial");
    GradedTerm src{{Summand{g, 0}}};
    GradedTerm tgt{{Summand{Degree(r.nvars(), 0), 0}}};
    GradedMatrix d = zero_matrix(tgt, src);
    d.c[0][0] = 1;
    FreeComplex two = make_complex(r, {{-1, src}, {0, tgt}}, {{-1, std::move(d)}});
    k = tensor(k, two);
  }
  return k;
}

/// Koszul complex of the monomial prime given by a variable mask.
inline FreeComplex koszul_of_prime(const GradedRing& r, unsigned mask) {
  std::vector<Degree> gens;
  for (int i = 0; i < r.nvars(); ++i)
    if (mask >> i & 1) {
      Degree g(r.nvars(), 0);
      g[i] = 1;
      gens.push_back(std::move(g));
    }
  return koszul(r, gens);
}

/// Extended Cech complex on inversion sets (variable masks), in degrees
/// [0, r]: R -> sum of single localizations -> ... -> full localization.
/// Summands whose localization is the zero ring are dropped.
inline FreeComplex cech(const GradedRing& r, const std::vector<unsigned>& gen_masks) {
  const int n = static_cast<int>(gen_masks.size());
  // subset of generators -> inversion mask
  auto inv_of = [&](unsigned sub) {
    unsigned m = 0;
    for (int i = 0; i < n; ++i)
      if (sub >> i & 1) m |= gen_masks[i];
    return m;
  };
  std::map<int, std::vector<unsigned>> level;  // degree -> subsets kept
  std::map<int, GradedTerm> terms;
  for (unsigned sub = 0; sub < (1u << n); ++sub) {
    unsigned inv = inv_of(sub);
    if (localization_is_zero(r, inv)) continue;
    int t = std::popcount(sub);
    level[t].push_back(sub);
    terms[t].summands.push_back({Degree(r.nvars(), 0), inv});
  }
  std::map<int, GradedMatrix> diffs;
  for (auto& [t, subs] : level) {
    auto it = level.find(t + 1);
    if (it == level.end()) continue;
    GradedMatrix d = zero_matrix(terms[t + 1], terms[t]);
    for (std::size_t col = 0; col < subs.size(); ++col)
      for (std::size_t row = 0; row < it->second.size(); ++row) {
        unsigned s = subs[col], big = it->second[row];
        if ((s & big) != s) continue;
        unsigned added = big & ~s;
        if (std::popcount(added) != 1) continue;
        int j = std::countr_zero(added);
        int sign = std::popcount(s & ((1u << j) - 1));
        d.c[row][col] = (sign & 1) ? Rational(-1) : Rational(1);
      }
    diffs.emplace(t, std::move(d));
  }
  return make_complex(r, std::move(terms), std::move(diffs));
}

/// Minimal points of Z in the skeleton, as variable masks.
inline std::vector<unsigned> minimal_prime_masks(const GradedRing& r,
                                                 const SpecSpace& skel,
                                                 const SpclSubset& z) {
  std::vector<unsigned> out;
  for (int p : z.members) {
    bool minimal = true;
    for (int q : z.members)
      if (q != p && skel.specializes(q, p)) { minimal = false; break; }
    if (minimal) out.push_back(prime_mask(r, skel.id(p)));
  }
  return out;
}

/// Cech generator masks for RGamma_Z: monomial generators of the
/// intersection of the minimal primes of Z, each recorded by its variable
/// support, minimized under inclusion. Empty Z yields the unit generator
/// (mask 0), whose Cech complex is acyclic; a Z containing a generic point
/// yields no generators (identity functor).
inline std::vector<unsigned> cech_masks_for(const GradedRing& r,
                                            const SpecSpace& skel,
                                            const SpclSubset& z) {
  if (z.empty()) return {0u};
  auto mins = minimal_prime_masks(r, skel, z);
  for (unsigned m : mins)
    if (m == 0) return {};  // ideal is zero; local cohomology is the identity
  // all unions of one variable from each minimal prime
  std::vector<unsigned> prods{0u};
  for (unsigned p : mins) {
    std::vector<unsigned> next;
    for (unsigned acc : prods)
      for (int i = 0; i < r.nvars(); ++i)
        if (p >> i & 1) next.push_back(acc | (1u << i));
    prods = std::move(next);
  }
  std::sort(prods.begin(), prods.end());
  prods.erase(std::unique(prods.begin(), prods.end()), prods.end());
  std::vector<unsigned> out;
  for (unsigned a : prods) {
    bool keep = true;
    for (unsigned b : prods)
      if (b != a && (b & a) == b) { keep = false; break; }
    if (keep && std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  return out;
}

}  // namespace tstruct
