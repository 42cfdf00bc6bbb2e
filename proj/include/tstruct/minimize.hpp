#pragma once

#include "tstruct/complex.hpp"

namespace tstruct {

/// Quasi-isomorphic reduction of a free complex obtained by cancelling
/// invertible differential entries, together with the two sides of the
/// homotopy equivalence (proj . incl = id on the reduced complex).
struct MinimizeResult {
  FreeComplex m;
  ChainMap incl;  // m -> original
  ChainMap proj;  // original -> m
};

namespace detail {

inline GradedTerm drop_summand(const GradedTerm& t, int idx) {
  GradedTerm out;
  for (int s = 0; s < t.size(); ++s)
    if (s != idx) out.summands.push_back(t.summands[s]);
  return out;
}

/// An entry is cancellable when it is an isomorphism of graded modules:
/// identical twist and inversion set (so the map is a nonzero scalar).
inline bool unit_entry(const GradedRing& r, const GradedMatrix& d, int y, int x) {
  if (r.field.is_zero(d.c[y][x])) return false;
  const Summand& s = d.src.summands[x];
  const Summand& t = d.tgt.summands[y];
  return s.twist == t.twist && s.inverted == t.inverted;
}

}  // namespace detail

/// Strip contractible two-term direct summands until no differential entry
/// is invertible. Keeps cohomology (and valid_above) intact while shrinking
/// the terms, which is what keeps iterated cones from snowballing.
inline MinimizeResult minimize_with_maps(FreeComplex c) {
  const GradedRing& r = c.ring;
  const Field& k = r.field;
  std::map<int, GradedMatrix> incl, proj;  // cumulative, identity if absent
  for (const auto& [i, t] : c.terms) {
    incl.emplace(i, identity_matrix(t));
    proj.emplace(i, identity_matrix(t));
  }
  const FreeComplex original = c;

  for (;;) {
    int ci = 0, cy = -1, cx = -1;
    for (const auto& [i, d] : c.diffs) {
      for (int y = 0; y < d.tgt.size() && cy < 0; ++y)
        for (int x = 0; x < d.src.size() && cy < 0; ++x)
          if (detail::unit_entry(r, d, y, x)) { ci = i; cy = y; cx = x; }
      if (cy >= 0) break;
    }
    if (cy < 0) break;

    GradedMatrix d = c.diff(ci);
    Rational uinv = k.div(Rational(1), d.c[cy][cx]);
    GradedTerm s2 = detail::drop_summand(d.src, cx);
    GradedTerm t2 = detail::drop_summand(d.tgt, cy);

    // reduced differential at ci: alpha - beta u^{-1} gamma
    GradedMatrix nd = zero_matrix(t2, s2);
    for (int y = 0, yy = 0; y < d.tgt.size(); ++y) {
      if (y == cy) continue;
      for (int x = 0, xx = 0; x < d.src.size(); ++x) {
        if (x == cx) continue;
        nd.c[yy][xx] =
            k.sub(d.c[y][x], k.mul(k.mul(d.c[y][cx], uinv), d.c[cy][x]));
        ++xx;
      }
      ++yy;
    }
    reduce_matrix(r, nd);

    // local equivalence at degree ci: iota(a) = (a, -u^{-1} gamma a),
    // pi(a, xv) = a
    GradedMatrix iota_i = zero_matrix(d.src, s2);
    GradedMatrix pi_i = zero_matrix(s2, d.src);
    for (int x = 0, xx = 0; x < d.src.size(); ++x) {
      if (x == cx) continue;
      iota_i.c[x][xx] = 1;
      pi_i.c[xx][x] = 1;
      iota_i.c[cx][xx] = k.neg(k.mul(uinv, d.c[cy][x]));
      ++xx;
    }
    reduce_matrix(r, iota_i);
    // at degree ci+1: j(b) = (b, 0), q(b, yv) = b - beta u^{-1} yv
    GradedMatrix iota_i1 = zero_matrix(d.tgt, t2);
    GradedMatrix pi_i1 = zero_matrix(t2, d.tgt);
    for (int y = 0, yy = 0; y < d.tgt.size(); ++y) {
      if (y == cy) continue;
      iota_i1.c[y][yy] = 1;
      pi_i1.c[yy][y] = 1;
      pi_i1.c[yy][cy] = k.neg(k.mul(d.c[y][cx], uinv));
      ++yy;
    }
    reduce_matrix(r, pi_i1);

    // neighbouring differentials: drop the row / column of the cancelled
    // pair (the lemma's d^2 = 0 identities make that exact)
    std::map<int, GradedMatrix> ndiffs;
    if (!c.term(ci - 1).zero() && !s2.zero()) {
      GradedMatrix prev = c.diff(ci - 1);
      GradedMatrix np = zero_matrix(s2, prev.src);
      for (int y = 0, yy = 0; y < prev.tgt.size(); ++y) {
        if (y == cx) continue;
        np.c[yy] = prev.c[y];
        ++yy;
      }
      ndiffs.emplace(ci - 1, std::move(np));
    }
    if (!c.term(ci + 2).zero() && !t2.zero()) {
      GradedMatrix next = c.diff(ci + 1);
      GradedMatrix nn = zero_matrix(next.tgt, t2);
      for (int x = 0, xx = 0; x < next.src.size(); ++x) {
        if (x == cy) continue;
        for (int y = 0; y < next.tgt.size(); ++y) nn.c[y][xx] = next.c[y][x];
        ++xx;
      }
      ndiffs.emplace(ci + 1, std::move(nn));
    }

    // fold the local equivalence into the cumulative maps
    incl.at(ci) = compose(r, incl.at(ci), iota_i);
    incl.at(ci + 1) = compose(r, incl.at(ci + 1), iota_i1);
    proj.at(ci) = compose(r, pi_i, proj.at(ci));
    proj.at(ci + 1) = compose(r, pi_i1, proj.at(ci + 1));

    // install the reduced degree ci / ci+1 data
    auto set_term = [&](int i, GradedTerm t) {
      if (t.zero())
        c.terms.erase(i);
      else
        c.terms[i] = std::move(t);
    };
    set_term(ci, std::move(s2));
    set_term(ci + 1, std::move(t2));
    auto set_diff = [&](int i, GradedMatrix m) {
      if (c.term(i).zero() || c.term(i + 1).zero() ||
          is_zero_matrix(k, (reduce_matrix(r, m), m)))
        c.diffs.erase(i);
      else
        c.diffs[i] = std::move(m);
    };
    set_diff(ci, std::move(nd));
    for (auto& [i, m] : ndiffs) set_diff(i, std::move(m));
    if (c.term(ci).zero() || c.term(ci + 1).zero()) c.diffs.erase(ci);
    if (c.term(ci - 1).zero() || c.term(ci).zero()) c.diffs.erase(ci - 1);
    if (c.term(ci + 1).zero() || c.term(ci + 2).zero()) c.diffs.erase(ci + 1);
  }

  validate_complex(c);
  MinimizeResult out;
  std::map<int, GradedMatrix> ic, pc;
  for (const auto& [i, m] : incl)
    if (!m.src.zero() && !m.tgt.zero()) ic.emplace(i, m);
  for (const auto& [i, m] : proj)
    if (!m.src.zero() && !m.tgt.zero()) pc.emplace(i, m);
  out.incl = make_chain_map(c, original, std::move(ic));
  out.proj = make_chain_map(original, c, std::move(pc));
  out.m = std::move(c);
  return out;
}

inline FreeComplex minimize(const FreeComplex& c) {
  return minimize_with_maps(c).m;
}

}  // namespace tstruct
