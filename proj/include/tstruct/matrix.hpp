#pragma once

#include "tstruct/linalg.hpp"
#include "tstruct/term.hpp"

namespace tstruct {

/// Degree-homogeneous map between graded terms. Homogeneity forces the
/// monomial of entry (i, j): exponent u = twist(src j) - twist(tgt i), so
/// only the scalar coefficient is stored. An entry is reduced to zero
/// whenever no nonzero map R_{S_src}(a) -> R_{S_tgt}(b) exists: this needs
/// S_src contained in S_tgt and x^u a nonzero monomial of R_{S_tgt}.
struct GradedMatrix {
  GradedTerm src, tgt;
  std::vector<std::vector<Rational>> c;  // c[i][j], i over tgt, j over src

  Degree mono(int i, int j) const {
    return deg_sub(src.summands[j].twist, tgt.summands[i].twist);
  }
};

inline bool entry_allowed(const GradedRing& r, const Summand& tgt,
                          const Summand& src) {
  if ((src.inverted & tgt.inverted) != src.inverted) return false;
  return legal_exponent(r, tgt.inverted, deg_sub(src.twist, tgt.twist));
}

inline GradedMatrix zero_matrix(const GradedTerm& tgt, const GradedTerm& src) {
  GradedMatrix m{src, tgt, {}};
  m.c.assign(tgt.size(), std::vector<Rational>(src.size(), Rational(0)));
  return m;
}

/// Zero out entries with no legal underlying monomial; normalize scalars.
inline void reduce_matrix(const GradedRing& r, GradedMatrix& m) {
  for (int i = 0; i < m.tgt.size(); ++i)
    for (int j = 0; j < m.src.size(); ++j) {
      if (!entry_allowed(r, m.tgt.summands[i], m.src.summands[j]))
        m.c[i][j] = 0;
      else
        m.c[i][j] = r.field.normalize(m.c[i][j]);
    }
}

inline GradedMatrix identity_matrix(const GradedTerm& t) {
  GradedMatrix m = zero_matrix(t, t);
  for (int i = 0; i < t.size(); ++i) m.c[i][i] = 1;
  return m;
}

inline bool is_zero_matrix(const Field& k, const GradedMatrix& m) {
  for (const auto& row : m.c)
    for (const auto& v : row)
      if (!k.is_zero(v)) return false;
  return true;
}

inline GradedMatrix mat_neg(const Field& k, GradedMatrix m) {
  for (auto& row : m.c)
    for (auto& v : row) v = k.neg(v);
  return m;
}

inline GradedMatrix mat_add(const Field& k, GradedMatrix a, const GradedMatrix& b) {
  for (int i = 0; i < a.tgt.size(); ++i)
    for (int j = 0; j < a.src.size(); ++j) a.c[i][j] = k.add(a.c[i][j], b.c[i][j]);
  return a;
}

/// a after b (matrix product); composites re-reduced in the final target.
inline GradedMatrix compose(const GradedRing& r, const GradedMatrix& a,
                            const GradedMatrix& b) {
  if (!(a.src == b.tgt)) throw std::invalid_argument("compose: shape mismatch");
  GradedMatrix m = zero_matrix(a.tgt, b.src);
  for (int i = 0; i < a.tgt.size(); ++i)
    for (int k = 0; k < b.src.size(); ++k) {
      Rational acc(0);
      for (int j = 0; j < a.src.size(); ++j) {
        if (r.field.is_zero(a.c[i][j]) || r.field.is_zero(b.c[j][k])) continue;
        acc = r.field.add(acc, r.field.mul(a.c[i][j], b.c[j][k]));
      }
      m.c[i][k] = acc;
    }
  reduce_matrix(r, m);
  return m;
}

/// Matrix of the induced k-linear map on degree-d pieces. Rows index the
/// target piece basis, columns the source piece basis. A source basis
/// monomial maps to zero when it dies in the target localization or the
/// product leaves the legal monomials.
inline Mat degree_matrix(const GradedRing& r, const GradedMatrix& m,
                         const Degree& d, std::vector<int>* src_basis = nullptr,
                         std::vector<int>* tgt_basis = nullptr) {
  std::vector<int> sb = piece_basis(r, m.src, d);
  std::vector<int> tb = piece_basis(r, m.tgt, d);
  Mat out(tb.size(), Vec(sb.size(), Rational(0)));
  for (std::size_t i = 0; i < tb.size(); ++i)
    for (std::size_t j = 0; j < sb.size(); ++j) {
      const Summand& s = m.src.summands[sb[j]];
      const Summand& t = m.tgt.summands[tb[i]];
      if (r.field.is_zero(m.c[tb[i]][sb[j]])) continue;
      Degree e_src = deg_sub(d, s.twist);
      if (!legal_exponent(r, t.inverted, e_src)) continue;  // monomial dies
      out[i][j] = m.c[tb[i]][sb[j]];
    }
  if (src_basis) *src_basis = std::move(sb);
  if (tgt_basis) *tgt_basis = std::move(tb);
  return out;
}

inline SolveResult solve_degreewise(const GradedRing& r, const GradedMatrix& m,
                                    const Degree& d) {
  std::vector<int> sb;
  Mat a = degree_matrix(r, m, d, &sb);
  SolveResult res = row_reduce(r.field, a, static_cast<int>(sb.size()));
  return res;
}

inline int degree_rank(const GradedRing& r, const GradedMatrix& m, const Degree& d) {
  std::vector<int> sb;
  Mat a = degree_matrix(r, m, d, &sb);
  return rank_of(r.field, a, static_cast<int>(sb.size()));
}

/// Block assembly helper: target and source offsets address sub-blocks.
inline void place_block(const Field& k, GradedMatrix& dst, int row0, int col0,
                        const GradedMatrix& blk, bool negate = false) {
  for (int i = 0; i < blk.tgt.size(); ++i)
    for (int j = 0; j < blk.src.size(); ++j)
      dst.c[row0 + i][col0 + j] = negate ? k.neg(blk.c[i][j]) : blk.c[i][j];
}

}  // namespace tstruct
