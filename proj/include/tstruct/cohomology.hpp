#pragma once

#include "tstruct/complex.hpp"

namespace tstruct {

/// Localization at the monomial prime with the given variable mask:
/// invert every variable outside the prime, dropping summands that die.
inline FreeComplex localize_complex(const FreeComplex& e, unsigned prime_mask) {
  const GradedRing& r = e.ring;
  unsigned extra = localizing_inversion(r, prime_mask);
  FreeComplex out{r, {}, {}, e.valid_above};
  std::map<int, std::vector<int>> kept;
  for (const auto& [i, t] : e.terms) {
    GradedTerm nt;
    for (int s = 0; s < t.size(); ++s) {
      unsigned inv = t.summands[s].inverted | extra;
      if (localization_is_zero(r, inv)) continue;
      kept[i].push_back(s);
      nt.summands.push_back({t.summands[s].twist, inv});
    }
    if (!nt.zero()) out.terms.emplace(i, std::move(nt));
  }
  for (const auto& [i, d] : e.diffs) {
    if (out.term(i).zero() || out.term(i + 1).zero()) continue;
    GradedMatrix m = zero_matrix(out.term(i + 1), out.term(i));
    const auto& src_keep = kept[i];
    const auto& tgt_keep = kept[i + 1];
    for (std::size_t y = 0; y < tgt_keep.size(); ++y)
      for (std::size_t x = 0; x < src_keep.size(); ++x)
        m.c[y][x] = d.c[tgt_keep[y]][src_keep[x]];
    reduce_matrix(r, m);
    if (!is_zero_matrix(r.field, m)) out.diffs.emplace(i, std::move(m));
  }
  validate_complex(out);
  return out;
}

/// Probe box spanning every summand twist, expanded so that clamping into
/// it is a slice isomorphism (see CohomologyEngine).
inline DegreeBox probe_box_of(const FreeComplex& e) {
  DegreeBox box;
  for (const auto& [i, t] : e.terms)
    for (const auto& s : t.summands) box.absorb(s.twist);
  if (box.empty) return box;
  int up = e.ring.family == Family::Trunc ? e.ring.param : 1;
  for (std::size_t j = 0; j < box.lo.size(); ++j) {
    box.lo[j] -= 1;
    box.hi[j] += up;
  }
  return box;
}

/// Whether H^i(E) is nonzero, computing only the two adjacent ranks per
/// probe degree. Much cheaper than a full engine inside kill-sweep loops.
inline bool h_nonzero_at(const FreeComplex& e, int i) {
  const GradedTerm& t = e.term(i);
  if (t.zero()) return false;
  DegreeBox box = probe_box_of(e);
  bool has_up = !e.term(i + 1).zero() && e.diffs.count(i);
  bool has_down = !e.term(i - 1).zero() && e.diffs.count(i - 1);
  for (const Degree& d : box.all_degrees()) {
    int dim = graded_piece_dim(e.ring, t, d);
    if (dim == 0) continue;
    if (has_up) dim -= degree_rank(e.ring, e.diff(i), d);
    if (dim > 0 && has_down) dim -= degree_rank(e.ring, e.diff(i - 1), d);
    if (dim > 0) return true;
  }
  return false;
}

/// Exact cohomology of a bounded complex of twisted/localized summands.
///
/// Every internal degree is isomorphic, as a slice complex, to a probe
/// degree obtained by clamping each coordinate into a finite range around
/// the box spanned by the summand twists: beyond that range multiplication
/// by the corresponding variable is an isomorphism on every piece (for
/// Trunc(e) the upper threshold is e steps out, where everything is zero).
/// The finite probe table therefore determines dimensions everywhere, and
/// finite-generation is decided by the ray representatives, never guessed.
class CohomologyEngine {
public:
  explicit CohomologyEngine(FreeComplex e) : e_(std::move(e)) { build(); }

  const FreeComplex& cx() const { return e_; }
  int bottom() const { return e_.bottom(); }
  int top() const { return e_.top(); }
  int valid_above() const { return e_.valid_above; }

  /// dim_k H^i(E)_d, exact for every d.
  int dim(int i, const Degree& d) const {
    auto it = dims_.find(i);
    if (it == dims_.end()) return 0;
    Degree c = clamp(d);
    auto jt = it->second.find(c);
    return jt == it->second.end() ? 0 : jt->second;
  }

  bool nonzero(int i) const {
    auto it = dims_.find(i);
    return it != dims_.end() && !it->second.empty();
  }

  /// H^i(E) fails to be finitely generated exactly when it is nonzero on a
  /// downward ray: finitely generated graded modules have degreewise
  /// support bounded below coordinatewise, and conversely beyond the twist
  /// box every variable acts by isomorphisms, so box pieces generate.
  bool fg_infinite(int i) const {
    auto it = dims_.find(i);
    if (it == dims_.end()) return false;
    for (const auto& [d, n] : it->second)
      if (n > 0 && on_lower_shell(d)) return true;
    return false;
  }

  /// Total dimension across all internal degrees; -1 when infinite.
  long long total_dim(int i) const {
    auto it = dims_.find(i);
    if (it == dims_.end()) return 0;
    for (const auto& [d, n] : it->second)
      if (n > 0 && on_ray(d)) return -1;
    long long tot = 0;
    for (const auto& [d, n] : it->second) tot += n;
    return tot;
  }

  const DegreeBox& probe_box() const { return probes_; }

private:
  void build() {
    for (const auto& [i, t] : e_.terms)
      for (const auto& s : t.summands) box_.absorb(s.twist);
    if (box_.empty) return;
    probes_ = probe_box_of(e_);
    for (const Degree& d : probes_.all_degrees()) {
      std::map<int, int> rank_at;  // rank of d_i in this internal degree
      for (const auto& [i, m] : e_.diffs) rank_at[i] = degree_rank(e_.ring, m, d);
      for (const auto& [i, t] : e_.terms) {
        int dim = graded_piece_dim(e_.ring, t, d);
        auto r1 = rank_at.find(i);
        if (r1 != rank_at.end()) dim -= r1->second;
        auto r0 = rank_at.find(i - 1);
        if (r0 != rank_at.end()) dim -= r0->second;
        if (dim > 0) dims_[i][d] = dim;
      }
    }
  }

  Degree clamp(Degree d) const {
    for (std::size_t j = 0; j < d.size(); ++j)
      d[j] = std::min(std::max(d[j], probes_.lo[j]), probes_.hi[j]);
    return d;
  }

  bool on_ray(const Degree& d) const {
    for (std::size_t j = 0; j < d.size(); ++j)
      if (d[j] == probes_.lo[j] || d[j] == probes_.hi[j]) return true;
    return false;
  }

  bool on_lower_shell(const Degree& d) const {
    for (std::size_t j = 0; j < d.size(); ++j)
      if (d[j] == probes_.lo[j]) return true;
    return false;
  }

  FreeComplex e_;
  DegreeBox box_, probes_;
  std::map<int, std::map<Degree, int>> dims_;
};

enum class FgVerdict { FINITE, INFINITE, UNKNOWN };

inline const char* to_string(FgVerdict v) {
  switch (v) {
    case FgVerdict::FINITE: return "FINITE";
    case FgVerdict::INFINITE: return "INFINITE";
    case FgVerdict::UNKNOWN: return "UNKNOWN";
  }
  return "?";
}

/// Per-cohomological-degree summary against the monomial skeleton.
struct CohomologyReport {
  struct PerDegree {
    int i = 0;
    std::map<Degree, int> dims;  // nonzero dims inside the window
    SpclSubset support;          // skeleton points with nonzero localization
    FgVerdict fg = FgVerdict::UNKNOWN;
    bool nonzero = false;
  };
  DegreeBox window;
  int valid_above = kNegInfDeg;
  std::map<int, PerDegree> h;  // only degrees >= valid_above are reported

  bool all_finite() const {
    for (const auto& [i, p] : h)
      if (p.fg != FgVerdict::FINITE) return false;
    return true;
  }
};

/// Full report. If `window` is null the engine's probe box (which is
/// always sufficient) is used; a user window smaller than the probe box
/// downgrades fg verdicts to UNKNOWN rather than risking a wrong answer.
inline CohomologyReport cohomology(const FreeComplex& e,
                                   const DegreeBox* window = nullptr) {
  CohomologyEngine eng(e);
  CohomologyReport rep;
  rep.valid_above = e.valid_above;
  bool window_ok = true;
  if (window) {
    rep.window = *window;
    if (!eng.probe_box().empty) {
      for (const Degree& d : eng.probe_box().all_degrees())
        if (!window->contains(d)) { window_ok = false; break; }
    }
  } else {
    rep.window = eng.probe_box();
  }

  std::vector<CohomologyEngine> localized;
  std::vector<int> skeleton_points;
  auto skel = skeleton(e.ring);
  for (int p = 0; p < skel->size(); ++p) {
    localized.emplace_back(localize_complex(e, prime_mask(e.ring, skel->id(p))));
    skeleton_points.push_back(p);
  }

  for (int i = std::max(e.bottom(), e.valid_above); i <= e.top(); ++i) {
    CohomologyReport::PerDegree pd;
    pd.i = i;
    if (!rep.window.empty)
      for (const Degree& d : rep.window.all_degrees()) {
        int n = eng.dim(i, d);
        if (n > 0) pd.dims[d] = n;
      }
    pd.nonzero = eng.nonzero(i);
    if (window_ok)
      pd.fg = eng.fg_infinite(i) ? FgVerdict::INFINITE : FgVerdict::FINITE;
    else
      pd.fg = FgVerdict::UNKNOWN;
    for (std::size_t p = 0; p < localized.size(); ++p)
      if (localized[p].nonzero(i)) pd.support.members.push_back(skeleton_points[p]);
    if (pd.nonzero || !pd.dims.empty()) rep.h.emplace(i, std::move(pd));
  }
  return rep;
}

/// Support of H^i on the skeleton (exact; empty if H^i = 0).
inline SpclSubset support_of_h(const FreeComplex& e, int i) {
  SpclSubset out;
  auto skel = skeleton(e.ring);
  for (int p = 0; p < skel->size(); ++p) {
    CohomologyEngine loc(localize_complex(e, prime_mask(e.ring, skel->id(p))));
    if (loc.nonzero(i)) out.members.push_back(p);
  }
  return out;
}

/// Two complexes have the same cohomology reports on the shared valid
/// range: equal dims everywhere and equal supports, for every degree at or
/// above both valid_above cutoffs (and above `floor`, if given).
inline bool same_cohomology(const FreeComplex& a, const FreeComplex& b,
                            int floor = kNegInfDeg) {
  CohomologyEngine ea(a), eb(b);
  int lo = std::max({a.valid_above, b.valid_above, floor,
                     std::min(a.bottom(), b.bottom())});
  int hi = std::max(a.top(), b.top());
  for (int i = lo; i <= hi; ++i) {
    if (ea.nonzero(i) != eb.nonzero(i)) return false;
    DegreeBox probes = ea.probe_box();
    probes.absorb(eb.probe_box());
    if (probes.empty) continue;
    for (const Degree& d : probes.all_degrees())
      if (ea.dim(i, d) != eb.dim(i, d)) return false;
    if (!(support_of_h(a, i) == support_of_h(b, i))) return false;
  }
  return true;
}

}  // namespace tstruct
