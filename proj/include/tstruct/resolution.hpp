#pragma once

#include <set>
#include <sstream>

#include "tstruct/cohomology.hpp"

namespace tstruct {

namespace detail {

/// One cover generator: a cycle of E^b sitting in internal degree
/// summand.twist, recorded by its coefficients over the summands of E^b.
struct CoverGen {
  Summand summand;             // source summand R_S(a)
  std::vector<Rational> coeffs;  // over all summands of E^b (0 where dead)
};

/// Image of a cover generator inside the degree-d piece of E^b, expressed
/// over the piece basis; empty when the generator's source piece is dead.
inline Vec cover_gen_image(const GradedRing& r, const GradedTerm& tb,
                           const CoverGen& g, const Degree& d,
                           const std::vector<int>& basis) {
  Degree m = deg_sub(d, g.summand.twist);
  if (!legal_exponent(r, g.summand.inverted, m)) return {};
  Vec v(basis.size(), Rational(0));
  for (std::size_t p = 0; p < basis.size(); ++p) {
    int t = basis[p];
    if (r.field.is_zero(g.coeffs[t])) continue;
    if (!legal_exponent(r, tb.summands[t].inverted, m)) continue;  // dies
    v[p] = g.coeffs[t];
  }
  return v;
}

/// Linear extension of the componentwise order used while picking
/// generators bottom-up: multiplication by a variable strictly raises it.
inline bool degree_before(const Degree& a, const Degree& b) {
  long long sa = 0, sb = 0;
  for (int x : a) sa += x;
  for (int x : b) sb += x;
  if (sa != sb) return sa < sb;
  return a < b;
}

}  // namespace detail

/// A finite family of summand covers surjecting onto H^b(E), as a chain
/// map from a stalk in degree b. With `free_only` the sources are plain
/// twisted frees (used for minimal resolutions); otherwise each source is
/// localized as far as every summand supporting the cycle allows, which is
/// what covers the non-finitely-generated tails of Cech localizations.
inline ChainMap cover_of_bottom(const FreeComplex& e, int b, bool free_only) {
  const GradedRing& r = e.ring;
  const GradedTerm& tb = e.term(b);

  std::vector<Degree> probes;
  DegreeBox box = probe_box_of(e);
  if (!box.empty) probes = box.all_degrees();
  std::sort(probes.begin(), probes.end(), detail::degree_before);

  std::vector<detail::CoverGen> gens;
  for (const Degree& d : probes) {
    std::vector<int> basis = piece_basis(r, tb, d);
    if (basis.empty()) continue;
    Span span(r.field, static_cast<int>(basis.size()));
    // boundaries from below
    if (!e.term(b - 1).zero()) {
      std::vector<int> sb;
      Mat m = degree_matrix(r, e.diff(b - 1), d, &sb);
      for (std::size_t col = 0; col < sb.size(); ++col) {
        Vec v(basis.size(), Rational(0));
        for (std::size_t row = 0; row < basis.size(); ++row) v[row] = m[row][col];
        span.insert(std::move(v));
      }
    }
    // images of the covers picked so far
    for (const auto& g : gens) {
      Vec v = detail::cover_gen_image(r, tb, g, d, basis);
      if (!v.empty()) span.insert(std::move(v));
    }
    // remaining cycles become new cover generators
    auto sol = solve_degreewise(r, e.diff(b), d);
    for (const Vec& kv : sol.kernel) {
      if (span.contains(kv)) continue;
      detail::CoverGen g;
      g.summand.twist = d;
      g.summand.inverted = 0;
      if (!free_only) {
        unsigned inter = (1u << r.nvars()) - 1;
        for (std::size_t p = 0; p < kv.size(); ++p)
          if (!r.field.is_zero(kv[p])) inter &= tb.summands[basis[p]].inverted;
        g.summand.inverted = inter;
      }
      g.coeffs.assign(tb.size(), Rational(0));
      for (std::size_t p = 0; p < kv.size(); ++p) g.coeffs[basis[p]] = kv[p];
      span.insert(kv);
      gens.push_back(std::move(g));
    }
  }

  GradedTerm p;
  for (const auto& g : gens) p.summands.push_back(g.summand);
  FreeComplex src = stalk(r, p, b);
  std::map<int, GradedMatrix> comps;
  if (!p.summands.empty()) {
    GradedMatrix m = zero_matrix(tb, p);
    for (std::size_t col = 0; col < gens.size(); ++col)
      for (int t = 0; t < tb.size(); ++t) m.c[t][col] = gens[col].coeffs[t];
    comps.emplace(b, std::move(m));
  }
  return make_chain_map(std::move(src), e, std::move(comps));
}

/// B with a map from E that kills H^j(E) for j in [cutoff, n] (and keeps
/// everything above n), by repeatedly coning out a cover of the lowest
/// nonzero cohomology. Each cone leaves fresh cohomology one degree lower,
/// so the sweep runs bottom-up and the result is only meaningful at or
/// above the cutoff, recorded in valid_above.
struct ApproxResult {
  FreeComplex b;
  ChainMap from;  // E -> B
};

inline ApproxResult coconnective_approx(const FreeComplex& e, int n, int cutoff) {
  FreeComplex b = e;
  ChainMap g = identity_chain_map(e);
  int lo = std::max(cutoff, e.valid_above == kNegInfDeg ? cutoff : e.valid_above);
  // each kill at degree j leaves fresh classes only at j - 1, so a worklist
  // of candidate degrees needs just one targeted nonzero test per visit
  std::set<int> candidates;
  {
    CohomologyEngine eng(b);
    for (int j = std::max(lo, b.bottom()); j <= std::min(n, b.top()); ++j)
      if (eng.nonzero(j)) candidates.insert(j);
  }
  long long guard = 0, limit = static_cast<long long>(n - lo + 2) * (n - lo + 2) + 8;
  while (!candidates.empty()) {
    int target = *candidates.begin();
    candidates.erase(candidates.begin());
    if (!h_nonzero_at(b, target)) continue;
    if (++guard > limit)
      throw std::logic_error("coconnective_approx failed to converge");
    ChainMap cover = cover_of_bottom(b, target, /*free_only=*/false);
    ConeResult cr = cone_with_maps(cover);
    if (h_nonzero_at(cr.cone, target))
      throw std::logic_error("cover failed to kill bottom cohomology");
    g = compose_chain_maps(cr.from_tgt, g);
    b = cr.cone;
    g.tgt = b;
    if (target - 1 >= lo) candidates.insert(target - 1);
  }
  b.valid_above = lo;
  g.tgt.valid_above = lo;
  return {std::move(b), std::move(g)};
}

enum class TruncSide { Le, Ge };

/// Smart truncation of the standard t-structure, with its natural map
/// (to E for <=, from E for >=). The representation is exact in degrees
/// >= cutoff + 1 for <= (resp. >= cutoff for >=); pick the cutoff below
/// every degree you intend to read.
struct TruncatePart {
  FreeComplex part;
  ChainMap map;  // Le: part -> E ; Ge: E -> part
};

inline TruncatePart std_truncate_le(const FreeComplex& e, int n, int cutoff) {
  ApproxResult ap = coconnective_approx(e, n, cutoff);
  FibResult fr = fib_with_maps(ap.from);
  return {std::move(fr.fib), std::move(fr.to_src)};
}

inline TruncatePart std_truncate_ge(const FreeComplex& e, int n, int cutoff) {
  ApproxResult ap = coconnective_approx(e, n - 1, cutoff);
  return {std::move(ap.b), std::move(ap.from)};
}

inline FreeComplex std_truncate(const FreeComplex& e, int n, TruncSide side,
                                int cutoff_hint = kNegInfDeg) {
  int cutoff = cutoff_hint;
  if (cutoff == kNegInfDeg)
    cutoff = std::min(e.bottom(), n) - 2;
  if (side == TruncSide::Le) return std_truncate_le(e, n, cutoff).part;
  return std_truncate_ge(e, n, cutoff).part;
}

/// R-linear dual of a bounded complex of free summands (all summands must
/// share one inversion set, e.g. none): (P*)^j = (P^{-j})*, summand R_S(a)
/// becoming R_S(-a), with transposed, sign-adjusted differentials.
inline FreeComplex dualize(const FreeComplex& p) {
  const GradedRing& r = p.ring;
  FreeComplex out{r, {}, {}};
  for (const auto& [i, t] : p.terms) {
    GradedTerm dt;
    for (const auto& s : t.summands) dt.summands.push_back({deg_neg(s.twist), s.inverted});
    out.terms.emplace(-i, std::move(dt));
  }
  for (const auto& [i, d] : p.diffs) {
    // d^i : P^i -> P^{i+1} gives (P*)^{-i-1} -> (P*)^{-i}
    GradedMatrix m = zero_matrix(out.term(-i), out.term(-i - 1));
    for (int y = 0; y < d.tgt.size(); ++y)
      for (int x = 0; x < d.src.size(); ++x)
        m.c[x][y] = ((i & 1) ? r.field.neg(d.c[y][x]) : d.c[y][x]);
    reduce_matrix(r, m);
    if (!is_zero_matrix(r.field, m)) out.diffs.emplace(-i - 1, std::move(m));
  }
  validate_complex(out);
  return out;
}

/// Outcome of the perfectness decision.
struct PerfectResult {
  enum class Status { PERFECT, NOT_PERFECT, UNKNOWN };
  Status status = Status::UNKNOWN;
  int period = 0;          // for NOT_PERFECT: length of the repeating block
  std::string certificate;  // printable repeating syzygy block
  int stages = 0;
  std::string note;
};

namespace detail {
struct SyzygyBlock {
  int degree = 0;
  std::vector<std::pair<Rational, Degree>> entries;  // row-major (coeff, mono)
  int rows = 0, cols = 0;

  bool operator==(const SyzygyBlock& o) const {
    return rows == o.rows && cols == o.cols && entries == o.entries;
  }
  bool has_unit_entry(const Field& k) const {
    for (const auto& [c, m] : entries) {
      if (k.is_zero(c)) continue;
      bool unit = true;
      for (int x : m)
        if (x != 0) { unit = false; break; }
      if (unit) return true;
    }
    return false;
  }
  std::string print(const GradedRing& r) const {
    std::ostringstream os;
    os << rows << "x" << cols << " [";
    for (int y = 0; y < rows; ++y) {
      if (y) os << "; ";
      for (int x = 0; x < cols; ++x) {
        if (x) os << ", ";
        const auto& [c, m] = entries[y * cols + x];
        if (r.field.is_zero(c)) { os << "0"; continue; }
        if (!(c == Rational(1))) os << to_string(c) << "*";
        bool any = false;
        for (int v = 0; v < r.nvars(); ++v)
          if (m[v] != 0) {
            if (any) os << "*";
            os << r.var_name(v);
            if (m[v] != 1) os << "^" << m[v];
            any = true;
          }
        if (!any) os << "1";
      }
    }
    os << "]";
    return os.str();
  }
};

/// Incrementally grows a minimal free resolution F -> E by covering the
/// lowest remaining cohomology of fib(F -> E). Each successful step records
/// the syzygy block of new differential columns.
struct ResolutionBuilder {
  const FreeComplex* e;
  int floor;
  FreeComplex f;
  ChainMap g;
  int prev_degree = std::numeric_limits<int>::max();
  int stages = 0;
  bool done = false;  // fib acyclic on the trustworthy range
  std::string halt;   // nonempty when progress became impossible
  SyzygyBlock block;  // of the most recent step

  explicit ResolutionBuilder(const FreeComplex& e_)
      : e(&e_),
        floor(e_.valid_above == kNegInfDeg ? kNegInfDeg / 2
                                           : e_.valid_above + 1),
        f(zero_complex(e_.ring)),
        g(make_chain_map(f, e_, {})) {}

  bool step() {
    const GradedRing& r = e->ring;
    FibResult fr = fib_with_maps(g);
    CohomologyEngine eng(fr.fib);
    int target = kNegInfDeg;
    for (int j = fr.fib.top(); j >= std::max(fr.fib.bottom(), floor); --j)
      if (eng.nonzero(j)) { target = j; break; }
    if (target == kNegInfDeg) { done = true; return false; }
    if (target - 1 < floor) { halt = "junk window reached"; return false; }
    if (target >= prev_degree) {
      halt = "resolution stage failed to descend";
      return false;
    }
    prev_degree = target;

    ChainMap cover = cover_of_bottom(fr.fib, target, /*free_only=*/true);
    const GradedTerm& news = cover.src.term(target);
    if (news.zero()) {
      halt = "empty cover for nonzero cohomology";
      return false;
    }
    // split each generator into its F- and E-components and extend F, g
    int fn = f.term(target).size();
    GradedMatrix cm = cover.comp(target);
    GradedTerm ext = f.term(target - 1);
    int old_cols = ext.size();
    for (const auto& s : news.summands) ext.summands.push_back(s);

    block = SyzygyBlock{};
    block.degree = target - 1;
    block.rows = fn;
    block.cols = news.size();
    GradedMatrix nd = zero_matrix(f.term(target), ext);
    if (!f.term(target).zero()) {
      GradedMatrix od = f.diff(target - 1);
      for (int y = 0; y < fn; ++y)
        for (int x = 0; x < old_cols; ++x) nd.c[y][x] = od.c[y][x];
      for (int col = 0; col < news.size(); ++col)
        for (int y = 0; y < fn; ++y) {
          nd.c[y][old_cols + col] = cm.c[y][col];
          block.entries.push_back(
              {r.field.normalize(cm.c[y][col]),
               deg_sub(news.summands[col].twist, f.term(target).summands[y].twist)});
        }
    }
    GradedMatrix ng = zero_matrix(e->term(target - 1), ext);
    if (!e->term(target - 1).zero()) {
      GradedMatrix og = g.comp(target - 1);
      for (int y = 0; y < e->term(target - 1).size(); ++y)
        for (int x = 0; x < old_cols; ++x) ng.c[y][x] = og.c[y][x];
      for (int col = 0; col < news.size(); ++col)
        for (int y = 0; y < e->term(target - 1).size(); ++y)
          ng.c[y][old_cols + col] = cm.c[fn + y][col];
    }

    std::map<int, GradedTerm> terms = f.terms;
    terms[target - 1] = ext;
    std::map<int, GradedMatrix> diffs = f.diffs;
    if (!is_zero_matrix(r.field, nd)) diffs[target - 1] = nd; else diffs.erase(target - 1);
    f = make_complex(r, std::move(terms), std::move(diffs));
    std::map<int, GradedMatrix> comps = g.comps;
    if (!is_zero_matrix(r.field, ng)) comps[target - 1] = ng; else comps.erase(target - 1);
    g = make_chain_map(f, *e, std::move(comps));
    ++stages;
    return true;
  }
};
}  // namespace detail

/// A minimal free resolution F of the object represented by E, with the
/// comparison map F -> E. When complete, the comparison is a
/// quasi-isomorphism on the trustworthy degree range.
struct ResolutionResult {
  FreeComplex f;
  ChainMap to_e;
  bool complete = false;
  int stages = 0;
};

inline ResolutionResult free_resolution(const FreeComplex& e, int max_stages = 48) {
  detail::ResolutionBuilder rb(e);
  while (rb.stages < max_stages && rb.step()) {}
  return {std::move(rb.f), std::move(rb.g), rb.done, rb.stages};
}

/// Decide whether the object represented by E (its cohomology read at or
/// above valid_above) is a perfect complex. Non-finitely-generated
/// cohomology disproves perfectness outright. Over the polynomial rings
/// finitely generated bounded cohomology suffices for yes. Over Trunc/Cross
/// a minimal free resolution is grown top-down; termination certifies yes,
/// and a repeating syzygy block with all entries in the maximal ideal
/// certifies no (hypersurface-style periodicity). Exhausting the stage
/// bound or hitting the representation's junk window without either verdict
/// reports UNKNOWN.
inline PerfectResult is_perfect(const FreeComplex& e, int bound = 12) {
  PerfectResult res;
  const GradedRing& r = e.ring;
  {
    CohomologyEngine eng(e);
    bool any = false;
    for (int i = std::max(e.bottom(), e.valid_above); i <= e.top(); ++i) {
      if (eng.fg_infinite(i)) {
        res.status = PerfectResult::Status::NOT_PERFECT;
        res.note = "cohomology not finitely generated";
        return res;
      }
      if (eng.nonzero(i)) any = true;
    }
    if (!any) {
      res.status = PerfectResult::Status::PERFECT;
      res.note = "zero object";
      return res;
    }
  }
  if (r.family == Family::Poly) {
    res.status = PerfectResult::Status::PERFECT;
    res.note = "regular ring with bounded finitely generated cohomology";
    return res;
  }

  detail::ResolutionBuilder rb(e);
  std::vector<detail::SyzygyBlock> blocks;
  while (rb.stages < bound && rb.step()) blocks.push_back(rb.block);
  res.stages = rb.stages;
  if (rb.done) {
    res.status = PerfectResult::Status::PERFECT;
    return res;
  }
  if (!rb.halt.empty() && rb.halt != "junk window reached") {
    res.note = rb.halt;
    return res;
  }

  // bound or junk window reached: look for a repeating block
  for (int p = 1; p <= 3; ++p) {
    if (static_cast<int>(blocks.size()) < 2 * p + 2) continue;
    bool ok = true;
    for (std::size_t s = blocks.size() - 2 * p; s < blocks.size(); ++s) {
      if (!(blocks[s] == blocks[s - p]) || blocks[s].rows == 0 ||
          blocks[s].has_unit_entry(r.field)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      res.status = PerfectResult::Status::NOT_PERFECT;
      res.period = p;
      res.certificate = blocks.back().print(r);
      for (int q = 1; q < p; ++q)
        res.certificate += " | " + blocks[blocks.size() - 1 - q].print(r);
      return res;
    }
  }
  res.status = PerfectResult::Status::UNKNOWN;
  res.note = "stage bound exhausted without termination or periodicity";
  return res;
}

}  // namespace tstruct
