#pragma once

#include "tstruct/filtration.hpp"
#include "tstruct/minimize.hpp"
#include "tstruct/resolution.hpp"

namespace tstruct {

namespace detail {

/// Augmentation of the extended Cech complex onto R in degree 0.
inline ChainMap cech_augmentation(const GradedRing& r, const FreeComplex& c) {
  FreeComplex unit = ring_complex(r);
  std::map<int, GradedMatrix> comps;
  if (!c.term(0).zero()) {
    GradedMatrix m = zero_matrix(unit.term(0), c.term(0));
    for (int j = 0; j < c.term(0).size(); ++j)
      if (c.term(0).summands[j].inverted == 0) m.c[0][j] = 1;
    comps.emplace(0, std::move(m));
  }
  return make_chain_map(c, unit, std::move(comps));
}

/// Rewrap a map into tensor(R[0], E) as a map into E itself: the unit
/// tensor reproduces E's summands and differentials verbatim.
inline ChainMap retarget(ChainMap f, FreeComplex tgt) {
  return make_chain_map(std::move(f.src), std::move(tgt), std::move(f.comps));
}

}  // namespace detail

/// RGamma_Z E together with its natural map to E, computed as the tensor
/// with the extended Cech complex on monomial generators of Z. An empty
/// generator list (Z contains a generic point of the whole space) makes the
/// functor the identity.
struct LocalCohomology {
  FreeComplex g;
  ChainMap to_e;
};

inline LocalCohomology local_cohomology_with_map(const FreeComplex& e,
                                                 const SpclSubset& z) {
  const GradedRing& r = e.ring;
  auto skel = skeleton(r);
  std::vector<unsigned> masks = cech_masks_for(r, *skel, z);
  if (masks.empty()) return {e, identity_chain_map(e)};
  FreeComplex c = cech(r, masks);
  ChainMap gamma = tensor_map_left(detail::cech_augmentation(r, c), e);
  gamma = detail::retarget(std::move(gamma), e);
  return {gamma.src, std::move(gamma)};
}

inline FreeComplex local_cohomology(const FreeComplex& e, const SpclSubset& z) {
  return local_cohomology_with_map(e, z).g;
}

/// Aisle criterion: supp H^i(E) contained in phi(i) for every i. Degrees
/// below E.valid_above cannot be read off the representation and are taken
/// on trust (tau arranges its cutoffs so that nothing real lives there).
inline bool in_aisle(const ThomasonFiltration& phi, const FreeComplex& e) {
  for (int i = std::max(e.bottom(), e.valid_above); i <= e.top(); ++i)
    if (!support_of_h(e, i).subset_of(phi.at(i))) return false;
  return true;
}

/// Co-aisle criterion: for every distinct value W of phi, with n the last
/// degree at which phi equals W, H^j(RGamma_W E) = 0 for all j <= n (all j
/// when W persists forever). Finite and exact for step filtrations.
inline bool in_coaisle(const ThomasonFiltration& phi, const FreeComplex& e) {
  const GradedRing& r = e.ring;
  auto skel = skeleton(r);
  constexpr int kInf = std::numeric_limits<int>::max() / 4;
  std::vector<std::pair<const SpclSubset*, int>> values;
  const auto& steps = phi.steps();
  values.push_back({&phi.low_tail(), steps.empty() ? kInf : steps.front().at - 1});
  for (std::size_t k = 0; k < steps.size(); ++k)
    values.push_back(
        {&steps[k].value, k + 1 < steps.size() ? steps[k + 1].at - 1 : kInf});

  for (const auto& [w, nmax] : values) {
    if (w->empty()) continue;  // RGamma_empty = 0
    std::vector<unsigned> masks = cech_masks_for(r, *skel, *w);
    FreeComplex g = masks.empty() ? e : tensor(cech(r, masks), e);
    CohomologyEngine eng(g);
    int lo = std::max(g.bottom(), g.valid_above);
    int hi = std::min(nmax, g.top());
    for (int j = lo; j <= hi; ++j)
      if (eng.nonzero(j)) return false;
  }
  return true;
}

/// Distinguished triangle A -> E -> B for the t-structure of phi, with
/// membership certificates for both sides.
struct TruncationTriangle {
  FreeComplex a, e, b;
  ChainMap to_e;    // A -> E
  ChainMap from_e;  // E -> B (B is literally cone(A -> E))
  bool aisle_ok = false;
  bool coaisle_ok = false;
};

/// Truncation for the t-structure of phi.
///
/// Writing the distinct values W_1 > W_2 > ... with W_k starting at degree
/// a_k, the aisle is the intersection of the one-step aisles "supported in
/// W_k from degree a_k on", and the truncation is the composite of their
/// truncations tau_k X = fib(X -> L_{W_k} tau^{>= a_k} X), applied with the
/// largest value first (each later step preserves the earlier aisles). The
/// construction is exact in cohomological degrees >= depth; pick depth
/// below every degree you intend to read.
inline TruncationTriangle tau(const ThomasonFiltration& phi, const FreeComplex& e,
                              int depth) {
  const GradedRing& r = e.ring;
  auto skel = skeleton(r);
  if (!(phi.space() == *skel))
    throw std::invalid_argument("tau: filtration not carried on the ring skeleton");

  struct StepData {
    int a;  // kNegInfDeg for the low tail
    std::vector<unsigned> masks;
    bool identity;
  };
  std::vector<StepData> plan;
  int cech_budget = 0;
  auto add = [&](const SpclSubset& w, int a) {
    std::vector<unsigned> masks = cech_masks_for(r, *skel, w);
    bool ident = masks.empty();
    if (!ident) cech_budget += static_cast<int>(masks.size());
    plan.push_back({a, std::move(masks), ident});
  };
  add(phi.low_tail(), kNegInfDeg);
  for (const auto& s : phi.steps()) add(s.value, s.at);

  int cutoff = depth - cech_budget - static_cast<int>(plan.size()) - 2;

  FreeComplex a = e;
  ChainMap iota = identity_chain_map(e);
  for (const auto& st : plan) {
    if (st.identity) continue;
    FreeComplex xp = a;
    ChainMap from_x = identity_chain_map(a);
    if (st.a != kNegInfDeg) {
      ApproxResult ap = coconnective_approx(a, st.a - 1, cutoff);
      xp = std::move(ap.b);
      from_x = std::move(ap.from);
    }
    FreeComplex c = cech(r, st.masks);
    ChainMap gamma = detail::retarget(
        tensor_map_left(detail::cech_augmentation(r, c), xp), xp);
    ConeResult loc = cone_with_maps(gamma);  // L_W of the approximation
    ChainMap h = compose_chain_maps(loc.from_tgt, from_x);
    FibResult fr = fib_with_maps(h);
    iota = compose_chain_maps(iota, fr.to_src);
    a = fr.fib;
    iota.src = a;
    // cancel contractible summands so iterated stages stay small
    MinimizeResult mr = minimize_with_maps(a);
    iota = compose_chain_maps(iota, mr.incl);
    a = std::move(mr.m);
  }

  TruncationTriangle t;
  ConeResult cr = cone_with_maps(iota);
  MinimizeResult mb = minimize_with_maps(cr.cone);
  t.a = std::move(a);
  t.e = e;
  t.b = std::move(mb.m);
  t.to_e = std::move(iota);
  t.from_e = compose_chain_maps(mb.proj, cr.from_tgt);
  t.aisle_ok = in_aisle(phi, t.a);
  t.coaisle_ok = in_coaisle(phi, t.b);
  return t;
}

/// The Thomason filtration associated to a family of generators:
/// phi(i) = union over the family and over j >= i of supp H^j(P).
inline ThomasonFiltration filtration_of_generators(
    const GradedRing& r, const std::vector<FreeComplex>& gens) {
  auto skel = skeleton(r);
  std::map<int, SpclSubset> at;  // degree -> union of supports there
  int lo = 0, hi = 0;
  bool any = false;
  for (const auto& p : gens) {
    if (!(p.ring == r)) throw std::invalid_argument("generators over a different ring");
    for (int j = std::max(p.bottom(), p.valid_above); j <= p.top(); ++j) {
      SpclSubset s = support_of_h(p, j);
      if (s.empty()) continue;
      at[j] = spcl_union(at[j], s);
      if (!any) { lo = hi = j; any = true; }
      lo = std::min(lo, j);
      hi = std::max(hi, j);
    }
  }
  if (!any) return ThomasonFiltration::constant(skel, SpclSubset{});
  // cumulative union downwards
  std::map<int, SpclSubset> value;
  SpclSubset acc;
  for (int i = hi; i >= lo; --i) {
    auto it = at.find(i);
    if (it != at.end()) acc = spcl_union(acc, it->second);
    value[i] = acc;
  }
  std::vector<ThomasonFiltration::Step> steps;
  for (int i = lo + 1; i <= hi; ++i)
    steps.push_back({i, value[i]});
  steps.push_back({hi + 1, SpclSubset{}});
  return ThomasonFiltration(skel, value[lo], std::move(steps));
}

}  // namespace tstruct
