#pragma once

#include <limits>
#include <memory>
#include <vector>

#include "tstruct/poset.hpp"

namespace tstruct {

/// Thomason filtration on a finite spectral space: a decreasing map
/// n -> Spcl(X) that is constant far below and far above.
///
/// Internal form: low_tail holds for n < steps.front().at; steps[i].value
/// holds for steps[i].at <= n < steps[i+1].at; the last step's value holds
/// for all large n. Canonical: consecutive values distinct, all values
/// specialization-closed and decreasing.
class ThomasonFiltration {
public:
  struct Step {
    int at;
    SpclSubset value;
    bool operator==(const Step& o) const { return at == o.at && value == o.value; }
  };

  ThomasonFiltration(std::shared_ptr<const SpecSpace> space, SpclSubset low_tail,
                     std::vector<Step> steps)
      : space_(std::move(space)), low_(std::move(low_tail)), steps_(std::move(steps)) {
    canonicalize();
    validate();
  }

  static ThomasonFiltration constant(std::shared_ptr<const SpecSpace> space,
                                     SpclSubset z) {
    return ThomasonFiltration(std::move(space), std::move(z), {});
  }

  /// n -> Z for n <= 0, empty above.
  static ThomasonFiltration standard(std::shared_ptr<const SpecSpace> space,
                                     SpclSubset z) {
    return ThomasonFiltration(std::move(space), std::move(z), {{1, SpclSubset{}}});
  }

  /// W for i < k1, Z for k1 <= i <= k2, empty above; requires Z <= W.
  static ThomasonFiltration tilting(std::shared_ptr<const SpecSpace> space,
                                    SpclSubset w, SpclSubset z, int k1, int k2) {
    if (k1 > k2) throw std::invalid_argument("tilting: k1 > k2");
    if (!z.subset_of(w)) throw std::invalid_argument("tilting: Z not contained in W");
    return ThomasonFiltration(std::move(space), std::move(w),
                              {{k1, std::move(z)}, {k2 + 1, SpclSubset{}}});
  }

  const SpecSpace& space() const { return *space_; }
  std::shared_ptr<const SpecSpace> space_ptr() const { return space_; }
  const SpclSubset& low_tail() const { return low_; }
  const std::vector<Step>& steps() const { return steps_; }
  const SpclSubset& high_tail() const { return steps_.empty() ? low_ : steps_.back().value; }

  const SpclSubset& at(int n) const {
    const SpclSubset* v = &low_;
    for (const auto& s : steps_) {
      if (n >= s.at) v = &s.value;
      else break;
    }
    return *v;
  }

  /// Thresholds where the value changes, in increasing order.
  std::vector<int> breakpoints() const {
    std::vector<int> out;
    for (const auto& s : steps_) out.push_back(s.at);
    return out;
  }

  bool operator==(const ThomasonFiltration& o) const {
    return *space_ == *o.space_ && low_ == o.low_ && steps_ == o.steps_;
  }

  /// n -> phi(n + s).
  ThomasonFiltration shift(int s) const {
    std::vector<Step> st;
    for (const auto& x : steps_) st.push_back({x.at - s, x.value});
    return ThomasonFiltration(space_, low_, std::move(st));
  }

  /// phi^{>=k}: constant at phi(k) for i <= k, phi(i) above.
  ThomasonFiltration truncate_below(int k) const {
    SpclSubset low = at(k);
    std::vector<Step> st;
    for (const auto& x : steps_)
      if (x.at > k) st.push_back(x);
    return ThomasonFiltration(space_, std::move(low), std::move(st));
  }

  /// phi cap S, carried on the induced subspace of S.
  ThomasonFiltration restrict(const std::vector<int>& s) const {
    auto sub = std::make_shared<SpecSpace>(induced_subspace(*space_, s));
    auto convert = [&](const SpclSubset& v) {
      std::vector<int> m;
      for (int p : v.members) {
        auto idx = sub->find(space_->id(p));
        if (idx) m.push_back(*idx);
      }
      std::sort(m.begin(), m.end());
      return SpclSubset{std::move(m)};
    };
    std::vector<Step> st;
    for (const auto& x : steps_) st.push_back({x.at, convert(x.value)});
    return ThomasonFiltration(sub, convert(low_), std::move(st));
  }

  /// phi_p: restriction to the generalizations of p.
  ThomasonFiltration localize(int p) const {
    std::vector<int> keep;
    for (int q = 0; q < space_->size(); ++q)
      if (space_->specializes(q, p)) keep.push_back(q);
    return restrict(keep);
  }

  /// Intersection of all phi(n) empty.
  bool is_eventually_vanishing() const { return high_tail().empty(); }

  /// (phi cap S)(n) equal to S for all n, or empty for all n.
  bool is_constant_on(const std::vector<int>& s) const {
    std::vector<int> ss = s;
    std::sort(ss.begin(), ss.end());
    ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
    SpclSubset sset{ss};
    bool all_full = true, all_empty = true;
    auto probe = [&](const SpclSubset& v) {
      SpclSubset i = spcl_intersect(v, sset);
      if (!(i == sset)) all_full = false;
      if (!i.empty()) all_empty = false;
    };
    probe(low_);
    for (const auto& x : steps_) probe(x.value);
    return all_full || all_empty;
  }

  bool leq(const ThomasonFiltration& psi) const {
    if (!(*space_ == psi.space())) throw std::invalid_argument("leq: mismatched spaces");
    for (int n : merged_breakpoint_probe(psi))
      if (!at(n).subset_of(psi.at(n))) return false;
    return true;
  }

  /// Weak Cousin across Z: every direct generalization p ~> q inside Z with
  /// q in phi(n) has p in phi(n-1).
  bool is_weak_cousin_across(const SpclSubset& z) const {
    if (!is_specialization_closed(*space_, z.members))
      throw std::invalid_argument("weak Cousin: Z not specialization-closed");
    for (int n : value_probe_points()) {
      const SpclSubset& cur = at(n);
      const SpclSubset& prev = at(n - 1);
      for (int q : cur.members) {
        if (!z.contains(q)) continue;
        for (int p : direct_generalizations(*space_, q))
          if (z.contains(p) && !prev.contains(p)) return false;
      }
    }
    return true;
  }

  bool is_weak_cousin() const {
    std::vector<int> all(space_->size());
    for (int i = 0; i < space_->size(); ++i) all[i] = i;
    return is_weak_cousin_across(SpclSubset{all});
  }

private:
  void canonicalize() {
    std::vector<Step> out;
    const SpclSubset* prev = &low_;
    for (auto& s : steps_) {
      if (!out.empty() && s.at <= out.back().at)
        throw std::invalid_argument("filtration: thresholds not strictly increasing");
      if (s.value == *prev) continue;
      out.push_back(std::move(s));
      prev = &out.back().value;
    }
    steps_ = std::move(out);
  }

  void validate() const {
    auto check = [&](const SpclSubset& v) {
      for (int p : v.members)
        if (p < 0 || p >= space_->size())
          throw std::invalid_argument("filtration: point out of range");
      if (!is_specialization_closed(*space_, v.members))
        throw std::invalid_argument("filtration: value not specialization-closed");
    };
    check(low_);
    const SpclSubset* prev = &low_;
    for (const auto& s : steps_) {
      check(s.value);
      if (!s.value.subset_of(*prev))
        throw std::invalid_argument("filtration: values not decreasing");
      prev = &s.value;
    }
  }

  /// Integers at which values can differ (one probe per constancy interval).
  std::vector<int> value_probe_points() const {
    std::vector<int> out;
    int lo = steps_.empty() ? 0 : steps_.front().at - 1;
    int hi = steps_.empty() ? 0 : steps_.back().at + 1;
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }

  std::vector<int> merged_breakpoint_probe(const ThomasonFiltration& o) const {
    std::vector<int> pts = value_probe_points();
    for (int n : o.value_probe_points()) pts.push_back(n);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  }

  std::shared_ptr<const SpecSpace> space_;
  SpclSubset low_;
  std::vector<Step> steps_;
};

/// Theorem-A criterion: the t-structure of phi restricts to the bounded
/// coherent objects supported on Z exactly when phi is weak Cousin across Z.
inline bool restricts_to_bounded_coherent(const ThomasonFiltration& phi,
                                          const SpclSubset& z) {
  return phi.is_weak_cousin_across(z);
}

/// Classification criterion for restriction to perfect complexes supported
/// on Z: per connected component Z_t, weak Cousin when Z_t lies in the
/// regular locus, constancy on Z_t otherwise.
inline bool restricts_to_perf(const ThomasonFiltration& phi, const SpclSubset& z) {
  const SpecSpace& x = phi.space();
  for (const auto& comp : connected_components(x, z)) {
    bool all_regular = true;
    for (int p : comp.members)
      if (!x.regular(p)) { all_regular = false; break; }
    if (all_regular) {
      if (!phi.is_weak_cousin_across(comp)) return false;
    } else {
      if (!phi.is_constant_on(comp.members)) return false;
    }
  }
  return true;
}

}  // namespace tstruct
