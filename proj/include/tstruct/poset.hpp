#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tstruct {

/// Finite spectral space: a finite poset under the specialization order.
/// "p specializes to q" (p ~> q) means q lies in the closure of p.
/// Stored as a cover-edge DAG; the full relation is computed on
/// construction and cached. Immutable after construction.
class SpecSpace {
public:
  SpecSpace() = default;

  /// points given with optional regular marks (default true) and heights.
  /// covers: pairs (p, q) meaning p ~> q with nothing strictly between.
  SpecSpace(std::vector<std::string> point_ids,
            const std::vector<std::pair<std::string, std::string>>& covers,
            std::map<std::string, bool> regular = {},
            std::map<std::string, int> heights = {}) {
    std::sort(point_ids.begin(), point_ids.end());
    point_ids.erase(std::unique(point_ids.begin(), point_ids.end()), point_ids.end());
    ids_ = std::move(point_ids);
    for (int i = 0; i < static_cast<int>(ids_.size()); ++i) index_[ids_[i]] = i;
    const int n = size();
    regular_.assign(n, true);
    for (const auto& [id, r] : regular) regular_[must_index(id)] = r;
    if (!heights.empty()) {
      heights_.emplace(n, 0);
      for (const auto& [id, h] : heights) (*heights_)[must_index(id)] = h;
    }
    cover_down_.assign(n, {});
    for (const auto& [p, q] : covers) {
      cover_down_[must_index(p)].push_back(must_index(q));
    }
    for (auto& v : cover_down_) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    build_closure();
  }

  int size() const { return static_cast<int>(ids_.size()); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(int i) const { return ids_[i]; }

  int must_index(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::invalid_argument("unknown point: " + id);
    return it->second;
  }
  std::optional<int> find(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// p ~> q : q in closure{p}. Reflexive.
  bool specializes(int p, int q) const { return reach_[p][q]; }
  bool regular(int p) const { return regular_[p]; }
  bool has_heights() const { return heights_.has_value(); }
  int height(int p) const { return (*heights_)[p]; }
  const std::vector<int>& covers_down(int p) const { return cover_down_[p]; }

  bool operator==(const SpecSpace& o) const {
    return ids_ == o.ids_ && reach_ == o.reach_ && regular_ == o.regular_;
  }

private:
  void build_closure() {
    const int n = size();
    reach_.assign(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) reach_[i][i] = 1;
    for (int i = 0; i < n; ++i)
      for (int j : cover_down_[i]) reach_[i][j] = 1;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (reach_[i][k] && reach_[k][j]) reach_[i][j] = 1;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && reach_[i][j] && reach_[j][i])
          throw std::invalid_argument("specialization relation is not antisymmetric");
    if (heights_) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j && reach_[i][j] && (*heights_)[i] >= (*heights_)[j])
            throw std::invalid_argument("heights not strictly increasing along specialization");
    }
  }

  std::vector<std::string> ids_;
  std::map<std::string, int> index_;
  std::vector<std::vector<int>> cover_down_;  // cover_down_[p] = direct specializations of p
  std::vector<std::vector<char>> reach_;
  std::vector<bool> regular_;
  std::optional<std::vector<int>> heights_;
};

/// Specialization-closed subset, as a sorted index set.
struct SpclSubset {
  std::vector<int> members;

  bool contains(int p) const {
    return std::binary_search(members.begin(), members.end(), p);
  }
  bool empty() const { return members.empty(); }
  int size() const { return static_cast<int>(members.size()); }

  bool operator==(const SpclSubset& o) const { return members == o.members; }
  bool operator<(const SpclSubset& o) const { return members < o.members; }

  bool subset_of(const SpclSubset& o) const {
    return std::includes(o.members.begin(), o.members.end(), members.begin(),
                         members.end());
  }
};

inline bool is_specialization_closed(const SpecSpace& x, const std::vector<int>& s) {
  for (int p : s)
    for (int q = 0; q < x.size(); ++q)
      if (x.specializes(p, q) &&
          !std::binary_search(s.begin(), s.end(), q))
        return false;
  return true;
}

/// Smallest specialization-closed subset containing s.
inline SpclSubset closure(const SpecSpace& x, const std::vector<int>& s) {
  std::set<int> out;
  for (int p : s) {
    if (p < 0 || p >= x.size()) throw std::invalid_argument("closure: point out of range");
    for (int q = 0; q < x.size(); ++q)
      if (x.specializes(p, q)) out.insert(q);
  }
  return SpclSubset{{out.begin(), out.end()}};
}

inline SpclSubset make_spcl(const SpecSpace& x, std::vector<int> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (!is_specialization_closed(x, s))
    throw std::invalid_argument("subset is not specialization-closed");
  return SpclSubset{std::move(s)};
}

inline SpclSubset spcl_union(const SpclSubset& a, const SpclSubset& b) {
  std::vector<int> out;
  std::set_union(a.members.begin(), a.members.end(), b.members.begin(),
                 b.members.end(), std::back_inserter(out));
  return SpclSubset{std::move(out)};
}

inline SpclSubset spcl_intersect(const SpclSubset& a, const SpclSubset& b) {
  std::vector<int> out;
  std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(),
                        b.members.end(), std::back_inserter(out));
  return SpclSubset{std::move(out)};
}

/// Direct generalizations of q: all p != q with p ~> q and nothing strictly
/// between.
inline std::vector<int> direct_generalizations(const SpecSpace& x, int q) {
  if (q < 0 || q >= x.size()) throw std::invalid_argument("unknown point");
  std::vector<int> out;
  for (int p = 0; p < x.size(); ++p) {
    if (p == q || !x.specializes(p, q)) continue;
    bool direct = true;
    for (int s = 0; s < x.size(); ++s) {
      if (s == p || s == q) continue;
      if (x.specializes(p, s) && x.specializes(s, q)) { direct = false; break; }
    }
    if (direct) out.push_back(p);
  }
  return out;
}

/// Strict generalizations of q, without the minimality requirement.
/// Used by the mutation-sensitivity suites.
inline std::vector<int> all_generalizations(const SpecSpace& x, int q) {
  if (q < 0 || q >= x.size()) throw std::invalid_argument("unknown point");
  std::vector<int> out;
  for (int p = 0; p < x.size(); ++p)
    if (p != q && x.specializes(p, q)) out.push_back(p);
  return out;
}

/// Connected components of Z in the subspace topology; these coincide with
/// the components of the comparability graph restricted to Z. Returned in
/// order of least member.
inline std::vector<SpclSubset> connected_components(const SpecSpace& x,
                                                    const SpclSubset& z) {
  if (!is_specialization_closed(x, z.members))
    throw std::invalid_argument("connected_components: Z not specialization-closed");
  std::map<int, int> comp;
  for (int p : z.members) comp[p] = p;
  auto root = [&](int p) {
    while (comp[p] != p) p = comp[p] = comp[comp[p]];
    return p;
  };
  for (int p : z.members)
    for (int q : z.members)
      if (p < q && (x.specializes(p, q) || x.specializes(q, p))) {
        int a = root(p), b = root(q);
        if (a != b) comp[std::max(a, b)] = std::min(a, b);
      }
  std::map<int, std::vector<int>> groups;
  for (int p : z.members) groups[root(p)].push_back(p);
  std::vector<SpclSubset> out;
  for (auto& [_, g] : groups) out.push_back(SpclSubset{std::move(g)});
  return out;
}

/// Induced sub-space on the generalizations of p: the finite model of the
/// local scheme at p. Regular marks and heights are inherited.
inline SpecSpace generalization_neighborhood(const SpecSpace& x, int p) {
  if (p < 0 || p >= x.size()) throw std::invalid_argument("unknown point");
  std::vector<std::string> pts;
  std::map<std::string, bool> reg;
  std::map<std::string, int> hts;
  std::vector<int> keep;
  for (int q = 0; q < x.size(); ++q)
    if (x.specializes(q, p)) keep.push_back(q);
  for (int q : keep) {
    pts.push_back(x.id(q));
    reg[x.id(q)] = x.regular(q);
    if (x.has_heights()) hts[x.id(q)] = x.height(q);
  }
  std::vector<std::pair<std::string, std::string>> covers;
  for (int a : keep)
    for (int b : keep) {
      if (a == b || !x.specializes(a, b)) continue;
      bool direct = true;
      for (int s : keep) {
        if (s == a || s == b) continue;
        if (x.specializes(a, s) && x.specializes(s, b)) { direct = false; break; }
      }
      if (direct) covers.push_back({x.id(a), x.id(b)});
    }
  return SpecSpace(std::move(pts), covers, std::move(reg), std::move(hts));
}

/// Induced sub-space on an arbitrary subset (used when restricting
/// filtrations to a subspace).
inline SpecSpace induced_subspace(const SpecSpace& x, const std::vector<int>& keep0) {
  std::vector<int> keep = keep0;
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<std::string> pts;
  std::map<std::string, bool> reg;
  std::map<std::string, int> hts;
  for (int q : keep) {
    if (q < 0 || q >= x.size()) throw std::invalid_argument("unknown point");
    pts.push_back(x.id(q));
    reg[x.id(q)] = x.regular(q);
    if (x.has_heights()) hts[x.id(q)] = x.height(q);
  }
  std::vector<std::pair<std::string, std::string>> covers;
  for (int a : keep)
    for (int b : keep) {
      if (a == b || !x.specializes(a, b)) continue;
      bool direct = true;
      for (int s : keep) {
        if (s == a || s == b) continue;
        if (x.specializes(a, s) && x.specializes(s, b)) { direct = false; break; }
      }
      if (direct) covers.push_back({x.id(a), x.id(b)});
    }
  return SpecSpace(std::move(pts), covers, std::move(reg), std::move(hts));
}

}  // namespace tstruct
