#pragma once

#include <bit>
#include <memory>
#include <string>
#include <vector>

#include "tstruct/field.hpp"
#include "tstruct/poset.hpp"

namespace tstruct {

/// Multidegree in the grading group Z^nvars (each variable has degree a
/// standard basis vector).
using Degree = std::vector<int>;

inline Degree deg_add(const Degree& a, const Degree& b) {
  Degree r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline Degree deg_sub(const Degree& a, const Degree& b) {
  Degree r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline Degree deg_neg(const Degree& a) {
  Degree r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

enum class Family { Poly, Trunc, Cross };

/// One of the three supported graded rings:
///   Poly(n)  = k[x_1..x_n], Z^n-graded
///   Trunc(e) = k[x]/(x^e),  Z-graded
///   Cross    = k[x,y]/(xy), Z^2-graded
struct GradedRing {
  Field field;
  Family family = Family::Poly;
  int param = 1;  // Poly: number of variables; Trunc: nilpotency exponent

  static GradedRing poly(Field k, int n) {
    if (n < 1) throw std::invalid_argument("poly: need at least one variable");
    return {k, Family::Poly, n};
  }
  static GradedRing trunc(Field k, int e) {
    if (e < 1) throw std::invalid_argument("trunc: exponent must be positive");
    return {k, Family::Trunc, e};
  }
  static GradedRing cross(Field k) { return {k, Family::Cross, 0}; }

  int nvars() const {
    switch (family) {
      case Family::Poly: return param;
      case Family::Trunc: return 1;
      case Family::Cross: return 2;
    }
    return 0;
  }

  std::string var_name(int i) const {
    static const char* xyz[] = {"x", "y", "z"};
    if (nvars() <= 3) return xyz[i];
    return "x" + std::to_string(i + 1);
  }

  /// The monomial-prime skeleton is literally Spec only for rings whose
  /// spectrum is finite.
  bool skeleton_faithful() const {
    return family != Family::Poly || param <= 1;
  }

  bool operator==(const GradedRing& o) const {
    return field == o.field && family == o.family && param == o.param;
  }
};

/// Is x^e a (nonzero) basis monomial of the localization inverting the
/// variables in `inv` (a bitmask)?
inline bool legal_exponent(const GradedRing& r, unsigned inv, const Degree& e) {
  switch (r.family) {
    case Family::Poly:
      for (int i = 0; i < r.param; ++i)
        if (e[i] < 0 && !(inv >> i & 1)) return false;
      return true;
    case Family::Trunc:
      if (inv) return false;  // inverting the nilpotent kills everything
      return e[0] >= 0 && e[0] < r.param;
    case Family::Cross:
      switch (inv) {
        case 0: return e[0] >= 0 && e[1] >= 0 && (e[0] == 0 || e[1] == 0);
        case 1: return e[1] == 0;  // R_x = k[x,x^-1], y = 0
        case 2: return e[0] == 0;
        default: return false;    // R_{xy} = 0
      }
  }
  return false;
}

/// Whether a summand with this inverted set may appear at all.
inline bool legal_inversion(const GradedRing& r, unsigned inv) {
  switch (r.family) {
    case Family::Trunc: return inv == 0;
    case Family::Cross: return inv != 3;
    case Family::Poly: return true;
  }
  return false;
}

/// Whether the localization itself is the zero ring (dropped from Cech
/// complexes rather than carried as an illegal summand).
inline bool localization_is_zero(const GradedRing& r, unsigned inv) {
  switch (r.family) {
    case Family::Trunc: return inv != 0;
    case Family::Cross: return inv == 3;
    case Family::Poly: return false;
  }
  return true;
}

/// Monomial primes, as bitmasks of the variables they contain.
inline std::vector<unsigned> skeleton_prime_masks(const GradedRing& r) {
  switch (r.family) {
    case Family::Poly: {
      std::vector<unsigned> out;
      for (unsigned m = 0; m < (1u << r.param); ++m) out.push_back(m);
      return out;
    }
    case Family::Trunc:
      return {1};
    case Family::Cross:
      return {1, 2, 3};
  }
  return {};
}

inline std::string prime_id(const GradedRing& r, unsigned mask) {
  if (mask == 0) return "(0)";
  std::string s = "(";
  for (int i = 0; i < r.nvars(); ++i) {
    if (!(mask >> i & 1)) continue;
    if (s.size() > 1) s += ",";
    s += r.var_name(i);
  }
  return s + ")";
}

inline unsigned prime_mask(const GradedRing& r, const std::string& id) {
  if (id == "(0)") return 0;
  if (id.size() < 2 || id.front() != '(' || id.back() != ')')
    throw std::invalid_argument("bad prime id: " + id);
  unsigned mask = 0;
  std::string body = id.substr(1, id.size() - 2), cur;
  auto flush = [&] {
    for (int i = 0; i < r.nvars(); ++i)
      if (cur == r.var_name(i)) { mask |= 1u << i; return; }
    throw std::invalid_argument("bad prime id: " + id);
  };
  for (char c : body) {
    if (c == ',') { flush(); cur.clear(); }
    else cur += c;
  }
  flush();
  return mask;
}

inline bool prime_regular(const GradedRing& r, unsigned mask) {
  switch (r.family) {
    case Family::Poly: return true;
    case Family::Trunc: return r.param < 2;
    case Family::Cross: return mask != 3;
  }
  return true;
}

/// Poset of monomial primes under inclusion (p included in q means p
/// specializes to q), with heights and regular marks.
inline std::shared_ptr<const SpecSpace> skeleton(const GradedRing& r) {
  std::vector<std::string> pts;
  std::map<std::string, bool> reg;
  std::map<std::string, int> hts;
  auto masks = skeleton_prime_masks(r);
  auto height = [&](unsigned m) {
    if (r.family == Family::Cross) return m == 3 ? 1 : 0;
    return std::popcount(m);
  };
  for (unsigned m : masks) {
    auto id = prime_id(r, m);
    pts.push_back(id);
    reg[id] = prime_regular(r, m);
    hts[id] = height(m);
  }
  std::vector<std::pair<std::string, std::string>> covers;
  for (unsigned a : masks)
    for (unsigned b : masks) {
      if (a == b || (a & b) != a) continue;
      bool direct = true;
      for (unsigned c : masks)
        if (c != a && c != b && (a & c) == a && (c & b) == c) { direct = false; break; }
      if (direct) covers.push_back({prime_id(r, a), prime_id(r, b)});
    }
  return std::make_shared<SpecSpace>(std::move(pts), covers, std::move(reg),
                                     std::move(hts));
}

/// Variables inverted when localizing at the prime p (those outside p).
inline unsigned localizing_inversion(const GradedRing& r, unsigned prime) {
  return ~prime & ((1u << r.nvars()) - 1);
}

}  // namespace tstruct
