#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tstruct {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Coefficient field: the rationals (p == 0) or a prime field F_p.
/// Elements are carried as Rational values; over F_p every element is
/// kept normalized to an integer in [0, p).
struct Field {
  std::int64_t p = 0;

  bool is_rational() const { return p == 0; }

  Rational normalize(const Rational& x) const {
    if (p == 0) return x;
    BigInt num = boost::multiprecision::numerator(x);
    BigInt den = boost::multiprecision::denominator(x);
    BigInt pn(p);
    num %= pn;
    if (num < 0) num += pn;
    den %= pn;
    if (den < 0) den += pn;
    if (den == 0) throw std::domain_error("field: denominator divisible by p");
    return Rational(num * inverse_mod(den), 1);
  }

  Rational add(const Rational& a, const Rational& b) const {
    if (p == 0) return a + b;
    return normalize(a + b);
  }
  Rational sub(const Rational& a, const Rational& b) const {
    if (p == 0) return a - b;
    return normalize(a - b);
  }
  Rational mul(const Rational& a, const Rational& b) const {
    if (p == 0) return a * b;
    return normalize(a * b);
  }
  Rational neg(const Rational& a) const {
    if (p == 0) return -a;
    return normalize(-a);
  }
  /// a - f*b in one pass, the inner loop of Gaussian elimination.
  void submul(Rational& a, const Rational& f, const Rational& b) const {
    if (p == 0) {
      a -= f * b;
      return;
    }
    a = normalize(a - f * b);
  }

  Rational div(const Rational& a, const Rational& b) const {
    if (is_zero(b)) throw std::domain_error("field: division by zero");
    if (p == 0) return a / b;
    BigInt bn = boost::multiprecision::numerator(normalize(b));
    return normalize(a * Rational(inverse_mod(bn), 1));
  }

  bool is_zero(const Rational& a) const {
    if (p == 0) return a.is_zero();
    if (boost::multiprecision::denominator(a) != 1) return normalize(a) == 0;
    return boost::multiprecision::numerator(a) % BigInt(p) == 0;
  }

  bool eq(const Rational& a, const Rational& b) const { return is_zero(a - b); }

  bool operator==(const Field& o) const { return p == o.p; }

private:
  BigInt inverse_mod(BigInt a) const {
    // extended Euclid mod p
    BigInt pn(p), t = 0, newt = 1, r = pn, newr = a % pn;
    if (newr < 0) newr += pn;
    while (newr != 0) {
      BigInt q = r / newr;
      BigInt tmp = t - q * newt;
      t = newt;
      newt = tmp;
      tmp = r - q * newr;
      r = newr;
      newr = tmp;
    }
    if (r != 1) throw std::domain_error("field: non-invertible element mod p");
    if (t < 0) t += pn;
    return t;
  }
};

inline std::string to_string(const Rational& x) { return x.str(); }

inline Rational rational_from_string(const std::string& s) {
  return Rational(s);
}

}  // namespace tstruct
