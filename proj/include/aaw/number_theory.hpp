/* Copyright 2026 The aaw Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Componentwise arithmetic on powermean elements, paired with the defining
// affine formulas for irreducibility and primality.

#ifndef AAW_NUMBER_THEORY_HPP
#define AAW_NUMBER_THEORY_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "aaw/eval.hpp"
#include "aaw/model.hpp"
#include "aaw/parser.hpp"
#include "aaw/syntax.hpp"

namespace aaw {

inline constexpr double kDefaultDigitCap = 1e6;

struct DivResult {
  Element quotient;
  Element remainder;
};

struct CodedSequence {
  Element code;
  std::size_t length = 0;
};

namespace detail {

template <class Op>
Element coordinatewise(const Model& m, const Element& a, Op op) {
  m.require(a);
  Element out;
  for (std::size_t i = 0; i < a.size(); ++i) out.coords.push_back(op(a[i]));
  return out;
}

template <class Op>
Element coordinatewise(const Model& m, const Element& a, const Element& b, Op op) {
  m.require(a);
  m.require(b);
  Element out;
  for (std::size_t i = 0; i < a.size(); ++i) out.coords.push_back(op(a[i], b[i]));
  return out;
}

inline void require_normal(const Model& m, const Element& a, const char* what) {
  m.require(a);
  for (const auto& c : a.coords) {
    if (c == 0) throw DomainError(std::string(what) + " " + to_string(a) + " is not normal");
  }
}

// Inverse of a modulo n in [0, n - 1], for gcd(a, n) = 1 (0 when n = 1).
inline Natural inverse_mod(const Natural& a, const Natural& n) {
  if (n == 1) return 0;
  Natural r0 = n, r1 = a % n;
  Natural s0 = 0, s1 = 1;  // coefficients of a, kept reduced modulo n
  while (r1 != 0) {
    const Natural q = r0 / r1;
    Natural r2 = r0 - q * r1;
    Natural s2 = (s0 + n - (q * s1) % n) % n;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0 != 1) throw DomainError("not invertible");
  return s0 % n;
}

// x = r_i mod m_i for pairwise coprime m_i >= 1; the least such x.
inline Natural crt_natural(const std::vector<Natural>& moduli, const std::vector<Natural>& residues) {
  Natural x = 0, modulus = 1;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const Natural& mi = moduli[i];
    const Natural r = residues[i] % mi;
    const Natural diff = (r + mi - x % mi) % mi;
    const Natural k = (diff * inverse_mod(modulus % mi, mi)) % mi;
    x += modulus * k;
    modulus *= mi;
  }
  return x;
}

inline Natural cantor_pair(const Natural& x, const Natural& y) {
  const Natural s = x + y;
  return (s + 1) * s / 2 + y;
}

inline std::pair<Natural, Natural> cantor_unpair(const Natural& z) {
  Natural w = (boost::multiprecision::sqrt(Natural(8 * z + 1)) - 1) / 2;
  const Natural t = w * (w + 1) / 2;
  const Natural y = z - t;
  return {w - y, y};
}

inline Natural factorial_natural(const Natural& n) {
  Natural r = 1;
  for (Natural i = 2; i <= n; ++i) r *= i;
  return r;
}

inline bool is_prime_natural(const Natural& n) {
  if (n < 2) return false;
  for (Natural d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline Natural least_prime_factor_natural(const Natural& n) {
  for (Natural d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

inline double log10_natural(const Natural& n) {
  if (n == 0) return 0;
  const std::string s = n.str();
  const double lead = std::stod(s.substr(0, std::min<std::size_t>(15, s.size())));
  return std::log10(lead) + static_cast<double>(s.size() - std::min<std::size_t>(15, s.size()));
}

}  // namespace detail

// Euclidean division y = x q + r with r + 1 <= x, per coordinate.
inline DivResult divmod(const Model& m, const Element& y, const Element& x) {
  detail::require_normal(m, x, "divisor");
  m.require(y);
  DivResult r;
  for (std::size_t i = 0; i < x.size(); ++i) {
    r.quotient.coords.push_back(y[i] / x[i]);
    r.remainder.coords.push_back(y[i] % x[i]);
  }
  return r;
}

inline bool is_coprime(const Model& m, const Element& a, const Element& b) {
  detail::require_normal(m, a, "argument");
  detail::require_normal(m, b, "argument");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (boost::multiprecision::gcd(a[i], b[i]) != 1) return false;
  return true;
}

// z with z x = 1 (mod y) and z + 1 <= y, per coordinate.
inline Element bezout(const Model& m, const Element& x, const Element& y) {
  if (!is_coprime(m, x, y)) {
    throw DomainError(to_string(x) + " and " + to_string(y) + " are not coprime");
  }
  return detail::coordinatewise(m, x, y, [](const Natural& a, const Natural& n) {
    return detail::inverse_mod(a, n);
  });
}

inline Element crt(const Model& m, const std::vector<Element>& moduli,
                   const std::vector<Element>& residues) {
  if (moduli.size() != residues.size()) {
    throw DomainError("crt needs as many residues as moduli");
  }
  if (moduli.empty()) throw DomainError("crt needs at least one modulus");
  for (const auto& q : moduli) detail::require_normal(m, q, "modulus");
  for (const auto& r : residues) m.require(r);
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    for (std::size_t j = i + 1; j < moduli.size(); ++j) {
      if (!is_coprime(m, moduli[i], moduli[j])) {
        throw DomainError("moduli " + to_string(moduli[i]) + " and " + to_string(moduli[j]) +
                          " are not coprime");
      }
    }
  }
  Element out;
  for (std::size_t c = 0; c < m.index_count(); ++c) {
    std::vector<Natural> ms, rs;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      ms.push_back(moduli[i][c]);
      rs.push_back(residues[i][c]);
    }
    out.coords.push_back(detail::crt_natural(ms, rs));
  }
  return out;
}

// <x, y> = (x + y + 1)(x + y)/2 + y
inline Element pair(const Model& m, const Element& x, const Element& y) {
  return detail::coordinatewise(m, x, y, detail::cantor_pair);
}

inline std::pair<Element, Element> unpair(const Model& m, const Element& z) {
  m.require(z);
  std::pair<Element, Element> out;
  for (const auto& c : z.coords) {
    auto [a, b] = detail::cantor_unpair(c);
    out.first.coords.push_back(std::move(a));
    out.second.coords.push_back(std::move(b));
  }
  return out;
}

// (x)_i = a mod (m (i + 1) + 1) where x = <a, m>.
inline Element beta(const Model& m, const Element& x, const Element& i) {
  return detail::coordinatewise(m, x, i, [](const Natural& code, const Natural& idx) {
    const auto [a, mm] = detail::cantor_unpair(code);
    return Natural(a % (mm * (idx + 1) + 1));
  });
}

// u with (u)_i = items[i]: per coordinate, s = max(n, max item, 1), m = s!,
// a solves a = v_i mod m (i + 1) + 1, and u = <a, m>.
inline CodedSequence encode_sequence(const Model& m, const std::vector<Element>& items) {
  for (const auto& e : items) m.require(e);
  CodedSequence seq;
  seq.length = items.size();
  for (std::size_t c = 0; c < m.index_count(); ++c) {
    Natural s = std::max<Natural>(items.size(), 1);
    for (const auto& e : items) s = std::max(s, e[c]);
    const Natural mm = detail::factorial_natural(s);
    std::vector<Natural> moduli, residues;
    for (std::size_t i = 0; i < items.size(); ++i) {
      moduli.push_back(mm * (i + 1) + 1);
      residues.push_back(items[i][c]);
    }
    seq.code.coords.push_back(detail::cantor_pair(detail::crt_natural(moduli, residues), mm));
  }
  return seq;
}

inline Element factorial(const Model& m, const Element& x, double digit_cap = kDefaultDigitCap) {
  return detail::coordinatewise(m, x, [digit_cap](const Natural& n) {
    if (n > 100'000'000 || std::lgamma(n.convert_to<double>() + 1) / std::log(10.0) > digit_cap) {
      throw ResourceError(n.str() + "! exceeds the cap of " + std::to_string(std::llround(digit_cap)) +
                          " digits");
    }
    return detail::factorial_natural(n);
  });
}

inline Element power(const Model& m, const Element& x, const Element& y,
                     double digit_cap = kDefaultDigitCap) {
  detail::require_normal(m, x, "base");
  return detail::coordinatewise(m, x, y, [digit_cap](const Natural& b, const Natural& e) {
    if (b > 1 && (e > 1'000'000'000 ||
                  e.convert_to<double>() * detail::log10_natural(b) > digit_cap)) {
      throw ResourceError(b.str() + "^" + e.str() + " exceeds the cap of " +
                          std::to_string(std::llround(digit_cap)) + " digits");
    }
    Natural r = 1;
    for (Natural i = 0; i < e && b != 1; ++i) r *= b;
    return r;
  });
}

// Weighted count of coordinates that are not classically prime.
inline Rational primality_defect(const Model& m, const Element& p) {
  m.require(p);
  Rational d = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!detail::is_prime_natural(p[i])) d += m.weight(i);
  return d;
}

inline Element least_prime_factor(const Model& m, const Element& x) {
  detail::require_normal(m, x, "argument");
  return detail::coordinatewise(m, x, [](const Natural& n) {
    if (n < 2) throw DomainError("no prime factor below 2");
    return detail::least_prime_factor_natural(n);
  });
}

//------------------------------------------------------------------------------
// Defining formulas

inline const Formula& irred_formula() {
  static const Formula f =
      parse_formula("(sup x . sup y . d(p, x) + d(p, y) - d(p, x * y)) - 1");
  return f;
}

inline const Formula& prime_formula() {
  static const Formula f = parse_formula(
      "(sup x . sup y . (inf t . d(p * t, x)) + (inf t . d(p * t, y)) - (inf t . d(p * t, x * y)))"
      " - 1");
  return f;
}

namespace detail {

inline Rational defect_value(const Formula& f, const Model& m, const Element& p,
                             std::optional<std::uint64_t> horizon) {
  m.require(p);
  Natural top = 0;
  for (const auto& c : p.coords) {
    if (c < 2) throw DomainError("needs 2 <= p, got " + to_string(p));
    top = std::max(top, c);
  }
  const std::uint64_t h = horizon ? *horizon : (2 * top + 2).convert_to<std::uint64_t>();
  return eval(f, m, {{"p", p}}, h).value;
}

}  // namespace detail

// Witnesses for a defect of p lie below p, so the default horizon is
// 2 * max coordinate + 2.
inline Rational irred_value(const Model& m, const Element& p,
                            std::optional<std::uint64_t> horizon = std::nullopt) {
  return detail::defect_value(irred_formula(), m, p, horizon);
}

inline Rational prime_value(const Model& m, const Element& p,
                            std::optional<std::uint64_t> horizon = std::nullopt) {
  return detail::defect_value(prime_formula(), m, p, horizon);
}

}  // namespace aaw

#endif  // AAW_NUMBER_THEORY_HPP
