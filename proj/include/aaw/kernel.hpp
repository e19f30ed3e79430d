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

#ifndef AAW_KERNEL_HPP
#define AAW_KERNEL_HPP

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aaw/model.hpp"
#include "aaw/syntax.hpp"

namespace aaw {

// A formula compiled for evaluation in the standard model N.
//
// Variables live in numbered slots: free variables first, in the order given
// to the constructor, then one slot per binder. Values are computed in int64
// fixed point over the common denominator of all scalars, with naturals in
// uint64; any overflow reruns the evaluation in exact arithmetic.
//
// Quantifiers use fail-soft alpha-beta windows: eval(node, lo, hi) returns v
// with v == value when lo < v < hi, value <= v when v <= lo, and value >= v
// when v >= hi.
class StandardKernel {
 public:
  StandardKernel(const Formula& f, const std::vector<std::string>& free_order,
                 std::uint64_t frontier_cap = kDefaultFrontierCap)
      : cap_(frontier_cap), nfree_(free_order.size()) {
    std::vector<std::pair<std::string, int>> scope;
    for (std::size_t i = 0; i < free_order.size(); ++i)
      scope.emplace_back(free_order[i], static_cast<int>(i));
    nslots_ = static_cast<int>(free_order.size());
    root_ = compile(f, scope);
    setup_fixed_point();
  }

  // True when every quantifier matches the bounded pattern.
  bool exhaustive() const { return exhaustive_; }
  std::size_t free_count() const { return nfree_; }

  // Every value is an integer multiple of 1 / denominator().
  const Natural& denominator() const { return den_; }

  const Rational& static_lower() const { return nodes_[root_].rlo; }
  const Rational& static_upper() const { return nodes_[root_].rhi; }

  Rational evaluate(const std::vector<Natural>& free_values, std::uint64_t horizon) const {
    return *evaluate_above(free_values, horizon, std::nullopt);
  }

  // The exact value if it exceeds `threshold`, nullopt otherwise.
  std::optional<Rational> evaluate_above(const std::vector<Natural>& free_values,
                                         std::uint64_t horizon,
                                         const std::optional<Rational>& threshold) const {
    if (free_values.size() != nfree_) throw DomainError("kernel arity mismatch");
    if (fixed_ok_) {
      std::vector<std::uint64_t> env(static_cast<std::size_t>(nslots_), 0);
      bool fits = true;
      for (std::size_t i = 0; i < nfree_ && fits; ++i) {
        if (free_values[i] > std::numeric_limits<std::uint64_t>::max()) {
          fits = false;
        } else {
          env[i] = free_values[i].convert_to<std::uint64_t>();
        }
      }
      if (fits) {
        try {
          const Node& r = nodes_[root_];
          std::int64_t lo = r.lo - 1;
          if (threshold) {
            const Rational scaled = *threshold * Rational(den_);
            if (scaled >= Rational(r.hi)) return std::nullopt;
            if (scaled >= Rational(r.lo)) lo = floor_rational(scaled);
          }
          const std::int64_t v = eval_fixed(root_, env.data(), horizon, lo, r.hi + 1);
          if (v <= lo) return std::nullopt;
          return Rational(Natural(v), den_);
        } catch (const Overflow&) {
        }
      }
    }
    std::vector<Natural> env(static_cast<std::size_t>(nslots_), 0);
    for (std::size_t i = 0; i < nfree_; ++i) env[i] = free_values[i];
    Rational v = eval_exact(root_, env, horizon);
    if (threshold && v <= *threshold) return std::nullopt;
    return v;
  }

 private:
  struct Overflow {};

  struct TermNode {
    Term::Kind kind;
    int slot = -1;
    int l = -1;
    int r = -1;
  };

  struct Node {
    Formula::Kind kind;
    int a = -1;
    int b = -1;
    int t1 = -1;
    int t2 = -1;
    int slot = -1;
    int bound = -1;  // term index for bounded quantifiers
    Rational scalar;
    Natural den;     // denominator of every value of this node
    Rational rlo, rhi;
    std::int64_t rn = 0, rd = 1;  // scalar as a fraction
    std::int64_t cfix = 0;        // Const value in fixed point
    std::int64_t lo = 0, hi = 0;  // static range in fixed point
  };

  static constexpr std::int64_t kLimit = std::int64_t(1) << 58;

  static std::int64_t floor_rational(const Rational& q) {
    const Natural n = boost::multiprecision::numerator(q);
    const Natural d = boost::multiprecision::denominator(q);
    Natural f = n / d;
    if (n < 0 && f * d != n) --f;
    return f.convert_to<std::int64_t>();
  }

  static std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }

  static std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

  static std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
  }

  static std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }

  static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }

  static int lookup(const std::vector<std::pair<std::string, int>>& scope, const std::string& v) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == v) return it->second;
    throw UnboundVariable(v);
  }

  int compile_term(const Term& t, const std::vector<std::pair<std::string, int>>& scope) {
    TermNode n{t.kind()};
    if (t.kind() == Term::Kind::Var) {
      n.slot = lookup(scope, t.name());
    } else if (t.is_binary()) {
      n.l = compile_term(t.left(), scope);
      n.r = compile_term(t.right(), scope);
    }
    terms_.push_back(n);
    return static_cast<int>(terms_.size()) - 1;
  }

  static Natural lcm(const Natural& a, const Natural& b) {
    return a / boost::multiprecision::gcd(a, b) * b;
  }

  int compile(const Formula& f, std::vector<std::pair<std::string, int>>& scope) {
    Node n;
    n.kind = f.kind();
    switch (f.kind()) {
      case Formula::Kind::Const:
        n.scalar = f.scalar();
        n.den = boost::multiprecision::denominator(f.scalar());
        n.rlo = n.rhi = f.scalar();
        break;
      case Formula::Kind::Dist:
        n.t1 = compile_term(f.t1(), scope);
        n.t2 = compile_term(f.t2(), scope);
        n.den = 1;
        n.rlo = 0;
        n.rhi = 1;
        break;
      case Formula::Kind::Add: {
        n.a = compile(f.left(), scope);
        n.b = compile(f.right(), scope);
        const Node& x = nodes_[n.a];
        const Node& y = nodes_[n.b];
        n.den = lcm(x.den, y.den);
        n.rlo = x.rlo + y.rlo;
        n.rhi = x.rhi + y.rhi;
        break;
      }
      case Formula::Kind::Scale: {
        n.scalar = f.scalar();
        n.a = compile(f.body(), scope);
        const Node& x = nodes_[n.a];
        n.den = x.den * boost::multiprecision::denominator(f.scalar());
        if (f.scalar() >= 0) {
          n.rlo = f.scalar() * x.rlo;
          n.rhi = f.scalar() * x.rhi;
        } else {
          n.rlo = f.scalar() * x.rhi;
          n.rhi = f.scalar() * x.rlo;
        }
        break;
      }
      case Formula::Kind::Sup:
      case Formula::Kind::Inf: {
        if (auto t = bounded_pattern(f.var(), f.body())) {
          n.bound = compile_term(*t, scope);
        } else {
          exhaustive_ = false;
        }
        n.slot = nslots_++;
        scope.emplace_back(f.var(), n.slot);
        n.a = compile(f.body(), scope);
        scope.pop_back();
        const Node& x = nodes_[n.a];
        n.den = x.den;
        n.rlo = x.rlo;
        n.rhi = x.rhi;
        break;
      }
    }
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  void setup_fixed_point() {
    den_ = nodes_[root_].den;
    fixed_ok_ = den_ < Natural(1) << 30;
    if (!fixed_ok_) return;
    const Rational D(den_);
    const auto fits = [](const Rational& q) {
      return boost::multiprecision::denominator(q) == 1 && abs(q) < Rational(kLimit);
    };
    for (auto& n : nodes_) {
      const Rational lo = n.rlo * D, hi = n.rhi * D;
      if (!fits(lo) || !fits(hi)) {
        fixed_ok_ = false;
        return;
      }
      n.lo = boost::multiprecision::numerator(lo).convert_to<std::int64_t>();
      n.hi = boost::multiprecision::numerator(hi).convert_to<std::int64_t>();
      if (n.kind == Formula::Kind::Const) n.cfix = n.lo;
      if (n.kind == Formula::Kind::Scale) {
        const Natural p = boost::multiprecision::numerator(n.scalar);
        const Natural q = boost::multiprecision::denominator(n.scalar);
        if (abs(p) >= Natural(1) << 30 || q >= Natural(1) << 30) {
          fixed_ok_ = false;
          return;
        }
        n.rn = p.convert_to<std::int64_t>();
        n.rd = q.convert_to<std::int64_t>();
      }
    }
    dfix_ = den_.convert_to<std::int64_t>();
  }

  std::uint64_t term_fixed(int i, const std::uint64_t* env) const {
    const TermNode& t = terms_[i];
    switch (t.kind) {
      case Term::Kind::Var:
        return env[t.slot];
      case Term::Kind::Zero:
        return 0;
      case Term::Kind::One:
        return 1;
      case Term::Kind::Add:
        return checked_add(term_fixed(t.l, env), term_fixed(t.r, env));
      case Term::Kind::Mul:
        return checked_mul(term_fixed(t.l, env), term_fixed(t.r, env));
      case Term::Kind::Meet:
        return std::min(term_fixed(t.l, env), term_fixed(t.r, env));
      case Term::Kind::Join:
        return std::max(term_fixed(t.l, env), term_fixed(t.r, env));
    }
    return 0;
  }

  Natural term_exact(int i, const std::vector<Natural>& env) const {
    const TermNode& t = terms_[i];
    switch (t.kind) {
      case Term::Kind::Var:
        return env[t.slot];
      case Term::Kind::Zero:
        return 0;
      case Term::Kind::One:
        return 1;
      case Term::Kind::Add:
        return term_exact(t.l, env) + term_exact(t.r, env);
      case Term::Kind::Mul:
        return term_exact(t.l, env) * term_exact(t.r, env);
      case Term::Kind::Meet:
        return std::min(term_exact(t.l, env), term_exact(t.r, env));
      case Term::Kind::Join:
        return std::max(term_exact(t.l, env), term_exact(t.r, env));
    }
    return 0;
  }

  std::uint64_t quantifier_limit(const Node& n, const std::uint64_t* env, std::uint64_t horizon) const {
    std::uint64_t upper = n.bound >= 0 ? term_fixed(n.bound, env) : horizon;
    if (upper >= cap_) {
      throw ResourceError("quantifier frontier of " + std::to_string(upper) +
                          "+1 points exceeds the cap of " + std::to_string(cap_));
    }
    return upper;
  }

  std::int64_t eval_fixed(int i, std::uint64_t* env, std::uint64_t horizon, std::int64_t lo,
                          std::int64_t hi) const {
    const Node& n = nodes_[i];
    if (lo >= n.hi) return n.hi;
    if (hi <= n.lo) return n.lo;
    if (lo < n.lo) lo = n.lo - 1;
    if (hi > n.hi) hi = n.hi + 1;
    switch (n.kind) {
      case Formula::Kind::Const:
        return n.cfix;
      case Formula::Kind::Dist:
        return term_fixed(n.t1, env) == term_fixed(n.t2, env) ? 0 : dfix_;
      case Formula::Kind::Add: {
        const Node& b = nodes_[n.b];
        const std::int64_t alo = lo - b.hi, ahi = hi - b.lo;
        const std::int64_t a = eval_fixed(n.a, env, horizon, alo, ahi);
        if (a <= alo) return a + b.hi;
        if (a >= ahi) return a + b.lo;
        return a + eval_fixed(n.b, env, horizon, lo - a, hi - a);
      }
      case Formula::Kind::Scale: {
        if (n.rn == 0) return 0;
        std::int64_t clo, chi;
        if (n.rn > 0) {
          clo = floor_div(checked_mul(lo, n.rd), n.rn);
          chi = ceil_div(checked_mul(hi, n.rd), n.rn);
        } else {
          clo = floor_div(checked_mul(hi, n.rd), n.rn);
          chi = ceil_div(checked_mul(lo, n.rd), n.rn);
        }
        const std::int64_t c = eval_fixed(n.a, env, horizon, clo, chi);
        return checked_mul(c / n.rd, n.rn);
      }
      case Formula::Kind::Sup: {
        const std::uint64_t upper = quantifier_limit(n, env, horizon);
        std::int64_t best = 0;
        for (std::uint64_t x = 0; x <= upper; ++x) {
          env[n.slot] = x;
          const std::int64_t floor = x == 0 ? lo : std::max(lo, best);
          const std::int64_t v = eval_fixed(n.a, env, horizon, floor, hi);
          if (x == 0 || v > best) best = v;
          if (best >= hi || best >= n.hi) break;
        }
        return best;
      }
      case Formula::Kind::Inf: {
        const std::uint64_t upper = quantifier_limit(n, env, horizon);
        std::int64_t best = 0;
        for (std::uint64_t x = 0; x <= upper; ++x) {
          env[n.slot] = x;
          const std::int64_t ceiling = x == 0 ? hi : std::min(hi, best);
          const std::int64_t v = eval_fixed(n.a, env, horizon, lo, ceiling);
          if (x == 0 || v < best) best = v;
          if (best <= lo || best <= n.lo) break;
        }
        return best;
      }
    }
    return 0;
  }

  Rational eval_exact(int i, std::vector<Natural>& env, std::uint64_t horizon) const {
    const Node& n = nodes_[i];
    switch (n.kind) {
      case Formula::Kind::Const:
        return n.scalar;
      case Formula::Kind::Dist:
        return term_exact(n.t1, env) == term_exact(n.t2, env) ? Rational(0) : Rational(1);
      case Formula::Kind::Add:
        return eval_exact(n.a, env, horizon) + eval_exact(n.b, env, horizon);
      case Formula::Kind::Scale:
        if (n.scalar == 0) return 0;
        return n.scalar * eval_exact(n.a, env, horizon);
      case Formula::Kind::Sup:
      case Formula::Kind::Inf: {
        const Natural upper = n.bound >= 0 ? term_exact(n.bound, env) : Natural(horizon);
        if (upper >= cap_) {
          throw ResourceError("quantifier frontier of " + upper.str() +
                              "+1 points exceeds the cap of " + std::to_string(cap_));
        }
        const bool sup = n.kind == Formula::Kind::Sup;
        Rational best;
        for (Natural x = 0; x <= upper; ++x) {
          env[n.slot] = x;
          Rational v = eval_exact(n.a, env, horizon);
          if (x == 0 || (sup ? v > best : v < best)) best = std::move(v);
          if (sup ? best >= n.rhi : best <= n.rlo) break;
        }
        return best;
      }
    }
    return 0;
  }

  std::uint64_t cap_;
  std::size_t nfree_;
  int nslots_ = 0;
  int root_ = -1;
  bool exhaustive_ = true;
  bool fixed_ok_ = false;
  Natural den_ = 1;
  std::int64_t dfix_ = 1;
  std::vector<TermNode> terms_;
  std::vector<Node> nodes_;
};

}  // namespace aaw

#endif  // AAW_KERNEL_HPP
