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

#ifndef AAW_MODEL_HPP
#define AAW_MODEL_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "aaw/format.hpp"
#include "aaw/syntax.hpp"

namespace aaw {

inline constexpr std::uint64_t kDefaultFrontierCap = 1'000'000;

// Parses "p" or "p/q" (optionally signed). No decimals.
inline Rational parse_rational(const std::string& s) {
  const auto fail = [&] { throw DomainError("malformed rational '" + s + "'"); };
  if (s.empty()) fail();
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  const auto slash = s.find('/', i);
  const std::string num = s.substr(i, slash == std::string::npos ? std::string::npos : slash - i);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  const auto digits = [](const std::string& x) {
    return !x.empty() && std::all_of(x.begin(), x.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!digits(num) || !digits(den)) fail();
  const Natural d(den);
  if (d == 0) fail();
  Rational r(Natural(num), d);
  return neg ? Rational(-r) : r;
}

// A finitely supported ultracharge with strictly positive rational weights.
class Ultracharge {
 public:
  explicit Ultracharge(std::vector<Rational> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw DomainError("an ultracharge needs at least one index");
    Rational total = 0;
    for (const auto& w : weights_) {
      if (w <= 0) throw DomainError("ultracharge weights must be positive");
      total += w;
    }
    if (total != 1) throw DomainError("ultracharge weights must sum to 1, got " + to_string(total));
  }

  static Ultracharge uniform(std::size_t k) {
    if (k == 0) throw DomainError("an ultracharge needs at least one index");
    return Ultracharge(std::vector<Rational>(k, Rational(1, static_cast<long>(k))));
  }

  std::size_t size() const { return weights_.size(); }
  const Rational& operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<Rational>& weights() const { return weights_; }

  friend bool operator==(const Ultracharge&, const Ultracharge&) = default;

 private:
  std::vector<Rational> weights_;
};

// An element of N (one coordinate) or of a powermean (k coordinates).
struct Element {
  std::vector<Natural> coords;

  Element() = default;
  explicit Element(std::vector<Natural> c) : coords(std::move(c)) {}
  Element(std::initializer_list<long> c) {
    for (long v : c) coords.emplace_back(v);
  }

  std::size_t size() const { return coords.size(); }
  const Natural& operator[](std::size_t i) const { return coords[i]; }

  friend bool operator==(const Element&, const Element&) = default;
  friend bool operator<(const Element& a, const Element& b) { return a.coords < b.coords; }
};

// "3" for one coordinate, "(1,2)" otherwise.
inline std::string to_string(const Element& e) {
  if (e.size() == 1) return e[0].str();
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ',';
    s += e[i].str();
  }
  return s + ")";
}

using Environment = std::map<std::string, Element>;

inline std::string to_string(const Environment& env) {
  std::string s = "{";
  bool first = true;
  for (const auto& [k, v] : env) {
    if (!first) s += ", ";
    first = false;
    s += k + "=" + to_string(v);
  }
  return s + "}";
}

// The standard model N, or the powermean N^mu over a finite ultracharge.
// Elements of a powermean are tuples; with positive weights the pseudometric
// already separates them.
class Model {
 public:
  enum class Kind { Standard, Powermean };

  static Model standard() { return Model(); }
  static Model powermean(Ultracharge mu) { return Model(std::move(mu)); }

  Kind kind() const { return mu_ ? Kind::Powermean : Kind::Standard; }
  bool is_standard() const { return kind() == Kind::Standard; }
  std::size_t index_count() const { return mu_ ? mu_->size() : 1; }

  const std::vector<Rational>& weights() const {
    static const std::vector<Rational> unit{Rational(1)};
    return mu_ ? mu_->weights() : unit;
  }

  const Rational& weight(std::size_t i) const { return weights()[i]; }

  std::string name() const {
    if (is_standard()) return "N";
    std::string s;
    for (std::size_t i = 0; i < mu_->size(); ++i) {
      if (i) s += " + ";
      s += to_string((*mu_)[i]) + " N";
    }
    return s;
  }

  bool valid(const Element& a) const { return a.size() == index_count(); }

  void require(const Element& a) const {
    if (!valid(a)) {
      throw DomainError("element " + to_string(a) + " has " + std::to_string(a.size()) +
                        " coordinates, model " + name() + " needs " +
                        std::to_string(index_count()));
    }
  }

  Element constant(const Natural& n) const {
    return Element(std::vector<Natural>(index_count(), n));
  }
  Element zero() const { return constant(0); }
  Element one() const { return constant(1); }

  Element add(const Element& a, const Element& b) const {
    return zip(a, b, [](const Natural& x, const Natural& y) { return Natural(x + y); });
  }
  Element mul(const Element& a, const Element& b) const {
    return zip(a, b, [](const Natural& x, const Natural& y) { return Natural(x * y); });
  }
  Element meet(const Element& a, const Element& b) const {
    return zip(a, b, [](const Natural& x, const Natural& y) { return std::min(x, y); });
  }
  Element join(const Element& a, const Element& b) const {
    return zip(a, b, [](const Natural& x, const Natural& y) { return std::max(x, y); });
  }

  // Integral of the discrete metric: sum of the weights where coordinates differ.
  Rational dist(const Element& a, const Element& b) const {
    require(a);
    require(b);
    Rational d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) d += weight(i);
    return d;
  }

  Rational norm(const Element& a) const { return dist(a, zero()); }

  // Lattice order: a <= b iff a /\ b = a, i.e. coordinatewise.
  bool leq(const Element& a, const Element& b) const { return meet(a, b) == a; }

  // (horizon + 1)^k, or nullopt when it exceeds the cap.
  std::optional<std::uint64_t> frontier_size(const Natural& horizon, std::uint64_t cap) const {
    const Natural side = horizon + 1;
    Natural total = 1;
    for (std::size_t i = 0; i < index_count(); ++i) {
      total *= side;
      if (total > cap) return std::nullopt;
    }
    return total.convert_to<std::uint64_t>();
  }

  // All tuples in {0..horizon}^k in lexicographic order.
  std::vector<Element> enumerate(std::uint64_t horizon, std::uint64_t cap = kDefaultFrontierCap) const {
    if (!frontier_size(horizon, cap)) {
      throw ResourceError("frontier (" + std::to_string(horizon) + "+1)^" +
                          std::to_string(index_count()) + " exceeds the cap of " +
                          std::to_string(cap) + " points");
    }
    return box(Element(std::vector<Natural>(index_count(), Natural(horizon))), cap);
  }

  // All x with 0 <= x <= upper, lexicographic.
  std::vector<Element> box(const Element& upper, std::uint64_t cap = kDefaultFrontierCap) const {
    require(upper);
    Natural total = 1;
    for (const auto& u : upper.coords) {
      total *= u + 1;
      if (total > cap) {
        throw ResourceError("frontier below " + to_string(upper) + " exceeds the cap of " +
                            std::to_string(cap) + " points");
      }
    }
    std::vector<Element> out;
    out.reserve(total.convert_to<std::size_t>());
    Element cur = zero();
    for (;;) {
      out.push_back(cur);
      std::size_t i = cur.size();
      while (i > 0) {
        --i;
        if (cur.coords[i] < upper[i]) {
          ++cur.coords[i];
          break;
        }
        cur.coords[i] = 0;
        if (i == 0) return out;
      }
    }
  }

  nlohmann::json to_json() const {
    if (is_standard()) return {{"kind", "standard"}};
    nlohmann::json w = nlohmann::json::array();
    for (const auto& x : mu_->weights()) w.push_back(to_string(x));
    return {{"kind", "powermean"}, {"weights", w}};
  }

  static Model from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
      throw DomainError("model spec needs a string field \"kind\"");
    }
    const std::string kind = j["kind"];
    if (kind == "standard") return standard();
    if (kind != "powermean") throw DomainError("unknown model kind '" + kind + "'");
    if (!j.contains("weights") || !j["weights"].is_array()) {
      throw DomainError("powermean model spec needs a \"weights\" array");
    }
    std::vector<Rational> w;
    for (const auto& x : j["weights"]) {
      if (!x.is_string()) throw DomainError("weights are rational strings such as \"1/2\"");
      w.push_back(parse_rational(x.get<std::string>()));
    }
    return powermean(Ultracharge(std::move(w)));
  }

  friend bool operator==(const Model& a, const Model& b) { return a.mu_ == b.mu_; }

 private:
  Model() = default;
  explicit Model(Ultracharge mu) : mu_(std::move(mu)) {}

  template <class Op>
  Element zip(const Element& a, const Element& b, Op op) const {
    require(a);
    require(b);
    Element out;
    out.coords.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.coords.push_back(op(a[i], b[i]));
    return out;
  }

  std::optional<Ultracharge> mu_;
};

// Inline JSON ("{...}"), a shorthand ("standard", "N", "half", "k=3"), or a
// path to a JSON file.
inline Model parse_model_spec(const std::string& spec) {
  if (spec == "standard" || spec == "N") return Model::standard();
  if (spec == "half") return Model::powermean(Ultracharge::uniform(2));
  if (spec.rfind("k=", 0) == 0) {
    return Model::powermean(Ultracharge::uniform(std::stoul(spec.substr(2))));
  }
  nlohmann::json j;
  try {
    if (!spec.empty() && spec.front() == '{') {
      j = nlohmann::json::parse(spec);
    } else {
      std::ifstream in(spec);
      if (!in) throw DomainError("cannot open model spec file '" + spec + "'");
      j = nlohmann::json::parse(in);
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("model spec is not valid JSON: ") + e.what());
  }
  return Model::from_json(j);
}

// "(1,2)", "3", or "[1,2]". A bare natural is the constant element.
inline Element parse_element(const Model& m, const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  const auto fail = [&] { throw DomainError("malformed element '" + text + "'"); };
  if (s.empty()) fail();
  std::vector<Natural> coords;
  const bool tuple = s.front() == '(' || s.front() == '[';
  if (tuple) {
    if (s.size() < 3 || (s.back() != ')' && s.back() != ']')) fail();
    std::stringstream ss(s.substr(1, s.size() - 2));
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty() || !std::all_of(part.begin(), part.end(), ::isdigit)) fail();
      coords.emplace_back(part);
    }
  } else {
    if (!std::all_of(s.begin(), s.end(), ::isdigit)) fail();
    return m.constant(Natural(s));
  }
  Element e(std::move(coords));
  m.require(e);
  return e;
}

}  // namespace aaw

#endif  // AAW_MODEL_HPP
