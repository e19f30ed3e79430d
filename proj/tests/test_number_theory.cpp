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

#include <gtest/gtest.h>

#include <set>

#include "aaw/aaw.hpp"

namespace aaw {
namespace {

const Model kN = Model::standard();
const Model kHalf = Model::powermean(Ultracharge::uniform(2));

// Test-side oracles: brute force over small naturals.

bool brute_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d < n; ++d)
    if (n % d == 0) return false;
  return true;
}

unsigned brute_gcd(unsigned a, unsigned b) {
  unsigned g = 1;
  for (unsigned d = 1; d <= std::min(a, b); ++d)
    if (a % d == 0 && b % d == 0) g = d;
  return g;
}

// Triangular-number walk instead of a square root.
std::pair<unsigned, unsigned> brute_unpair(unsigned z) {
  for (unsigned s = 0;; ++s) {
    const unsigned base = s * (s + 1) / 2;
    if (z <= base + s) return {s - (z - base), z - base};
  }
}

Rational value(const std::string& text, const Model& m, const Environment& env,
               std::uint64_t horizon) {
  return eval(parse_formula(text, &builtin_corpus().definitions), m, env, horizon).value;
}

TEST(Divmod, Examples) {
  const auto r = divmod(kHalf, Element{7, 9}, Element{3, 5});
  EXPECT_EQ(r.quotient, (Element{2, 1}));
  EXPECT_EQ(r.remainder, (Element{1, 4}));
  const auto z = divmod(kHalf, Element{0, 0}, Element{4, 1});
  EXPECT_EQ(z.quotient, (Element{0, 0}));
  EXPECT_EQ(z.remainder, (Element{0, 0}));
  EXPECT_THROW(divmod(kHalf, Element{7, 9}, Element{3, 0}), DomainError);
}

TEST(Divmod, ThetaVanishesAtTheResult) {
  for (unsigned a = 1; a <= 6; ++a) {
    for (unsigned b = 1; b <= 6; ++b) {
      for (unsigned c = 0; c <= 20; c += 3) {
        const Element x{long(a), long(b)}, y{long(c), long(20 - c)};
        const auto r = divmod(kHalf, y, x);
        EXPECT_EQ(kHalf.add(kHalf.mul(x, r.quotient), r.remainder), y);
        EXPECT_EQ(value("thetadiv(x, y, u, v)", kHalf,
                        {{"x", x}, {"y", y}, {"u", r.quotient}, {"v", r.remainder}}, 0),
                  0);
        // A wrong quotient is detected.
        const Element off = kHalf.add(r.quotient, kHalf.one());
        EXPECT_GT(value("thetadiv(x, y, u, v)", kHalf,
                        {{"x", x}, {"y", y}, {"u", off}, {"v", r.remainder}}, 0),
                  0);
      }
    }
  }
}

TEST(Coprime, Examples) {
  EXPECT_TRUE(is_coprime(kHalf, Element{3, 3}, Element{5, 7}));
  EXPECT_FALSE(is_coprime(kHalf, Element{2, 3}, Element{4, 3}));
  EXPECT_TRUE(is_coprime(kHalf, Element{1, 1}, Element{1, 1}));
  EXPECT_THROW(is_coprime(kHalf, Element{0, 1}, Element{1, 1}), DomainError);
}

TEST(Coprime, MatchesGcdAndTheDefiningFormula) {
  for (unsigned a = 1; a <= 12; ++a) {
    for (unsigned b = 1; b <= 12; ++b) {
      const bool c = brute_gcd(a, b) == 1;
      EXPECT_EQ(is_coprime(kN, kN.constant(a), kN.constant(b)), c) << a << " " << b;
      // Divisors of a normal element are at most the element.
      EXPECT_EQ(value("coprimegap(x, y)", kN, {{"x", kN.constant(a)}, {"y", kN.constant(b)}}, 13),
                c ? 0 : 1)
          << a << " " << b;
    }
  }
}

TEST(Bezout, Examples) {
  EXPECT_EQ(bezout(kHalf, Element{3, 3}, Element{5, 7}), (Element{2, 5}));
  EXPECT_EQ(bezout(kHalf, Element{1, 1}, Element{5, 7}), (Element{1, 1}));
  // Modulo 1 every residue is 0; the least representative is returned.
  EXPECT_EQ(bezout(kHalf, Element{1, 1}, Element{1, 7}), (Element{0, 1}));
  EXPECT_THROW(bezout(kHalf, Element{2, 3}, Element{4, 3}), DomainError);
  EXPECT_THROW(bezout(kN, kN.constant(0), kN.constant(3)), DomainError);
}

TEST(Bezout, InverseProperty) {
  for (unsigned x = 1; x <= 25; ++x) {
    for (unsigned y = 1; y <= 25; ++y) {
      if (brute_gcd(x, y) != 1) continue;
      const Natural z = bezout(kN, kN.constant(x), kN.constant(y))[0];
      EXPECT_LT(z, y);
      EXPECT_EQ((z * x) % y, Natural(1) % y);
    }
  }
}

TEST(Bezout, WitnessSatisfiesTheCondition) {
  const Element x{3, 3}, y{5, 7};
  const Element z = bezout(kHalf, x, y);
  EXPECT_EQ(value("cong(z * x, 1, y)", kHalf, {{"x", x}, {"y", y}, {"z", z}}, 0), 0);
  EXPECT_EQ(value("coprimegap(x, y)", kHalf, {{"x", x}, {"y", y}}, 20), 0);
  EXPECT_EQ(value("inf z <= y . cong(z * x, 1, y)", kHalf, {{"x", x}, {"y", y}}, 20), 0);
  EXPECT_EQ(value("cong(z * x, 1, y)", kHalf, {{"x", x}, {"y", y}, {"z", Element{1, 1}}}, 0), 1);
}

TEST(Crt, Examples) {
  EXPECT_EQ(crt(kHalf, {Element{3, 5}, Element{5, 3}}, {Element{1, 2}, Element{2, 1}}),
            (Element{7, 7}));
  EXPECT_EQ(crt(kN, {kN.constant(3), kN.constant(5)}, {kN.constant(1), kN.constant(2)}),
            kN.constant(7));
  EXPECT_EQ(crt(kN, {kN.constant(4)}, {kN.constant(11)}), kN.constant(3));
  EXPECT_THROW(crt(kN, {kN.constant(4), kN.constant(6)}, {kN.constant(1), kN.constant(1)}),
               DomainError);
  EXPECT_THROW(crt(kN, {kN.constant(4)}, {}), DomainError);
}

TEST(Crt, MatchesBruteForceAndTheCondition) {
  for (unsigned m = 1; m <= 7; ++m) {
    for (unsigned n = 1; n <= 7; ++n) {
      if (brute_gcd(m, n) != 1) continue;
      for (unsigned a = 0; a < m; ++a) {
        for (unsigned b = 0; b < n; ++b) {
          unsigned least = 0;
          while (least % m != a || least % n != b) ++least;
          const Element y = crt(kN, {kN.constant(m), kN.constant(n)}, {kN.constant(a), kN.constant(b)});
          EXPECT_EQ(y, kN.constant(least));
          EXPECT_EQ(value("(inf t . d(y, t * m + a)) + (inf t . d(y, t * n + b))", kN,
                          {{"y", y}, {"m", kN.constant(m)}, {"n", kN.constant(n)},
                           {"a", kN.constant(a)}, {"b", kN.constant(b)}},
                          50),
                    0);
        }
      }
    }
  }
}

TEST(Pairing, Examples) {
  EXPECT_EQ(pair(kN, kN.constant(1), kN.constant(2)), kN.constant(8));
  EXPECT_EQ(pair(kN, kN.constant(0), kN.constant(0)), kN.constant(0));
  EXPECT_EQ(unpair(kN, kN.constant(8)), std::make_pair(kN.constant(1), kN.constant(2)));
}

TEST(Pairing, BijectiveOnSmallSquare) {
  std::set<Natural> seen;
  for (unsigned x = 0; x <= 60; ++x) {
    for (unsigned y = 0; y <= 60; ++y) {
      const Element z = pair(kN, kN.constant(x), kN.constant(y));
      EXPECT_TRUE(seen.insert(z[0]).second) << x << " " << y;
      EXPECT_EQ(unpair(kN, z), std::make_pair(kN.constant(x), kN.constant(y)));
    }
  }
  for (unsigned z = 0; z <= 2000; ++z) {
    const auto [x, y] = brute_unpair(z);
    EXPECT_EQ(unpair(kN, kN.constant(z)), std::make_pair(kN.constant(x), kN.constant(y)));
    EXPECT_EQ(pair(kN, kN.constant(x), kN.constant(y)), kN.constant(z));
  }
}

TEST(Pairing, DefiningFormula) {
  for (unsigned x = 0; x <= 6; ++x) {
    for (unsigned y = 0; y <= 6; ++y) {
      const Element z = pair(kN, kN.constant(x), kN.constant(y));
      EXPECT_EQ(value("ispair(a, m, z)", kN, {{"a", kN.constant(x)}, {"m", kN.constant(y)}, {"z", z}}, 0),
                0);
      EXPECT_EQ(value("ispair(a, m, z)", kN,
                      {{"a", kN.constant(x)}, {"m", kN.constant(y)}, {"z", kN.constant(z[0] + 1)}}, 0),
                1);
    }
  }
}

TEST(Beta, Examples) {
  EXPECT_EQ(beta(kN, kN.constant(30), kN.constant(0)), kN.constant(2));
  for (unsigned i = 0; i < 5; ++i) EXPECT_EQ(beta(kN, kN.constant(0), kN.constant(i)), kN.constant(0));
}

TEST(Beta, BelowItsCodeAndMatchesTheFormula) {
  for (unsigned x = 0; x <= 50; ++x) {
    const auto [a, m] = brute_unpair(x);
    for (unsigned i = 0; i <= 50; ++i) {
      const Element b = beta(kN, kN.constant(x), kN.constant(i));
      EXPECT_EQ(b, kN.constant(a % (m * (i + 1) + 1)));
      EXPECT_LE(b[0], x);
    }
  }
  for (unsigned x = 0; x <= 12; ++x) {
    for (unsigned i = 0; i <= 3; ++i) {
      const Element b = beta(kN, kN.constant(x), kN.constant(i));
      for (unsigned v = 0; v <= 4; ++v) {
        const Rational r = value("betaeq(x, i, v)", kN,
                                 {{"x", kN.constant(x)}, {"i", kN.constant(i)}, {"v", kN.constant(v)}}, 0);
        // A sum of defects: 0 on the relation, at least 1 off it.
        if (b == kN.constant(v)) {
          EXPECT_EQ(r, 0) << x << " " << i << " " << v;
        } else {
          EXPECT_GE(r, 1) << x << " " << i << " " << v;
        }
      }
    }
  }
}

TEST(Sequences, RoundTrip) {
  const auto seq = encode_sequence(kN, {kN.constant(3), kN.constant(1), kN.constant(4)});
  EXPECT_EQ(seq.length, 3u);
  EXPECT_EQ(beta(kN, seq.code, kN.constant(0)), kN.constant(3));
  EXPECT_EQ(beta(kN, seq.code, kN.constant(1)), kN.constant(1));
  EXPECT_EQ(beta(kN, seq.code, kN.constant(2)), kN.constant(4));
  for (unsigned x = 0; x <= 20; ++x) {
    const auto one = encode_sequence(kN, {kN.constant(x)});
    EXPECT_EQ(beta(kN, one.code, kN.constant(0)), kN.constant(x));
  }
  const std::vector<Element> items{Element{2, 7}, Element{0, 5}, Element{9, 1}, Element{4, 4}};
  const auto pm = encode_sequence(kHalf, items);
  for (std::size_t i = 0; i < items.size(); ++i)
    EXPECT_EQ(beta(kHalf, pm.code, kHalf.constant(i)), items[i]);
  EXPECT_EQ(encode_sequence(kN, {}).length, 0u);
}

TEST(Factorial, Examples) {
  EXPECT_EQ(factorial(kHalf, Element{3, 4}), (Element{6, 24}));
  EXPECT_EQ(factorial(kN, kN.constant(0)), kN.constant(1));
  EXPECT_EQ(power(kHalf, Element{2, 3}, Element{3, 2}), (Element{8, 9}));
  EXPECT_EQ(power(kN, kN.constant(1), kN.constant(1000000000)), kN.constant(1));
  EXPECT_THROW(factorial(kN, kN.constant(1000000)), ResourceError);
  EXPECT_THROW(power(kN, kN.constant(10), kN.constant(2000000)), ResourceError);
  EXPECT_THROW(power(kN, kN.constant(0), kN.constant(2)), DomainError);
}

TEST(Factorial, GraphFormula) {
  // fact(x, y) is the graph of n -> (n + 1)! at n = x. The witness code for
  // x = 1 lies above 40, so there only the false values are checked.
  for (unsigned y = 0; y <= 3; ++y) {
    const Rational at0 = value("fact(x, y)", kN, {{"x", kN.constant(0)}, {"y", kN.constant(y)}}, 40);
    if (y == 1) {
      EXPECT_EQ(at0, 0);
    } else {
      EXPECT_GE(at0, 1) << y;
    }
    if (y != 2) {
      EXPECT_GE(value("fact(x, y)", kN, {{"x", kN.constant(1)}, {"y", kN.constant(y)}}, 40), 1) << y;
    }
  }
}

TEST(Primality, Examples) {
  EXPECT_EQ(irred_value(kHalf, Element{2, 2}), 0);
  EXPECT_EQ(prime_value(kN, kN.constant(4), 5), 1);
  EXPECT_EQ(prime_value(kN, kN.constant(4)), 1);
  EXPECT_EQ(irred_value(kHalf, Element{2, 4}), Rational(1, 2));
  EXPECT_EQ(primality_defect(kHalf, Element{2, 4}), Rational(1, 2));
  EXPECT_THROW(irred_value(kN, kN.constant(1)), DomainError);
  EXPECT_THROW(prime_value(kHalf, Element{2, 0}), DomainError);
  EXPECT_EQ(least_prime_factor(kHalf, Element{15, 49}), (Element{3, 7}));
}

TEST(Primality, FormulasMatchTrialDivisionOnN) {
  for (unsigned p = 2; p <= 30; ++p) {
    const Rational expected = brute_prime(p) ? 0 : 1;
    EXPECT_EQ(irred_value(kN, kN.constant(p)), expected) << p;
    EXPECT_EQ(prime_value(kN, kN.constant(p)), expected) << p;
    EXPECT_EQ(primality_defect(kN, kN.constant(p)), expected) << p;
  }
}

TEST(Primality, IrredEqualsPrimeOnHalfUpTo30) {
  const CoordinateEvaluator irred(irred_formula(), kHalf, {"p"}, 60);
  const CoordinateEvaluator prime(prime_formula(), kHalf, {"p"}, 60);
  for (unsigned a = 2; a <= 30; ++a) {
    for (unsigned b = 2; b <= 30; ++b) {
      const Element p{long(a), long(b)};
      const Rational i = irred.value({p}), q = prime.value({p});
      EXPECT_EQ(i, q) << to_string(p);
      EXPECT_EQ(i, primality_defect(kHalf, p)) << to_string(p);
    }
  }
  EXPECT_EQ(irred_value(kHalf, Element{29, 30}, 60), Rational(1, 2));
}

TEST(Primality, CorpusMacroIsTheLibraryFormula) {
  EXPECT_EQ(parse_formula("irred(p)", &builtin_corpus().definitions), irred_formula());
  EXPECT_EQ(parse_formula("prime(p)", &builtin_corpus().definitions), prime_formula());
}

TEST(Primality, DivisorExists) {
  const CoordinateEvaluator ev(parse_formula("irred(p) + divides(p, x)", &builtin_corpus().definitions),
                               kHalf, {"p", "x"}, 82);
  for (unsigned a = 2; a <= 40; ++a) {
    for (unsigned b = 2; b <= 40; ++b) {
      const Element x{long(a), long(b)};
      const Element p = least_prime_factor(kHalf, x);
      EXPECT_EQ(primality_defect(kHalf, p), 0);
      EXPECT_EQ(ev.value({p, x}), 0) << to_string(x);
    }
  }
}

TEST(Primality, PrimesAreUnbounded) {
  for (unsigned x = 0; x <= 50; ++x) {
    unsigned q = std::max(x, 2u);
    while (!brute_prime(q)) ++q;
    ASSERT_LE(q, x + 50);
    EXPECT_EQ(value("d(x /\\ y, x) + prime(y)", kN, {{"x", kN.constant(x)}, {"y", kN.constant(q)}},
                    2 * q + 2),
              0)
        << x;
  }
  for (unsigned x = 0; x <= 12; ++x) {
    EXPECT_EQ(value("inf y . d(x /\\ (y + 2), x) + prime(y + 2)", kN, {{"x", kN.constant(x)}}, x + 50),
              0)
        << x;
  }
}

}  // namespace
}  // namespace aaw
