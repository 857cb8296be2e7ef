#include <gtest/gtest.h>

#include <random>

#include "knotslope/bilaurent.hpp"
#include "knotslope/error.hpp"
#include "support.hpp"

using namespace knotslope;
using knotslope::testing::random_bilaurent;
using knotslope::testing::random_unipoly;

namespace {

BiLaurent P(const char* text) { return parse_bilaurent(text); }

UniPoly T(std::initializer_list<BiLaurent> c) { return UniPoly(std::vector<BiLaurent>(c)); }

// Resultant over Q of univariate dense polynomials by the Euclidean
// recurrence res(a, b) = (-1)^(deg a deg b) lc(b)^(deg a - deg r) res(b, r).
Rational euclid_resultant(std::vector<Rational> a, std::vector<Rational> b) {
  auto trim = [](std::vector<Rational>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  trim(a);
  trim(b);
  if (a.empty() || b.empty()) return 0;
  const int da = static_cast<int>(a.size()) - 1;
  const int db = static_cast<int>(b.size()) - 1;
  if (db == 0) {
    Rational out = 1;
    for (int k = 0; k < da; ++k) out *= b[0];
    return out;
  }
  if (da < db) {
    Rational s = euclid_resultant(b, a);
    return ((da * db) % 2 == 1) ? Rational(-s) : s;
  }
  std::vector<Rational> r = a;
  while (r.size() >= b.size() && !r.empty()) {
    const Rational f = r.back() / b.back();
    const std::size_t shift = r.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) r[shift + k] -= f * b[k];
    r.pop_back();
    trim(r);
  }
  if (r.empty()) return 0;
  const int dr = static_cast<int>(r.size()) - 1;
  Rational out = euclid_resultant(b, r);
  for (int k = 0; k < da - dr; ++k) out *= b.back();
  return ((da * db) % 2 == 1) ? Rational(-out) : out;
}

Rational eval_at(const BiLaurent& a, const Rational& l, const Rational& m) {
  Rational out = 0;
  for (const auto& [e, c] : a.terms()) {
    Rational term = c;
    for (int k = 0; k < std::abs(e.first); ++k) term = e.first > 0 ? Rational(term * l) : Rational(term / l);
    for (int k = 0; k < std::abs(e.second); ++k) term = e.second > 0 ? Rational(term * m) : Rational(term / m);
    out += term;
  }
  return out;
}

std::vector<Rational> specialize(const UniPoly& p, const Rational& l, const Rational& m) {
  std::vector<Rational> out;
  for (const BiLaurent& c : p.coefficients()) out.push_back(eval_at(c, l, m));
  return out;
}

}  // namespace

TEST(Text, ParsesExamples) {
  const BiLaurent a = P("1 + L*M^6");
  EXPECT_EQ(a.size(), 2U);
  EXPECT_EQ(a.coefficient(0, 0), 1);
  EXPECT_EQ(a.coefficient(1, 6), 1);
  const BiLaurent b = P("L - 1");
  EXPECT_EQ(b.coefficient(1, 0), 1);
  EXPECT_EQ(b.coefficient(0, 0), -1);
  EXPECT_EQ(P("-3/2 M^-2 L"), BiLaurent::monomial(1, -2, Rational(-3, 2)));
  EXPECT_EQ(P("2*M*L^2 - M L^2"), BiLaurent::monomial(2, 1));
  EXPECT_EQ(P("M^+2"), BiLaurent::monomial(0, 2));
}

TEST(Text, RejectsZeroAndGarbage) {
  EXPECT_THROW(P("0"), ParseError);
  EXPECT_THROW(P("L - L"), ParseError);
  EXPECT_THROW(P("L + "), ParseError);
  EXPECT_THROW(P("X"), ParseError);
  EXPECT_THROW(P("L^"), ParseError);
  EXPECT_THROW(P("1/0"), ParseError);
  EXPECT_THROW(P("L**M"), ParseError);
}

TEST(Text, FormatsAndRoundTrips) {
  EXPECT_EQ(format_bilaurent(P("L*M^6 + 1")), "1 + L*M^6");
  EXPECT_EQ(format_bilaurent(P("-1 + L")), "-1 + L");
  EXPECT_EQ(format_bilaurent(P("-1/2 L^-1 M")), "-1/2*L^-1*M");
  std::mt19937_64 rng(41);
  for (int k = 0; k < 100; ++k) {
    const BiLaurent a = random_bilaurent(rng, 4, 5).shifted(-2, -1);
    EXPECT_EQ(parse_bilaurent(format_bilaurent(a)), a);
  }
}

TEST(Text, Json) {
  EXPECT_EQ(bilaurent_to_json(P("1 + L*M^6")), R"({"terms":[[0,0,"1/1"],[1,6,"1/1"]]})");
}

TEST(Algebra, RingAxiomsOnRandomInputs) {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 100; ++k) {
    const BiLaurent a = random_bilaurent(rng, 3, 3);
    const BiLaurent b = random_bilaurent(rng, 3, 3);
    const BiLaurent c = random_bilaurent(rng, 3, 3);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(a.pow(3), a * a * a);
  }
}

TEST(Derivative, Examples) {
  EXPECT_EQ(P("1 + L*M^6").derivative(Variable::kL), P("M^6"));
  EXPECT_EQ(P("M + M^-1").derivative(Variable::kM), P("1 - M^-2"));
  EXPECT_TRUE(P("L - 1").derivative(Variable::kM).is_zero());
}

TEST(Derivative, MixedPartialsCommute) {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 100; ++k) {
    const BiLaurent a = random_bilaurent(rng, 5, 4).shifted(-1, -2);
    EXPECT_EQ(a.derivative(Variable::kL).derivative(Variable::kM),
              a.derivative(Variable::kM).derivative(Variable::kL));
  }
}

TEST(Canonical, FixesUnitsAndSign) {
  EXPECT_EQ(P("-2*L^-1*M^-3 - 2*M^3").canonical(), P("1 + L*M^6"));
  EXPECT_EQ(P("3/4 - 3/4*L").canonical(), P("L - 1"));
  const BiLaurent a = P("6*L^2*M + 4*M^2");
  EXPECT_EQ(a.content(), 2);
  EXPECT_EQ(a.canonical(), P("3*L^2 + 2*M"));
}

TEST(ExactDivide, RecoversFactorsAndDetectsRemainders) {
  std::mt19937_64 rng(44);
  for (int k = 0; k < 100; ++k) {
    const BiLaurent a = random_bilaurent(rng, 3, 3).shifted(-1, 0);
    const BiLaurent b = random_bilaurent(rng, 3, 3).shifted(0, -2);
    const auto q = exact_divide(a * b, b);
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(*q, a);
  }
  EXPECT_FALSE(exact_divide(P("L + 1"), P("L - 1")).has_value());
  EXPECT_FALSE(exact_divide(P("1"), P("1 + M")).has_value());
  EXPECT_EQ(*exact_divide(P("M^2 - 1"), P("M - 1")), P("M + 1"));
}

TEST(Gcd, InM) {
  EXPECT_EQ(gcd_in_m(P("M^2 - 1"), P("M^2 + 2*M + 1")), P("M + 1"));
  EXPECT_EQ(gcd_in_m(P("2*M^3"), P("M^5 + M^4")), P("1"));
  EXPECT_EQ(gcd_in_m(BiLaurent(), P("3*M - 3")), P("M - 1"));
  EXPECT_THROW(gcd_in_m(P("L"), P("M")), Error);
}

TEST(Gcd, OverQM) {
  const UniPoly t = UniPoly::x();
  // (t - M)(t + 1) and (t - M)(M t - 2)
  const UniPoly f = (t - UniPoly::constant(P("M"))) * (t + UniPoly::constant(1));
  const UniPoly g = (t - UniPoly::constant(P("M"))) * (t.scaled(P("M")) - UniPoly::constant(2));
  const UniPoly h = gcd_over_qm(f.scaled(P("M^2 - 1")), g);
  EXPECT_EQ(h, t - UniPoly::constant(P("M")));
  EXPECT_EQ(gcd_over_qm(t + UniPoly::constant(1), t - UniPoly::constant(1)).degree(), 0);
}

TEST(PseudoRemainder, Identity) {
  // lc(b)^k a = q b + r with deg r < deg b
  const UniPoly a = T({P("1"), P("M"), P("L"), P("M^2")});
  const UniPoly b = T({P("L"), P("M + 1")});
  const UniPoly r = pseudo_remainder(a, b);
  EXPECT_LT(r.degree(), 1);
  // r equals lc(b)^3 a evaluated at the root t = -L/(M+1)
  const Rational l(3, 2);
  const Rational m(5, 7);
  const Rational root = -l / (m + 1);
  Rational at = 0;
  Rational pw = 1;
  for (const BiLaurent& c : a.coefficients()) {
    at += eval_at(c, l, m) * pw;
    pw *= root;
  }
  const Rational lcb = m + 1;
  EXPECT_EQ(eval_at(r.coefficient(0), l, m), lcb * lcb * lcb * at);
}

TEST(Resultant, SmallExamples) {
  const UniPoly t = UniPoly::x();
  const BiLaurent c = P("L + M");
  const BiLaurent d = P("2*M^2");
  EXPECT_EQ(resultant(t - UniPoly::constant(c), t - UniPoly::constant(d)), c - d);
  EXPECT_EQ(resultant(t * t - UniPoly::constant(P("L*M")), t - UniPoly::constant(1)),
            P("1 - L*M"));
  EXPECT_EQ(resultant(UniPoly::constant(P("M")), t * t + UniPoly::constant(1)), P("M^2"));
}

TEST(Resultant, MatchesEuclideanOracleAtRationalPoints) {
  std::mt19937_64 rng(45);
  for (int k = 0; k < 30; ++k) {
    const UniPoly a = random_unipoly(rng, 1 + static_cast<int>(rng() % 3));
    const UniPoly b = random_unipoly(rng, 1 + static_cast<int>(rng() % 3));
    const BiLaurent r = resultant(a, b);
    for (const auto& [l, m] : {std::pair<Rational, Rational>{Rational(3, 2), Rational(-5, 3)},
                               {Rational(7), Rational(2, 9)}}) {
      EXPECT_EQ(eval_at(r, l, m), euclid_resultant(specialize(a, l, m), specialize(b, l, m)));
    }
  }
}

TEST(Resultant, MultiplicativeOnRandomInstances) {
  std::mt19937_64 rng(46);
  for (int k = 0; k < 100; ++k) {
    const UniPoly p = random_unipoly(rng, 1);
    const UniPoly q = random_unipoly(rng, 1 + static_cast<int>(rng() % 2));
    const UniPoly r = random_unipoly(rng, 1 + static_cast<int>(rng() % 2));
    ASSERT_EQ(resultant(p * q, r), resultant(p, r) * resultant(q, r));
  }
}

TEST(Resultant, ZeroExactlyWithACommonFactor) {
  std::mt19937_64 rng(47);
  for (int k = 0; k < 30; ++k) {
    const UniPoly common = random_unipoly(rng, 1);
    const UniPoly p = random_unipoly(rng, 1);
    const UniPoly q = random_unipoly(rng, 2);
    EXPECT_TRUE(resultant(p * common, q * common).is_zero());
    EXPECT_FALSE(resultant(p, q).is_zero());
  }
}

TEST(PolyInL, RoundTrip) {
  const BiLaurent a = P("L^-1*M + 3*L^2 - M^4*L^2");
  const UniPoly p = as_poly_in_l(a);
  EXPECT_EQ(p.degree(), 3);
  EXPECT_EQ(from_poly_in_l(p), a.shifted(1, 0));
}
