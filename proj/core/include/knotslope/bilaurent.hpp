#pragma once

// Exact Laurent polynomials in L, M over the rationals, and polynomials in a
// third variable with BiLaurent coefficients.

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace knotslope {

using Rational = mpq_class;

enum class Variable { kL, kM };

/// Sum of c * L^i * M^j with nonzero rational c.
class BiLaurent {
 public:
  using Exponent = std::pair<int, int>;  // (L-exponent, M-exponent)
  using Terms = std::map<Exponent, Rational>;

  BiLaurent() = default;
  BiLaurent(const Rational& c);  // NOLINT: constants convert implicitly
  BiLaurent(long c) : BiLaurent(Rational(c)) {}  // NOLINT
  static BiLaurent monomial(int i, int j, const Rational& c = 1);
  static BiLaurent L() { return monomial(1, 0); }
  static BiLaurent M() { return monomial(0, 1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of L^i M^j (0 if absent).
  Rational coefficient(int i, int j) const;

  /// Adds c * L^i M^j, dropping the term if it cancels.
  void add_term(int i, int j, const Rational& c);

  /// Lexicographically largest / smallest exponent. Requires nonzero.
  Exponent leading_exponent() const { return terms_.rbegin()->first; }
  Exponent trailing_exponent() const { return terms_.begin()->first; }

  int min_exponent(Variable v) const;
  int max_exponent(Variable v) const;
  /// True if no term involves v.
  bool free_of(Variable v) const;

  BiLaurent operator+(const BiLaurent& rhs) const;
  BiLaurent operator-(const BiLaurent& rhs) const;
  BiLaurent operator*(const BiLaurent& rhs) const;
  BiLaurent operator-() const;
  BiLaurent& operator+=(const BiLaurent& rhs);
  BiLaurent& operator-=(const BiLaurent& rhs);
  BiLaurent& operator*=(const BiLaurent& rhs);
  BiLaurent pow(unsigned n) const;

  /// Multiplies by L^di M^dj.
  BiLaurent shifted(int di, int dj) const;
  BiLaurent scaled(const Rational& c) const;

  /// Term-wise derivative; exponents may become negative.
  BiLaurent derivative(Variable v) const;

  /// A(1/L, 1/M).
  BiLaurent inverted() const;

  std::complex<double> evaluate(std::complex<double> l, std::complex<double> m) const;
  /// Sum of |c| |L|^i |M|^j.
  double magnitude_scale(std::complex<double> l, std::complex<double> m) const;

  /// Positive rational r such that this / r has coprime integer coefficients.
  Rational content() const;

  /// Shifted so min exponents are 0, content 1, leading (lex-largest) term
  /// positive. Zero stays zero.
  BiLaurent canonical() const;

  bool operator==(const BiLaurent&) const = default;

 private:
  Terms terms_;
};

/// q with a = q * b exactly, or nullopt. Requires b nonzero.
std::optional<BiLaurent> exact_divide(const BiLaurent& a, const BiLaurent& b);

/// gcd of two polynomials in M alone, up to units; primitive with positive
/// leading coefficient and lowest M-exponent 0. Throws Error(kUsage) if L occurs.
BiLaurent gcd_in_m(const BiLaurent& a, const BiLaurent& b);

/// Grammar: terms joined by + / -; term = [rational][*]L^k[*]M^k in any
/// order, exponent optional and possibly negative. Zero is rejected.
BiLaurent parse_bilaurent(std::string_view text);

/// Terms in ascending exponent order, e.g. "1 + L*M^6", "-1/2*L^-1".
std::string format_bilaurent(const BiLaurent& a);

/// {"terms": [[i, j, "num/den"], ...]}
std::string bilaurent_to_json(const BiLaurent& a);

/// Polynomial in one variable with BiLaurent coefficients; coefficient k
/// multiplies X^k. The highest stored coefficient is nonzero.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<BiLaurent> coefficients);
  static UniPoly constant(const BiLaurent& c) { return UniPoly({c}); }
  static UniPoly x() { return UniPoly({BiLaurent(), BiLaurent(1)}); }

  const std::vector<BiLaurent>& coefficients() const { return c_; }
  const BiLaurent& coefficient(int k) const;
  bool is_zero() const { return c_.empty(); }
  /// -1 for zero.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const BiLaurent& leading() const { return c_.back(); }

  UniPoly operator+(const UniPoly& rhs) const;
  UniPoly operator-(const UniPoly& rhs) const;
  UniPoly operator*(const UniPoly& rhs) const;
  UniPoly operator-() const;
  UniPoly scaled(const BiLaurent& c) const;
  /// Multiplies by X^k.
  UniPoly shifted(int k) const;

  /// Removes factors of X.
  UniPoly without_x_factors() const;

  bool operator==(const UniPoly&) const = default;

 private:
  void trim();
  std::vector<BiLaurent> c_;
};

/// lc(b)^(deg a - deg b + 1) * a mod b. Requires b nonzero.
UniPoly pseudo_remainder(const UniPoly& a, const UniPoly& b);

/// Content and primitive part for coefficients in Q[M^+-1] (no L).
BiLaurent content_in_m(const UniPoly& p);
UniPoly primitive_part_in_m(const UniPoly& p);

/// gcd over Q(M)[X] for coefficients in Q[M^+-1], via the primitive
/// remainder sequence; returned primitive. Zero if both are zero.
UniPoly gcd_over_qm(const UniPoly& a, const UniPoly& b);

/// Determinant of the Sylvester matrix by fraction-free elimination.
/// Requires deg a >= 0 and deg b >= 0, not both 0.
BiLaurent resultant(const UniPoly& a, const UniPoly& b);

/// Views A(L, M) as a polynomial in L with coefficients in Q[M^+-1], after
/// shifting the L-exponents to start at 0; and back.
UniPoly as_poly_in_l(const BiLaurent& a);
BiLaurent from_poly_in_l(const UniPoly& p);

}  // namespace knotslope
