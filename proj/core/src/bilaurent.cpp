#include "knotslope/bilaurent.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "json.hpp"
#include "knotslope/error.hpp"

namespace knotslope {

// ---------------------------------------------------------------- BiLaurent

BiLaurent::BiLaurent(const Rational& c) {
  if (c != 0) terms_.emplace(Exponent{0, 0}, c);
}

BiLaurent BiLaurent::monomial(int i, int j, const Rational& c) {
  BiLaurent out;
  out.add_term(i, j, c);
  return out;
}

bool BiLaurent::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{0, 0});
}

Rational BiLaurent::coefficient(int i, int j) const {
  const auto it = terms_.find({i, j});
  return it == terms_.end() ? Rational(0) : it->second;
}

void BiLaurent::add_term(int i, int j, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace({i, j}, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

int BiLaurent::min_exponent(Variable v) const {
  int out = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const int k = v == Variable::kL ? e.first : e.second;
    out = first ? k : std::min(out, k);
    first = false;
  }
  return out;
}

int BiLaurent::max_exponent(Variable v) const {
  int out = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const int k = v == Variable::kL ? e.first : e.second;
    out = first ? k : std::max(out, k);
    first = false;
  }
  return out;
}

bool BiLaurent::free_of(Variable v) const {
  for (const auto& [e, c] : terms_)
    if ((v == Variable::kL ? e.first : e.second) != 0) return false;
  return true;
}

BiLaurent& BiLaurent::operator+=(const BiLaurent& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e.first, e.second, c);
  return *this;
}

BiLaurent& BiLaurent::operator-=(const BiLaurent& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e.first, e.second, -c);
  return *this;
}

BiLaurent& BiLaurent::operator*=(const BiLaurent& rhs) {
  *this = *this * rhs;
  return *this;
}

BiLaurent BiLaurent::operator+(const BiLaurent& rhs) const {
  BiLaurent out = *this;
  out += rhs;
  return out;
}

BiLaurent BiLaurent::operator-(const BiLaurent& rhs) const {
  BiLaurent out = *this;
  out -= rhs;
  return out;
}

BiLaurent BiLaurent::operator*(const BiLaurent& rhs) const {
  BiLaurent out;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : rhs.terms_)
      out.add_term(e1.first + e2.first, e1.second + e2.second, c1 * c2);
  return out;
}

BiLaurent BiLaurent::operator-() const {
  BiLaurent out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

BiLaurent BiLaurent::pow(unsigned n) const {
  BiLaurent out(1);
  BiLaurent base = *this;
  while (n > 0) {
    if (n & 1U) out *= base;
    n >>= 1U;
    if (n > 0) base *= base;
  }
  return out;
}

BiLaurent BiLaurent::shifted(int di, int dj) const {
  BiLaurent out;
  for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), Exponent{e.first + di, e.second + dj}, c);
  return out;
}

BiLaurent BiLaurent::scaled(const Rational& k) const {
  if (k == 0) return {};
  BiLaurent out = *this;
  for (auto& [e, c] : out.terms_) c *= k;
  return out;
}

BiLaurent BiLaurent::derivative(Variable v) const {
  BiLaurent out;
  for (const auto& [e, c] : terms_) {
    if (v == Variable::kL) {
      out.add_term(e.first - 1, e.second, c * e.first);
    } else {
      out.add_term(e.first, e.second - 1, c * e.second);
    }
  }
  return out;
}

BiLaurent BiLaurent::inverted() const {
  BiLaurent out;
  for (const auto& [e, c] : terms_) out.add_term(-e.first, -e.second, c);
  return out;
}

std::complex<double> BiLaurent::evaluate(std::complex<double> l,
                                         std::complex<double> m) const {
  std::complex<double> acc = 0.0;
  for (const auto& [e, c] : terms_)
    acc += c.get_d() * std::pow(l, e.first) * std::pow(m, e.second);
  return acc;
}

double BiLaurent::magnitude_scale(std::complex<double> l, std::complex<double> m) const {
  double acc = 0.0;
  for (const auto& [e, c] : terms_)
    acc += std::abs(c.get_d()) * std::pow(std::abs(l), e.first) *
           std::pow(std::abs(m), e.second);
  return acc;
}

Rational BiLaurent::content() const {
  mpz_class num = 0;
  mpz_class den = 1;
  for (const auto& [e, c] : terms_) {
    num = gcd(num, c.get_num());
    den = lcm(den, c.get_den());
  }
  if (num == 0) return 1;
  return Rational(num, den);
}

BiLaurent BiLaurent::canonical() const {
  if (is_zero()) return {};
  BiLaurent out = shifted(-min_exponent(Variable::kL), -min_exponent(Variable::kM));
  Rational k = 1 / content();
  if (out.terms_.rbegin()->second < 0) k = -k;
  return out.scaled(k);
}

std::optional<BiLaurent> exact_divide(const BiLaurent& a, const BiLaurent& b) {
  if (b.is_zero()) throw Error(ErrorCode::kUsage, "exact_divide by zero");
  if (a.is_zero()) return BiLaurent();
  // Any exact quotient lives in this exponent box.
  const int i_lo = a.min_exponent(Variable::kL) - b.min_exponent(Variable::kL);
  const int i_hi = a.max_exponent(Variable::kL) - b.max_exponent(Variable::kL);
  const int j_lo = a.min_exponent(Variable::kM) - b.min_exponent(Variable::kM);
  const int j_hi = a.max_exponent(Variable::kM) - b.max_exponent(Variable::kM);
  const auto [bi, bj] = b.leading_exponent();
  const Rational bc = b.coefficient(bi, bj);

  BiLaurent q;
  BiLaurent r = a;
  while (!r.is_zero()) {
    const auto [ri, rj] = r.leading_exponent();
    const int qi = ri - bi;
    const int qj = rj - bj;
    if (qi < i_lo || qi > i_hi || qj < j_lo || qj > j_hi) return std::nullopt;
    const BiLaurent term = BiLaurent::monomial(qi, qj, r.coefficient(ri, rj) / bc);
    q += term;
    r -= term * b;
  }
  return q;
}

namespace {

using Dense = std::vector<Rational>;

void dense_trim(Dense& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Dense to_dense_m(const BiLaurent& a) {
  if (!a.free_of(Variable::kL))
    throw Error(ErrorCode::kUsage, "polynomial in M expected, found L");
  Dense out;
  if (a.is_zero()) return out;
  const int lo = a.min_exponent(Variable::kM);
  out.assign(static_cast<std::size_t>(a.max_exponent(Variable::kM) - lo + 1), Rational(0));
  for (const auto& [e, c] : a.terms()) out[static_cast<std::size_t>(e.second - lo)] = c;
  return out;
}

Dense dense_mod(Dense a, const Dense& b) {
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
    a.pop_back();
    dense_trim(a);
  }
  return a;
}

}  // namespace

BiLaurent gcd_in_m(const BiLaurent& a, const BiLaurent& b) {
  Dense x = to_dense_m(a);
  Dense y = to_dense_m(b);
  while (!y.empty()) {
    Dense r = dense_mod(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  BiLaurent out;
  for (std::size_t k = 0; k < x.size(); ++k) out.add_term(0, static_cast<int>(k), x[k]);
  return out.canonical();
}

// ---------------------------------------------------------------- text

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : s_(text) {}

  BiLaurent parse() {
    BiLaurent out;
    skip();
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = get() == '-' ? -1 : 1;
      skip();
    }
    while (true) {
      out += term().scaled(sign);
      skip();
      if (done()) break;
      const char op = peek();
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      get();
      sign = op == '-' ? -1 : 1;
      skip();
    }
    if (out.is_zero()) throw ParseError("polynomial is zero", 1, 1);
    return out;
  }

 private:
  BiLaurent term() {
    Rational coef = 1;
    int i = 0;
    int j = 0;
    bool any = false;
    while (true) {
      skip();
      if (any && peek() == '*') {
        get();
        skip();
      }
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        Rational value(integer());
        skip();
        if (peek() == '/') {
          get();
          skip();
          const mpz_class den = integer();
          if (den == 0) fail("zero denominator");
          value /= Rational(den);
        }
        coef *= value;
      } else if (c == 'L' || c == 'M') {
        get();
        skip();
        int e = 1;
        if (peek() == '^') {
          get();
          skip();
          int sign = 1;
          if (peek() == '-' || peek() == '+') sign = get() == '-' ? -1 : 1;
          skip();
          e = sign * static_cast<int>(integer().get_si());
        }
        (c == 'L' ? i : j) += e;
      } else {
        if (!any) fail("expected a term");
        if (c == '*') fail("dangling '*'");
        break;
      }
      any = true;
    }
    return BiLaurent::monomial(i, j, coef);
  }

  mpz_class integer() {
    const std::size_t start = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  void skip() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  char get() { return s_[pos_++]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, 1, static_cast<int>(pos_) + 1);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string monomial_text(int i, int j) {
  std::string out;
  auto factor = [&out](char var, int e) {
    if (e == 0) return;
    if (!out.empty()) out += '*';
    out += var;
    if (e != 1) out += "^" + std::to_string(e);
  };
  factor('L', i);
  factor('M', j);
  return out;
}

}  // namespace

BiLaurent parse_bilaurent(std::string_view text) { return PolyParser(text).parse(); }

std::string format_bilaurent(const BiLaurent& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : a.terms()) {
    const bool negative = c < 0;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const Rational mag = abs(c);
    const std::string mono = monomial_text(e.first, e.second);
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

std::string bilaurent_to_json(const BiLaurent& a) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : a.terms()) {
    const std::string q = c.get_num().get_str() + "/" + c.get_den().get_str();
    terms.push_back(nlohmann::json::array({e.first, e.second, q}));
  }
  return nlohmann::json{{"terms", terms}}.dump();
}

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(std::vector<BiLaurent> coefficients) : c_(std::move(coefficients)) {
  trim();
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const BiLaurent& UniPoly::coefficient(int k) const {
  static const BiLaurent zero;
  if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
  return c_[static_cast<std::size_t>(k)];
}

UniPoly UniPoly::operator+(const UniPoly& rhs) const {
  std::vector<BiLaurent> out(std::max(c_.size(), rhs.c_.size()));
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = coefficient(static_cast<int>(k)) + rhs.coefficient(static_cast<int>(k));
  return UniPoly(std::move(out));
}

UniPoly UniPoly::operator-(const UniPoly& rhs) const { return *this + (-rhs); }

UniPoly UniPoly::operator-() const {
  UniPoly out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

UniPoly UniPoly::operator*(const UniPoly& rhs) const {
  if (is_zero() || rhs.is_zero()) return {};
  std::vector<BiLaurent> out(c_.size() + rhs.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < rhs.c_.size(); ++j) out[i + j] += c_[i] * rhs.c_[j];
  return UniPoly(std::move(out));
}

UniPoly UniPoly::scaled(const BiLaurent& c) const {
  std::vector<BiLaurent> out = c_;
  for (auto& x : out) x *= c;
  return UniPoly(std::move(out));
}

UniPoly UniPoly::shifted(int k) const {
  if (is_zero()) return {};
  std::vector<BiLaurent> out(static_cast<std::size_t>(k));
  out.insert(out.end(), c_.begin(), c_.end());
  return UniPoly(std::move(out));
}

UniPoly UniPoly::without_x_factors() const {
  std::size_t k = 0;
  while (k < c_.size() && c_[k].is_zero()) ++k;
  return UniPoly(std::vector<BiLaurent>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
}

UniPoly pseudo_remainder(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::kUsage, "pseudo_remainder by zero");
  if (a.degree() < b.degree()) return a;
  int pending = a.degree() - b.degree() + 1;
  const BiLaurent& lb = b.leading();
  UniPoly r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const int k = r.degree() - b.degree();
    r = r.scaled(lb) - b.scaled(r.leading()).shifted(k);
    --pending;
  }
  if (pending > 0) r = r.scaled(lb.pow(static_cast<unsigned>(pending)));
  return r;
}

BiLaurent content_in_m(const UniPoly& p) {
  BiLaurent g;
  for (const BiLaurent& c : p.coefficients()) {
    g = gcd_in_m(g, c);
    if (g == BiLaurent(1)) break;
  }
  return g;
}

UniPoly primitive_part_in_m(const UniPoly& p) {
  if (p.is_zero()) return p;
  const BiLaurent g = content_in_m(p);
  std::vector<BiLaurent> out;
  for (const BiLaurent& c : p.coefficients()) {
    auto q = exact_divide(c, g);
    if (!q) throw Error(ErrorCode::kInvariantViolation, "content does not divide");
    out.push_back(std::move(*q));
  }
  // Fix the unit: leading coefficient monic-free of M-shift, positive top term.
  const BiLaurent& lead = out.back();
  const int shift = -lead.min_exponent(Variable::kM);
  const bool flip = lead.terms().rbegin()->second < 0;
  for (auto& c : out) {
    c = c.shifted(0, shift);
    if (flip) c = -c;
  }
  return UniPoly(std::move(out));
}

UniPoly gcd_over_qm(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero()) return primitive_part_in_m(b);
  if (b.is_zero()) return primitive_part_in_m(a);
  UniPoly x = primitive_part_in_m(a);
  UniPoly y = primitive_part_in_m(b);
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    if (y.degree() == 0) return UniPoly::constant(1);
    UniPoly r = pseudo_remainder(x, y);
    x = std::move(y);
    y = r.is_zero() ? r : primitive_part_in_m(r);
  }
  return x;
}

BiLaurent resultant(const UniPoly& a, const UniPoly& b) {
  const int m = a.degree();
  const int n = b.degree();
  if (m < 0 || n < 0) return {};
  if (m == 0 && n == 0) throw Error(ErrorCode::kUsage, "resultant of two constants");
  const int size = m + n;
  std::vector<std::vector<BiLaurent>> s(static_cast<std::size_t>(size),
                                        std::vector<BiLaurent>(static_cast<std::size_t>(size)));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k)
      s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = a.coefficient(m - k);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k)
      s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + k)] = b.coefficient(n - k);

  // Bareiss: every division below is exact.
  BiLaurent prev(1);
  int sign = 1;
  const auto sz = static_cast<std::size_t>(size);
  for (std::size_t k = 0; k + 1 < sz; ++k) {
    if (s[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < sz && s[p][k].is_zero()) ++p;
      if (p == sz) return {};
      std::swap(s[k], s[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < sz; ++i) {
      for (std::size_t j = k + 1; j < sz; ++j) {
        auto q = exact_divide(s[k][k] * s[i][j] - s[i][k] * s[k][j], prev);
        if (!q) throw Error(ErrorCode::kInvariantViolation, "Bareiss division not exact");
        s[i][j] = std::move(*q);
      }
      s[i][k] = BiLaurent();
    }
    prev = s[k][k];
  }
  BiLaurent det = s[sz - 1][sz - 1];
  return sign < 0 ? -det : det;
}

UniPoly as_poly_in_l(const BiLaurent& a) {
  if (a.is_zero()) return {};
  const int lo = a.min_exponent(Variable::kL);
  std::vector<BiLaurent> c(static_cast<std::size_t>(a.max_exponent(Variable::kL) - lo + 1));
  for (const auto& [e, q] : a.terms())
    c[static_cast<std::size_t>(e.first - lo)].add_term(0, e.second, q);
  return UniPoly(std::move(c));
}

BiLaurent from_poly_in_l(const UniPoly& p) {
  BiLaurent out;
  for (int k = 0; k <= p.degree(); ++k) out += p.coefficient(k).shifted(k, 0);
  return out;
}

}  // namespace knotslope
