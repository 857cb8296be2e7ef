#include "knotslope/presentation.hpp"

#include <cctype>
#include <charconv>
#include <set>
#include <sstream>
#include <utility>

#include "knotslope/error.hpp"

namespace knotslope {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kInvalidPresentation: return "invalid presentation";
    case ErrorCode::kInvariantViolation: return "invariant violation";
    case ErrorCode::kNotCommuting: return "boundary images do not commute";
    case ErrorCode::kDegenerate: return "degenerate";
    case ErrorCode::kNotAdmissible: return "not admissible";
    case ErrorCode::kBoundaryParabolic: return "boundary-parabolic";
    case ErrorCode::kSingularPoint: return "singular point";
    case ErrorCode::kZeroResultant: return "zero resultant";
    case ErrorCode::kUsage: return "usage error";
  }
  return "unknown error";
}

// ---------------------------------------------------------------- Word

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

Word Word::power(int generator, int power) {
  std::vector<Letter> letters;
  const int sign = power < 0 ? -1 : 1;
  for (int k = 0; k < power * sign; ++k) letters.push_back({generator, sign});
  return Word(std::move(letters));
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    out.push_back(it->inverse());
  return Word(std::move(out));
}

Word Word::operator*(const Word& rhs) const {
  Word out = *this;
  out *= rhs;
  return out;
}

Word& Word::operator*=(const Word& rhs) {
  letters_.insert(letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
  return *this;
}

Word free_reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (const Letter& l : w.letters()) {
    if (!stack.empty() && stack.back() == l.inverse()) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return Word(std::move(stack));
}

int exponent_sum(const Word& w, int generator) {
  int sum = 0;
  for (const Letter& l : w.letters())
    if (l.generator == generator) sum += l.exponent;
  return sum;
}

int total_exponent_sum(const Word& w) {
  int sum = 0;
  for (const Letter& l : w.letters()) sum += l.exponent;
  return sum;
}

// ---------------------------------------------------------------- group ring

GroupRingElement GroupRingElement::one() { return of(Word{}, 1); }

GroupRingElement GroupRingElement::of(const Word& w, std::int64_t coefficient) {
  GroupRingElement e;
  e.add(w, coefficient);
  return e;
}

void GroupRingElement::add(const Word& w, std::int64_t coefficient) {
  if (coefficient == 0) return;
  Word reduced = free_reduce(w);
  auto it = terms_.find(reduced);
  if (it == terms_.end()) {
    terms_.emplace(std::move(reduced), coefficient);
  } else {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& rhs) const {
  GroupRingElement out = *this;
  for (const auto& [w, c] : rhs.terms_) out.add(w, c);
  return out;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& rhs) const {
  GroupRingElement out = *this;
  for (const auto& [w, c] : rhs.terms_) out.add(w, -c);
  return out;
}

GroupRingElement GroupRingElement::operator-() const {
  GroupRingElement out;
  for (const auto& [w, c] : terms_) out.terms_.emplace(w, -c);
  return out;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& rhs) const {
  GroupRingElement out;
  for (const auto& [w1, c1] : terms_)
    for (const auto& [w2, c2] : rhs.terms_) out.add(w1 * w2, c1 * c2);
  return out;
}

GroupRingElement GroupRingElement::left_multiply(const Word& w) const {
  GroupRingElement out;
  for (const auto& [v, c] : terms_) out.add(w * v, c);
  return out;
}

// d(a_1 ... a_n)/dx = sum_k a_1 ... a_{k-1} d(a_k)/dx, with dx/dx = 1 and
// d(x^-1)/dx = -x^-1.
GroupRingElement fox_derivative(const Word& w, int generator) {
  GroupRingElement out;
  Word prefix;
  for (const Letter& l : w.letters()) {
    if (l.generator == generator) {
      if (l.exponent > 0) {
        out.add(prefix, 1);
      } else {
        out.add(prefix * Word({l}), -1);
      }
    }
    prefix *= Word({l});
  }
  return out;
}

// ---------------------------------------------------------------- presentation

KnotPresentation::KnotPresentation(std::vector<std::string> generators,
                                   std::vector<Relation> relations,
                                   Word meridian, Word longitude)
    : generators_(std::move(generators)),
      relations_(std::move(relations)),
      meridian_(std::move(meridian)),
      longitude_(std::move(longitude)) {
  if (generators_.empty())
    throw Error(ErrorCode::kInvalidPresentation, "no generators");
  std::set<std::string> seen;
  for (const auto& g : generators_) {
    if (g.empty())
      throw Error(ErrorCode::kInvalidPresentation, "empty generator name");
    if (!seen.insert(g).second)
      throw Error(ErrorCode::kInvalidPresentation,
                  "duplicate generator '" + g + "'");
  }
  auto check_word = [&](const Word& w, const char* what) {
    for (const Letter& l : w.letters()) {
      if (l.generator < 0 || l.generator >= num_generators() ||
          (l.exponent != 1 && l.exponent != -1))
        throw Error(ErrorCode::kInvalidPresentation,
                    std::string("malformed letter in ") + what);
    }
  };
  for (const auto& r : relations_) {
    check_word(r.lhs, "relation");
    check_word(r.rhs, "relation");
    if (total_exponent_sum(r.lhs) != total_exponent_sum(r.rhs))
      throw Error(ErrorCode::kInvalidPresentation,
                  "relation " + format_word(r.lhs) + " = " +
                      format_word(r.rhs) +
                      " is not balanced in the abelianization");
  }
  check_word(meridian_, "meridian");
  check_word(longitude_, "longitude");
  if (meridian_.empty())
    throw Error(ErrorCode::kInvalidPresentation, "meridian word is empty");
  if (longitude_.empty())
    throw Error(ErrorCode::kInvalidPresentation, "longitude word is empty");
  const int longitude_sum = total_exponent_sum(longitude_);
  if (longitude_sum != 0)
    throw Error(ErrorCode::kInvalidPresentation,
                "longitude exponent sum is " + std::to_string(longitude_sum) +
                    ", expected 0");
}

std::optional<int> KnotPresentation::generator_index(std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> KnotPresentation::meridian_generator() const {
  if (meridian_.size() == 1 && meridian_.letters()[0].exponent == 1)
    return meridian_.letters()[0].generator;
  return std::nullopt;
}

std::string KnotPresentation::format_word(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  const auto& letters = w.letters();
  std::size_t i = 0;
  while (i < letters.size()) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    const int power = static_cast<int>(j - i) * letters[i].exponent;
    if (!out.empty()) out += ' ';
    out += generator_name(letters[i].generator);
    if (power != 1) out += '^' + std::to_string(power);
    i = j;
  }
  return out;
}

// ---------------------------------------------------------------- parser

namespace {

class PresentationParser {
 public:
  explicit PresentationParser(std::string_view text) : text_(text) {}

  KnotPresentation parse() {
    expect_keyword("gens");
    std::vector<std::string> gens;
    skip_space();
    while (!at_end() && peek() != ';') {
      const auto [line, col] = position();
      std::string name = identifier();
      for (const auto& g : gens)
        if (g == name) throw ParseError("duplicate generator '" + name + "'", line, col);
      gens.push_back(std::move(name));
      skip_space();
    }
    if (gens.empty()) fail("expected at least one generator name");
    generators_ = gens;

    std::vector<Relation> relations;
    std::optional<Word> meridian;
    std::optional<Word> longitude;
    while (true) {
      skip_space();
      if (at_end()) break;
      expect(';');
      skip_space();
      if (at_end()) break;
      const auto [line, col] = position();
      const std::string key = identifier();
      skip_space();
      expect(':');
      if (key == "rel") {
        skip_space();
        if (at_end() || peek() == ';') continue;  // empty clause
        Word lhs = word();
        skip_space();
        expect('=');
        Word rhs = word();
        relations.push_back({std::move(lhs), std::move(rhs)});
      } else if (key == "meridian") {
        if (meridian) throw ParseError("duplicate meridian clause", line, col);
        meridian = word();
      } else if (key == "longitude") {
        if (longitude) throw ParseError("duplicate longitude clause", line, col);
        longitude = word();
      } else {
        throw ParseError("unknown clause '" + key + "'", line, col);
      }
    }
    if (!meridian) fail("missing meridian clause");
    if (!longitude) fail("missing longitude clause");
    return KnotPresentation(std::move(gens), std::move(relations),
                            std::move(*meridian), std::move(*longitude));
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  std::pair<int, int> position() const {
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

  [[noreturn]] void fail(const std::string& what) const {
    const auto [line, col] = position();
    throw ParseError(what, line, col);
  }

  void skip_space() {
    while (!at_end()) {
      const char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void expect_keyword(std::string_view kw) {
    skip_space();
    const auto start = pos_;
    const std::string got = at_end() ? std::string() : identifier();
    if (got != kw) {
      pos_ = start;
      fail("expected '" + std::string(kw) + ":'");
    }
    skip_space();
    expect(':');
  }

  static bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string identifier() {
    if (at_end() || !is_ident_start(peek())) fail("expected a name");
    const auto start = pos_;
    while (!at_end() && is_ident_char(peek())) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  int signed_integer() {
    const auto start = pos_;
    if (!at_end() && (peek() == '-' || peek() == '+')) ++pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    std::string_view digits = text_.substr(start, pos_ - start);
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
      pos_ = start;
      fail("expected an integer exponent");
    }
    return value;
  }

  // word = ( name [^ int] | "1" )*, terminated by ';', '=' or end of input
  Word word() {
    Word w;
    while (true) {
      skip_space();
      if (at_end() || peek() == ';' || peek() == '=') break;
      if (peek() == '1') {
        ++pos_;
        continue;
      }
      const auto [line, col] = position();
      const std::string name = identifier();
      int index = -1;
      for (std::size_t i = 0; i < generators_.size(); ++i)
        if (generators_[i] == name) index = static_cast<int>(i);
      if (index < 0) throw ParseError("unknown generator '" + name + "'", line, col);
      int power = 1;
      skip_space();
      if (!at_end() && peek() == '^') {
        ++pos_;
        skip_space();
        power = signed_integer();
      }
      w *= Word::power(index, power);
    }
    return w;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::string> generators_;
};

}  // namespace

KnotPresentation parse_presentation(std::string_view text) {
  return PresentationParser(text).parse();
}

std::string format_presentation(const KnotPresentation& pres) {
  std::ostringstream out;
  out << "gens:";
  for (const auto& g : pres.generators()) out << ' ' << g;
  out << ";\n";
  for (const auto& r : pres.relations())
    out << "rel: " << pres.format_word(r.lhs) << " = " << pres.format_word(r.rhs)
        << ";\n";
  out << "meridian: " << pres.format_word(pres.meridian()) << ";\n";
  out << "longitude: " << pres.format_word(pres.longitude()) << '\n';
  return out.str();
}

}  // namespace knotslope
