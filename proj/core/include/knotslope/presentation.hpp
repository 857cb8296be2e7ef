#pragma once

// Finitely presented knot groups: free-group words, the integral group ring
// and Fox free differential calculus.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace knotslope {

/// One letter of a free-group word: generator index and exponent +1 / -1.
struct Letter {
  int generator = 0;
  int exponent = 1;

  Letter inverse() const { return {generator, -exponent}; }
  auto operator<=>(const Letter&) const = default;
};

/// A word in the free group on indexed generators. Words are not reduced
/// implicitly; use free_reduce().
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);

  /// g^power expanded into |power| letters.
  static Word power(int generator, int power = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }

  Word inverse() const;
  Word operator*(const Word& rhs) const;
  Word& operator*=(const Word& rhs);

  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

/// Cancels adjacent x x^-1 pairs until none remain. Idempotent.
Word free_reduce(const Word& w);

/// Sum of the exponents of `generator` in `w`.
int exponent_sum(const Word& w, int generator);

/// Sum of all exponents; the abelianization when every generator is a meridian.
int total_exponent_sum(const Word& w);

/// Finite integral combination of freely reduced words.
class GroupRingElement {
 public:
  using Terms = std::map<Word, std::int64_t>;

  GroupRingElement() = default;
  static GroupRingElement one();
  static GroupRingElement of(const Word& w, std::int64_t coefficient = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds coefficient * w; w is reduced first and zero coefficients dropped.
  void add(const Word& w, std::int64_t coefficient);

  GroupRingElement operator+(const GroupRingElement& rhs) const;
  GroupRingElement operator-(const GroupRingElement& rhs) const;
  GroupRingElement operator*(const GroupRingElement& rhs) const;
  GroupRingElement operator-() const;

  /// w * this
  GroupRingElement left_multiply(const Word& w) const;

  bool operator==(const GroupRingElement&) const = default;

 private:
  Terms terms_;
};

/// Fox derivative d w / d x_generator.
GroupRingElement fox_derivative(const Word& w, int generator);

struct Relation {
  Word lhs;
  Word rhs;

  /// lhs * rhs^-1, freely reduced.
  Word relator() const { return free_reduce(lhs * rhs.inverse()); }

  bool operator==(const Relation&) const = default;
};

/// A knot group presentation together with a meridian and a preferred
/// longitude. Every generator is assumed to be a meridian, so the
/// abelianization is the total exponent sum.
class KnotPresentation {
 public:
  KnotPresentation(std::vector<std::string> generators,
                   std::vector<Relation> relations, Word meridian,
                   Word longitude);

  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<Relation>& relations() const { return relations_; }
  const Word& meridian() const { return meridian_; }
  const Word& longitude() const { return longitude_; }

  int num_generators() const { return static_cast<int>(generators_.size()); }
  std::optional<int> generator_index(std::string_view name) const;
  const std::string& generator_name(int index) const {
    return generators_.at(static_cast<std::size_t>(index));
  }

  /// If the meridian is a single generator letter with exponent +1, its index.
  std::optional<int> meridian_generator() const;

  std::string format_word(const Word& w) const;

  bool operator==(const KnotPresentation&) const = default;

 private:
  std::vector<std::string> generators_;
  std::vector<Relation> relations_;
  Word meridian_;
  Word longitude_;
};

/// Parses
///   gens: u v ; rel: u v u = v u v ; meridian: u ; longitude: v u v^-1 ...
/// Throws ParseError on syntax errors and unknown generators, and
/// Error(kInvalidPresentation) when the longitude is empty or has nonzero
/// exponent sum, or a relation is not balanced in the abelianization.
KnotPresentation parse_presentation(std::string_view text);

/// One clause per line; parse_presentation(format_presentation(p)) == p.
std::string format_presentation(const KnotPresentation& pres);

}  // namespace knotslope
