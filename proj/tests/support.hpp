#pragma once

#include <complex>
#include <random>
#include <vector>

#include "knotslope/bilaurent.hpp"
#include "knotslope/numeric_linear.hpp"
#include "knotslope/presentation.hpp"

namespace knotslope::testing {

using C = std::complex<double>;

inline C random_complex(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> d(-radius, radius);
  return {d(rng), d(rng)};
}

/// Random element of SL2 with entries of modulus roughly <= radius.
inline SL2 random_sl2(std::mt19937_64& rng, double radius = 2.0) {
  while (true) {
    const C a = random_complex(rng, radius);
    const C b = random_complex(rng, radius);
    const C c = random_complex(rng, radius);
    if (std::abs(a) < 0.3) continue;
    const C d = (1.0 + b * c) / a;
    if (std::abs(d) > 2.0 * radius) continue;
    Matrix2c m;
    m << a, b, c, d;
    return SL2(m);
  }
}

inline Word random_word(std::mt19937_64& rng, int generators, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen(0, generators - 1);
  std::bernoulli_distribution sign(0.5);
  std::vector<Letter> letters;
  const int n = len(rng);
  for (int k = 0; k < n; ++k) letters.push_back({gen(rng), sign(rng) ? 1 : -1});
  return Word(std::move(letters));
}

/// Small random Laurent polynomial with integer coefficients in [-3, 3].
inline BiLaurent random_bilaurent(std::mt19937_64& rng, int terms, int max_exp,
                                  bool with_l = true) {
  std::uniform_int_distribution<int> e(0, max_exp);
  std::uniform_int_distribution<int> c(-3, 3);
  BiLaurent out;
  while (out.size() < static_cast<std::size_t>(terms)) {
    const int k = c(rng);
    if (k == 0) continue;
    out.add_term(with_l ? e(rng) : 0, e(rng), k);
  }
  return out;
}

/// Random polynomial in t of the given degree with BiLaurent coefficients.
inline UniPoly random_unipoly(std::mt19937_64& rng, int degree, bool with_l = true) {
  std::vector<BiLaurent> c;
  for (int k = 0; k <= degree; ++k) c.push_back(random_bilaurent(rng, 2, 2, with_l));
  return UniPoly(std::move(c));
}

inline double relative_error(C a, C b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace knotslope::testing
