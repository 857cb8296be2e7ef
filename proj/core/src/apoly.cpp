#include "knotslope/apoly.hpp"

#include <array>
#include <cmath>

#include "knotslope/error.hpp"

namespace knotslope {

namespace {

using SymMatrix = std::array<UniPoly, 4>;  // row-major 2x2 over Q[M^+-1][t]

SymMatrix sym_mul(const SymMatrix& a, const SymMatrix& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

UniPoly c(const BiLaurent& x) { return UniPoly::constant(x); }

struct RileyLetters {
  int u = 0;
  // u, u^-1, v, v^-1
  std::array<SymMatrix, 4> m;

  const SymMatrix& of(const Letter& l) const {
    const std::size_t base = l.generator == u ? 0 : 2;
    return m[base + (l.exponent > 0 ? 0 : 1)];
  }
};

RileyLetters riley_letters(const KnotPresentation& pres) {
  if (pres.num_generators() != 2)
    throw Error(ErrorCode::kUsage, "A-polynomial elimination needs exactly 2 generators");
  const std::optional<int> mer = pres.meridian_generator();
  if (!mer)
    throw Error(ErrorCode::kUsage, "the meridian must be one of the two generators");
  const BiLaurent mm = BiLaurent::M();
  const BiLaurent mi = BiLaurent::monomial(0, -1);
  const UniPoly t = UniPoly::x();
  RileyLetters out;
  out.u = *mer;
  out.m[0] = {c(mm), c(1), {}, c(mi)};
  out.m[1] = {c(mi), c(-1), {}, c(mm)};
  out.m[2] = {c(mm), {}, t, c(mi)};
  out.m[3] = {c(mi), {}, -t, c(mm)};
  return out;
}

SymMatrix sym_word(const RileyLetters& letters, const Word& w) {
  SymMatrix acc = {c(1), {}, {}, c(1)};
  for (const Letter& l : w.letters()) acc = sym_mul(acc, letters.of(l));
  return acc;
}

}  // namespace

UniPoly riley_polynomial(const KnotPresentation& pres) {
  const RileyLetters letters = riley_letters(pres);
  UniPoly phi;
  bool any = false;
  for (const Relation& r : pres.relations()) {
    const SymMatrix lhs = sym_word(letters, r.lhs);
    const SymMatrix rhs = sym_word(letters, r.rhs);
    for (std::size_t k = 0; k < 4; ++k) {
      const UniPoly d = lhs[k] - rhs[k];
      if (d.is_zero()) continue;
      any = true;
      phi = gcd_over_qm(phi, d);
    }
  }
  if (!any)
    throw Error(ErrorCode::kDegenerate, "relator entries vanish identically in t");
  phi = phi.without_x_factors();
  if (phi.degree() < 1)
    throw Error(ErrorCode::kZeroResultant,
                "Riley polynomial is constant: no irreducible component");
  return phi;
}

ApolyResult compute_apoly_twobridge(const KnotPresentation& pres,
                                    const ApolyOptions& options) {
  ApolyResult out;
  out.riley = riley_polynomial(pres);
  const RileyLetters letters = riley_letters(pres);

  // rho(l) commutes with the upper triangular rho(m), so its (1,1) entry is
  // the eigenvalue on the first basis vector.
  const UniPoly lambda = sym_word(letters, pres.longitude())[0];
  const UniPoly g = c(BiLaurent::L()) - lambda;
  const UniPoly r = pseudo_remainder(g, out.riley);
  out.resultant = resultant(out.riley, r);
  if (out.resultant.is_zero())
    throw Error(ErrorCode::kZeroResultant, "resultant vanishes identically");

  UniPoly p = primitive_part_in_m(as_poly_in_l(out.resultant));
  BiLaurent a = from_poly_in_l(p);
  if (p.degree() >= 1) {
    std::vector<BiLaurent> dc;
    for (int k = 1; k <= p.degree(); ++k) dc.push_back(p.coefficient(k).scaled(k));
    const UniPoly rep = gcd_over_qm(p, UniPoly(std::move(dc)));
    if (rep.degree() >= 1) {
      const BiLaurent rb = from_poly_in_l(rep);
      auto q = exact_divide(a, rb);
      if (!q) throw Error(ErrorCode::kInvariantViolation, "squarefree division not exact");
      a = *q;
      out.repeated_part = rb.canonical();
    }
  }
  a = a.canonical();
  if (options.with_reducible) {
    const BiLaurent reducible = BiLaurent::L() - BiLaurent(1);
    if (!exact_divide(a, reducible)) {
      a = (a * reducible).canonical();
      out.reducible_factor_appended = true;
    }
  }
  out.polynomial = a;
  return out;
}

std::optional<std::complex<double>> log_gauss(const BiLaurent& a, std::complex<double> l,
                                              std::complex<double> m, double tol) {
  if (l == 0.0 || m == 0.0) throw Error(ErrorCode::kUsage, "log_gauss needs L, M nonzero");
  const BiLaurent lal = a.derivative(Variable::kL).shifted(1, 0);
  const BiLaurent mam = a.derivative(Variable::kM).shifted(0, 1);
  const std::complex<double> num = mam.evaluate(l, m);
  const std::complex<double> den = lal.evaluate(l, m);
  const double scale = std::max(lal.magnitude_scale(l, m), mam.magnitude_scale(l, m));
  if (std::abs(num) <= tol * scale && std::abs(den) <= tol * scale)
    throw Error(ErrorCode::kSingularPoint, "both partial derivatives vanish");
  if (std::abs(den) <= tol * std::abs(num)) return std::nullopt;
  return -num / den;
}

}  // namespace knotslope
