#include "knotslope/representation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include <Eigen/Eigenvalues>

#include "json.hpp"
#include "knotslope/error.hpp"

namespace knotslope {

SL2 evaluate_word(std::span<const SL2> images, const Word& w) {
  Matrix2c acc = Matrix2c::Identity();
  for (const Letter& l : w.letters()) {
    const SL2& g = images[static_cast<std::size_t>(l.generator)];
    acc = acc * (l.exponent > 0 ? g.matrix() : g.inverse().matrix());
  }
  return SL2::unchecked(acc);
}

Matrix3c evaluate_groupring(std::span<const SL2> images, const GroupRingElement& e) {
  Matrix3c acc = Matrix3c::Zero();
  for (const auto& [w, c] : e.terms())
    acc += static_cast<double>(c) * adjoint_of(evaluate_word(images, w)).matrix();
  return acc;
}

// ---------------------------------------------------------------- Representation

namespace {

double relation_residual(std::span<const SL2> images, const KnotPresentation& pres) {
  double worst = 0.0;
  for (const auto& r : pres.relations()) {
    const Matrix2c d = evaluate_word(images, r.lhs).matrix() -
                       evaluate_word(images, r.rhs).matrix();
    worst = std::max(worst, d.cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

Representation::Representation(std::shared_ptr<const KnotPresentation> presentation,
                               std::vector<SL2> images, double rel_tol)
    : presentation_(std::move(presentation)), images_(std::move(images)) {
  if (!presentation_) throw Error(ErrorCode::kUsage, "null presentation");
  if (static_cast<int>(images_.size()) != presentation_->num_generators())
    throw Error(ErrorCode::kUsage, "representation needs one image per generator");
  const double residual = relator_residual();
  if (!(residual <= rel_tol))
    throw Error(ErrorCode::kInvariantViolation,
                "relation residual " + std::to_string(residual) +
                    " exceeds tolerance");
}

double Representation::relator_residual() const {
  return relation_residual(images_, *presentation_);
}

SL2 Representation::meridian_image() const {
  return evaluate_word(images_, presentation_->meridian());
}

SL2 Representation::longitude_image() const {
  return evaluate_word(images_, presentation_->longitude());
}

Representation conjugate_rep(const Representation& rep, const Matrix2c& p) {
  const Complex det = p.determinant();
  const double scale = std::max(1e-300, p.cwiseAbs2().sum());
  if (std::abs(det) <= 1e-14 * scale)
    throw Error(ErrorCode::kDegenerate, "conjugating matrix is singular");
  const Matrix2c p_inv = p.inverse();
  std::vector<SL2> images;
  images.reserve(rep.images().size());
  for (const SL2& g : rep.images()) {
    Matrix2c c = p * g.matrix() * p_inv;
    c /= std::sqrt(c.determinant());
    images.push_back(SL2::unchecked(c));
  }
  const double tol = std::max(kDefaultRelTol, 1e3 * rep.relator_residual());
  return Representation(rep.presentation_ptr(), std::move(images), tol);
}

Representation abelian_rep(std::shared_ptr<const KnotPresentation> presentation,
                           Complex lambda) {
  if (std::abs(lambda) == 0.0)
    throw Error(ErrorCode::kUsage, "abelian_rep: lambda must be nonzero");
  Matrix2c d = Matrix2c::Zero();
  d(0, 0) = lambda;
  d(1, 1) = 1.0 / lambda;
  std::vector<SL2> images(static_cast<std::size_t>(presentation->num_generators()),
                          SL2::unchecked(d));
  return Representation(std::move(presentation), std::move(images));
}

// ---------------------------------------------------------------- Riley

namespace {

using CPoly = std::vector<Complex>;  // coefficient k multiplies t^k

CPoly poly_add(const CPoly& a, const CPoly& b, Complex sb = 1.0) {
  CPoly out(std::max(a.size(), b.size()), Complex(0.0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += sb * b[i];
  return out;
}

CPoly poly_mul(const CPoly& a, const CPoly& b) {
  if (a.empty() || b.empty()) return {};
  CPoly out(a.size() + b.size() - 1, Complex(0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Complex poly_eval(const CPoly& p, Complex t) {
  Complex acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
  return acc;
}

CPoly poly_derivative(const CPoly& p) {
  CPoly out;
  for (std::size_t k = 1; k < p.size(); ++k)
    out.push_back(static_cast<double>(k) * p[k]);
  return out;
}

using PolyMatrix = std::array<CPoly, 4>;  // row-major 2x2

PolyMatrix pm_mul(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      out[static_cast<std::size_t>(2 * r + c)] =
          poly_add(poly_mul(a[static_cast<std::size_t>(2 * r)], b[static_cast<std::size_t>(c)]),
                   poly_mul(a[static_cast<std::size_t>(2 * r + 1)], b[static_cast<std::size_t>(2 + c)]));
  return out;
}

PolyMatrix pm_identity() { return {CPoly{1.0}, CPoly{}, CPoly{}, CPoly{1.0}}; }

PolyMatrix pm_evaluate_word(const std::array<PolyMatrix, 4>& letters, const Word& w) {
  PolyMatrix acc = pm_identity();
  for (const Letter& l : w.letters())
    acc = pm_mul(acc, letters[static_cast<std::size_t>(2 * l.generator + (l.exponent > 0 ? 0 : 1))]);
  return acc;
}

std::vector<Complex> polynomial_roots(CPoly p) {
  while (!p.empty() && p.back() == Complex(0.0)) p.pop_back();
  const int n = static_cast<int>(p.size()) - 1;
  if (n < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i)
    companion(i, n - 1) = -p[static_cast<std::size_t>(i)] / p.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  const CPoly dp = poly_derivative(p);
  std::vector<Complex> roots;
  for (int i = 0; i < n; ++i) {
    Complex t = solver.eigenvalues()(i);
    for (int iter = 0; iter < 30; ++iter) {
      const Complex d = poly_eval(dp, t);
      if (std::abs(d) == 0.0) break;
      const Complex step = poly_eval(p, t) / d;
      const Complex next = t - step;
      if (std::abs(poly_eval(p, next)) > std::abs(poly_eval(p, t))) break;
      t = next;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(t))) break;
    }
    roots.push_back(t);
  }
  return roots;
}

}  // namespace

std::vector<SL2> riley_images(Complex m, Complex t) {
  Matrix2c u;
  u << m, 1.0, 0.0, 1.0 / m;
  Matrix2c v;
  v << m, 0.0, t, 1.0 / m;
  return {SL2::unchecked(u), SL2::unchecked(v)};
}

Complex commutator_trace(const Representation& rep) {
  const SL2& u = rep.image(0);
  const SL2& v = rep.image(1);
  return (u * v * u.inverse() * v.inverse()).trace();
}

std::vector<RileyRoot> riley_family(std::shared_ptr<const KnotPresentation> pres,
                                    Complex m, const RileyOptions& options) {
  if (pres->num_generators() != 2)
    throw Error(ErrorCode::kUsage, "Riley family needs a 2-generator presentation");
  if (std::abs(m) == 0.0)
    throw Error(ErrorCode::kUsage, "Riley family needs a nonzero meridian eigenvalue");

  const Complex mi = 1.0 / m;
  // u, u^-1, v, v^-1 with entries polynomial in t
  const std::array<PolyMatrix, 4> letters = {
      PolyMatrix{CPoly{m}, CPoly{1.0}, CPoly{}, CPoly{mi}},
      PolyMatrix{CPoly{mi}, CPoly{-1.0}, CPoly{}, CPoly{m}},
      PolyMatrix{CPoly{m}, CPoly{}, CPoly{0.0, 1.0}, CPoly{mi}},
      PolyMatrix{CPoly{mi}, CPoly{}, CPoly{0.0, -1.0}, CPoly{m}},
  };

  std::vector<CPoly> entries;
  double scale = 0.0;
  for (const auto& r : pres->relations()) {
    const PolyMatrix lhs = pm_evaluate_word(letters, r.lhs);
    const PolyMatrix rhs = pm_evaluate_word(letters, r.rhs);
    for (std::size_t k = 0; k < 4; ++k) {
      CPoly d = poly_add(lhs[k], rhs[k], -1.0);
      for (const Complex& c : d) scale = std::max(scale, std::abs(c));
      entries.push_back(std::move(d));
    }
  }

  std::vector<Complex> candidates;
  bool found_nonzero = false;
  for (CPoly& e : entries) {
    for (Complex& c : e)
      if (std::abs(c) <= 1e-12 * scale) c = 0.0;
    while (!e.empty() && e.back() == Complex(0.0)) e.pop_back();
    if (e.empty()) continue;
    candidates = polynomial_roots(e);
    found_nonzero = true;
    break;
  }
  if (!found_nonzero)
    throw Error(ErrorCode::kDegenerate,
                "relator entries vanish identically in t; no Riley normalization");

  std::vector<RileyRoot> out;
  for (const Complex& t : candidates) {
    bool duplicate = false;
    for (const auto& r : out)
      if (std::abs(r.t - t) <= options.cluster_tol) duplicate = true;
    if (duplicate) continue;
    std::vector<SL2> images = riley_images(m, t);
    if (!(relation_residual(images, *pres) <= options.rel_tol)) continue;
    Representation rep(pres, std::move(images), options.rel_tol);
    const bool reducible = std::abs(commutator_trace(rep) - 2.0) <= options.rel_tol;
    out.push_back({t, std::move(rep), reducible});
  }
  std::sort(out.begin(), out.end(), [](const RileyRoot& a, const RileyRoot& b) {
    if (a.t.real() != b.t.real()) return a.t.real() < b.t.real();
    return a.t.imag() < b.t.imag();
  });
  return out;
}

// ---------------------------------------------------------------- boundary

namespace {

bool is_plus_minus_identity(const SL2& g, double tol) {
  const Matrix2c& m = g.matrix();
  const double plus = (m - Matrix2c::Identity()).cwiseAbs().maxCoeff();
  const double minus = (m + Matrix2c::Identity()).cwiseAbs().maxCoeff();
  return std::min(plus, minus) <= tol;
}

Eigen::Vector2cd eigenvector_for(const Matrix2c& a, Complex lambda) {
  Eigen::Vector2cd x1(a(0, 1), lambda - a(0, 0));
  Eigen::Vector2cd x2(lambda - a(1, 1), a(1, 0));
  Eigen::Vector2cd e = x1.norm() >= x2.norm() ? x1 : x2;
  e.normalize();
  const int k = std::abs(e(0)) > 0.0 ? 0 : 1;
  e *= std::conj(e(k)) / std::abs(e(k));
  return e;
}

bool trace_is_pm2(Complex tr, double tol) {
  return std::abs(tr - 2.0) <= tol || std::abs(tr + 2.0) <= tol;
}

}  // namespace

bool is_boundary_parabolic(const SL2& meridian, const SL2& longitude, double tol) {
  return trace_is_pm2(meridian.trace(), tol) && trace_is_pm2(longitude.trace(), tol);
}

bool is_boundary_parabolic(const Representation& rep, double tol) {
  return is_boundary_parabolic(rep.meridian_image(), rep.longitude_image(), tol);
}

BoundaryData boundary_data(const Representation& rep, double tol, EigenBranch branch) {
  const SL2 m = rep.meridian_image();
  const SL2 l = rep.longitude_image();
  const Matrix2c& mm = m.matrix();
  const Matrix2c& lm = l.matrix();

  BoundaryData out;
  const double scale = std::max(1.0, mm.cwiseAbs().maxCoeff() * lm.cwiseAbs().maxCoeff());
  out.commutator_residual = (mm * lm - lm * mm).cwiseAbs().maxCoeff();
  if (out.commutator_residual > tol * scale)
    throw Error(ErrorCode::kNotCommuting,
                "rho(meridian) and rho(longitude) do not commute (residual " +
                    std::to_string(out.commutator_residual) + ")");
  if (is_plus_minus_identity(m, tol))
    throw Error(ErrorCode::kDegenerate, "rho(meridian) = +-I has no preferred eigenvector");

  const Complex tr = m.trace();
  const Complex disc = std::sqrt(tr * tr - 4.0);
  Complex lambda1 = 0.5 * (tr + disc);
  Complex lambda2 = 0.5 * (tr - disc);
  // order so that lambda1 is the primary branch
  const double gap = std::abs(lambda1) - std::abs(lambda2);
  bool swap = false;
  if (std::abs(gap) > tol) {
    swap = gap < 0.0;
  } else {
    swap = lambda2.imag() > lambda1.imag();
  }
  if (swap) std::swap(lambda1, lambda2);
  const Complex lambda = branch == EigenBranch::kPrimary ? lambda1 : lambda2;

  out.eigenvector = eigenvector_for(mm, lambda);
  // Exact M on the chosen line, then L by the Rayleigh quotient.
  const Eigen::Vector2cd& e = out.eigenvector;
  out.meridian_eigenvalue = e.dot(mm * e);
  out.longitude_eigenvalue = e.dot(lm * e);
  out.eigen_residual = std::max((mm * e - out.meridian_eigenvalue * e).norm(),
                                (lm * e - out.longitude_eigenvalue * e).norm());
  out.parabolic = is_boundary_parabolic(m, l, tol);
  return out;
}

InvariantVector invariant_vector(const SL2& meridian, const SL2& longitude, double tol) {
  CMatrix stacked(3, 6);
  stacked << adjoint_of(meridian).matrix() - Matrix3c::Identity(),
      adjoint_of(longitude).matrix() - Matrix3c::Identity();
  const CMatrix null = nullspace(stacked.transpose(), tol);
  if (null.rows() != 1)
    throw Error(ErrorCode::kDegenerate,
                "Ad-invariant boundary vectors span dimension " +
                    std::to_string(null.rows()) + ", expected 1");
  RowVector3c v = null.row(0);
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  v /= v(k);
  InvariantVector out;
  out.v = v;
  const double norm = v.norm();
  out.residual = (v * stacked).norm() / std::max(norm, 1e-300) /
                 std::max(1.0, stacked.cwiseAbs().maxCoeff());
  return out;
}

InvariantVector invariant_vector(const Representation& rep, double tol) {
  return invariant_vector(rep.meridian_image(), rep.longitude_image(), tol);
}

ParabolicModulus parabolic_modulus(const SL2& meridian, const SL2& longitude, double tol) {
  if (!is_boundary_parabolic(meridian, longitude, tol))
    throw Error(ErrorCode::kUsage, "parabolic_modulus needs a boundary-parabolic rep");
  if (is_plus_minus_identity(meridian, tol))
    throw Error(ErrorCode::kDegenerate, "rho(meridian) = +-I: modulus undefined");

  ParabolicModulus out;
  out.meridian_sign = meridian.trace().real() > 0.0 ? 1 : -1;
  out.longitude_sign = longitude.trace().real() > 0.0 ? 1 : -1;
  const double sm = out.meridian_sign;

  // N = s m - I is nilpotent; with f any vector outside ker N and e = s N f,
  // P = [e f] gives P^-1 rho(m) P = [[s, 1], [0, s]].
  const Matrix2c n = sm * meridian.matrix() - Matrix2c::Identity();
  const Eigen::Vector2cd f = n.col(0).norm() >= n.col(1).norm()
                                 ? Eigen::Vector2cd(1.0, 0.0)
                                 : Eigen::Vector2cd(0.0, 1.0);
  const Eigen::Vector2cd e = sm * (n * f);
  Matrix2c p;
  p.col(0) = e;
  p.col(1) = f;
  const Matrix2c lc = p.inverse() * longitude.matrix() * p;
  out.raw_entry = lc(0, 1);
  out.tau = static_cast<double>(out.meridian_sign * out.longitude_sign) * out.raw_entry;
  return out;
}

ParabolicModulus parabolic_modulus(const Representation& rep, double tol) {
  return parabolic_modulus(rep.meridian_image(), rep.longitude_image(), tol);
}

std::optional<Matrix2c> su2_conjugator(const Representation& rep, double tol) {
  // H = [[a, b + i c], [b - i c, d]]; g^* H g = H is real-linear in (a,b,c,d).
  const std::array<Matrix2c, 4> basis = [] {
    std::array<Matrix2c, 4> b;
    b[0] << 1.0, 0.0, 0.0, 0.0;
    b[1] << 0.0, 1.0, 1.0, 0.0;
    b[2] << 0.0, Complex(0, 1), Complex(0, -1), 0.0;
    b[3] << 0.0, 0.0, 0.0, 1.0;
    return b;
  }();
  const auto& images = rep.images();
  Eigen::MatrixXd system(static_cast<Eigen::Index>(8 * images.size()), 4);
  for (std::size_t gi = 0; gi < images.size(); ++gi) {
    const Matrix2c& g = images[gi].matrix();
    for (int k = 0; k < 4; ++k) {
      const Matrix2c d = g.adjoint() * basis[static_cast<std::size_t>(k)] * g -
                         basis[static_cast<std::size_t>(k)];
      for (int e = 0; e < 4; ++e) {
        const Eigen::Index row = static_cast<Eigen::Index>(8 * gi) + 2 * e;
        system(row, k) = d(e / 2, e % 2).real();
        system(row + 1, k) = d(e / 2, e % 2).imag();
      }
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s(3) > tol * std::max(1.0, s(0))) return std::nullopt;
  const Eigen::Vector4d x = svd.matrixV().col(3);
  Matrix2c h = Matrix2c::Zero();
  for (int k = 0; k < 4; ++k) h += x(k) * basis[static_cast<std::size_t>(k)];
  Eigen::SelfAdjointEigenSolver<Matrix2c> eig(h);
  Eigen::Vector2d ev = eig.eigenvalues();
  if (ev(0) < 0.0 && ev(1) < 0.0) ev = -ev;
  if (!(ev(0) > tol && ev(1) > tol)) return std::nullopt;
  Matrix2c q = eig.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
               eig.eigenvectors().adjoint();
  const Matrix2c q_inv = q.inverse();
  for (const SL2& g : images) {
    const Matrix2c u = q * g.matrix() * q_inv;
    const double scale = std::max(1.0, g.matrix().cwiseAbs().maxCoeff());
    if ((u.adjoint() * u - Matrix2c::Identity()).cwiseAbs().maxCoeff() > 1e3 * tol * scale)
      return std::nullopt;
  }
  return q;
}

// ---------------------------------------------------------------- JSON

namespace {

nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json matrix_json(const Matrix2c& m) {
  return nlohmann::json::array(
      {nlohmann::json::array({complex_json(m(0, 0)), complex_json(m(0, 1))}),
       nlohmann::json::array({complex_json(m(1, 0)), complex_json(m(1, 1))})});
}

}  // namespace

std::string representation_to_json(const Representation& rep,
                                   const std::optional<BoundaryData>& boundary) {
  nlohmann::json j;
  nlohmann::json gens = nlohmann::json::object();
  for (int g = 0; g < rep.presentation().num_generators(); ++g)
    gens[rep.presentation().generator_name(g)] = matrix_json(rep.image(g).matrix());
  j["generators"] = gens;
  if (boundary) {
    j["boundary"] = {
        {"M", complex_json(boundary->meridian_eigenvalue)},
        {"L", complex_json(boundary->longitude_eigenvalue)},
        {"eigvec", nlohmann::json::array({complex_json(boundary->eigenvector(0)),
                                          complex_json(boundary->eigenvector(1))})},
        {"parabolic", boundary->parabolic},
    };
  }
  return j.dump(2);
}

}  // namespace knotslope
