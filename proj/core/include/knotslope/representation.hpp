#pragma once

// SL(2,C) representations of knot groups: word evaluation, Riley families for
// two-generator presentations, boundary eigenvalue data, Ad-invariant vectors
// and the boundary-parabolic modulus.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "knotslope/numeric_linear.hpp"
#include "knotslope/presentation.hpp"

namespace knotslope {

inline constexpr double kDefaultRelTol = 1e-8;
inline constexpr double kDefaultEigTol = 1e-8;

/// Product of images and inverse images along the word.
SL2 evaluate_word(std::span<const SL2> images, const Word& w);

/// Sum of coefficient * adjoint_of(evaluate_word(word)).
Matrix3c evaluate_groupring(std::span<const SL2> images, const GroupRingElement& e);

/// Generator -> SL2 assignment satisfying every relation of its presentation.
class Representation {
 public:
  /// Throws Error(kInvariantViolation) if a relation residual exceeds rel_tol.
  Representation(std::shared_ptr<const KnotPresentation> presentation,
                 std::vector<SL2> images, double rel_tol = kDefaultRelTol);

  const KnotPresentation& presentation() const { return *presentation_; }
  const std::shared_ptr<const KnotPresentation>& presentation_ptr() const {
    return presentation_;
  }
  const std::vector<SL2>& images() const { return images_; }
  const SL2& image(int generator) const {
    return images_.at(static_cast<std::size_t>(generator));
  }

  /// max over relations of the entrywise max |rho(lhs) - rho(rhs)|.
  double relator_residual() const;

  SL2 meridian_image() const;
  SL2 longitude_image() const;

 private:
  std::shared_ptr<const KnotPresentation> presentation_;
  std::vector<SL2> images_;
};

inline SL2 evaluate_word(const Representation& rep, const Word& w) {
  return evaluate_word(rep.images(), w);
}
inline Matrix3c evaluate_groupring(const Representation& rep,
                                   const GroupRingElement& e) {
  return evaluate_groupring(rep.images(), e);
}

/// P rho P^-1 on every generator, each renormalized to det 1.
Representation conjugate_rep(const Representation& rep, const Matrix2c& p);

/// gamma -> diag(lambda^phi(gamma), lambda^-phi(gamma)), phi = exponent sum.
Representation abelian_rep(std::shared_ptr<const KnotPresentation> presentation,
                           Complex lambda);

struct RileyOptions {
  double rel_tol = kDefaultRelTol;
  double cluster_tol = 1e-6;
};

struct RileyRoot {
  Complex t;
  Representation rep;
  /// tr rho(u v u^-1 v^-1) = 2 within tol.
  bool reducible = false;
};

/// rho(u) = [[M,1],[0,M^-1]], rho(v) = [[M,0],[t,M^-1]] where u, v are the two
/// generators in presentation order. Returns one representation per common
/// root t of the relator entry polynomials; an empty list when there are none.
std::vector<RileyRoot> riley_family(
    std::shared_ptr<const KnotPresentation> presentation, Complex meridian_eigenvalue,
    const RileyOptions& options = {});

/// The Riley image pair for parameters (M, t).
std::vector<SL2> riley_images(Complex meridian_eigenvalue, Complex t);

/// tr rho(u v u^-1 v^-1) for the first two generators.
Complex commutator_trace(const Representation& rep);

enum class EigenBranch {
  kPrimary,  ///< eigenvalue of rho(m) with |M| >= 1
  kSwapped,  ///< the other eigenvalue (the involution (L, M) -> (1/L, 1/M))
};

struct BoundaryData {
  Complex meridian_eigenvalue;   ///< M
  Complex longitude_eigenvalue;  ///< L, read on the same eigenvector
  Eigen::Vector2cd eigenvector;
  bool parabolic = false;
  double commutator_residual = 0.0;
  double eigen_residual = 0.0;
};

/// Throws Error(kNotCommuting) if rho(m), rho(l) fail to commute and
/// Error(kDegenerate) if rho(m) = +-I.
BoundaryData boundary_data(const Representation& rep, double tol = kDefaultEigTol,
                           EigenBranch branch = EigenBranch::kPrimary);

struct InvariantVector {
  RowVector3c v;  ///< (E, H, F) coordinates; largest-modulus coordinate is 1
  double residual = 0.0;
};

/// Left nullspace of [Ad(rho(m)) - I, Ad(rho(l)) - I]. Throws
/// Error(kDegenerate) unless it is one-dimensional at tolerance.
InvariantVector invariant_vector(const SL2& meridian, const SL2& longitude,
                                 double tol = kDefaultRankTol);
InvariantVector invariant_vector(const Representation& rep,
                                 double tol = kDefaultRankTol);

/// |tr - 2| <= tol or |tr + 2| <= tol for both rho(m) and rho(l).
bool is_boundary_parabolic(const SL2& meridian, const SL2& longitude,
                           double tol = kDefaultEigTol);
bool is_boundary_parabolic(const Representation& rep, double tol = kDefaultEigTol);

struct ParabolicModulus {
  /// Translation ratio of the unipotent parts: sign_m * sign_l * raw_entry.
  Complex tau;
  /// (1,2) entry of rho(l) after conjugating rho(m) to [[s,1],[0,s]].
  Complex raw_entry;
  int meridian_sign = 1;
  int longitude_sign = 1;
};

/// Requires a boundary-parabolic rep with rho(m) != +-I.
ParabolicModulus parabolic_modulus(const SL2& meridian, const SL2& longitude,
                                   double tol = kDefaultEigTol);
ParabolicModulus parabolic_modulus(const Representation& rep,
                                   double tol = kDefaultEigTol);

/// A matrix Q with Q rho(g) Q^-1 in SU(2) for every generator, if the image
/// preserves a positive definite Hermitian form.
std::optional<Matrix2c> su2_conjugator(const Representation& rep, double tol = 1e-8);

/// {"generators": {name: [[[re,im],[re,im]],[[re,im],[re,im]]]}, "boundary": {...}}
std::string representation_to_json(const Representation& rep,
                                   const std::optional<BoundaryData>& boundary);

}  // namespace knotslope
