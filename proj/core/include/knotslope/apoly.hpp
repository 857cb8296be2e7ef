#pragma once

// A-polynomials of two-bridge presentations by exact Riley elimination, and
// the logarithmic Gauss map of a plane curve A(L, M) = 0.

#include <complex>
#include <optional>

#include "knotslope/bilaurent.hpp"
#include "knotslope/presentation.hpp"

namespace knotslope {

struct ApolyOptions {
  /// Multiply by L - 1 when it is not already a factor.
  bool with_reducible = false;
};

struct ApolyResult {
  /// Canonical, squarefree in L, free of factors in M alone.
  BiLaurent polynomial;
  /// Riley polynomial phi(M, t) with factors of t removed.
  UniPoly riley;
  /// Res_t before content removal and squarefree reduction.
  BiLaurent resultant;
  /// gcd(A, dA/dL) that was divided out; 1 when already squarefree.
  BiLaurent repeated_part{1};
  bool reducible_factor_appended = false;
};

/// The Riley normal form with the meridian generator as u:
/// rho(u) = [[M,1],[0,1/M]], rho(v) = [[M,0],[t,1/M]]. The Riley polynomial
/// is the gcd over Q(M)[t] of all relator entries. Throws Error(kUsage) unless
/// the presentation has two generators and the meridian is one of them,
/// Error(kDegenerate) if every entry vanishes, Error(kZeroResultant) if there
/// is no irreducible component or the resultant vanishes.
UniPoly riley_polynomial(const KnotPresentation& pres);
ApolyResult compute_apoly_twobridge(const KnotPresentation& pres,
                                    const ApolyOptions& options = {});

/// -(M/L) * dA/dM / dA/dL at (L, M); nullopt stands for infinity, returned
/// when |L dA/dL| <= tol * |M dA/dM|. Throws Error(kSingularPoint) when both
/// are below tol relative to the term magnitudes and Error(kUsage) for L or M = 0.
std::optional<std::complex<double>> log_gauss(const BiLaurent& a, std::complex<double> l,
                                              std::complex<double> m, double tol = 1e-10);

}  // namespace knotslope
