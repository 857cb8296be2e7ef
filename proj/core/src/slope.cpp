#include "knotslope/slope.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "knotslope/error.hpp"

namespace knotslope {

namespace {

std::string fresh_name(const std::vector<std::string>& taken, std::string name) {
  while (std::find(taken.begin(), taken.end(), name) != taken.end()) name += "'";
  return name;
}

Word rewrite(const Word& w, const std::vector<int>& map) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (const Letter& l : w.letters())
    out.push_back({map[static_cast<std::size_t>(l.generator)], l.exponent});
  return Word(std::move(out));
}

}  // namespace

AugmentedPresentation augment(std::shared_ptr<const KnotPresentation> pres) {
  if (!pres) throw Error(ErrorCode::kUsage, "augment: null presentation");
  if (pres->longitude().empty())
    throw Error(ErrorCode::kInvalidPresentation, "longitude word is empty");

  AugmentedPresentation aug;
  aug.base = pres;
  const auto& names = pres->generators();
  const std::optional<int> mer = pres->meridian_generator();
  aug.fresh_meridian = !mer.has_value();

  aug.generator_names.push_back(fresh_name(names, "l"));
  aug.base_to_augmented.assign(names.size(), -1);
  if (mer) {
    aug.generator_names.push_back(names[static_cast<std::size_t>(*mer)]);
    aug.base_to_augmented[static_cast<std::size_t>(*mer)] = AugmentedPresentation::kMeridian;
  } else {
    aug.generator_names.push_back(fresh_name(names, "m"));
  }
  for (std::size_t g = 0; g < names.size(); ++g) {
    if (aug.base_to_augmented[g] >= 0) continue;
    aug.base_to_augmented[g] = aug.num_generators();
    aug.generator_names.push_back(names[g]);
  }

  for (const Relation& r : pres->relations())
    aug.relators.push_back(rewrite(r.relator(), aug.base_to_augmented));

  const Word ell = Word::power(AugmentedPresentation::kLongitude);
  const Word m = Word::power(AugmentedPresentation::kMeridian);
  if (aug.fresh_meridian)
    aug.relators.push_back(
        free_reduce(m * rewrite(pres->meridian(), aug.base_to_augmented).inverse()));
  aug.relators.push_back(
      free_reduce(ell * rewrite(pres->longitude(), aug.base_to_augmented).inverse()));
  aug.relators.push_back(m * ell * m.inverse() * ell.inverse());
  return aug;
}

std::vector<SL2> augmented_images(const AugmentedPresentation& aug,
                                  const Representation& rep) {
  std::vector<SL2> images(static_cast<std::size_t>(aug.num_generators()));
  images[AugmentedPresentation::kLongitude] = rep.longitude_image();
  images[AugmentedPresentation::kMeridian] = rep.meridian_image();
  for (std::size_t g = 0; g < aug.base_to_augmented.size(); ++g)
    images[static_cast<std::size_t>(aug.base_to_augmented[g])] =
        rep.image(static_cast<int>(g));
  return images;
}

TwistedAlexanderMatrix build_twisted_alexander(const AugmentedPresentation& aug,
                                               const Representation& rep) {
  const std::vector<SL2> images = augmented_images(aug, rep);
  TwistedAlexanderMatrix out;
  out.num_relators = aug.num_relators();
  out.num_generators = aug.num_generators();
  out.matrix = CMatrix::Zero(3 * out.num_relators, 3 * out.num_generators);
  for (int i = 0; i < out.num_relators; ++i)
    for (int j = 0; j < out.num_generators; ++j)
      out.matrix.block<3, 3>(3 * i, 3 * j) = evaluate_groupring(
          images, fox_derivative(aug.relators[static_cast<std::size_t>(i)], j));
  return out;
}

SlopeValue SlopeValue::from_reading(Complex s) {
  SlopeValue out;
  if (std::abs(s) <= 1.0) {
    out.a = 1.0;
    out.b = -s;
  } else {
    out.a = 1.0 / s;
    out.b = -1.0;
  }
  return out;
}

namespace {

// Unit rows: same row space, better conditioned SVD.
CMatrix normalized_rows(const CMatrix& a) {
  CMatrix out = a;
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    const double n = out.row(r).norm();
    if (n > 0.0) out.row(r) /= n;
  }
  return out;
}

CMatrix boundary_classes(const RowVector3c& v, Eigen::Index cols) {
  CMatrix w = CMatrix::Zero(2, cols);
  w.block<1, 3>(0, 0) = v;
  w.block<1, 3>(1, 3) = v;
  return w;
}

}  // namespace

SlopeValue compute_slope(const AugmentedPresentation& aug, const Representation& rep,
                         const RowVector3c& v, const SlopeOptions& options) {
  if (is_boundary_parabolic(rep, options.parabolic_tol))
    throw Error(ErrorCode::kBoundaryParabolic,
                "boundary-parabolic representation; use slope_of_character");
  if (v.norm() == 0.0) throw Error(ErrorCode::kUsage, "invariant vector is zero");

  const TwistedAlexanderMatrix tam = build_twisted_alexander(aug, rep);
  const CMatrix rows = normalized_rows(tam.matrix);
  const CMatrix w = boundary_classes(v, rows.cols());
  const CMatrix inter = subspace_intersection(rows, w, options.rank_tol);
  if (inter.rows() == 0)
    throw Error(ErrorCode::kNotAdmissible,
                "boundary classes meet the row space trivially");
  if (inter.rows() > 1)
    throw Error(ErrorCode::kDegenerate,
                "boundary classes meet the row space in dimension " +
                    std::to_string(inter.rows()));

  const CRowVector x = inter.row(0);
  const double vv = v.squaredNorm();
  // W has disjoint supports, so the least-squares coordinates decouple.
  Complex a = (x.segment<3>(0) * v.adjoint())(0) / vv;
  Complex b = (x.segment<3>(3) * v.adjoint())(0) / vv;
  const CRowVector fit = a * w.row(0) + b * w.row(1);
  SlopeValue out;
  out.coordinate_residual = (x - fit).norm() / x.norm();
  if (out.coordinate_residual > options.coordinate_tol)
    throw Error(ErrorCode::kNotAdmissible,
                "intersection is not spanned by the boundary classes (residual " +
                    std::to_string(out.coordinate_residual) + ")");
  const Complex big = std::abs(a) >= std::abs(b) ? a : b;
  a /= big;
  b /= big;
  out.a = a;
  out.b = b;
  out.infinite = std::abs(a) <= options.infinity_tol;
  return out;
}

SlopeValue compute_slope(const Representation& rep, const SlopeOptions& options) {
  if (is_boundary_parabolic(rep, options.parabolic_tol))
    throw Error(ErrorCode::kBoundaryParabolic,
                "boundary-parabolic representation; use slope_of_character");
  const AugmentedPresentation aug = augment(rep.presentation_ptr());
  const InvariantVector inv = invariant_vector(rep, options.rank_tol);
  return compute_slope(aug, rep, inv.v, options);
}

SlopeValue slope_of_character(const Representation& rep, const SlopeOptions& options) {
  if (is_boundary_parabolic(rep, options.parabolic_tol))
    return SlopeValue::from_reading(parabolic_modulus(rep, options.parabolic_tol).tau);
  return compute_slope(rep, options);
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::kAdmissible:
      return "admissible";
    case Verdict::kParabolicPath:
      return "parabolic-path";
    case Verdict::kDegenerate:
      return "degenerate";
  }
  return "degenerate";
}

AdmissibilityReport admissibility(const Representation& rep, const SlopeOptions& options) {
  AdmissibilityReport report;
  const SL2 m = rep.meridian_image();
  const SL2 l = rep.longitude_image();
  report.commutator_residual =
      (m.matrix() * l.matrix() - l.matrix() * m.matrix()).cwiseAbs().maxCoeff();
  report.parabolic = is_boundary_parabolic(m, l, options.parabolic_tol);
  if (report.parabolic) {
    const double dev = std::min((m.matrix() - Matrix2c::Identity()).cwiseAbs().maxCoeff(),
                                (m.matrix() + Matrix2c::Identity()).cwiseAbs().maxCoeff());
    if (dev <= options.parabolic_tol) {
      report.detail = "rho(meridian) = +-I";
      return report;
    }
    report.verdict = Verdict::kParabolicPath;
    report.detail = "boundary-parabolic; slope is the modulus tau";
    return report;
  }

  InvariantVector inv;
  try {
    inv = invariant_vector(m, l, options.rank_tol);
  } catch (const Error& e) {
    report.detail = e.what();
    return report;
  }
  report.invariant_residual = inv.residual;

  const AugmentedPresentation aug = augment(rep.presentation_ptr());
  const CMatrix rows = normalized_rows(build_twisted_alexander(aug, rep).matrix);
  const CMatrix w = boundary_classes(inv.v, rows.cols());
  report.alexander_rank = rank_with_tol(rows, options.rank_tol);
  report.boundary_rank =
      subspace_sum_dimension(rows, w, options.rank_tol) - report.alexander_rank;
  report.dim_intersection =
      static_cast<int>(subspace_intersection(rows, w, options.rank_tol).rows());
  if (report.dim_intersection == 1) {
    report.verdict = Verdict::kAdmissible;
  } else {
    report.detail = "intersection has dimension " + std::to_string(report.dim_intersection);
  }
  return report;
}

}  // namespace knotslope
