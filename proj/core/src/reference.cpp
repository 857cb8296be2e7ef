#include "knotslope/reference.hpp"

#include <algorithm>

#include "knotslope/error.hpp"
#include "knotslope/representation.hpp"

namespace knotslope {

namespace {

constexpr std::string_view kTrefoil =
    "gens: u v;\n"
    "rel: u v u = v u v;\n"
    "meridian: u;\n"
    "longitude: v u v^-1 u v u^-3\n";

constexpr std::string_view kFigureEight =
    "gens: u v;\n"
    "rel: u v u^-1 v^-1 u = v u^-1 v^-1 u v;\n"
    "meridian: u;\n"
    "longitude: v u^-1 v^-1 u u v^-1 u^-1 v\n";

constexpr std::complex<double> kCheckPoint{1.3, 0.4};

std::shared_ptr<const KnotPresentation> load(std::string_view text) {
  auto pres = std::make_shared<const KnotPresentation>(parse_presentation(text));
  if (boundary_commutator_residual(pres, kCheckPoint) > 1e-8)
    throw Error(ErrorCode::kInvalidPresentation,
                "bundled longitude does not commute with the meridian");
  return pres;
}

}  // namespace

std::string_view trefoil_text() { return kTrefoil; }
std::string_view figure_eight_text() { return kFigureEight; }

std::shared_ptr<const KnotPresentation> trefoil() {
  static const auto pres = load(kTrefoil);
  return pres;
}

std::shared_ptr<const KnotPresentation> figure_eight() {
  static const auto pres = load(kFigureEight);
  return pres;
}

bool is_figure_eight(const KnotPresentation& pres) { return pres == *figure_eight(); }

double boundary_commutator_residual(std::shared_ptr<const KnotPresentation> pres,
                                    std::complex<double> m) {
  double worst = 0.0;
  for (const RileyRoot& r : riley_family(std::move(pres), m)) {
    const Matrix2c a = r.rep.meridian_image().matrix();
    const Matrix2c b = r.rep.longitude_image().matrix();
    worst = std::max(worst, (a * b - b * a).cwiseAbs().maxCoeff());
  }
  return worst;
}

std::complex<double> figure_eight_curve(std::complex<double> x, std::complex<double> y) {
  return 2.0 * x * x + y * y - x * x * y - y - 1.0;
}

}  // namespace knotslope
