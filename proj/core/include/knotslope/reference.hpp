#pragma once

// Bundled reference presentations.

#include <complex>
#include <memory>
#include <string_view>

#include "knotslope/presentation.hpp"

namespace knotslope {

std::string_view trefoil_text();
std::string_view figure_eight_text();

/// Parsed once and validated: longitude exponent sum 0 and
/// |rho(m) rho(l) - rho(l) rho(m)| <= 1e-8 on a Riley sample.
std::shared_ptr<const KnotPresentation> trefoil();
std::shared_ptr<const KnotPresentation> figure_eight();

/// Same generators, relations, meridian and longitude as the bundled one.
bool is_figure_eight(const KnotPresentation& pres);

/// Largest commutator residual of rho(m), rho(l) over all Riley roots at M.
double boundary_commutator_residual(std::shared_ptr<const KnotPresentation> pres,
                                    std::complex<double> m);

/// 2x^2 + y^2 - x^2 y - y - 1 with x = tr rho(u), y = tr rho(u v).
std::complex<double> figure_eight_curve(std::complex<double> x, std::complex<double> y);

}  // namespace knotslope
