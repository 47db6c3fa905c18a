#pragma once
#include "blaschke_approx/blaschke.hpp"
#include "blaschke_approx/contour.hpp"
#include "blaschke_approx/discretize.hpp"

#include <string>

namespace blaschke_approx {

// Deterministic SVG: disk outline, selected good/bad squares, contour
// components, input zeros, arc cuts and placed zeros, legend.
std::string render_svg(const BlaschkeProduct& B, const ContourBuildResult& built,
                       const DiscretizationResult* disc);

} // namespace blaschke_approx
