#pragma once
#include "blaschke_approx/blaschke.hpp"
#include "blaschke_approx/contour.hpp"
#include "blaschke_approx/discretize.hpp"
#include "blaschke_approx/harmonic.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace blaschke_approx {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json zero_set_to_json(const BlaschkeProduct& B);
BlaschkeProduct zero_set_from_json(const Json& j);

// The build pointer adds the selected {n, j} squares and scaling rows.
Json contour_to_json(const Contour& c, const ContourBuildResult* build = nullptr);
Contour contour_from_json(const Json& j);
// selected squares back from a contour document (empty if absent)
void selected_squares_from_json(const Json& j, std::vector<ClassifiedSquare>& bad,
                                std::vector<ClassifiedSquare>& good);

Json measure_to_json(const BoundaryMeasure& mu);
BoundaryMeasure measure_from_json(const Json& j);

Json discretization_to_json(const DiscretizationResult& d);
DiscretizationResult discretization_from_json(const Json& j);

void save_json(const std::filesystem::path& path, const Json& j);
Json load_json(const std::filesystem::path& path);

// FNV-1a over the canonical dump with the volatile fields ("timings", "hash")
// removed; the stable fingerprint used by the determinism check.
std::uint64_t record_hash(Json record);

} // namespace blaschke_approx
