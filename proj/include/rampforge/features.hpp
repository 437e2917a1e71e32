#pragma once

#include "rampforge/curve.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rampforge {

/// The eight structural feature groups describing one normalized curve.
struct FeatureVector {
    std::array<double, kControlPoints - 2> local_angles{}; // turning angle at each interior point, radians
    double sum_of_angles = 0.0;
    std::array<double, kControlPoints - 1> local_discriminability{}; // delta E of adjacent pairs
    double length = 0.0;
    std::array<double, kControlPoints> speed{};        // |first derivative| per control point
    std::array<double, kControlPoints> acceleration{}; // |second derivative| per control point
    double curvature = 0.0;                            // 1/r of the best-fit sphere
    int turning_points = 0;
};

/// Feature groups, in bit order of a feature-subset mask.
enum class FeatureGroup : std::uint8_t {
    local_angles = 0,
    sum_of_angles,
    local_discriminability,
    length,
    speed,
    acceleration,
    curvature,
    turning_points,
};

inline constexpr int kFeatureGroups = 8;
inline constexpr std::uint8_t kAllFeatures = 0xFF;

inline constexpr std::uint8_t mask_of(FeatureGroup g) { return static_cast<std::uint8_t>(1u << static_cast<int>(g)); }

/// Throws InvalidArgument naming the segment when two consecutive points coincide.
FeatureVector compute_features(const RampCurve& c);

/// Least-squares (Kasa) sphere through the points; returns 1/r. Coplanar
/// points fall back to the best-fit circle in their plane. Returns 0 for
/// collinear points or when r exceeds 1e6.
double sphere_curvature(std::span<const LabColor> points);

/// Strict interior local extrema summed over the L*, a*, b* channels.
int turning_points(std::span<const LabColor> points);

/// Flattens the groups selected by `mask` into one row, in group order.
std::vector<double> flatten(const FeatureVector& f, std::uint8_t mask = kAllFeatures);

/// Number of scalar dimensions contributed by a group.
std::size_t group_width(FeatureGroup g);

std::string_view to_string(FeatureGroup g);
/// Group names joined with '+', e.g. "length+curvature".
std::string describe_mask(std::uint8_t mask);

} // namespace rampforge
