#pragma once

#include "rampforge/colorspace.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rampforge {

enum class RampSource { colorbrewer, r, tableau, colourlovers, other };
enum class RampKind { sequential, diverging };

std::string_view to_string(RampSource s);
std::string_view to_string(RampKind k);
std::optional<RampSource> parse_source(std::string_view s);
std::optional<RampKind> parse_kind(std::string_view s);

/// A designer ramp as it appears in the corpus.
struct RawRamp {
    std::string id;
    RampSource source = RampSource::other;
    RampKind kind = RampKind::sequential;
    std::vector<LabColor> colors;
};

/// Number of control points in a normalized ramp.
inline constexpr std::size_t kControlPoints = 9;
/// Index of the middle control point, the end of the alignment heading vector.
inline constexpr std::size_t kMiddlePoint = kControlPoints / 2;

using ControlPoints = std::array<LabColor, kControlPoints>;

/// A normalized ramp: nine control points equally spaced in arc length.
struct RampCurve {
    ControlPoints points{};
    std::optional<std::string> origin_id;

    std::span<const LabColor> span() const { return points; }
};

/// User edit applied about a pivot. Applied in the order reflect, scale,
/// rotate (a*-b* plane), translate.
struct AffineEdit {
    double translate_l = 0.0;
    double translate_a = 0.0;
    double translate_b = 0.0;
    double rotate_ab_degrees = 0.0;
    double scale = 1.0;
    bool reflect = false;

    bool is_identity() const
    {
        return translate_l == 0.0 && translate_a == 0.0 && translate_b == 0.0 && rotate_ab_degrees == 0.0 &&
               scale == 1.0 && !reflect;
    }
    friend bool operator==(const AffineEdit&, const AffineEdit&) = default;
};

/// Resamples a raw ramp to nine arc-length-equidistant points on its
/// interpolating spline. Consecutive duplicate colors are dropped first;
/// ramps with fewer than four distinct colors are treated as polylines.
RampCurve fit_and_resample(const RawRamp& ramp);

/// Sum of CIE76 distances between consecutive points.
double curve_length(std::span<const LabColor> points);
inline double curve_length(const RampCurve& c) { return curve_length(c.span()); }

/// Reverses point order when the ramp gets darker from first to last point,
/// so every ramp runs dark to light.
RampCurve orient_dark_to_light(RampCurve c);

/// How align_cluster moved one curve: p' = Reflect(Rot(p + translation)).
struct AlignmentRecord {
    LabColor translation;
    double rotation_degrees = 0.0; // about the L* axis
    bool reflected = false;        // b* negated after rotation
    bool degenerate = false;       // no usable a*-b* heading; translated only
};

struct AlignedCluster {
    std::vector<RampCurve> curves;
    std::vector<AlignmentRecord> transforms;
};

/// Rigidly aligns a set of curves so they are comparable point by point.
///
/// Each curve is translated so its first point is the origin, then rotated
/// about the L* axis so the a*-b* projection of its first-to-middle vector
/// points along +a* (first-to-last when that projection vanishes). Curves
/// are then mirrored across the L*-a* plane whenever that strictly reduces
/// their summed point distance to the mean of the other curves, repeated
/// until no curve changes. Rotations and reflections about L* leave each
/// curve's lightness profile untouched.
AlignedCluster align_cluster(std::span<const RampCurve> curves);

/// Applies an edit about `pivot`. The reflection plane contains the pivot's
/// L* axis and the first-to-middle vector of the points. Throws
/// InvalidArgument when scale is not a positive finite number.
std::vector<LabColor> apply_edit(std::span<const LabColor> points, const AffineEdit& edit, const LabColor& pivot);
RampCurve apply_edit(const RampCurve& c, const AffineEdit& edit, const LabColor& pivot);

/// Exact inverse of apply_edit with the same edit and pivot.
std::vector<LabColor> revert_edit(std::span<const LabColor> points, const AffineEdit& edit, const LabColor& pivot);

/// Rotation by `degrees` in the a*-b* plane about `center`. Quarter turns are exact.
LabColor rotate_ab(const LabColor& p, double degrees, const LabColor& center = {});

} // namespace rampforge
