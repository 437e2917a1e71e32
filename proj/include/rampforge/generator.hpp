#pragma once

#include "rampforge/curve.hpp"
#include "rampforge/modelbook.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace rampforge {

enum class GamutStatus { clean, clipped, reverted };
enum class GeneratedKind { sequential, diverging, linear };
enum class GamutMode { strict, clip };

std::string_view to_string(GamutStatus s);
std::string_view to_string(GeneratedKind k);
std::string_view to_string(GamutMode m);
std::optional<GamutMode> parse_gamut_mode(std::string_view s);
std::optional<GeneratedKind> parse_generated_kind(std::string_view s);

struct GeneratedRamp {
    std::vector<LabColor> colors;
    std::string model_id;
    LabColor seed;
    GeneratedKind kind = GeneratedKind::sequential;
    std::vector<AffineEdit> edits;
    GamutStatus gamut_status = GamutStatus::clean;
    /// Pivot for user edits; never altered by gamut_fit.
    std::size_t anchor_index = 0;
    double arm_rotation_degrees = 0.0;
    std::vector<std::string> warnings;

    friend bool operator==(const GeneratedRamp&, const GeneratedRamp&) = default;
};

/// Control index whose l_profile value is nearest `lightness`; lower index on ties.
std::size_t anchor_index_for(const RampModel& model, double lightness);

/// The model's shape translated so the anchor control point equals `seed`
/// exactly. No gamut or range checks.
ControlPoints anchor_model(const RampModel& model, const LabColor& seed, std::size_t* anchor = nullptr);

/// Throws GamutError when the seed is out of gamut or a color lands outside
/// L* in [0, 100], or (strict mode) when any color is out of gamut.
GeneratedRamp seed_sequential(const RampModel& model, const LabColor& seed, GamutMode mode = GamutMode::strict);

struct DivergingOptions {
    double angle_degrees = kDefaultDivergingAngle;
    double rotation_limit_degrees = kDefaultRotationLimit;
    /// Out-of-range arm rotations are clamped with a warning; otherwise rejected.
    bool clamp_rotation = true;
    GamutMode gamut = GamutMode::strict;
};

DivergingOptions diverging_options(const ModelBook& book);

/// Two arms joined at the lightest point of the seeded model. The copy is
/// rotated in a*-b* about the center by angle + arm rotation, and the joined
/// ramp is shifted so the center is gray. 17 colors for 9-point models,
/// ordered copy end -> center -> seeded end.
GeneratedRamp seed_diverging(const RampModel& model, const LabColor& seed, double arm_rotation_degrees,
                             const DivergingOptions& options = {});

/// Applies the edit about the anchor. If any color leaves the gamut the input
/// is returned with status reverted. Identity edits are not recorded.
GeneratedRamp apply_user_edit(const GeneratedRamp& ramp, const AffineEdit& edit);

/// Strict: throws GamutError naming offending indices. Clip: pulls each
/// offending non-anchor color toward the L* axis, keeping L* and hue, to the
/// largest in-gamut chroma found by bisection.
GeneratedRamp gamut_fit(const GeneratedRamp& ramp, GamutMode mode);

/// Largest chroma scale t in [0, 1] keeping L, hue in gamut, within 1e-4 chroma.
LabColor clip_chroma(const LabColor& c);

/// m colors equally spaced in arc length along the spline through the ramp.
std::vector<LabColor> sample_ramp(const GeneratedRamp& ramp, std::size_t m);

/// m colors evenly spaced on the segment c1 -> c2.
GeneratedRamp linear_ramp(const LabColor& c1, const LabColor& c2, std::size_t m, GamutMode mode = GamutMode::strict);

enum class ExportFormat { hex, lab, css };
std::string_view to_string(ExportFormat f);
std::optional<ExportFormat> parse_export_format(std::string_view s);

/// hex: one `#RRGGBB` per line. lab: `L,a,b` rows at 4 decimals. css: one
/// `linear-gradient(to right, ...)` line. Each ends with a newline. Throws
/// GamutError for hex/css when a color has no sRGB representation.
std::string format_colors(std::span<const LabColor> colors, ExportFormat format);

} // namespace rampforge
