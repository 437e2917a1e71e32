#include "rampforge/generator.hpp"

#include "rampforge/error.hpp"
#include "rampforge/spline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace rampforge {

std::string_view to_string(GamutStatus s)
{
    switch (s) {
    case GamutStatus::clean: return "clean";
    case GamutStatus::clipped: return "clipped";
    case GamutStatus::reverted: return "reverted";
    }
    return "?";
}

std::string_view to_string(GeneratedKind k)
{
    switch (k) {
    case GeneratedKind::sequential: return "sequential";
    case GeneratedKind::diverging: return "diverging";
    case GeneratedKind::linear: return "linear";
    }
    return "?";
}

std::string_view to_string(GamutMode m) { return m == GamutMode::strict ? "strict" : "clip"; }

std::optional<GamutMode> parse_gamut_mode(std::string_view s)
{
    if (s == "strict") return GamutMode::strict;
    if (s == "clip") return GamutMode::clip;
    return std::nullopt;
}

std::optional<GeneratedKind> parse_generated_kind(std::string_view s)
{
    if (s == "sequential") return GeneratedKind::sequential;
    if (s == "diverging") return GeneratedKind::diverging;
    if (s == "linear") return GeneratedKind::linear;
    return std::nullopt;
}

std::size_t anchor_index_for(const RampModel& model, double lightness)
{
    std::size_t best = 0;
    for (std::size_t x = 1; x < kControlPoints; ++x)
        if (std::abs(model.l_profile[x] - lightness) < std::abs(model.l_profile[best] - lightness)) best = x;
    return best;
}

ControlPoints anchor_model(const RampModel& model, const LabColor& seed, std::size_t* anchor)
{
    const std::size_t i = anchor_index_for(model, seed.L);
    if (anchor != nullptr) *anchor = i;
    ControlPoints out;
    for (std::size_t x = 0; x < kControlPoints; ++x)
        out[x] = x == i ? seed : model.shape[x] - model.shape[i] + seed;
    return out;
}

namespace {

void require_seed(const LabColor& seed)
{
    if (!in_gamut(seed))
        throw GamutError("seed color (" + std::to_string(seed.L) + ", " + std::to_string(seed.a) + ", " +
                         std::to_string(seed.b) + ") is outside the sRGB gamut");
}

void require_lightness(std::span<const LabColor> colors, const RampModel& model)
{
    for (std::size_t x = 0; x < colors.size(); ++x)
        if (colors[x].L < 0.0 || colors[x].L > 100.0)
            throw GamutError("model '" + model.id + "' places color " + std::to_string(x) + " at L* " +
                             std::to_string(colors[x].L) + ", outside [0, 100]; choose a different model or seed");
}

bool any_out_of_gamut(std::span<const LabColor> colors)
{
    return std::any_of(colors.begin(), colors.end(), [](const LabColor& c) { return !in_gamut(c); });
}

} // namespace

GeneratedRamp seed_sequential(const RampModel& model, const LabColor& seed, GamutMode mode)
{
    require_seed(seed);
    GeneratedRamp ramp;
    const ControlPoints pts = anchor_model(model, seed, &ramp.anchor_index);
    require_lightness(pts, model);
    ramp.colors.assign(pts.begin(), pts.end());
    ramp.model_id = model.id;
    ramp.seed = seed;
    ramp.kind = GeneratedKind::sequential;
    return gamut_fit(ramp, mode);
}

DivergingOptions diverging_options(const ModelBook& book)
{
    DivergingOptions o;
    o.angle_degrees = book.diverging_angle_degrees;
    o.rotation_limit_degrees = book.diverging_rotation_limit_degrees;
    return o;
}

GeneratedRamp seed_diverging(const RampModel& model, const LabColor& seed, double arm_rotation_degrees,
                             const DivergingOptions& options)
{
    require_seed(seed);
    if (!std::isfinite(arm_rotation_degrees)) throw InvalidArgument("arm rotation must be finite");

    GeneratedRamp ramp;
    ramp.model_id = model.id;
    ramp.seed = seed;
    ramp.kind = GeneratedKind::diverging;

    const double limit = options.rotation_limit_degrees;
    if (std::abs(arm_rotation_degrees) > limit) {
        if (!options.clamp_rotation)
            throw InvalidArgument("arm rotation " + std::to_string(arm_rotation_degrees) + " exceeds the limit of +/-" +
                                  std::to_string(limit) + " degrees");
        const double clamped = std::clamp(arm_rotation_degrees, -limit, limit);
        ramp.warnings.push_back("arm rotation " + std::to_string(arm_rotation_degrees) + " clamped to " +
                                std::to_string(clamped));
        arm_rotation_degrees = clamped;
    }
    ramp.arm_rotation_degrees = arm_rotation_degrees;

    ControlPoints arm = anchor_model(model, seed);
    require_lightness(arm, model);
    // The lighter end joins the two arms.
    if (arm.front().L > arm.back().L) std::reverse(arm.begin(), arm.end());
    const LabColor center = arm.back();
    if (chroma(arm.front() - center) < 1e-9)
        ramp.warnings.push_back("model '" + model.id + "' has no hue extent; arms coincide");

    const double turn = options.angle_degrees + arm_rotation_degrees;
    const LabColor gray_shift{0.0, -center.a, -center.b};
    ramp.colors.reserve(2 * kControlPoints - 1);
    for (std::size_t x = 0; x + 1 < kControlPoints; ++x) ramp.colors.push_back(rotate_ab(arm[x], turn, center) + gray_shift);
    ramp.colors.push_back({center.L, 0.0, 0.0});
    for (std::size_t x = kControlPoints - 1; x-- > 0;) ramp.colors.push_back(arm[x] + gray_shift);
    ramp.anchor_index = kControlPoints - 1;

    return gamut_fit(ramp, options.gamut);
}

GeneratedRamp apply_user_edit(const GeneratedRamp& ramp, const AffineEdit& edit)
{
    if (edit.is_identity()) return ramp;
    const LabColor pivot = ramp.colors.at(ramp.anchor_index);
    std::vector<LabColor> edited = apply_edit(ramp.colors, edit, pivot);
    if (any_out_of_gamut(edited)) {
        GeneratedRamp reverted = ramp;
        reverted.gamut_status = GamutStatus::reverted;
        return reverted;
    }
    GeneratedRamp out = ramp;
    out.colors = std::move(edited);
    out.edits.push_back(edit);
    out.gamut_status = GamutStatus::clean;
    return out;
}

LabColor clip_chroma(const LabColor& c)
{
    if (in_gamut(c)) return c;
    const LabColor gray{c.L, 0.0, 0.0};
    if (!in_gamut(gray)) throw GamutError("L* " + std::to_string(c.L) + " has no in-gamut color");
    const double full = chroma(c);
    double lo = 0.0;
    double hi = 1.0;
    while ((hi - lo) * full > 1e-4) {
        const double mid = 0.5 * (lo + hi);
        if (in_gamut({c.L, c.a * mid, c.b * mid})) lo = mid;
        else hi = mid;
    }
    return {c.L, c.a * lo, c.b * lo};
}

GeneratedRamp gamut_fit(const GeneratedRamp& ramp, GamutMode mode)
{
    std::vector<std::size_t> offending;
    for (std::size_t x = 0; x < ramp.colors.size(); ++x)
        if (!in_gamut(ramp.colors[x])) offending.push_back(x);
    if (offending.empty()) return ramp;

    if (mode == GamutMode::strict) {
        std::string list;
        for (std::size_t x : offending) list += (list.empty() ? "" : ", ") + std::to_string(x);
        throw GamutError("colors out of sRGB gamut at indices " + list);
    }
    GeneratedRamp out = ramp;
    for (std::size_t x : offending) {
        if (x == ramp.anchor_index) throw GamutError("anchor color is out of gamut");
        out.colors[x] = clip_chroma(ramp.colors[x]);
    }
    out.gamut_status = GamutStatus::clipped;
    return out;
}

std::vector<LabColor> sample_ramp(const GeneratedRamp& ramp, std::size_t m)
{
    if (m < 2) throw InvalidArgument("sample count must be at least 2, got " + std::to_string(m));
    return resample_by_arc_length(ramp.colors, m);
}

GeneratedRamp linear_ramp(const LabColor& c1, const LabColor& c2, std::size_t m, GamutMode mode)
{
    if (m < 2) throw InvalidArgument("linear ramp needs at least 2 colors, got " + std::to_string(m));
    require_seed(c1);
    require_seed(c2);
    GeneratedRamp ramp;
    ramp.kind = GeneratedKind::linear;
    ramp.model_id = "linear";
    ramp.seed = c1;
    ramp.colors.reserve(m);
    const double last = static_cast<double>(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) ramp.colors.push_back(c1 + (c2 - c1) * (static_cast<double>(i) / last));
    ramp.colors.push_back(c2);
    return gamut_fit(ramp, mode);
}

std::string_view to_string(ExportFormat f)
{
    switch (f) {
    case ExportFormat::hex: return "hex";
    case ExportFormat::lab: return "lab";
    case ExportFormat::css: return "css";
    }
    return "?";
}

std::optional<ExportFormat> parse_export_format(std::string_view s)
{
    if (s == "hex") return ExportFormat::hex;
    if (s == "lab") return ExportFormat::lab;
    if (s == "css") return ExportFormat::css;
    return std::nullopt;
}

namespace {

std::string hex_of(const LabColor& c, std::size_t index)
{
    const auto rgb = lab_to_srgb(c);
    if (!rgb) throw GamutError("color " + std::to_string(index) + " has no sRGB representation");
    return format_hex(*rgb);
}

std::string fixed4(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string s(buf);
    if (s == "-0.0000") s = "0.0000";
    return s;
}

} // namespace

std::string format_colors(std::span<const LabColor> colors, ExportFormat format)
{
    std::string out;
    switch (format) {
    case ExportFormat::hex:
        for (std::size_t i = 0; i < colors.size(); ++i) out += hex_of(colors[i], i) + "\n";
        break;
    case ExportFormat::lab:
        for (const auto& c : colors) out += fixed4(c.L) + "," + fixed4(c.a) + "," + fixed4(c.b) + "\n";
        break;
    case ExportFormat::css: {
        out = "linear-gradient(to right";
        const double last = colors.size() > 1 ? static_cast<double>(colors.size() - 1) : 1.0;
        for (std::size_t i = 0; i < colors.size(); ++i)
            out += ", " + hex_of(colors[i], i) + " " + fixed4(100.0 * static_cast<double>(i) / last) + "%";
        out += ")\n";
        break;
    }
    }
    return out;
}

} // namespace rampforge
