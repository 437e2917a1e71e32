#include "rampforge/curve.hpp"

#include "rampforge/error.hpp"
#include "rampforge/kernels.hpp"
#include "rampforge/spline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rampforge {

namespace {

constexpr double kHeadingEpsilon = 1e-9;

std::pair<double, double> sincos_degrees(double degrees)
{
    const double turns = degrees / 90.0;
    if (turns == std::floor(turns)) {
        switch (((static_cast<long long>(turns) % 4) + 4) % 4) {
        case 0: return {0.0, 1.0};
        case 1: return {1.0, 0.0};
        case 2: return {0.0, -1.0};
        default: return {-1.0, 0.0};
        }
    }
    const double rad = degrees * std::numbers::pi / 180.0;
    return {std::sin(rad), std::cos(rad)};
}

LabColor mirror_b(LabColor p)
{
    p.b = -p.b;
    return p;
}

// Unit normal (in the a*-b* plane) of the reflection plane for a point set.
LabColor reflection_normal(std::span<const LabColor> points)
{
    const LabColor lightness_axis{1.0, 0.0, 0.0};
    for (std::size_t end : {points.size() / 2, points.size() - 1}) {
        const LabColor n = cross(lightness_axis, points[end] - points.front());
        const double len = norm(n);
        if (len > kHeadingEpsilon) return n / len;
    }
    return {0.0, 0.0, 1.0};
}

LabColor reflect_across(const LabColor& q, const LabColor& normal) { return q - normal * (2.0 * dot(q, normal)); }

double summed_distance(const ControlPoints& x, const ControlPoints& y)
{
    return kernels::point_distance_sum(x, y);
}

ControlPoints mean_excluding(const std::vector<ControlPoints>& curves, std::size_t skip, std::size_t count)
{
    ControlPoints mean{};
    std::size_t used = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (i == skip) continue;
        for (std::size_t x = 0; x < kControlPoints; ++x) mean[x] += curves[i][x];
        ++used;
    }
    for (auto& p : mean) p /= static_cast<double>(used);
    return mean;
}

ControlPoints mirrored(const ControlPoints& c)
{
    ControlPoints out;
    std::transform(c.begin(), c.end(), out.begin(), mirror_b);
    return out;
}

} // namespace

std::string_view to_string(RampSource s)
{
    switch (s) {
    case RampSource::colorbrewer: return "colorbrewer";
    case RampSource::r: return "r";
    case RampSource::tableau: return "tableau";
    case RampSource::colourlovers: return "colourlovers";
    case RampSource::other: return "other";
    }
    return "other";
}

std::string_view to_string(RampKind k) { return k == RampKind::sequential ? "sequential" : "diverging"; }

std::optional<RampSource> parse_source(std::string_view s)
{
    for (auto src : {RampSource::colorbrewer, RampSource::r, RampSource::tableau, RampSource::colourlovers,
                     RampSource::other})
        if (to_string(src) == s) return src;
    return std::nullopt;
}

std::optional<RampKind> parse_kind(std::string_view s)
{
    if (s == "sequential") return RampKind::sequential;
    if (s == "diverging") return RampKind::diverging;
    return std::nullopt;
}

RampCurve fit_and_resample(const RawRamp& ramp)
{
    const auto distinct = collapse_duplicates(ramp.colors);
    if (distinct.size() < 2)
        throw InvalidArgument("invalid ramp '" + ramp.id + "': needs at least 2 distinct colors");
    const auto pts = resample_by_arc_length(distinct, kControlPoints);
    RampCurve out;
    std::copy(pts.begin(), pts.end(), out.points.begin());
    out.origin_id = ramp.id;
    return out;
}

double curve_length(std::span<const LabColor> points)
{
    double total = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) total += delta_e(points[i - 1], points[i]);
    return total;
}

RampCurve orient_dark_to_light(RampCurve c)
{
    if (c.points.back().L < c.points.front().L) std::reverse(c.points.begin(), c.points.end());
    return c;
}

LabColor rotate_ab(const LabColor& p, double degrees, const LabColor& center)
{
    const auto [s, co] = sincos_degrees(degrees);
    const double a = p.a - center.a;
    const double b = p.b - center.b;
    return {p.L, center.a + a * co - b * s, center.b + a * s + b * co};
}

AlignedCluster align_cluster(std::span<const RampCurve> curves)
{
    if (curves.empty()) throw InvalidArgument("align_cluster needs at least one curve");
    const std::size_t n = curves.size();

    AlignedCluster out;
    out.curves.assign(curves.begin(), curves.end());
    out.transforms.resize(n);
    std::vector<ControlPoints> work(n);

    for (std::size_t i = 0; i < n; ++i) {
        const auto& src = curves[i].points;
        AlignmentRecord& rec = out.transforms[i];
        rec.translation = -src.front();

        double heading = 0.0;
        rec.degenerate = true;
        for (std::size_t end : {kMiddlePoint, kControlPoints - 1}) {
            const LabColor v = src[end] - src.front();
            if (std::hypot(v.a, v.b) > kHeadingEpsilon) {
                heading = std::atan2(v.b, v.a) * 180.0 / std::numbers::pi;
                rec.degenerate = false;
                break;
            }
        }
        rec.rotation_degrees = rec.degenerate ? 0.0 : -heading;
        for (std::size_t x = 0; x < kControlPoints; ++x)
            work[i][x] = rotate_ab(src[x] + rec.translation, rec.rotation_degrees);
    }

    auto consider_flip = [&](std::size_t i, const ControlPoints& target) {
        const double keep = summed_distance(work[i], target);
        const ControlPoints flipped = mirrored(work[i]);
        const double flip = summed_distance(flipped, target);
        // Strict improvement, with a margin so rounding cannot cause flip-flopping.
        if (flip < keep - 1e-12 * (1.0 + keep)) {
            work[i] = flipped;
            out.transforms[i].reflected = !out.transforms[i].reflected;
            return true;
        }
        return false;
    };

    // Greedy pass against the mean of the curves already placed, then refine
    // against leave-one-out means until stable.
    for (std::size_t i = 1; i < n; ++i) consider_flip(i, mean_excluding(work, i, i));
    if (n >= 2) {
        for (std::size_t pass = 0; pass < 2 * n; ++pass) {
            bool changed = false;
            for (std::size_t i = 0; i < n; ++i) changed |= consider_flip(i, mean_excluding(work, i, n));
            if (!changed) break;
        }
    }

    for (std::size_t i = 0; i < n; ++i) out.curves[i].points = work[i];
    return out;
}

std::vector<LabColor> apply_edit(std::span<const LabColor> points, const AffineEdit& edit, const LabColor& pivot)
{
    if (!(edit.scale > 0.0) || !std::isfinite(edit.scale))
        throw InvalidArgument("invalid edit: scale must be positive, got " + std::to_string(edit.scale));
    if (points.empty()) return {};

    const LabColor normal = reflection_normal(points);
    const LabColor shift{edit.translate_l, edit.translate_a, edit.translate_b};
    std::vector<LabColor> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        LabColor q = points[i] - pivot;
        if (edit.reflect) q = reflect_across(q, normal);
        q *= edit.scale;
        q = rotate_ab(q, edit.rotate_ab_degrees);
        out[i] = pivot + q + shift;
    }
    return out;
}

RampCurve apply_edit(const RampCurve& c, const AffineEdit& edit, const LabColor& pivot)
{
    const auto pts = apply_edit(c.span(), edit, pivot);
    RampCurve out = c;
    std::copy(pts.begin(), pts.end(), out.points.begin());
    return out;
}

std::vector<LabColor> revert_edit(std::span<const LabColor> points, const AffineEdit& edit, const LabColor& pivot)
{
    if (!(edit.scale > 0.0) || !std::isfinite(edit.scale))
        throw InvalidArgument("invalid edit: scale must be positive, got " + std::to_string(edit.scale));
    const LabColor shift{edit.translate_l, edit.translate_a, edit.translate_b};
    std::vector<LabColor> q(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        q[i] = rotate_ab(points[i] - pivot - shift, -edit.rotate_ab_degrees) / edit.scale;
    if (edit.reflect && !q.empty()) {
        const LabColor normal = reflection_normal(q);
        for (auto& p : q) p = reflect_across(p, normal);
    }
    for (auto& p : q) p += pivot;
    return q;
}

} // namespace rampforge
