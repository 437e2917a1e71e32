#pragma once

// Curve generators for tests.

#include "rampforge/curve.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace shapes {

using rampforge::ControlPoints;
using rampforge::LabColor;
using rampforge::RampCurve;

inline RampCurve make(const ControlPoints& p, std::string id = {})
{
    RampCurve c;
    c.points = p;
    if (!id.empty()) c.origin_id = std::move(id);
    return c;
}

inline RampCurve line(LabColor start, LabColor step)
{
    ControlPoints p;
    for (std::size_t x = 0; x < p.size(); ++x) p[x] = start + step * static_cast<double>(x);
    return make(p);
}

/// Quarter circle of radius r in the a*-b* plane at lightness L, constant speed.
inline RampCurve quarter_circle(double r, double L = 50.0)
{
    ControlPoints p;
    for (std::size_t x = 0; x < p.size(); ++x) {
        const double t = std::numbers::pi / 2 * static_cast<double>(x) / 8.0;
        p[x] = {L, r * std::cos(t), r * std::sin(t)};
    }
    return make(p);
}

/// Nine non-coplanar points on the sphere of radius r about c.
inline ControlPoints on_sphere(double r, LabColor c = {50, 0, 0})
{
    ControlPoints p;
    for (std::size_t x = 0; x < p.size(); ++x) {
        const double theta = 0.3 + 0.3 * static_cast<double>(x);
        const double phi = 0.7 * static_cast<double>(x) + 0.2 * static_cast<double>(x * x);
        p[x] = c + LabColor{r * std::cos(theta), r * std::sin(theta) * std::cos(phi), r * std::sin(theta) * std::sin(phi)};
    }
    return p;
}

/// Random curve with a lightness trend; consecutive points are never equal.
inline RampCurve random_curve(std::mt19937_64& rng, double spread = 20.0)
{
    std::uniform_real_distribution<double> u(-spread, spread);
    std::uniform_real_distribution<double> base(20.0, 40.0);
    ControlPoints p;
    double L = base(rng);
    for (auto& pt : p) {
        pt = {L, u(rng), u(rng)};
        L += 5.0 + std::abs(u(rng)) * 0.2;
    }
    return make(p);
}

/// Smooth ramp: lightness rises, chroma swells and hue drifts slowly.
inline RampCurve smooth_curve(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> l0(15.0, 35.0), l1(80.0, 95.0), hue(0.0, 360.0), turn(-40.0, 40.0),
        cmax(20.0, 50.0);
    const double a = l0(rng), b = l1(rng), h0 = hue(rng), dh = turn(rng), c = cmax(rng);
    ControlPoints p;
    for (std::size_t x = 0; x < p.size(); ++x) {
        const double t = static_cast<double>(x) / static_cast<double>(p.size() - 1);
        const double chroma = c * std::sin(std::numbers::pi * (0.2 + 0.6 * t));
        const double h = (h0 + dh * t) * std::numbers::pi / 180.0;
        p[x] = {a + (b - a) * t, chroma * std::cos(h), chroma * std::sin(h)};
    }
    return make(p);
}

/// Archetypes of three structural families.
inline RampCurve family_line(double jitter)
{
    return line({20, -10 + jitter, 5}, {8, 2, 1 + 0.1 * jitter});
}

inline RampCurve family_arc(double jitter)
{
    ControlPoints p;
    for (std::size_t x = 0; x < p.size(); ++x) {
        const double t = std::numbers::pi * static_cast<double>(x) / 8.0;
        p[x] = {20 + 8.0 * static_cast<double>(x), (40 + jitter) * std::cos(t), (40 + jitter) * std::sin(t)};
    }
    return make(p);
}

inline RampCurve family_zigzag(double jitter)
{
    ControlPoints p;
    for (std::size_t x = 0; x < p.size(); ++x)
        p[x] = {20 + 8.0 * static_cast<double>(x), (x % 2 == 0 ? 15.0 : -15.0) + jitter, 3.0 * static_cast<double>(x)};
    return make(p);
}

inline std::vector<std::array<double, 3>> as_arrays(const RampCurve& c)
{
    std::vector<std::array<double, 3>> out;
    for (const auto& p : c.points) out.push_back({p.L, p.a, p.b});
    return out;
}

} // namespace shapes
