#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace rampforge {

/// 8-bit sRGB triple.
struct SRGBColor {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const SRGBColor&, const SRGBColor&) = default;
};

/// A point in CIELAB (D65, 2 degree observer). Doubles as a 3-vector for curve geometry.
struct LabColor {
    double L = 0.0;
    double a = 0.0;
    double b = 0.0;

    friend bool operator==(const LabColor&, const LabColor&) = default;

    LabColor& operator+=(const LabColor& o) { L += o.L; a += o.a; b += o.b; return *this; }
    LabColor& operator-=(const LabColor& o) { L -= o.L; a -= o.a; b -= o.b; return *this; }
    LabColor& operator*=(double s) { L *= s; a *= s; b *= s; return *this; }
    LabColor& operator/=(double s) { L /= s; a /= s; b /= s; return *this; }
};

inline LabColor operator+(LabColor x, const LabColor& y) { return x += y; }
inline LabColor operator-(LabColor x, const LabColor& y) { return x -= y; }
inline LabColor operator-(const LabColor& x) { return {-x.L, -x.a, -x.b}; }
inline LabColor operator*(LabColor x, double s) { return x *= s; }
inline LabColor operator*(double s, LabColor x) { return x *= s; }
inline LabColor operator/(LabColor x, double s) { return x /= s; }

inline double dot(const LabColor& x, const LabColor& y) { return x.L * y.L + x.a * y.a + x.b * y.b; }
inline LabColor cross(const LabColor& x, const LabColor& y)
{
    return {x.a * y.b - x.b * y.a, x.b * y.L - x.L * y.b, x.L * y.a - x.a * y.L};
}
inline double norm(const LabColor& x) { return std::sqrt(dot(x, x)); }

/// Chroma, the distance from the L* axis.
inline double chroma(const LabColor& c) { return std::hypot(c.a, c.b); }

/// Parses `#RRGGBB` (case-insensitive). Throws ParseError naming the input.
SRGBColor parse_hex(std::string_view text);

/// Formats as uppercase `#RRGGBB`.
std::string format_hex(const SRGBColor& c);

LabColor srgb_to_lab(const SRGBColor& c);

/// Linear-light RGB for a LAB color, unclamped. Channels outside [0,1] mean out of gamut.
std::array<double, 3> lab_to_linear_rgb(const LabColor& c);

/// Inverse of srgb_to_lab. Returns nullopt for colors outside the sRGB gamut; never clamps.
std::optional<SRGBColor> lab_to_srgb(const LabColor& c);

/// CIE76 color difference.
inline double delta_e(const LabColor& x, const LabColor& y) { return norm(x - y); }

/// Gamut membership: every linear channel in [0,1] with 1e-6 slack.
bool in_gamut(const LabColor& c);

} // namespace rampforge
