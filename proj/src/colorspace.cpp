#include "rampforge/colorspace.hpp"

#include "rampforge/error.hpp"

#include <algorithm>
#include <cctype>

namespace rampforge {

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

// sRGB primaries to XYZ, D65.
constexpr Mat3 kRgbToXyz{{
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
}};

constexpr double kWhiteX = 0.95047;
constexpr double kWhiteY = 1.0;
constexpr double kWhiteZ = 1.08883;

constexpr double kDelta = 6.0 / 29.0;
// The published matrix maps the white point to (1, 1, 1) only to ~1e-7.
constexpr double kGamutSlack = 1e-6;

constexpr Mat3 invert(const Mat3& m)
{
    const double c00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    const double c01 = m[1][2] * m[2][0] - m[1][0] * m[2][2];
    const double c02 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
    const double det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02;
    return {{
        {c00 / det, (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det, (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det},
        {c01 / det, (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det, (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det},
        {c02 / det, (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det, (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det},
    }};
}

constexpr Mat3 kXyzToRgb = invert(kRgbToXyz);

double decode_channel(std::uint8_t v)
{
    const double c = v / 255.0;
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double encode_channel(double lin)
{
    return lin <= 0.0031308 ? 12.92 * lin : 1.055 * std::pow(lin, 1.0 / 2.4) - 0.055;
}

double lab_f(double t)
{
    return t > kDelta * kDelta * kDelta ? std::cbrt(t) : t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

double lab_f_inv(double t)
{
    return t > kDelta ? t * t * t : 3.0 * kDelta * kDelta * (t - 4.0 / 29.0);
}

int hex_digit(char c)
{
    if (c >= '0' && c <= '9') return c - '0';
    const char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (u >= 'A' && u <= 'F') return u - 'A' + 10;
    return -1;
}

} // namespace

SRGBColor parse_hex(std::string_view text)
{
    if (text.size() != 7 || text[0] != '#')
        throw ParseError("invalid hex color '" + std::string(text) + "': expected #RRGGBB");
    std::array<std::uint8_t, 3> ch{};
    for (int i = 0; i < 3; ++i) {
        const int hi = hex_digit(text[1 + 2 * i]);
        const int lo = hex_digit(text[2 + 2 * i]);
        if (hi < 0 || lo < 0)
            throw ParseError("invalid hex color '" + std::string(text) + "': non-hex digit");
        ch[i] = static_cast<std::uint8_t>(hi * 16 + lo);
    }
    return {ch[0], ch[1], ch[2]};
}

std::string format_hex(const SRGBColor& c)
{
    static constexpr char kDigits[] = "0123456789ABCDEF";
    std::string out = "#";
    for (std::uint8_t v : {c.r, c.g, c.b}) {
        out += kDigits[v >> 4];
        out += kDigits[v & 0xF];
    }
    return out;
}

LabColor srgb_to_lab(const SRGBColor& c)
{
    const std::array<double, 3> lin{decode_channel(c.r), decode_channel(c.g), decode_channel(c.b)};
    std::array<double, 3> xyz{};
    for (int i = 0; i < 3; ++i)
        xyz[i] = kRgbToXyz[i][0] * lin[0] + kRgbToXyz[i][1] * lin[1] + kRgbToXyz[i][2] * lin[2];
    const double fx = lab_f(xyz[0] / kWhiteX);
    const double fy = lab_f(xyz[1] / kWhiteY);
    const double fz = lab_f(xyz[2] / kWhiteZ);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

std::array<double, 3> lab_to_linear_rgb(const LabColor& c)
{
    const double fy = (c.L + 16.0) / 116.0;
    const double fx = fy + c.a / 500.0;
    const double fz = fy - c.b / 200.0;
    const std::array<double, 3> xyz{kWhiteX * lab_f_inv(fx), kWhiteY * lab_f_inv(fy), kWhiteZ * lab_f_inv(fz)};
    std::array<double, 3> lin{};
    for (int i = 0; i < 3; ++i)
        lin[i] = kXyzToRgb[i][0] * xyz[0] + kXyzToRgb[i][1] * xyz[1] + kXyzToRgb[i][2] * xyz[2];
    return lin;
}

bool in_gamut(const LabColor& c)
{
    if (!std::isfinite(c.L) || !std::isfinite(c.a) || !std::isfinite(c.b)) return false;
    const auto lin = lab_to_linear_rgb(c);
    return std::all_of(lin.begin(), lin.end(),
                       [](double v) { return v >= -kGamutSlack && v <= 1.0 + kGamutSlack; });
}

std::optional<SRGBColor> lab_to_srgb(const LabColor& c)
{
    if (!in_gamut(c)) return std::nullopt;
    const auto lin = lab_to_linear_rgb(c);
    std::array<std::uint8_t, 3> out{};
    for (int i = 0; i < 3; ++i) {
        // Only slack-sized excursions reach here.
        const double v = encode_channel(std::clamp(lin[i], 0.0, 1.0));
        out[i] = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
    }
    return SRGBColor{out[0], out[1], out[2]};
}

} // namespace rampforge
