#pragma once

#include "rampforge/colorspace.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace rampforge {

/// Interpolating cubic spline through a sequence of LAB points, one cubic per
/// channel over a shared chord-length parameter. Uses not-a-knot end
/// conditions (what FITPACK's interpolating splprep produces). With fewer
/// than four points it degrades to the polyline through them.
class InterpolatingSpline {
public:
    /// Requires >= 2 points with no two consecutive points equal.
    explicit InterpolatingSpline(std::span<const LabColor> points);

    LabColor operator()(double t) const;

    double param_begin() const { return knots_.front(); }
    double param_end() const { return knots_.back(); }
    const std::vector<double>& knots() const { return knots_; }
    bool is_linear() const { return second_.empty(); }

private:
    std::vector<double> knots_;
    std::vector<LabColor> values_;
    std::vector<LabColor> second_; // second derivatives at knots; empty for polylines
};

/// Cumulative arc length of a spline, tabulated by dense uniform sampling in
/// the parameter and linear accumulation between samples.
class ArcLengthTable {
public:
    static constexpr std::size_t kDefaultSegments = 1024;

    explicit ArcLengthTable(const InterpolatingSpline& spline, std::size_t segments = kDefaultSegments);

    double length() const { return cumulative_.back(); }

    /// Parameter value whose arc length from the start equals `arc` (clamped to [0, length]).
    double param_at(double arc) const;

private:
    std::vector<double> params_;
    std::vector<double> cumulative_;
};

/// Drops consecutive duplicate colors.
std::vector<LabColor> collapse_duplicates(std::span<const LabColor> colors);

/// Fits the spline through `colors` and returns `m` points equally spaced in
/// arc length. First and last outputs equal the first and last inputs exactly.
/// Throws InvalidArgument for m < 2 or fewer than 2 distinct colors.
std::vector<LabColor> resample_by_arc_length(std::span<const LabColor> colors, std::size_t m);

} // namespace rampforge
