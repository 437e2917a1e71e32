#include "rampforge/spline.hpp"

#include "rampforge/error.hpp"

#include <Eigen/Dense>

#include <algorithm>

namespace rampforge {

namespace {

double channel(const LabColor& c, int k) { return k == 0 ? c.L : (k == 1 ? c.a : c.b); }

void set_channel(LabColor& c, int k, double v)
{
    if (k == 0) c.L = v;
    else if (k == 1) c.a = v;
    else c.b = v;
}

// Second derivatives of the not-a-knot cubic interpolant, one column per channel.
std::vector<LabColor> not_a_knot_second_derivatives(const std::vector<double>& t, const std::vector<LabColor>& y)
{
    const auto n = static_cast<Eigen::Index>(t.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, 3);
    auto h = [&](Eigen::Index i) { return t[i + 1] - t[i]; };

    // Third derivative continuous across the second and second-to-last knots.
    A(0, 0) = h(1);
    A(0, 1) = -(h(0) + h(1));
    A(0, 2) = h(0);
    A(n - 1, n - 3) = h(n - 2);
    A(n - 1, n - 2) = -(h(n - 3) + h(n - 2));
    A(n - 1, n - 1) = h(n - 3);

    for (Eigen::Index i = 1; i + 1 < n; ++i) {
        A(i, i - 1) = h(i - 1);
        A(i, i) = 2.0 * (h(i - 1) + h(i));
        A(i, i + 1) = h(i);
        for (int k = 0; k < 3; ++k) {
            const double up = (channel(y[i + 1], k) - channel(y[i], k)) / h(i);
            const double down = (channel(y[i], k) - channel(y[i - 1], k)) / h(i - 1);
            rhs(i, k) = 6.0 * (up - down);
        }
    }

    const Eigen::MatrixXd m = A.fullPivLu().solve(rhs);
    std::vector<LabColor> out(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = {m(i, 0), m(i, 1), m(i, 2)};
    return out;
}

} // namespace

InterpolatingSpline::InterpolatingSpline(std::span<const LabColor> points)
    : values_(points.begin(), points.end())
{
    if (values_.size() < 2) throw InvalidArgument("spline needs at least 2 points");
    knots_.reserve(values_.size());
    knots_.push_back(0.0);
    for (std::size_t i = 1; i < values_.size(); ++i) {
        const double step = delta_e(values_[i - 1], values_[i]);
        if (step == 0.0) throw InvalidArgument("spline points " + std::to_string(i - 1) + " and " +
                                               std::to_string(i) + " coincide");
        knots_.push_back(knots_.back() + step);
    }
    if (values_.size() >= 4) second_ = not_a_knot_second_derivatives(knots_, values_);
}

LabColor InterpolatingSpline::operator()(double t) const
{
    t = std::clamp(t, knots_.front(), knots_.back());
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    std::size_t i = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
    if (i + 1 >= knots_.size()) i = knots_.size() - 2;

    const double t0 = knots_[i];
    const double t1 = knots_[i + 1];
    const double h = t1 - t0;
    const double u = (t - t0) / h;
    if (second_.empty()) return values_[i] + (values_[i + 1] - values_[i]) * u;

    const double left = t1 - t;
    const double right = t - t0;
    LabColor out;
    for (int k = 0; k < 3; ++k) {
        const double m0 = channel(second_[i], k);
        const double m1 = channel(second_[i + 1], k);
        const double y0 = channel(values_[i], k);
        const double y1 = channel(values_[i + 1], k);
        const double v = m0 * left * left * left / (6.0 * h) + m1 * right * right * right / (6.0 * h) +
                         (y0 / h - m0 * h / 6.0) * left + (y1 / h - m1 * h / 6.0) * right;
        set_channel(out, k, v);
    }
    return out;
}

ArcLengthTable::ArcLengthTable(const InterpolatingSpline& spline, std::size_t segments)
{
    if (spline.is_linear()) {
        // The polyline is its own arc length; tabulate at the knots.
        params_ = spline.knots();
        cumulative_ = spline.knots();
        return;
    }
    params_.resize(segments + 1);
    cumulative_.resize(segments + 1);
    const double t0 = spline.param_begin();
    const double span = spline.param_end() - t0;
    LabColor prev = spline(t0);
    params_[0] = t0;
    cumulative_[0] = 0.0;
    for (std::size_t s = 1; s <= segments; ++s) {
        const double t = s == segments ? spline.param_end() : t0 + span * static_cast<double>(s) / segments;
        const LabColor cur = spline(t);
        params_[s] = t;
        cumulative_[s] = cumulative_[s - 1] + delta_e(prev, cur);
        prev = cur;
    }
}

double ArcLengthTable::param_at(double arc) const
{
    arc = std::clamp(arc, 0.0, length());
    auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), arc);
    if (it == cumulative_.begin()) return params_.front();
    if (it == cumulative_.end()) return params_.back();
    const auto j = static_cast<std::size_t>(it - cumulative_.begin());
    const double seg = cumulative_[j] - cumulative_[j - 1];
    const double frac = seg > 0.0 ? (arc - cumulative_[j - 1]) / seg : 0.0;
    return params_[j - 1] + frac * (params_[j] - params_[j - 1]);
}

std::vector<LabColor> collapse_duplicates(std::span<const LabColor> colors)
{
    std::vector<LabColor> out;
    out.reserve(colors.size());
    for (const auto& c : colors)
        if (out.empty() || !(out.back() == c)) out.push_back(c);
    return out;
}

std::vector<LabColor> resample_by_arc_length(std::span<const LabColor> colors, std::size_t m)
{
    if (m < 2) throw InvalidArgument("resample count must be at least 2, got " + std::to_string(m));
    const auto distinct = collapse_duplicates(colors);
    if (distinct.size() < 2) throw InvalidArgument("ramp needs at least 2 distinct colors");

    const InterpolatingSpline spline(distinct);
    const ArcLengthTable table(spline);
    std::vector<LabColor> out(m);
    out.front() = distinct.front();
    out.back() = distinct.back();
    for (std::size_t k = 1; k + 1 < m; ++k)
        out[k] = spline(table.param_at(table.length() * static_cast<double>(k) / static_cast<double>(m - 1)));
    return out;
}

} // namespace rampforge
