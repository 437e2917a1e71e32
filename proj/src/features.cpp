#include "rampforge/features.hpp"

#include "rampforge/error.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numeric>

namespace rampforge {

namespace {

constexpr double kMaxRadius = 1e6;
constexpr double kRankTolerance = 1e-9;

double fit_radius(const Eigen::MatrixXd& centered)
{
    // Rows are points; solve |p|^2 = 2 c.p + k in the least-squares sense.
    const Eigen::Index n = centered.rows();
    const Eigen::Index dim = centered.cols();
    Eigen::MatrixXd A(n, dim + 1);
    Eigen::VectorXd rhs(n);
    A.leftCols(dim) = 2.0 * centered;
    A.col(dim).setOnes();
    rhs = centered.rowwise().squaredNorm();
    const Eigen::VectorXd sol = A.colPivHouseholderQr().solve(rhs);
    const double r2 = sol(dim) + sol.head(dim).squaredNorm();
    return r2 > 0.0 ? std::sqrt(r2) : 0.0;
}

} // namespace

double sphere_curvature(std::span<const LabColor> points)
{
    const auto n = static_cast<Eigen::Index>(points.size());
    if (n < 3) return 0.0;
    Eigen::MatrixXd P(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& p = points[static_cast<std::size_t>(i)];
        P.row(i) << p.L, p.a, p.b;
    }
    const Eigen::RowVector3d centroid = P.colwise().mean();
    const Eigen::MatrixXd X = P.rowwise() - centroid;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinV);
    const Eigen::Vector3d s = svd.singularValues();
    if (s(0) == 0.0 || s(1) <= kRankTolerance * s(0)) return 0.0;

    double r = 0.0;
    if (s(2) <= kRankTolerance * s(0)) {
        // Coplanar: any sphere through the fitted circle is equally good; take the circle.
        const Eigen::MatrixXd in_plane = X * svd.matrixV().leftCols(2);
        r = fit_radius(in_plane);
    } else {
        r = fit_radius(X);
    }
    if (!(r > 0.0) || !std::isfinite(r) || r > kMaxRadius) return 0.0;
    return 1.0 / r;
}

int turning_points(std::span<const LabColor> points)
{
    int count = 0;
    for (auto get : {+[](const LabColor& c) { return c.L; }, +[](const LabColor& c) { return c.a; },
                     +[](const LabColor& c) { return c.b; }}) {
        for (std::size_t i = 1; i + 1 < points.size(); ++i) {
            const double prev = get(points[i - 1]);
            const double cur = get(points[i]);
            const double next = get(points[i + 1]);
            if ((cur > prev && cur > next) || (cur < prev && cur < next)) ++count;
        }
    }
    return count;
}

FeatureVector compute_features(const RampCurve& c)
{
    const auto& p = c.points;
    std::array<LabColor, kControlPoints - 1> seg{};
    for (std::size_t i = 0; i + 1 < kControlPoints; ++i) {
        seg[i] = p[i + 1] - p[i];
        if (norm(seg[i]) == 0.0)
            throw InvalidArgument("degenerate curve" + (c.origin_id ? " '" + *c.origin_id + "'" : std::string()) +
                                  ": zero-length segment between points " + std::to_string(i) + " and " +
                                  std::to_string(i + 1));
    }

    FeatureVector f;
    for (std::size_t i = 0; i < seg.size(); ++i) f.local_discriminability[i] = norm(seg[i]);
    for (std::size_t j = 0; j + 1 < seg.size(); ++j)
        f.local_angles[j] = std::atan2(norm(cross(seg[j], seg[j + 1])), dot(seg[j], seg[j + 1]));
    f.sum_of_angles = std::accumulate(f.local_angles.begin(), f.local_angles.end(), 0.0);
    f.length = std::accumulate(f.local_discriminability.begin(), f.local_discriminability.end(), 0.0);

    // Finite differences with unit step per control index.
    f.speed.front() = norm(seg.front());
    f.speed.back() = norm(seg.back());
    for (std::size_t i = 1; i + 1 < kControlPoints; ++i) {
        f.speed[i] = norm((p[i + 1] - p[i - 1]) * 0.5);
        f.acceleration[i] = norm(p[i + 1] - p[i] * 2.0 + p[i - 1]);
    }
    f.acceleration.front() = f.acceleration[1];
    f.acceleration.back() = f.acceleration[kControlPoints - 2];

    f.curvature = sphere_curvature(p);
    f.turning_points = turning_points(p);
    return f;
}

std::size_t group_width(FeatureGroup g)
{
    switch (g) {
    case FeatureGroup::local_angles: return kControlPoints - 2;
    case FeatureGroup::local_discriminability: return kControlPoints - 1;
    case FeatureGroup::speed:
    case FeatureGroup::acceleration: return kControlPoints;
    default: return 1;
    }
}

std::vector<double> flatten(const FeatureVector& f, std::uint8_t mask)
{
    std::vector<double> row;
    auto take = [&](FeatureGroup g, auto&& values) {
        if (mask & mask_of(g)) row.insert(row.end(), values.begin(), values.end());
    };
    take(FeatureGroup::local_angles, f.local_angles);
    take(FeatureGroup::sum_of_angles, std::array{f.sum_of_angles});
    take(FeatureGroup::local_discriminability, f.local_discriminability);
    take(FeatureGroup::length, std::array{f.length});
    take(FeatureGroup::speed, f.speed);
    take(FeatureGroup::acceleration, f.acceleration);
    take(FeatureGroup::curvature, std::array{f.curvature});
    take(FeatureGroup::turning_points, std::array{static_cast<double>(f.turning_points)});
    return row;
}

std::string_view to_string(FeatureGroup g)
{
    switch (g) {
    case FeatureGroup::local_angles: return "local_angles";
    case FeatureGroup::sum_of_angles: return "sum_of_angles";
    case FeatureGroup::local_discriminability: return "local_discriminability";
    case FeatureGroup::length: return "length";
    case FeatureGroup::speed: return "speed";
    case FeatureGroup::acceleration: return "acceleration";
    case FeatureGroup::curvature: return "curvature";
    case FeatureGroup::turning_points: return "turning_points";
    }
    return "?";
}

std::string describe_mask(std::uint8_t mask)
{
    std::string out;
    for (int g = 0; g < kFeatureGroups; ++g) {
        if ((mask & (1u << g)) == 0) continue;
        if (!out.empty()) out += '+';
        out += to_string(static_cast<FeatureGroup>(g));
    }
    return out;
}

} // namespace rampforge
