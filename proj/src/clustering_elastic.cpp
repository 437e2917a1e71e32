#include "rampforge/clustering.hpp"

#include "rampforge/error.hpp"
#include "rampforge/random.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace rampforge {

SRVFSignature srvf(const RampCurve& c)
{
    const double total = curve_length(c);
    SRVFSignature sig;
    for (std::size_t i = 0; i < kSrvfSamples; ++i) {
        const LabColor seg = c.points[i + 1] - c.points[i];
        const double len = norm(seg);
        if (len == 0.0)
            throw InvalidArgument("srvf: zero-length segment between points " + std::to_string(i) + " and " +
                                  std::to_string(i + 1));
        // Unit-length curve on t in [0, 1]: velocity = segment / total / dt.
        const LabColor velocity = seg * (static_cast<double>(kSrvfSamples) / total);
        sig.samples[i] = velocity / std::sqrt(norm(velocity));
    }
    return sig;
}

double srvf_distance(const SRVFSignature& x, const SRVFSignature& y)
{
    Eigen::Matrix3d H = Eigen::Matrix3d::Zero();
    for (std::size_t i = 0; i < kSrvfSamples; ++i) {
        const Eigen::Vector3d xi(x.samples[i].L, x.samples[i].a, x.samples[i].b);
        const Eigen::Vector3d yi(y.samples[i].L, y.samples[i].a, y.samples[i].b);
        H += yi * xi.transpose();
    }
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Matrix3d U = svd.matrixU();
    const Eigen::Matrix3d V = svd.matrixV();
    const double sign = (V * U.transpose()).determinant() > 0.0 ? 1.0 : -1.0;

    double best = std::numeric_limits<double>::infinity();
    // Best proper rotation, then best rotation composed with a reflection.
    for (double last : {sign, -sign}) {
        const Eigen::Matrix3d R = V * Eigen::Vector3d(1.0, 1.0, last).asDiagonal() * U.transpose();
        double acc = 0.0;
        for (std::size_t i = 0; i < kSrvfSamples; ++i) {
            const Eigen::Vector3d xi(x.samples[i].L, x.samples[i].a, x.samples[i].b);
            const Eigen::Vector3d yi(y.samples[i].L, y.samples[i].a, y.samples[i].b);
            acc += (xi - R * yi).squaredNorm();
        }
        best = std::min(best, acc);
    }
    // L2 norm on [0, 1] with piecewise-constant samples of width 1/8.
    return std::sqrt(best / static_cast<double>(kSrvfSamples));
}

namespace {

// Distances below this are rounding noise; normalizing by a noise-sized
// maximum would blow them up to 1.
constexpr double kNoiseFloor = 1e-9;

double safe_scale(double v) { return v > 0.0 ? v : 1.0; }

double denoise(double v) { return v < kNoiseFloor ? 0.0 : v; }

} // namespace

double weighted_distance(const RampCurve& ci, const RampCurve& cj, double w, const MetricScale& scale)
{
    if (!(w >= 0.0 && w <= 1.0)) throw InvalidArgument("weight w must lie in [0, 1]");
    const double shape = srvf_distance(srvf(ci), srvf(cj)) / safe_scale(scale.shape_max);
    const double length = std::abs(curve_length(ci) - curve_length(cj)) / safe_scale(scale.length_max);
    return w * shape + (1.0 - w) * length;
}

ElasticMetric::ElasticMetric(std::span<const RampCurve> curves)
    : n_(curves.size()), shape_(n_ * n_, 0.0), length_(n_ * n_, 0.0)
{
    std::vector<SRVFSignature> sigs;
    std::vector<double> lengths;
    sigs.reserve(n_);
    for (const auto& c : curves) {
        sigs.push_back(srvf(c));
        lengths.push_back(curve_length(c));
    }
    double smax = 0.0;
    double lmax = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            const double s = denoise(srvf_distance(sigs[i], sigs[j]));
            const double l = denoise(std::abs(lengths[i] - lengths[j]));
            shape_[i * n_ + j] = shape_[j * n_ + i] = s;
            length_[i * n_ + j] = length_[j * n_ + i] = l;
            smax = std::max(smax, s);
            lmax = std::max(lmax, l);
        }
    }
    scale_ = {safe_scale(smax), safe_scale(lmax)};
    for (auto& v : shape_) v /= scale_.shape_max;
    for (auto& v : length_) v /= scale_.length_max;
}

double default_sigma(const ElasticMetric& metric, double w)
{
    std::vector<double> all;
    std::vector<double> positive;
    for (std::size_t i = 0; i < metric.size(); ++i)
        for (std::size_t j = i + 1; j < metric.size(); ++j) {
            const double d = metric.distance(i, j, w);
            all.push_back(d);
            if (d > 0.0) positive.push_back(d);
        }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const std::size_t m = v.size() / 2;
        return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
    };
    if (!all.empty()) {
        const double m = median(all);
        if (m > 0.0) return m;
    }
    if (!positive.empty()) return median(positive);
    return 1.0;
}

double elastic_log_posterior(const ElasticMetric& metric, double w, double alpha, double sigma,
                             std::span<const int> assignments)
{
    const int k = assignments.empty() ? 0 : *std::max_element(assignments.begin(), assignments.end()) + 1;
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    for (int a : assignments) ++sizes[static_cast<std::size_t>(a)];
    double logp = 0.0;
    for (int s : sizes)
        if (s > 0) logp += std::log(alpha) + std::lgamma(static_cast<double>(s));
    const double inv = 1.0 / (2.0 * sigma * sigma);
    for (std::size_t i = 0; i < assignments.size(); ++i)
        for (std::size_t j = i + 1; j < assignments.size(); ++j)
            if (assignments[i] == assignments[j]) {
                const double d = metric.distance(i, j, w);
                logp -= d * d * inv;
            }
    return logp;
}

Clustering elastic_cluster(std::span<const RampCurve> curves, double w, const ElasticOptions& options,
                           std::uint64_t rng_seed)
{
    if (curves.size() < 2) throw InvalidArgument("elastic clustering needs at least 2 curves");
    return elastic_cluster(curves, ElasticMetric(curves), w, options, rng_seed);
}

Clustering elastic_cluster(std::span<const RampCurve> curves, const ElasticMetric& metric, double w,
                           const ElasticOptions& options, std::uint64_t rng_seed)
{
    const std::size_t n = curves.size();
    if (n < 2) throw InvalidArgument("elastic clustering needs at least 2 curves");
    if (metric.size() != n) throw InvalidArgument("metric does not match curve set");
    if (options.iterations < 1) throw InvalidArgument("elastic clustering needs at least 1 iteration");
    if (!(options.alpha > 0.0)) throw InvalidArgument("alpha must be positive");
    if (!(w >= 0.0 && w <= 1.0)) throw InvalidArgument("weight w must lie in [0, 1]");
    const double sigma = options.sigma.value_or(default_sigma(metric, w));
    if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");

    std::vector<double> sq(n * n);
    const double inv = 1.0 / (2.0 * sigma * sigma);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double d = metric.distance(i, j, w);
            sq[i * n + j] = d * d * inv;
        }

    Rng rng(rng_seed);
    std::vector<int> labels(n, 0);
    std::vector<int> sizes{static_cast<int>(n)};
    std::vector<int> best_labels = labels;
    double best_logp = elastic_log_posterior(metric, w, options.alpha, sigma, labels);

    std::vector<double> penalty;
    std::vector<double> logits;
    for (int sweep = 0; sweep < options.iterations; ++sweep) {
        for (std::size_t i = 0; i < n; ++i) {
            --sizes[static_cast<std::size_t>(labels[i])];
            penalty.assign(sizes.size(), 0.0);
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) penalty[static_cast<std::size_t>(labels[j])] += sq[i * n + j];

            // Slots 0..K-1 are existing tables, slot K opens a new one.
            logits.assign(sizes.size() + 1, -std::numeric_limits<double>::infinity());
            for (std::size_t c = 0; c < sizes.size(); ++c)
                if (sizes[c] > 0) logits[c] = std::log(static_cast<double>(sizes[c])) - penalty[c];
            logits.back() = std::log(options.alpha);

            const double top = *std::max_element(logits.begin(), logits.end());
            double total = 0.0;
            for (auto& l : logits) {
                l = std::exp(l - top);
                total += l;
            }
            double target = rng.uniform() * total;
            std::size_t pick = logits.size() - 1;
            for (std::size_t c = 0; c < logits.size(); ++c) {
                target -= logits[c];
                if (target < 0.0 && logits[c] > 0.0) {
                    pick = c;
                    break;
                }
            }
            if (pick == sizes.size()) {
                const auto empty = std::find(sizes.begin(), sizes.end(), 0);
                pick = static_cast<std::size_t>(empty - sizes.begin());
                if (empty == sizes.end()) sizes.push_back(0);
            }
            labels[i] = static_cast<int>(pick);
            ++sizes[pick];
        }

        const auto canon = canonical_labels(labels);
        const double logp = elastic_log_posterior(metric, w, options.alpha, sigma, canon);
        if (logp > best_logp) {
            best_logp = logp;
            best_labels = canon;
        }
    }

    Clustering out;
    out.assignments = canonical_labels(best_labels);
    out.k = *std::max_element(out.assignments.begin(), out.assignments.end()) + 1;
    out.method = ClusterMethod::elastic;
    out.weight = w;
    for (std::size_t i = 0; i < n; ++i) out.ids.push_back(curves[i].origin_id.value_or("curve-" + std::to_string(i)));
    const auto score = score_partition(curves, out.assignments, out.k);
    out.tightness_per_cluster = score.tightness_per_cluster;
    out.cluster_sizes = score.cluster_sizes;
    out.mean_tightness = score.weighted_mean;
    out.unweighted_mean_tightness = score.unweighted_mean;
    return out;
}

WeightSweep weight_sweep(std::span<const RampCurve> curves, std::uint64_t rng_seed, const ElasticOptions& options)
{
    if (curves.size() < 2) throw InvalidArgument("weight sweep needs at least 2 curves");
    const ElasticMetric metric(curves);
    WeightSweep out;
    std::vector<Clustering> runs;
    for (int step = 0; step <= 10; ++step) {
        const double w = step / 10.0;
        Clustering c = elastic_cluster(curves, metric, w, options, rng_seed);
        WeightSweepEntry e;
        e.w = w;
        e.k = c.k;
        e.min_cluster = *std::min_element(c.cluster_sizes.begin(), c.cluster_sizes.end());
        e.max_cluster = *std::max_element(c.cluster_sizes.begin(), c.cluster_sizes.end());
        e.valid = std::isfinite(c.mean_tightness);
        e.weighted_tightness = c.mean_tightness;
        e.unweighted_tightness = c.unweighted_mean_tightness;
        out.table.push_back(e);
        runs.push_back(std::move(c));
    }

    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < out.table.size(); ++i) {
        const auto& e = out.table[i];
        if (!e.valid) continue;
        if (!best) {
            best = i;
            continue;
        }
        const auto& b = out.table[*best];
        const double tol = 1e-12 * (1.0 + std::abs(b.weighted_tightness));
        if (e.weighted_tightness < b.weighted_tightness - tol ||
            (std::abs(e.weighted_tightness - b.weighted_tightness) <= tol &&
             std::abs(e.w - 0.5) < std::abs(b.w - 0.5)))
            best = i;
    }
    if (!best) throw ModelError("weight sweep: no weight produced a cluster with at least 2 curves");
    out.best_w = out.table[*best].w;
    out.best = std::move(runs[*best]);
    return out;
}

} // namespace rampforge
