#pragma once

#include "rampforge/curve.hpp"
#include "rampforge/features.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rampforge {

enum class ClusterMethod { kmeans, elastic };

std::string_view to_string(ClusterMethod m);

/// Per-cluster quality of a partition. Tightness of a singleton is undefined
/// and reported as NaN.
struct PartitionScore {
    std::vector<double> tightness_per_cluster;
    std::vector<std::size_t> cluster_sizes;
    double weighted_mean = 0.0;   // size-weighted over clusters with >= 2 members
    double unweighted_mean = 0.0; // plain mean over the same clusters
    bool has_singleton = false;
};

/// A partition of a curve set. assignments[i] is the cluster of curve i;
/// cluster indices are contiguous from 0 and numbered by first appearance.
struct Clustering {
    std::vector<int> assignments;
    std::vector<std::string> ids;
    int k = 0;
    ClusterMethod method = ClusterMethod::kmeans;
    std::optional<std::uint8_t> feature_subset;
    std::optional<double> weight;
    std::vector<double> tightness_per_cluster;
    std::vector<std::size_t> cluster_sizes;
    double mean_tightness = 0.0;
    double unweighted_mean_tightness = 0.0;

    std::vector<std::size_t> members(int cluster) const;
};

/// Mean summed distance between corresponding points over all ordered pairs
/// of distinct curves: sum_i sum_j sum_x |c_i(x) - c_j(x)| / (n (n - 1)).
/// Curves are used as given (align them first). Throws InvalidArgument for n < 2.
double tightness(std::span<const RampCurve> aligned);

/// Aligns every cluster of `assignments` and scores it.
PartitionScore score_partition(std::span<const RampCurve> curves, std::span<const int> assignments, int k);

/// Renumbers clusters by first appearance.
std::vector<int> canonical_labels(std::span<const int> assignments);

// ---------------------------------------------------------------- k-means

/// Corpus feature matrix, z-scored per scalar dimension. Constant
/// dimensions become all-zero columns.
class FeatureTable {
public:
    explicit FeatureTable(std::span<const RampCurve> curves);

    std::size_t rows() const { return rows_; }
    /// Row-major matrix restricted to the groups in `mask`, with its width.
    std::vector<double> select(std::uint8_t mask, std::size_t& width) const;

private:
    std::size_t rows_ = 0;
    std::size_t width_ = 0;
    std::vector<double> z_;                    // rows_ x width_
    std::array<std::size_t, kFeatureGroups> offset_{};
};

struct KMeansOptions {
    int max_iterations = 300;
    int restarts = 4; // best of this many k-means++ seedings, by inertia
};

/// Lloyd's algorithm over the selected z-scored features. Tightness is
/// measured on the aligned curves of each cluster, not on features.
Clustering kmeans_cluster(std::span<const RampCurve> curves, int k, std::uint8_t subset, std::uint64_t rng_seed,
                          const KMeansOptions& options = {});
Clustering kmeans_cluster(std::span<const RampCurve> curves, const FeatureTable& features, int k,
                          std::uint8_t subset, std::uint64_t rng_seed, const KMeansOptions& options = {});

/// Raw k-means on a row-major matrix; returns canonical labels. Exposed for oracle tests.
std::vector<int> kmeans_assign(std::span<const double> data, std::size_t width, int k, std::uint64_t rng_seed,
                               const KMeansOptions& options = {}, double* inertia = nullptr);

struct SelectionEntry {
    std::uint8_t mask = 0;
    int k = 0;
    bool valid = false; // false when some cluster has fewer than 2 curves
    double weighted_tightness = 0.0;
    double unweighted_tightness = 0.0;
    std::size_t min_cluster = 0;
    std::size_t max_cluster = 0;
};

struct FeatureSelection {
    std::uint8_t mask = 0;
    int k = 0;
    Clustering clustering;
    std::vector<SelectionEntry> table; // every (mask, k), mask-major
};

struct FeatureSelectionOptions {
    int k_min = 2;
    int k_max = 15;
    int jobs = 1;
    KMeansOptions kmeans;
};

/// Exhaustive search over the 255 non-empty feature subsets and every k in
/// range. Lowest size-weighted tightness wins; ties go to smaller k, then
/// smaller mask. Throws ModelError when every configuration is rejected.
FeatureSelection feature_selection(std::span<const RampCurve> curves, std::uint64_t rng_seed,
                                   const FeatureSelectionOptions& options = {});

/// Winner of a score table under the selection rule, or nullopt if none is valid.
std::optional<std::size_t> best_entry(std::span<const SelectionEntry> table);

// ---------------------------------------------------------------- elastic

inline constexpr std::size_t kSrvfSamples = kControlPoints - 1;

/// Square-root velocity samples q = c'/sqrt(|c'|) of the unit-length curve,
/// one per segment of the uniform parameterization on [0, 1].
struct SRVFSignature {
    std::array<LabColor, kSrvfSamples> samples{};
};

/// Throws InvalidArgument on a zero-length segment.
SRVFSignature srvf(const RampCurve& c);

/// L2 distance between signatures after the best rotation, optionally
/// combined with a reflection (Kabsch).
double srvf_distance(const SRVFSignature& x, const SRVFSignature& y);

/// Corpus maxima used to bring both metric terms to [0, 1].
struct MetricScale {
    double shape_max = 1.0;
    double length_max = 1.0;
};

/// w * shape / shape_max + (1 - w) * |L(ci) - L(cj)| / length_max.
double weighted_distance(const RampCurve& ci, const RampCurve& cj, double w, const MetricScale& scale = {});

/// Precomputed normalized shape and length distance matrices for a curve set.
class ElasticMetric {
public:
    explicit ElasticMetric(std::span<const RampCurve> curves);

    std::size_t size() const { return n_; }
    const MetricScale& scale() const { return scale_; }
    double shape(std::size_t i, std::size_t j) const { return shape_[i * n_ + j]; }
    double length(std::size_t i, std::size_t j) const { return length_[i * n_ + j]; }
    double distance(std::size_t i, std::size_t j, double w) const { return w * shape(i, j) + (1.0 - w) * length(i, j); }

private:
    std::size_t n_ = 0;
    MetricScale scale_;
    std::vector<double> shape_;
    std::vector<double> length_;
};

struct ElasticOptions {
    double alpha = 1.0;
    std::optional<double> sigma; // default: median pairwise distance
    int iterations = 500;
};

/// Median of the pairwise distances at weight w (falls back to the median of
/// the positive ones when that is zero, and to 1 when all are zero).
double default_sigma(const ElasticMetric& metric, double w);

/// Chinese-restaurant-process Gibbs sampler over the weighted distance
/// matrix. The joint is the CRP prior times a pairwise cohesion term
/// exp(-d_ij^2 / (2 sigma^2)) for every pair sharing a cluster. Returns the
/// highest-posterior partition visited.
Clustering elastic_cluster(std::span<const RampCurve> curves, double w, const ElasticOptions& options,
                           std::uint64_t rng_seed);
Clustering elastic_cluster(std::span<const RampCurve> curves, const ElasticMetric& metric, double w,
                           const ElasticOptions& options, std::uint64_t rng_seed);

/// Unnormalized log posterior of a partition; exposed for oracle tests.
double elastic_log_posterior(const ElasticMetric& metric, double w, double alpha, double sigma,
                             std::span<const int> assignments);

struct WeightSweepEntry {
    double w = 0.0;
    int k = 0;
    bool valid = false; // at least one cluster with >= 2 curves
    double weighted_tightness = 0.0;
    double unweighted_tightness = 0.0;
    std::size_t min_cluster = 0;
    std::size_t max_cluster = 0;
};

struct WeightSweep {
    std::vector<WeightSweepEntry> table; // w = 0.0, 0.1, ..., 1.0
    double best_w = 0.5;
    Clustering best;
};

/// Clusters at each w in {0.0, 0.1, ..., 1.0} and scores by tightness.
/// Ties go to the w closest to 0.5.
WeightSweep weight_sweep(std::span<const RampCurve> curves, std::uint64_t rng_seed, const ElasticOptions& options = {});

// ---------------------------------------------------------------- diagnostics

/// CSV with columns method,param,k,mean_tightness,unweighted_tightness,min_size,max_size,valid.
void write_selection_csv(std::ostream& out, std::span<const SelectionEntry> table);
void write_sweep_csv(std::ostream& out, std::span<const WeightSweepEntry> table);

} // namespace rampforge
