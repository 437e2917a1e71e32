#include "rampforge/clustering.hpp"

#include "rampforge/error.hpp"
#include "rampforge/kernels.hpp"
#include "rampforge/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

namespace rampforge {

std::string_view to_string(ClusterMethod m) { return m == ClusterMethod::kmeans ? "kmeans" : "elastic"; }

std::vector<std::size_t> Clustering::members(int cluster) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignments.size(); ++i)
        if (assignments[i] == cluster) out.push_back(i);
    return out;
}

double tightness(std::span<const RampCurve> aligned)
{
    const std::size_t n = aligned.size();
    if (n < 2) throw InvalidArgument("tightness is undefined for clusters with fewer than 2 curves");
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) total += kernels::point_distance_sum(aligned[i].points, aligned[j].points);
    // Each unordered pair stands for both ordered pairs.
    return 2.0 * total / (static_cast<double>(n) * static_cast<double>(n - 1));
}

std::vector<int> canonical_labels(std::span<const int> assignments)
{
    std::vector<int> remap;
    std::vector<int> out(assignments.size());
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        const int c = assignments[i];
        if (c < 0) throw InvalidArgument("negative cluster label");
        if (static_cast<std::size_t>(c) >= remap.size()) remap.resize(static_cast<std::size_t>(c) + 1, -1);
        if (remap[static_cast<std::size_t>(c)] < 0)
            remap[static_cast<std::size_t>(c)] = static_cast<int>(std::count_if(remap.begin(), remap.end(), [](int r) { return r >= 0; }));
        out[i] = remap[static_cast<std::size_t>(c)];
    }
    return out;
}

PartitionScore score_partition(std::span<const RampCurve> curves, std::span<const int> assignments, int k)
{
    PartitionScore score;
    score.tightness_per_cluster.assign(static_cast<std::size_t>(k), std::numeric_limits<double>::quiet_NaN());
    score.cluster_sizes.assign(static_cast<std::size_t>(k), 0);
    std::vector<std::vector<RampCurve>> groups(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < curves.size(); ++i) groups[static_cast<std::size_t>(assignments[i])].push_back(curves[i]);

    double weighted = 0.0;
    double plain = 0.0;
    std::size_t counted_curves = 0;
    std::size_t counted_clusters = 0;
    for (std::size_t c = 0; c < groups.size(); ++c) {
        score.cluster_sizes[c] = groups[c].size();
        if (groups[c].size() < 2) {
            score.has_singleton = true;
            continue;
        }
        const double t = tightness(align_cluster(groups[c]).curves);
        score.tightness_per_cluster[c] = t;
        weighted += t * static_cast<double>(groups[c].size());
        plain += t;
        counted_curves += groups[c].size();
        ++counted_clusters;
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    score.weighted_mean = counted_curves > 0 ? weighted / static_cast<double>(counted_curves) : nan;
    score.unweighted_mean = counted_clusters > 0 ? plain / static_cast<double>(counted_clusters) : nan;
    return score;
}

FeatureTable::FeatureTable(std::span<const RampCurve> curves) : rows_(curves.size())
{
    std::size_t off = 0;
    for (int g = 0; g < kFeatureGroups; ++g) {
        offset_[static_cast<std::size_t>(g)] = off;
        off += group_width(static_cast<FeatureGroup>(g));
    }
    width_ = off;
    z_.resize(rows_ * width_);
    for (std::size_t i = 0; i < rows_; ++i) {
        const auto row = flatten(compute_features(curves[i]));
        std::copy(row.begin(), row.end(), z_.begin() + static_cast<std::ptrdiff_t>(i * width_));
    }
    for (std::size_t d = 0; d < width_; ++d) {
        double mean = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) mean += z_[i * width_ + d];
        mean /= static_cast<double>(std::max<std::size_t>(rows_, 1));
        double var = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) var += (z_[i * width_ + d] - mean) * (z_[i * width_ + d] - mean);
        var /= static_cast<double>(std::max<std::size_t>(rows_, 1));
        const double sd = std::sqrt(var);
        // Treat relative spread below rounding noise as constant.
        const bool constant = !(sd > 1e-12 * (1.0 + std::abs(mean)));
        for (std::size_t i = 0; i < rows_; ++i) {
            double& v = z_[i * width_ + d];
            v = constant ? 0.0 : (v - mean) / sd;
        }
    }
}

std::vector<double> FeatureTable::select(std::uint8_t mask, std::size_t& width) const
{
    std::vector<std::pair<std::size_t, std::size_t>> cols;
    width = 0;
    for (int g = 0; g < kFeatureGroups; ++g) {
        if (!(mask & mask_of(static_cast<FeatureGroup>(g)))) continue;
        const std::size_t w = group_width(static_cast<FeatureGroup>(g));
        cols.emplace_back(offset_[static_cast<std::size_t>(g)], w);
        width += w;
    }
    std::vector<double> out;
    out.reserve(rows_ * width);
    for (std::size_t i = 0; i < rows_; ++i)
        for (const auto& [start, w] : cols)
            out.insert(out.end(), z_.begin() + static_cast<std::ptrdiff_t>(i * width_ + start),
                       z_.begin() + static_cast<std::ptrdiff_t>(i * width_ + start + w));
    return out;
}

namespace {

struct KMeansRun {
    std::vector<int> labels;
    double inertia = std::numeric_limits<double>::infinity();
};

KMeansRun lloyd(std::span<const double> data, std::size_t width, std::size_t n, int k, Rng& rng,
                const KMeansOptions& options)
{
    const auto& kern = kernels::active();
    const auto uk = static_cast<std::size_t>(k);
    std::vector<double> centroids(uk * width);
    auto row = [&](std::size_t i) { return data.data() + i * width; };
    auto center = [&](std::size_t c) { return centroids.data() + c * width; };

    // k-means++ seeding.
    std::vector<std::size_t> chosen;
    chosen.push_back(static_cast<std::size_t>(rng.below(n)));
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    while (chosen.size() < uk) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            nearest[i] = std::min(nearest[i], kern.squared_distance(row(i), row(chosen.back()), width));
            total += nearest[i];
        }
        std::size_t pick = n;
        if (total > 0.0) {
            double target = rng.uniform() * total;
            for (std::size_t i = 0; i < n; ++i) {
                target -= nearest[i];
                if (target < 0.0 && nearest[i] > 0.0) {
                    pick = i;
                    break;
                }
            }
            if (pick == n) // rounding left target >= 0; take the last positive weight
                for (std::size_t i = n; i-- > 0;)
                    if (nearest[i] > 0.0) { pick = i; break; }
        } else {
            // All remaining points coincide with a center: pick uniformly among unchosen indices.
            std::vector<std::size_t> pool;
            for (std::size_t i = 0; i < n; ++i)
                if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) pool.push_back(i);
            pick = pool[static_cast<std::size_t>(rng.below(pool.size()))];
        }
        chosen.push_back(pick);
    }
    for (std::size_t c = 0; c < uk; ++c) std::copy(row(chosen[c]), row(chosen[c]) + width, center(c));

    // Exact ties keep the current label; the initial labels are i mod k.
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i % uk);
    std::vector<double> dist(n);
    std::vector<double> dists(uk);

    for (int iter = 0; iter < options.max_iterations; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < uk; ++c) {
                dists[c] = kern.squared_distance(row(i), center(c), width);
                best = std::min(best, dists[c]);
            }
            int label = labels[i];
            if (dists[static_cast<std::size_t>(label)] != best)
                label = static_cast<int>(std::find(dists.begin(), dists.end(), best) - dists.begin());
            if (label != labels[i]) {
                labels[i] = label;
                changed = true;
            }
            dist[i] = best;
        }
        if (!changed && iter > 0) break;

        std::vector<std::size_t> counts(uk, 0);
        std::fill(centroids.begin(), centroids.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = static_cast<std::size_t>(labels[i]);
            ++counts[c];
            for (std::size_t d = 0; d < width; ++d) center(c)[d] += row(i)[d];
        }
        for (std::size_t c = 0; c < uk; ++c) {
            if (counts[c] == 0) {
                // Reseed an empty cluster with the worst-fit point of a cluster that can spare it.
                std::size_t far = n;
                for (std::size_t i = 0; i < n; ++i)
                    if (counts[static_cast<std::size_t>(labels[i])] > 1 && (far == n || dist[i] > dist[far])) far = i;
                if (far == n) continue;
                const auto old = static_cast<std::size_t>(labels[far]);
                --counts[old];
                for (std::size_t d = 0; d < width; ++d) center(old)[d] -= row(far)[d];
                labels[far] = static_cast<int>(c);
                counts[c] = 1;
                dist[far] = 0.0;
                std::copy(row(far), row(far) + width, center(c));
                changed = true;
                continue;
            }
        }
        for (std::size_t c = 0; c < uk; ++c)
            if (counts[c] > 0)
                for (std::size_t d = 0; d < width; ++d) center(c)[d] /= static_cast<double>(counts[c]);
    }

    KMeansRun run;
    run.inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        run.inertia += kern.squared_distance(row(i), center(static_cast<std::size_t>(labels[i])), width);
    run.labels = std::move(labels);
    return run;
}

Clustering make_clustering(std::span<const RampCurve> curves, std::vector<int> labels, ClusterMethod method)
{
    Clustering out;
    out.assignments = canonical_labels(labels);
    out.k = out.assignments.empty() ? 0 : *std::max_element(out.assignments.begin(), out.assignments.end()) + 1;
    out.method = method;
    for (std::size_t i = 0; i < curves.size(); ++i)
        out.ids.push_back(curves[i].origin_id.value_or("curve-" + std::to_string(i)));
    const auto score = score_partition(curves, out.assignments, out.k);
    out.tightness_per_cluster = score.tightness_per_cluster;
    out.cluster_sizes = score.cluster_sizes;
    out.mean_tightness = score.weighted_mean;
    out.unweighted_mean_tightness = score.unweighted_mean;
    return out;
}

} // namespace

std::vector<int> kmeans_assign(std::span<const double> data, std::size_t width, int k, std::uint64_t rng_seed,
                               const KMeansOptions& options, double* inertia)
{
    if (width == 0) throw InvalidArgument("k-means needs at least one feature dimension");
    const std::size_t n = data.size() / width;
    if (k < 1 || static_cast<std::size_t>(k) > n)
        throw InvalidArgument("k = " + std::to_string(k) + " out of range for " + std::to_string(n) + " curves");
    Rng rng(rng_seed);
    KMeansRun best;
    for (int r = 0; r < std::max(1, options.restarts); ++r) {
        KMeansRun run = lloyd(data, width, n, k, rng, options);
        if (run.inertia < best.inertia) best = std::move(run);
    }
    if (inertia != nullptr) *inertia = best.inertia;
    return canonical_labels(best.labels);
}

Clustering kmeans_cluster(std::span<const RampCurve> curves, int k, std::uint8_t subset, std::uint64_t rng_seed,
                          const KMeansOptions& options)
{
    return kmeans_cluster(curves, FeatureTable(curves), k, subset, rng_seed, options);
}

Clustering kmeans_cluster(std::span<const RampCurve> curves, const FeatureTable& features, int k,
                          std::uint8_t subset, std::uint64_t rng_seed, const KMeansOptions& options)
{
    if (subset == 0) throw InvalidArgument("feature subset must be non-empty");
    if (k < 2 || static_cast<std::size_t>(k) > curves.size())
        throw InvalidArgument("k = " + std::to_string(k) + " out of range [2, " + std::to_string(curves.size()) + "]");
    std::size_t width = 0;
    const auto data = features.select(subset, width);
    auto labels = kmeans_assign(data, width, k, rng_seed, options);
    Clustering out = make_clustering(curves, std::move(labels), ClusterMethod::kmeans);
    out.feature_subset = subset;
    return out;
}

std::optional<std::size_t> best_entry(std::span<const SelectionEntry> table)
{
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& e = table[i];
        if (!e.valid) continue;
        if (!best) {
            best = i;
            continue;
        }
        const auto& b = table[*best];
        if (std::tie(e.weighted_tightness, e.k, e.mask) < std::tie(b.weighted_tightness, b.k, b.mask)) best = i;
    }
    return best;
}

FeatureSelection feature_selection(std::span<const RampCurve> curves, std::uint64_t rng_seed,
                                   const FeatureSelectionOptions& options)
{
    if (curves.size() < 16)
        throw InvalidArgument("feature selection needs at least 16 curves, got " + std::to_string(curves.size()));
    const int k_hi = std::min<int>(options.k_max, static_cast<int>(curves.size()));
    if (options.k_min < 2 || k_hi < options.k_min) throw InvalidArgument("empty k range");

    const FeatureTable features(curves);
    std::vector<SelectionEntry> table;
    for (int mask = 1; mask <= 255; ++mask)
        for (int k = options.k_min; k <= k_hi; ++k) table.push_back({static_cast<std::uint8_t>(mask), k});

    auto evaluate = [&](SelectionEntry& e) {
        const Clustering c = kmeans_cluster(curves, features, e.k, e.mask, rng_seed, options.kmeans);
        e.min_cluster = *std::min_element(c.cluster_sizes.begin(), c.cluster_sizes.end());
        e.max_cluster = *std::max_element(c.cluster_sizes.begin(), c.cluster_sizes.end());
        e.valid = e.min_cluster >= 2 && c.k == e.k;
        e.weighted_tightness = c.mean_tightness;
        e.unweighted_tightness = c.unweighted_mean_tightness;
    };

    // Each entry is independent and written to its own slot, so the result
    // does not depend on scheduling.
    const int jobs = std::max(1, options.jobs);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < table.size(); i = next++) evaluate(table[i]);
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }

    const auto best = best_entry(table);
    if (!best) {
        std::ostringstream msg;
        std::size_t smallest = std::numeric_limits<std::size_t>::max();
        for (const auto& e : table) smallest = std::min(smallest, e.min_cluster);
        msg << "feature selection: all " << table.size()
            << " configurations rejected (each has a cluster with fewer than 2 curves; "
            << "largest minimum cluster size over the grid is ";
        std::size_t largest_min = 0;
        for (const auto& e : table) largest_min = std::max(largest_min, e.min_cluster);
        msg << largest_min << ")";
        throw ModelError(msg.str());
    }

    FeatureSelection out;
    out.mask = table[*best].mask;
    out.k = table[*best].k;
    out.clustering = kmeans_cluster(curves, features, out.k, out.mask, rng_seed, options.kmeans);
    out.table = std::move(table);
    return out;
}

void write_selection_csv(std::ostream& out, std::span<const SelectionEntry> table)
{
    out << "method,param,k,mean_tightness,unweighted_tightness,min_size,max_size,valid\n";
    for (const auto& e : table)
        out << "kmeans," << static_cast<int>(e.mask) << ',' << e.k << ',' << e.weighted_tightness << ','
            << e.unweighted_tightness << ',' << e.min_cluster << ',' << e.max_cluster << ',' << (e.valid ? 1 : 0)
            << '\n';
}

void write_sweep_csv(std::ostream& out, std::span<const WeightSweepEntry> table)
{
    out << "method,param,k,mean_tightness,unweighted_tightness,min_size,max_size,valid\n";
    for (const auto& e : table)
        out << "elastic," << e.w << ',' << e.k << ',' << e.weighted_tightness << ',' << e.unweighted_tightness << ','
            << e.min_cluster << ',' << e.max_cluster << ',' << (e.valid ? 1 : 0) << '\n';
}

} // namespace rampforge
