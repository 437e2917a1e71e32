#pragma once

#include "rampforge/clustering.hpp"
#include "rampforge/corpus.hpp"
#include "rampforge/curve.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace rampforge {

/// Representative curve of one cluster.
struct RampModel {
    std::string id;
    ClusterMethod method = ClusterMethod::kmeans;
    /// Mean of the aligned members. L* carries the cluster's mean lightness
    /// profile; the a*-b* centroid sits at the origin.
    ControlPoints shape{};
    std::array<double, kControlPoints> l_profile{};
    std::size_t cluster_size = 0;
    std::vector<std::string> member_ids;

    friend bool operator==(const RampModel&, const RampModel&) = default;
};

inline constexpr int kModelBookVersion = 1;
inline constexpr double kDefaultDivergingAngle = 115.0;
inline constexpr double kDefaultRotationLimit = 60.0;

struct ModelBook {
    int version = kModelBookVersion;
    std::string corpus_fingerprint;
    double diverging_angle_degrees = kDefaultDivergingAngle;
    double diverging_rotation_limit_degrees = kDefaultRotationLimit;
    std::vector<RampModel> models;

    const RampModel* find(std::string_view id) const;
    friend bool operator==(const ModelBook&, const ModelBook&) = default;
};

/// Aligns (with reflection) and averages a cluster. Throws InvalidArgument for fewer than 2 curves.
RampModel build_representative(std::span<const RampCurve> cluster);

/// Angle in degrees between the a*-b* chords from a diverging ramp's center
/// to its two ends, measured on the normalized curve. nullopt if either
/// chord has no a*-b* extent.
std::optional<double> diverging_arm_angle(const RawRamp& ramp);

struct TrainConfig {
    std::uint64_t rng_seed = 42;
    FeatureSelectionOptions selection;
    ElasticOptions elastic;
    double rotation_limit_degrees = kDefaultRotationLimit;
};

struct TrainingReport {
    FeatureSelection selection;
    WeightSweep sweep;
    std::size_t diverging_measured = 0;
};

/// Sequential ramps are normalized and oriented dark to light, clustered by
/// both methods, and averaged per cluster. Elastic singletons yield no model.
/// Throws ModelError with fewer than 16 sequential ramps.
ModelBook build_modelbook(const Corpus& corpus, const TrainConfig& config, TrainingReport* report = nullptr);

/// The normalized training curves for a corpus (sequential ramps only).
std::vector<RampCurve> training_curves(const Corpus& corpus);

std::string modelbook_to_json(const ModelBook& book);
/// Throws ParseError with byte offset or field path diagnostics.
ModelBook modelbook_from_json(std::string_view text);

void save_modelbook(const ModelBook& book, const std::filesystem::path& path);
ModelBook load_modelbook(const std::filesystem::path& path);

} // namespace rampforge
