#pragma once

#include "rampforge/generator.hpp"
#include "rampforge/modelbook.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace rampforge {

/// Everything needed to rebuild a ramp: the generation request plus the
/// accepted edit stack. Replaying it against the same model book yields the
/// same colors bit for bit.
struct RampState {
    std::string model_id;
    GeneratedKind kind = GeneratedKind::sequential;
    std::string seed_hex;
    double arm_rotation_degrees = 0.0;
    /// Diverging join angle; nullopt uses the model book's.
    std::optional<double> angle_degrees;
    GamutMode gamut = GamutMode::clip;
    /// Output sample count; nullopt keeps the generated control points.
    std::optional<std::size_t> n;
    std::vector<AffineEdit> edits;

    friend bool operator==(const RampState&, const RampState&) = default;
};

nlohmann::ordered_json edit_to_json(const AffineEdit& edit);
/// Missing fields keep their identity values. Throws InvalidArgument.
AffineEdit edit_from_json(const nlohmann::json& j);

nlohmann::ordered_json state_to_json(const RampState& state);
/// Throws InvalidArgument on missing or mistyped fields.
RampState state_from_json(const nlohmann::json& j);

/// Generates the ramp and replays the edit stack. Throws ModelError for an
/// unknown model, InvalidArgument / GamutError / ParseError for bad requests.
GeneratedRamp realize(const ModelBook& book, const RampState& state);

/// Output colors: the ramp itself, or resampled to state.n.
std::vector<LabColor> output_colors(const GeneratedRamp& ramp, const RampState& state);

struct EditOutcome {
    RampState state;
    GeneratedRamp ramp;
};

/// Applies one more edit. On revert the state is unchanged and the ramp
/// carries status reverted.
EditOutcome transform(const ModelBook& book, const RampState& state, const AffineEdit& edit);

} // namespace rampforge
