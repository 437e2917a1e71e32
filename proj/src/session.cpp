#include "rampforge/session.hpp"

#include "rampforge/error.hpp"

#include <cmath>

namespace rampforge {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json edit_to_json(const AffineEdit& edit)
{
    ordered_json j;
    j["translate_l"] = edit.translate_l;
    j["translate_a"] = edit.translate_a;
    j["translate_b"] = edit.translate_b;
    j["rotate_ab_degrees"] = edit.rotate_ab_degrees;
    j["scale"] = edit.scale;
    j["reflect"] = edit.reflect;
    return j;
}

namespace {

double finite_field(const json& j, const char* key, double fallback)
{
    const auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number()) throw InvalidArgument(std::string("field '") + key + "' must be a number");
    const double v = it->get<double>();
    if (!std::isfinite(v)) throw InvalidArgument(std::string("field '") + key + "' must be finite");
    return v;
}

const json& required(const json& j, const char* key)
{
    const auto it = j.find(key);
    if (it == j.end()) throw InvalidArgument(std::string("missing field '") + key + "'");
    return *it;
}

std::string required_string(const json& j, const char* key)
{
    const auto& v = required(j, key);
    if (!v.is_string()) throw InvalidArgument(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

} // namespace

AffineEdit edit_from_json(const json& j)
{
    if (!j.is_object()) throw InvalidArgument("edit must be a JSON object");
    AffineEdit e;
    e.translate_l = finite_field(j, "translate_l", 0.0);
    e.translate_a = finite_field(j, "translate_a", 0.0);
    e.translate_b = finite_field(j, "translate_b", 0.0);
    e.rotate_ab_degrees = finite_field(j, "rotate_ab_degrees", 0.0);
    e.scale = finite_field(j, "scale", 1.0);
    if (!(e.scale > 0.0)) throw InvalidArgument("field 'scale' must be positive");
    if (const auto it = j.find("reflect"); it != j.end()) {
        if (!it->is_boolean()) throw InvalidArgument("field 'reflect' must be a boolean");
        e.reflect = it->get<bool>();
    }
    return e;
}

ordered_json state_to_json(const RampState& state)
{
    ordered_json j;
    j["model_id"] = state.model_id;
    j["kind"] = std::string(to_string(state.kind));
    j["seed_hex"] = state.seed_hex;
    j["arm_rotation"] = state.arm_rotation_degrees;
    j["angle"] = state.angle_degrees ? ordered_json(*state.angle_degrees) : ordered_json(nullptr);
    j["gamut"] = std::string(to_string(state.gamut));
    j["n"] = state.n ? ordered_json(*state.n) : ordered_json(nullptr);
    j["edits"] = ordered_json::array();
    for (const auto& e : state.edits) j["edits"].push_back(edit_to_json(e));
    return j;
}

RampState state_from_json(const json& j)
{
    if (!j.is_object()) throw InvalidArgument("state must be a JSON object");
    RampState s;
    s.model_id = required_string(j, "model_id");
    const auto kind = parse_generated_kind(required_string(j, "kind"));
    if (!kind || *kind == GeneratedKind::linear) throw InvalidArgument("field 'kind' must be sequential or diverging");
    s.kind = *kind;
    s.seed_hex = required_string(j, "seed_hex");
    s.arm_rotation_degrees = finite_field(j, "arm_rotation", 0.0);
    if (const auto it = j.find("angle"); it != j.end() && !it->is_null()) {
        const double angle = finite_field(j, "angle", 0.0);
        if (!(angle > 0.0 && angle <= 180.0)) throw InvalidArgument("field 'angle' must lie in (0, 180]");
        s.angle_degrees = angle;
    }
    if (j.contains("gamut")) {
        const auto mode = parse_gamut_mode(required_string(j, "gamut"));
        if (!mode) throw InvalidArgument("field 'gamut' must be strict or clip");
        s.gamut = *mode;
    }
    if (const auto it = j.find("n"); it != j.end() && !it->is_null()) {
        if (!it->is_number_integer() || it->get<long long>() < 2)
            throw InvalidArgument("field 'n' must be an integer >= 2");
        s.n = it->get<std::size_t>();
    }
    if (const auto it = j.find("edits"); it != j.end()) {
        if (!it->is_array()) throw InvalidArgument("field 'edits' must be an array");
        for (const auto& e : *it) s.edits.push_back(edit_from_json(e));
    }
    return s;
}

GeneratedRamp realize(const ModelBook& book, const RampState& state)
{
    const RampModel* model = book.find(state.model_id);
    if (model == nullptr) throw ModelError("unknown model '" + state.model_id + "'");
    const LabColor seed = srgb_to_lab(parse_hex(state.seed_hex));

    GeneratedRamp ramp;
    if (state.kind == GeneratedKind::diverging) {
        DivergingOptions opts = diverging_options(book);
        opts.clamp_rotation = false;
        if (state.angle_degrees) opts.angle_degrees = *state.angle_degrees;
        opts.gamut = state.gamut;
        ramp = seed_diverging(*model, seed, state.arm_rotation_degrees, opts);
    } else {
        ramp = seed_sequential(*model, seed, state.gamut);
    }
    for (const auto& e : state.edits) {
        ramp = apply_user_edit(ramp, e);
        if (ramp.gamut_status == GamutStatus::reverted) throw InvalidArgument("state holds an edit that leaves the gamut");
    }
    return ramp;
}

std::vector<LabColor> output_colors(const GeneratedRamp& ramp, const RampState& state)
{
    if (!state.n || *state.n == ramp.colors.size()) return ramp.colors;
    // The spline between in-gamut colors can bulge slightly outside.
    auto colors = sample_ramp(ramp, *state.n);
    for (std::size_t i = 0; i < colors.size(); ++i) {
        if (in_gamut(colors[i])) continue;
        if (state.gamut == GamutMode::strict)
            throw GamutError("resampled color " + std::to_string(i) + " is out of sRGB gamut");
        colors[i] = clip_chroma(colors[i]);
    }
    return colors;
}

EditOutcome transform(const ModelBook& book, const RampState& state, const AffineEdit& edit)
{
    EditOutcome out{state, apply_user_edit(realize(book, state), edit)};
    if (out.ramp.gamut_status != GamutStatus::reverted && !edit.is_identity()) out.state.edits.push_back(edit);
    return out;
}

} // namespace rampforge
