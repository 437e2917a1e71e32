#include "rampforge/server.hpp"

#include "rampforge/error.hpp"
#include "rampforge/hash.hpp"
#include "rampforge/kernels.hpp"

#include <httplib.h>

#include <algorithm>
#include <cmath>

namespace rampforge {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

double round6(double v)
{
    const double r = std::round(v * 1e6) / 1e6;
    return r == 0.0 ? 0.0 : r;
}

ApiResponse error_response(int status, const std::string& message)
{
    ordered_json j;
    j["error"] = message;
    return {status, j.dump()};
}

ordered_json ramp_payload(const GeneratedRamp& ramp, const std::vector<LabColor>& colors)
{
    ordered_json j;
    j["colors_hex"] = ordered_json::array();
    j["colors_lab"] = ordered_json::array();
    for (const auto& c : colors) {
        const auto rgb = lab_to_srgb(c);
        j["colors_hex"].push_back(rgb ? format_hex(*rgb) : std::string());
        j["colors_lab"].push_back({round6(c.L), round6(c.a), round6(c.b)});
    }
    j["curve_projection_ab"] = ordered_json::array();
    j["curve_projection_lc"] = ordered_json::array();
    for (const auto& c : ramp.colors) {
        j["curve_projection_ab"].push_back({round6(c.a), round6(c.b)});
        j["curve_projection_lc"].push_back({round6(c.L), round6(chroma(c))});
    }
    j["exports"] = ordered_json::object();
    for (auto fmt : {ExportFormat::hex, ExportFormat::lab, ExportFormat::css}) {
        try {
            j["exports"][std::string(to_string(fmt))] = format_colors(colors, fmt);
        } catch (const GamutError&) {
            j["exports"][std::string(to_string(fmt))] = nullptr;
        }
    }
    j["gamut_status"] = std::string(to_string(ramp.gamut_status));
    j["anchor_index"] = ramp.anchor_index;
    j["warnings"] = ramp.warnings;
    return j;
}

// Slider ranges of the companion UI, re-checked here.
std::optional<std::string> edit_range_error(const AffineEdit& e)
{
    if (std::abs(e.rotate_ab_degrees) > 180.0) return "rotate_ab_degrees must lie in [-180, 180]";
    for (double t : {e.translate_l, e.translate_a, e.translate_b})
        if (std::abs(t) > 50.0) return "translations must lie in [-50, 50]";
    if (e.scale < 0.5 || e.scale > 2.0) return "scale must lie in [0.5, 2]";
    return std::nullopt;
}

std::optional<json> parse_body(std::string_view body)
{
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    return j;
}

} // namespace

std::string preview_seed_hex(const RampModel& model)
{
    const double L = std::clamp(model.l_profile[kMiddlePoint], 0.0, 100.0);
    return format_hex(*lab_to_srgb({L, 0.0, 0.0}));
}

ApiService::ApiService(ModelBook book) : book_(std::move(book)), key_(sha256_hex(modelbook_to_json(book_))) {}

std::string ApiService::seal(const RampState& state) const
{
    return hmac_sha256_hex(key_, state_to_json(state).dump());
}

ApiResponse ApiService::health() const
{
    ordered_json j;
    j["status"] = "ok";
    j["models"] = book_.models.size();
    j["corpus_fingerprint"] = book_.corpus_fingerprint;
    j["isa"] = std::string(kernels::isa_name(kernels::active().isa));
    return {200, j.dump()};
}

ApiResponse ApiService::models() const
{
    std::vector<const RampModel*> sorted;
    for (const auto& m : book_.models) sorted.push_back(&m);
    std::sort(sorted.begin(), sorted.end(), [](const RampModel* x, const RampModel* y) { return x->id < y->id; });

    ordered_json catalog = ordered_json::array();
    for (const RampModel* m : sorted) {
        ordered_json e;
        e["id"] = m->id;
        e["method"] = std::string(to_string(m->method));
        e["cluster_size"] = m->cluster_size;
        e["l_profile"] = ordered_json::array();
        for (double l : m->l_profile) e["l_profile"].push_back(round6(l));
        e["preview_seed_hex"] = preview_seed_hex(*m);
        e["preview_hex"] = ordered_json::array();
        try {
            const LabColor seed = srgb_to_lab(parse_hex(e["preview_seed_hex"].get<std::string>()));
            for (const auto& c : seed_sequential(*m, seed, GamutMode::clip).colors)
                e["preview_hex"].push_back(format_hex(*lab_to_srgb(c)));
        } catch (const Error& err) {
            e["preview_error"] = err.what();
        }
        catalog.push_back(std::move(e));
    }
    ordered_json j;
    j["diverging_angle_degrees"] = round6(book_.diverging_angle_degrees);
    j["diverging_rotation_limit_degrees"] = round6(book_.diverging_rotation_limit_degrees);
    j["models"] = std::move(catalog);
    return {200, j.dump()};
}

ApiResponse ApiService::seed(std::string_view request_body) const
{
    const auto req = parse_body(request_body);
    if (!req) return error_response(400, "request body must be a JSON object");
    try {
        RampState state;
        const auto model = req->find("model_id");
        if (model == req->end() || !model->is_string()) return error_response(422, "field 'model_id' must be a string");
        state.model_id = model->get<std::string>();
        if (book_.find(state.model_id) == nullptr) return error_response(404, "unknown model '" + state.model_id + "'");

        json fields = *req;
        fields.erase("edits");
        if (!fields.contains("kind")) fields["kind"] = "sequential";
        if (!fields.contains("gamut")) fields["gamut"] = "clip";
        state = state_from_json(fields);
        const GeneratedRamp ramp = realize(book_, state);

        ordered_json j = ramp_payload(ramp, output_colors(ramp, state));
        j["state"] = state_to_json(state);
        j["seal"] = seal(state);
        return {200, j.dump()};
    } catch (const ModelError& e) {
        return error_response(404, e.what());
    } catch (const Error& e) {
        return error_response(422, e.what());
    } catch (const json::exception& e) {
        return error_response(422, e.what());
    }
}

ApiResponse ApiService::transform(std::string_view request_body) const
{
    const auto req = parse_body(request_body);
    if (!req) return error_response(400, "request body must be a JSON object");
    try {
        if (!req->contains("state") || !req->contains("seal") || !(*req)["seal"].is_string())
            return error_response(422, "request needs 'state' and 'seal'");
        const RampState state = state_from_json((*req)["state"]);
        if (seal(state) != (*req)["seal"].get<std::string>())
            return error_response(422, "state seal does not match; the state was not issued by this model book");
        const AffineEdit edit = edit_from_json(req->value("edit", json::object()));
        if (const auto bad = edit_range_error(edit)) return error_response(422, *bad);

        const EditOutcome outcome = rampforge::transform(book_, state, edit);
        ordered_json j = ramp_payload(outcome.ramp, output_colors(outcome.ramp, outcome.state));
        j["state"] = state_to_json(outcome.state);
        j["seal"] = seal(outcome.state);
        return {200, j.dump()};
    } catch (const ModelError& e) {
        return error_response(422, e.what());
    } catch (const Error& e) {
        return error_response(422, e.what());
    } catch (const json::exception& e) {
        return error_response(422, e.what());
    }
}

struct HttpServer::Impl {
    httplib::Server http;
};

HttpServer::HttpServer(const ApiService& service, ServerOptions options)
    : impl_(std::make_unique<Impl>()), options_(std::move(options))
{
    auto reply = [](httplib::Response& res, const ApiResponse& r) {
        res.status = r.status;
        res.set_content(r.body, "application/json");
    };
    auto& http = impl_->http;
    const ApiService* api = &service;
    http.Get("/api/health", [=](const httplib::Request&, httplib::Response& res) { reply(res, api->health()); });
    http.Get("/api/models", [=](const httplib::Request&, httplib::Response& res) { reply(res, api->models()); });
    http.Post("/api/seed",
              [=](const httplib::Request& req, httplib::Response& res) { reply(res, api->seed(req.body)); });
    http.Post("/api/transform",
              [=](const httplib::Request& req, httplib::Response& res) { reply(res, api->transform(req.body)); });
}

HttpServer::~HttpServer() { stop(); }

bool HttpServer::bind()
{
    auto& http = impl_->http;
    if (!options_.static_dir.empty() && !http.set_mount_point("/", options_.static_dir.string())) return false;
    if (options_.port == 0) {
        port_ = http.bind_to_any_port(options_.host);
    } else {
        port_ = http.bind_to_port(options_.host, options_.port) ? options_.port : -1;
    }
    return port_ > 0;
}

void HttpServer::serve() { impl_->http.listen_after_bind(); }

void HttpServer::stop() { impl_->http.stop(); }

bool run_server(const ApiService& service, const ServerOptions& options)
{
    HttpServer server(service, options);
    if (!server.bind()) return false;
    server.serve();
    return true;
}

} // namespace rampforge
