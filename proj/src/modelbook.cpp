#include "rampforge/modelbook.hpp"

#include "rampforge/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace rampforge {

using ordered_json = nlohmann::ordered_json;

const RampModel* ModelBook::find(std::string_view id) const
{
    const auto it = std::find_if(models.begin(), models.end(), [&](const RampModel& m) { return m.id == id; });
    return it == models.end() ? nullptr : &*it;
}

RampModel build_representative(std::span<const RampCurve> cluster)
{
    if (cluster.size() < 2)
        throw InvalidArgument("a representative needs a cluster of at least 2 curves, got " +
                              std::to_string(cluster.size()));
    const double n = static_cast<double>(cluster.size());
    const AlignedCluster aligned = align_cluster(cluster);

    RampModel model;
    model.cluster_size = cluster.size();
    for (std::size_t x = 0; x < kControlPoints; ++x) {
        LabColor mean;
        double l_mean = 0.0;
        for (std::size_t i = 0; i < cluster.size(); ++i) {
            mean += aligned.curves[i].points[x];
            l_mean += cluster[i].points[x].L;
        }
        model.shape[x] = mean / n;
        model.l_profile[x] = l_mean / n;
    }

    // Canonical frame: a*-b* centroid at the origin, L* level matching the profile.
    LabColor centroid;
    double profile_mean = 0.0;
    for (std::size_t x = 0; x < kControlPoints; ++x) {
        centroid += model.shape[x];
        profile_mean += model.l_profile[x];
    }
    centroid /= static_cast<double>(kControlPoints);
    profile_mean /= static_cast<double>(kControlPoints);
    const LabColor shift{profile_mean - centroid.L, -centroid.a, -centroid.b};
    for (auto& p : model.shape) p += shift;

    for (const auto& c : cluster) model.member_ids.push_back(c.origin_id.value_or(""));
    return model;
}

std::optional<double> diverging_arm_angle(const RawRamp& ramp)
{
    const RampCurve c = fit_and_resample(ramp);
    const LabColor center = c.points[kMiddlePoint];
    const LabColor u = c.points.front() - center;
    const LabColor v = c.points.back() - center;
    const double nu = std::hypot(u.a, u.b);
    const double nv = std::hypot(v.a, v.b);
    if (nu < 1e-6 || nv < 1e-6) return std::nullopt;
    const double cosine = std::clamp((u.a * v.a + u.b * v.b) / (nu * nv), -1.0, 1.0);
    return std::acos(cosine) * 180.0 / std::numbers::pi;
}

std::vector<RampCurve> training_curves(const Corpus& corpus)
{
    std::vector<RampCurve> curves;
    for (const auto& r : corpus.ramps)
        if (r.kind == RampKind::sequential) curves.push_back(orient_dark_to_light(fit_and_resample(r)));
    return curves;
}

namespace {

// Models for every cluster of size >= 2, largest first (ties by cluster index).
std::vector<RampModel> models_for(std::span<const RampCurve> curves, const Clustering& clustering)
{
    std::vector<int> order;
    for (int c = 0; c < clustering.k; ++c)
        if (clustering.cluster_sizes[static_cast<std::size_t>(c)] >= 2) order.push_back(c);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return clustering.cluster_sizes[static_cast<std::size_t>(x)] > clustering.cluster_sizes[static_cast<std::size_t>(y)];
    });

    std::vector<RampModel> out;
    for (int c : order) {
        std::vector<RampCurve> members;
        for (std::size_t i : clustering.members(c)) members.push_back(curves[i]);
        RampModel m = build_representative(members);
        m.method = clustering.method;
        m.id = std::string(to_string(clustering.method)) + "-" + std::to_string(out.size());
        out.push_back(std::move(m));
    }
    return out;
}

} // namespace

ModelBook build_modelbook(const Corpus& corpus, const TrainConfig& config, TrainingReport* report)
{
    const auto curves = training_curves(corpus);
    if (curves.size() < 16)
        throw ModelError("insufficient corpus: need at least 16 sequential ramps, got " + std::to_string(curves.size()));

    ModelBook book;
    book.corpus_fingerprint = corpus.fingerprint;
    book.diverging_rotation_limit_degrees = config.rotation_limit_degrees;

    FeatureSelection selection = feature_selection(curves, config.rng_seed, config.selection);
    WeightSweep sweep = weight_sweep(curves, config.rng_seed, config.elastic);

    for (auto& m : models_for(curves, selection.clustering)) book.models.push_back(std::move(m));
    for (auto& m : models_for(curves, sweep.best)) book.models.push_back(std::move(m));

    double angle_sum = 0.0;
    std::size_t measured = 0;
    for (const auto& r : corpus.ramps) {
        if (r.kind != RampKind::diverging) continue;
        if (const auto angle = diverging_arm_angle(r)) {
            angle_sum += *angle;
            ++measured;
        }
    }
    if (measured > 0) book.diverging_angle_degrees = angle_sum / static_cast<double>(measured);

    if (report != nullptr) {
        report->selection = std::move(selection);
        report->sweep = std::move(sweep);
        report->diverging_measured = measured;
    }
    return book;
}

std::string modelbook_to_json(const ModelBook& book)
{
    ordered_json j;
    j["version"] = book.version;
    j["corpus_fingerprint"] = book.corpus_fingerprint;
    j["diverging_angle_degrees"] = book.diverging_angle_degrees;
    j["diverging_rotation_limit_degrees"] = book.diverging_rotation_limit_degrees;
    j["models"] = ordered_json::array();
    for (const auto& m : book.models) {
        ordered_json jm;
        jm["id"] = m.id;
        jm["method"] = std::string(to_string(m.method));
        jm["cluster_size"] = m.cluster_size;
        jm["member_ids"] = m.member_ids;
        jm["l_profile"] = m.l_profile;
        ordered_json shape = ordered_json::array();
        for (const auto& p : m.shape) shape.push_back({p.L, p.a, p.b});
        jm["shape"] = std::move(shape);
        j["models"].push_back(std::move(jm));
    }
    // nlohmann writes the shortest decimal that round-trips each double.
    return j.dump(2) + "\n";
}

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& what)
{
    throw ParseError("model book: field '" + path + "': " + what);
}

const ordered_json& require(const ordered_json& obj, const std::string& key, const std::string& path)
{
    if (!obj.is_object()) field_error(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) field_error(path.empty() ? key : path + "." + key, "missing");
    return *it;
}

double number(const ordered_json& v, const std::string& path)
{
    if (!v.is_number()) field_error(path, "expected a number");
    return v.get<double>();
}

} // namespace

ModelBook modelbook_from_json(std::string_view text)
{
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("model book: malformed JSON at byte offset " + std::to_string(e.byte) + ": " + e.what());
    }

    ModelBook book;
    const auto& version = require(j, "version", "");
    if (!version.is_number_integer()) field_error("version", "expected an integer");
    book.version = version.get<int>();
    if (book.version != kModelBookVersion)
        throw ParseError("model book: unsupported schema version " + std::to_string(book.version) + " (expected " +
                         std::to_string(kModelBookVersion) + ")");

    const auto& fp = require(j, "corpus_fingerprint", "");
    if (!fp.is_string()) field_error("corpus_fingerprint", "expected a string");
    book.corpus_fingerprint = fp.get<std::string>();
    book.diverging_angle_degrees = number(require(j, "diverging_angle_degrees", ""), "diverging_angle_degrees");
    book.diverging_rotation_limit_degrees =
        number(require(j, "diverging_rotation_limit_degrees", ""), "diverging_rotation_limit_degrees");
    if (!(book.diverging_angle_degrees > 0.0 && book.diverging_angle_degrees <= 180.0))
        field_error("diverging_angle_degrees", "must lie in (0, 180]");
    if (!(book.diverging_rotation_limit_degrees > 0.0 && book.diverging_rotation_limit_degrees <= 90.0))
        field_error("diverging_rotation_limit_degrees", "must lie in (0, 90]");

    const auto& models = require(j, "models", "");
    if (!models.is_array()) field_error("models", "expected an array");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < models.size(); ++i) {
        const std::string path = "models[" + std::to_string(i) + "]";
        const auto& jm = models[i];
        RampModel m;

        const auto& id = require(jm, "id", path);
        if (!id.is_string()) field_error(path + ".id", "expected a string");
        m.id = id.get<std::string>();
        if (!ids.insert(m.id).second) field_error(path + ".id", "duplicate model id '" + m.id + "'");

        const auto& method = require(jm, "method", path);
        if (method == "kmeans") m.method = ClusterMethod::kmeans;
        else if (method == "elastic") m.method = ClusterMethod::elastic;
        else field_error(path + ".method", "expected \"kmeans\" or \"elastic\"");

        const auto& size = require(jm, "cluster_size", path);
        if (!size.is_number_unsigned()) field_error(path + ".cluster_size", "expected a non-negative integer");
        m.cluster_size = size.get<std::size_t>();

        const auto& members = require(jm, "member_ids", path);
        if (!members.is_array()) field_error(path + ".member_ids", "expected an array");
        for (const auto& s : members) {
            if (!s.is_string()) field_error(path + ".member_ids", "expected strings");
            m.member_ids.push_back(s.get<std::string>());
        }
        if (m.cluster_size != m.member_ids.size())
            field_error(path + ".cluster_size", "does not match member_ids length");

        const auto& profile = require(jm, "l_profile", path);
        if (!profile.is_array() || profile.size() != kControlPoints)
            field_error(path + ".l_profile", "expected " + std::to_string(kControlPoints) + " numbers");
        for (std::size_t x = 0; x < kControlPoints; ++x) {
            m.l_profile[x] = number(profile[x], path + ".l_profile[" + std::to_string(x) + "]");
            if (m.l_profile[x] < 0.0 || m.l_profile[x] > 100.0)
                field_error(path + ".l_profile[" + std::to_string(x) + "]", "outside [0, 100]");
        }

        const auto& shape = require(jm, "shape", path);
        if (!shape.is_array() || shape.size() != kControlPoints)
            field_error(path + ".shape", "expected " + std::to_string(kControlPoints) + " points");
        for (std::size_t x = 0; x < kControlPoints; ++x) {
            const std::string pp = path + ".shape[" + std::to_string(x) + "]";
            if (!shape[x].is_array() || shape[x].size() != 3) field_error(pp, "expected [L, a, b]");
            m.shape[x] = {number(shape[x][0], pp), number(shape[x][1], pp), number(shape[x][2], pp)};
        }
        book.models.push_back(std::move(m));
    }
    return book;
}

void save_modelbook(const ModelBook& book, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write model book '" + path.string() + "'");
    out << modelbook_to_json(book);
    if (!out) throw Error("failed writing model book '" + path.string() + "'");
}

ModelBook load_modelbook(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open model book '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return modelbook_from_json(buf.str());
}

} // namespace rampforge
