#include "rampforge/cli.hpp"

#include "rampforge/corpus.hpp"
#include "rampforge/error.hpp"
#include "rampforge/features.hpp"
#include "rampforge/generator.hpp"
#include "rampforge/modelbook.hpp"
#include "rampforge/server.hpp"
#include "rampforge/session.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace rampforge {

namespace {

/// A flag value that parses but makes no sense (bad color, bad format name).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fixed4(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string s(buf);
    return s == "-0.0000" ? "0.0000" : s;
}

struct Flags {
    std::string corpus;
    std::string models;
    std::string model;
    std::string color;
    std::optional<std::size_t> n;
    std::optional<double> angle;
    double rotate = 0.0;
    double translate_l = 0.0;
    double translate_a = 0.0;
    double translate_b = 0.0;
    double scale = 1.0;
    bool reflect = false;
    std::string format = "hex";
    std::string gamut = "clip";
    std::uint64_t seed = 42;
    int jobs = 1;
    int port = 8080;
    std::string host = "127.0.0.1";
    std::string static_dir;
    std::string state;
    std::string state_out;
    std::string diagnostics;
    bool strict_rotation = false;
};

ExportFormat format_of(const Flags& f)
{
    const auto fmt = parse_export_format(f.format);
    if (!fmt) throw UsageError("unknown --format '" + f.format + "' (expected hex, lab or css)");
    return *fmt;
}

GamutMode gamut_of(const Flags& f)
{
    const auto mode = parse_gamut_mode(f.gamut);
    if (!mode) throw UsageError("unknown --gamut '" + f.gamut + "' (expected strict or clip)");
    return *mode;
}

std::string checked_color(const Flags& f)
{
    try {
        return format_hex(parse_hex(f.color));
    } catch (const ParseError& e) {
        throw UsageError(std::string("--color: ") + e.what());
    }
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
    if (!out) throw Error("failed writing '" + path + "'");
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const GeneratedRamp& ramp, const RampState& state, const Flags& f, std::ostream& out, std::ostream& err)
{
    for (const auto& w : ramp.warnings) err << "warning: " << w << '\n';
    if (ramp.gamut_status == GamutStatus::clipped) err << "warning: colors clipped to the sRGB gamut\n";
    if (ramp.gamut_status == GamutStatus::reverted)
        err << "warning: edit leaves the sRGB gamut; ramp reverted to the last valid state\n";
    out << format_colors(output_colors(ramp, state), format_of(f));
    if (!f.state_out.empty()) write_file(f.state_out, state_to_json(state).dump(2) + "\n");
}

int cmd_stats(const Flags& f, std::ostream& out)
{
    out << format_stats(corpus_stats(parse_corpus(f.corpus)));
    return kExitOk;
}

int cmd_train(const Flags& f, std::ostream& out)
{
    const Corpus corpus = parse_corpus(f.corpus);
    TrainConfig config;
    config.rng_seed = f.seed;
    config.selection.jobs = f.jobs;
    TrainingReport report;
    const ModelBook book = build_modelbook(corpus, config, &report);
    save_modelbook(book, f.models);

    if (!f.diagnostics.empty()) {
        std::ofstream csv(f.diagnostics, std::ios::trunc);
        if (!csv) throw Error("cannot write '" + f.diagnostics + "'");
        write_selection_csv(csv, report.selection.table);
        std::ostringstream sweep;
        write_sweep_csv(sweep, report.sweep.table);
        const std::string rows = sweep.str();
        csv << rows.substr(rows.find('\n') + 1); // same columns, one header
    }

    std::size_t kmeans = 0;
    for (const auto& m : book.models) kmeans += m.method == ClusterMethod::kmeans;
    const auto& sel = report.selection.clustering;
    const auto& ela = report.sweep.best;
    out << "sequential ramps: " << training_curves(corpus).size() << '\n'
        << "kmeans: k=" << sel.k << " features=" << describe_mask(report.selection.mask)
        << " tightness=" << fixed4(sel.mean_tightness) << '\n'
        << "elastic: k=" << ela.k << " w=" << fixed4(report.sweep.best_w) << " tightness=" << fixed4(ela.mean_tightness)
        << '\n'
        << "models: " << book.models.size() << " (kmeans " << kmeans << ", elastic " << book.models.size() - kmeans
        << ")\n"
        << "diverging angle: " << fixed4(book.diverging_angle_degrees) << " (from " << report.diverging_measured
        << " ramps)\n"
        << "fingerprint: " << book.corpus_fingerprint << '\n';
    return kExitOk;
}

RampState request_state(const Flags& f, GeneratedKind kind)
{
    RampState s;
    s.model_id = f.model;
    s.kind = kind;
    s.seed_hex = checked_color(f);
    s.arm_rotation_degrees = f.rotate;
    s.gamut = gamut_of(f);
    s.n = f.n;
    return s;
}

int cmd_seed(const Flags& f, std::ostream& out, std::ostream& err)
{
    RampState state = request_state(f, GeneratedKind::sequential);
    state.arm_rotation_degrees = 0.0;
    format_of(f);
    const ModelBook book = load_modelbook(f.models);
    emit(realize(book, state), state, f, out, err);
    return kExitOk;
}

int cmd_diverge(const Flags& f, std::ostream& out, std::ostream& err)
{
    RampState state = request_state(f, GeneratedKind::diverging);
    format_of(f);
    state.angle_degrees = f.angle;
    const ModelBook book = load_modelbook(f.models);
    const double limit = book.diverging_rotation_limit_degrees;
    if (std::abs(state.arm_rotation_degrees) > limit) {
        if (f.strict_rotation)
            throw InvalidArgument("--rotate " + fixed4(state.arm_rotation_degrees) + " exceeds +/-" + fixed4(limit));
        err << "warning: --rotate clamped to +/-" << fixed4(limit) << '\n';
        state.arm_rotation_degrees = std::clamp(state.arm_rotation_degrees, -limit, limit);
    }
    emit(realize(book, state), state, f, out, err);
    return kExitOk;
}

AffineEdit edit_of(const Flags& f)
{
    AffineEdit e;
    e.translate_l = f.translate_l;
    e.translate_a = f.translate_a;
    e.translate_b = f.translate_b;
    e.rotate_ab_degrees = f.rotate;
    e.scale = f.scale;
    e.reflect = f.reflect;
    return e;
}

RampState load_state(const std::string& path)
{
    const auto j = nlohmann::json::parse(read_file(path), nullptr, false);
    if (j.is_discarded()) throw ParseError("state file '" + path + "' is not valid JSON");
    return state_from_json(j);
}

int cmd_transform(const Flags& f, std::ostream& out, std::ostream& err)
{
    format_of(f);
    if (!(f.scale > 0.0)) throw UsageError("--scale must be positive");
    const ModelBook book = load_modelbook(f.models);
    RampState state = load_state(f.state);
    if (f.n) state.n = f.n;
    const EditOutcome outcome = transform(book, state, edit_of(f));
    emit(outcome.ramp, outcome.state, f, out, err);
    return kExitOk;
}

int cmd_export(const Flags& f, std::ostream& out, std::ostream& err)
{
    format_of(f);
    const ModelBook book = load_modelbook(f.models);
    RampState state = load_state(f.state);
    if (f.n) state.n = f.n;
    emit(realize(book, state), state, f, out, err);
    return kExitOk;
}

int cmd_serve(const Flags& f, std::ostream& out)
{
    const ApiService service(load_modelbook(f.models));
    ServerOptions opts;
    opts.host = f.host;
    opts.port = f.port;
    opts.static_dir = f.static_dir;
    HttpServer server(service, opts);
    if (!server.bind()) throw Error("cannot listen on " + opts.host + ":" + std::to_string(opts.port));
    out << "serving " << service.book().models.size() << " models on http://" << opts.host << ':' << server.port()
        << '\n'
        << std::flush;
    server.serve();
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Designer-style color ramps from a single seed color", "rampforge"};
    app.require_subcommand(1);
    Flags f;

    auto* stats = app.add_subcommand("stats", "Summarize a corpus");
    stats->add_option("--corpus", f.corpus, "Corpus file")->required();

    auto* train = app.add_subcommand("train", "Cluster a corpus and write a model book");
    train->add_option("--corpus", f.corpus, "Corpus file")->required();
    train->add_option("--models", f.models, "Output model book (JSON)")->required();
    train->add_option("--seed", f.seed, "Random seed")->capture_default_str();
    train->add_option("--jobs", f.jobs, "Worker threads for the feature-subset sweep")
        ->check(CLI::Range(1, 256))
        ->capture_default_str();
    train->add_option("--diagnostics", f.diagnostics, "Write both score tables to one CSV file");

    auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("--n", f.n, "Number of output colors (default: the generated control points)")
            ->check(CLI::Range(static_cast<std::size_t>(2), static_cast<std::size_t>(4096)));
        cmd->add_option("--format", f.format, "hex, lab or css")->capture_default_str();
        cmd->add_option("--state-out", f.state_out, "Write the ramp state (JSON) for later transform/export");
    };

    auto* seed = app.add_subcommand("seed", "Seed a sequential model with a color");
    seed->add_option("--models", f.models, "Model book")->required();
    seed->add_option("--model", f.model, "Model id")->required();
    seed->add_option("--color", f.color, "Seed color #RRGGBB")->required();
    seed->add_option("--gamut", f.gamut, "strict or clip")->capture_default_str();
    add_output(seed);

    auto* diverge = app.add_subcommand("diverge", "Build a diverging ramp from a model and a seed");
    diverge->add_option("--models", f.models, "Model book")->required();
    diverge->add_option("--model", f.model, "Model id")->required();
    diverge->add_option("--color", f.color, "Seed color #RRGGBB")->required();
    diverge->add_option("--angle", f.angle, "Join angle in degrees (default: from the model book)")
        ->check(CLI::Range(0.0, 180.0));
    diverge->add_option("--rotate", f.rotate, "Arm rotation in degrees")->capture_default_str();
    diverge->add_flag("--strict-rotation", f.strict_rotation, "Reject arm rotations beyond the limit instead of clamping");
    diverge->add_option("--gamut", f.gamut, "strict or clip")->capture_default_str();
    add_output(diverge);

    auto* transform_cmd = app.add_subcommand("transform", "Apply one edit to a saved ramp state");
    transform_cmd->add_option("--models", f.models, "Model book")->required();
    transform_cmd->add_option("--state", f.state, "Ramp state file")->required();
    transform_cmd->add_option("--rotate", f.rotate, "Rotation in the a*-b* plane, degrees");
    transform_cmd->add_option("--translate-l", f.translate_l, "L* translation");
    transform_cmd->add_option("--translate-a", f.translate_a, "a* translation");
    transform_cmd->add_option("--translate-b", f.translate_b, "b* translation");
    transform_cmd->add_option("--scale", f.scale, "Scale about the anchor color");
    transform_cmd->add_flag("--reflect", f.reflect, "Mirror the ramp");
    add_output(transform_cmd);

    auto* export_cmd = app.add_subcommand("export", "Print a saved ramp state in an export format");
    export_cmd->add_option("--models", f.models, "Model book")->required();
    export_cmd->add_option("--state", f.state, "Ramp state file")->required();
    add_output(export_cmd);

    auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
    serve->add_option("--models", f.models, "Model book")->required();
    serve->add_option("--port", f.port, "Port")->check(CLI::Range(1, 65535))->capture_default_str();
    serve->add_option("--host", f.host, "Bind address")->capture_default_str();
    serve->add_option("--static", f.static_dir, "Directory served under /");

    std::vector<std::string> storage{"rampforge"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : storage) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (stats->parsed()) return cmd_stats(f, out);
        if (train->parsed()) return cmd_train(f, out);
        if (seed->parsed()) return cmd_seed(f, out, err);
        if (diverge->parsed()) return cmd_diverge(f, out, err);
        if (transform_cmd->parsed()) return cmd_transform(f, out, err);
        if (export_cmd->parsed()) return cmd_export(f, out, err);
        if (serve->parsed()) return cmd_serve(f, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}

} // namespace rampforge
