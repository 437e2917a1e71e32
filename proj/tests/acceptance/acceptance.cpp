// Acceptance run: one PASS / FAIL / SKIP line per criterion.
// Criteria on the published corpus run only when RAMPFORGE_REAL_CORPUS names
// a corpus file in the canonical line format.

#include "oracles/brute.hpp"
#include "oracles/reference_lab.hpp"
#include "oracles/shapes.hpp"
#include "rampforge/clustering.hpp"
#include "rampforge/corpus.hpp"
#include "rampforge/error.hpp"
#include "rampforge/features.hpp"
#include "rampforge/generator.hpp"
#include "rampforge/modelbook.hpp"
#include "rampforge/spline.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace rampforge;
namespace fs = std::filesystem;

namespace {

enum class Status { pass, fail, skip };

struct Outcome {
    Status status;
    std::string detail;
};

Outcome pass(std::string d) { return {Status::pass, std::move(d)}; }
Outcome fail(std::string d) { return {Status::fail, std::move(d)}; }
Outcome skip(std::string d) { return {Status::skip, std::move(d)}; }
Outcome verdict(bool ok, std::string d) { return {ok ? Status::pass : Status::fail, std::move(d)}; }

const fs::path kSource = RAMPFORGE_SOURCE_DIR;
const fs::path kSample = kSource / "data" / "sample_corpus.txt";

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double v, int digits = 3)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::optional<fs::path> real_corpus()
{
    const char* p = std::getenv("RAMPFORGE_REAL_CORPUS");
    if (p == nullptr || *p == '\0') return std::nullopt;
    return fs::path(p);
}

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const ModelBook& sample_book()
{
    static const ModelBook book = build_modelbook(parse_corpus(kSample), {});
    return book;
}

std::vector<oracle::P3> pts(const RampCurve& c)
{
    std::vector<oracle::P3> out;
    for (const auto& p : c.points) out.push_back({p.L, p.a, p.b});
    return out;
}

std::vector<double> pairwise(std::span<const LabColor> p)
{
    std::vector<double> d;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j) d.push_back(delta_e(p[i], p[j]));
    return d;
}

double ab_angle(const LabColor& u, const LabColor& v)
{
    return std::atan2(std::abs(u.a * v.b - u.b * v.a), u.a * v.a + u.b * v.b) * 180.0 / std::numbers::pi;
}

LabColor random_in_gamut(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> u(0, 255);
    return srgb_to_lab({static_cast<std::uint8_t>(u(rng)), static_cast<std::uint8_t>(u(rng)),
                        static_cast<std::uint8_t>(u(rng))});
}

bool monotone_up(std::span<const double> v)
{
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) return false;
    return true;
}

// ---------------------------------------------------------------- corpus

Outcome corpus_sample()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = corpus_stats(parse_corpus(kSample));
    const double secs = seconds_since(t0);
    std::ifstream in(kSource / "data" / "sample_corpus.manifest.json");
    const auto m = nlohmann::json::parse(in);
    bool ok = s.total == m["total"] && s.sequential == m["sequential"] && s.diverging == m["diverging"] &&
              s.min_length == m["min_length"] && s.max_length == m["max_length"] &&
              s.length_histogram.size() == m["length_histogram"].size();
    for (const auto& [src, n] : s.by_source) ok = ok && n == m["by_source"][std::string(to_string(src))];
    for (const auto& [len, n] : s.length_histogram) ok = ok && n == m["length_histogram"][std::to_string(len)];
    return verdict(ok && secs < 1.0, "total " + std::to_string(s.total) + ", manifest " + (ok ? "matches" : "differs") +
                                         ", " + num(secs * 1000) + " ms");
}

Outcome corpus_real()
{
    const auto path = real_corpus();
    if (!path) return skip("RAMPFORGE_REAL_CORPUS not set");
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = corpus_stats(parse_corpus(*path));
    const double secs = seconds_since(t0);
    const auto src = [&](RampSource r) { return s.by_source.at(r); };
    const bool ok = s.total == 222 && s.sequential == 180 && s.diverging == 42 && src(RampSource::colorbrewer) == 53 &&
                    src(RampSource::r) == 20 && src(RampSource::tableau) == 31 && src(RampSource::colourlovers) == 118 &&
                    s.min_length >= 5 && s.max_length <= 13;
    return verdict(ok && secs < 1.0,
                   std::to_string(s.total) + "/" + std::to_string(s.sequential) + "/" + std::to_string(s.diverging) +
                       " sources " + std::to_string(src(RampSource::colorbrewer)) + "/" + std::to_string(src(RampSource::r)) +
                       "/" + std::to_string(src(RampSource::tableau)) + "/" + std::to_string(src(RampSource::colourlovers)) +
                       " lengths [" + std::to_string(s.min_length) + "," + std::to_string(s.max_length) + "], " +
                       num(secs * 1000) + " ms");
}

// ---------------------------------------------------------------- normalization

// Worst relative deviation of consecutive spline arc-length gaps from their mean,
// by dense sampling of the spline.
double spacing_deviation(const RawRamp& ramp, const RampCurve& curve)
{
    std::vector<LabColor> colors = ramp.colors;
    if (colors.size() < 4) return 0.0; // polyline: chords are arcs
    const InterpolatingSpline s(colors);
    constexpr int kSamples = 20000;
    std::vector<LabColor> dense(kSamples + 1);
    std::vector<double> arc(kSamples + 1, 0.0);
    for (int i = 0; i <= kSamples; ++i) {
        dense[i] = s(s.param_begin() + (s.param_end() - s.param_begin()) * i / kSamples);
        if (i > 0) arc[i] = arc[i - 1] + delta_e(dense[i - 1], dense[i]);
    }
    std::vector<double> at;
    std::size_t from = 0;
    for (const auto& q : curve.points) {
        // Points advance along the curve; search forward from the last hit.
        std::size_t best = from;
        for (std::size_t i = from; i < dense.size(); ++i)
            if (delta_e(dense[i], q) < delta_e(dense[best], q)) best = i;
        at.push_back(arc[best]);
        from = best;
    }
    const double step = (at.back() - at.front()) / 8.0;
    double worst = 0.0;
    for (std::size_t x = 1; x < at.size(); ++x) worst = std::max(worst, std::abs((at[x] - at[x - 1]) - step) / step);
    return worst;
}

Outcome normalization(const fs::path& corpus_path, bool scale_to_222)
{
    const Corpus corpus = parse_corpus(corpus_path);
    double worst = 0.0;
    for (const auto& r : corpus.ramps) {
        const RampCurve c = fit_and_resample(r);
        if (c.points.size() != 9) return fail("ramp '" + r.id + "' did not give 9 points");
        worst = std::max(worst, spacing_deviation(r, c));
    }

    RawRamp line;
    line.id = "line";
    for (int i = 0; i < 5; ++i) line.colors.push_back({12.0 + 19.0 * i, 3.0 - i, 2.0 * i});
    const RampCurve lc = fit_and_resample(line);
    double line_err = 0.0;
    for (std::size_t k = 0; k < kControlPoints; ++k)
        line_err = std::max(line_err, std::abs(lc.points[k].L - (12.0 + static_cast<double>(k) * 76.0 / 8.0)));

    // Timed pass over 222 ramps (cycling the corpus when it is smaller).
    const std::size_t n = scale_to_222 ? 222 : corpus.ramps.size();
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < n; ++i) (void)fit_and_resample(corpus.ramps[i % corpus.ramps.size()]);
    const double secs = seconds_since(t0);

    return verdict(worst < 0.01 && line_err < 1e-6 && secs < 5.0,
                   "spacing deviation " + num(worst * 100) + "%, line error " + num(line_err) + ", " + std::to_string(n) +
                       " ramps in " + num(secs) + " s");
}

// ---------------------------------------------------------------- oracles

Outcome tightness_oracle()
{
    std::mt19937_64 rng(1001);
    std::uniform_int_distribution<int> size(2, 5);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<RampCurve> cluster;
        std::vector<std::vector<oracle::P3>> raw;
        const int n = size(rng);
        for (int i = 0; i < n; ++i) {
            cluster.push_back(shapes::random_curve(rng));
            raw.push_back(pts(cluster.back()));
        }
        worst = std::max(worst, std::abs(tightness(cluster) - oracle::tightness(raw)));
    }
    return verdict(worst < 1e-9, "max deviation " + num(worst) + " over 100 clusters");
}

Outcome feature_oracle()
{
    std::mt19937_64 rng(1002);
    double sum_err = 0.0;
    int tp_mismatch = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const RampCurve c = shapes::random_curve(rng);
        const auto f = compute_features(c);
        double angles = 0.0, segs = 0.0;
        for (double a : f.local_angles) angles += a;
        for (double d : f.local_discriminability) segs += d;
        sum_err = std::max({sum_err, std::abs(f.sum_of_angles - angles), std::abs(f.length - segs)});
        if (f.turning_points != oracle::channel_extrema(pts(c))) ++tp_mismatch;
    }
    const double curv = sphere_curvature(shapes::on_sphere(50));
    return verdict(sum_err < 1e-9 && tp_mismatch == 0 && std::abs(curv - 0.02) < 1e-6,
                   "sum error " + num(sum_err) + ", turning-point mismatches " + std::to_string(tp_mismatch) +
                       ", sphere curvature " + num(curv, 10));
}

std::vector<std::vector<double>> zscored_rows(std::span<const RampCurve> curves)
{
    std::vector<std::vector<double>> rows;
    for (const auto& c : curves) rows.push_back(flatten(compute_features(c)));
    for (std::size_t t = 0; t < rows[0].size(); ++t) {
        double mean = 0.0, var = 0.0;
        for (const auto& r : rows) mean += r[t];
        mean /= static_cast<double>(rows.size());
        for (const auto& r : rows) var += (r[t] - mean) * (r[t] - mean);
        const double sd = std::sqrt(var / static_cast<double>(rows.size()));
        for (auto& r : rows) r[t] = sd > 1e-12 ? (r[t] - mean) / sd : 0.0;
    }
    return rows;
}

Outcome kmeans_equivalence()
{
    std::vector<RampCurve> curves;
    for (double j : {-1.5, -0.5, 0.5, 1.5}) {
        curves.push_back(shapes::family_line(j));
        curves.push_back(shapes::family_arc(j));
        curves.push_back(shapes::family_zigzag(j));
    }
    const auto rows = zscored_rows(curves);
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_labels;
    oracle::for_each_partition(12, 3, [&](const std::vector<int>& labels) {
        const double s = oracle::sse(rows, labels, 3);
        if (s < best - 1e-12) {
            best = s;
            best_labels = labels;
        }
    });
    const auto a = kmeans_cluster(curves, 3, kAllFeatures, 42);
    const auto b = kmeans_cluster(curves, 3, kAllFeatures, 42);
    const bool optimum = a.assignments == best_labels;
    const bool same = a.assignments == b.assignments && a.mean_tightness == b.mean_tightness;
    return verdict(optimum && same, std::string(optimum ? "matches" : "misses") + " the exhaustive optimum (SSE " +
                                        num(best, 6) + "), repeat run " + (same ? "bit-identical" : "differs"));
}

Outcome feature_grid()
{
    std::mt19937_64 rng(1003);
    std::uniform_real_distribution<double> j(-2, 2);
    std::vector<RampCurve> curves;
    for (int i = 0; i < 8; ++i) {
        curves.push_back(shapes::family_line(j(rng)));
        curves.push_back(shapes::family_arc(j(rng)));
        curves.push_back(shapes::family_zigzag(j(rng)));
        curves.push_back(shapes::smooth_curve(rng));
    }
    const auto t0 = std::chrono::steady_clock::now();
    const auto sel = feature_selection(curves, 7);
    const double secs = seconds_since(t0);

    const SelectionEntry* best = nullptr;
    for (const auto& e : sel.table) {
        if (!e.valid) continue;
        if (best == nullptr || e.weighted_tightness < best->weighted_tightness - 1e-12 ||
            (std::abs(e.weighted_tightness - best->weighted_tightness) <= 1e-12 &&
             std::pair{e.k, e.mask} < std::pair{best->k, best->mask}))
            best = &e;
    }
    // Re-score the winner from scratch.
    const auto again = kmeans_cluster(curves, sel.k, sel.mask, 7);
    const bool argmin = best != nullptr && best->k == sel.k && best->mask == sel.mask;
    const bool rescored = again.assignments == sel.clustering.assignments &&
                          std::abs(again.mean_tightness - best->weighted_tightness) < 1e-9;
    return verdict(sel.table.size() == 255 * 14 && argmin && rescored && secs < 60.0,
                   std::to_string(sel.table.size()) + " configurations in " + num(secs) + " s, winner k=" +
                       std::to_string(sel.k) + " " + describe_mask(sel.mask) + (argmin ? ", argmin agrees" : ", argmin differs"));
}

LabColor rotate3(const LabColor& p, const LabColor& axis, double angle)
{
    const LabColor k = axis / norm(axis);
    return p * std::cos(angle) + cross(k, p) * std::sin(angle) + k * (dot(k, p) * (1.0 - std::cos(angle)));
}

Outcome elastic_metric()
{
    std::mt19937_64 rng(1004);
    std::uniform_real_distribution<double> u(0, 1);
    double linear = 0.0, self = 0.0, rigid = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const RampCurve a = shapes::random_curve(rng), b = shapes::random_curve(rng);
        const MetricScale scale{2.0, 100.0};
        const double w = u(rng);
        const double d0 = weighted_distance(a, b, 0.0, scale), d1 = weighted_distance(a, b, 1.0, scale);
        linear = std::max(linear, std::abs(weighted_distance(a, b, w, scale) - (w * d1 + (1 - w) * d0)));
        self = std::max(self, weighted_distance(a, a, w, scale));
    }
    for (int trial = 0; trial < 100; ++trial) {
        const RampCurve c = shapes::random_curve(rng);
        RampCurve r = c;
        const LabColor axis{u(rng) - 0.5, u(rng) - 0.5, u(rng) - 0.5};
        const double angle = 2 * std::numbers::pi * u(rng);
        for (auto& p : r.points) p = rotate3(p, axis, angle);
        rigid = std::max(rigid, srvf_distance(srvf(c), srvf(r)));
    }

    std::vector<RampCurve> curves;
    std::vector<int> truth;
    for (double j : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        curves.push_back(shapes::family_arc(j));
        truth.push_back(0);
    }
    for (double j : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        curves.push_back(shapes::family_zigzag(j));
        truth.push_back(1);
    }
    const auto c = elastic_cluster(curves, 0.5, {}, 42);
    const bool groups = c.k == 2 && canonical_labels(c.assignments) == truth;
    return verdict(linear < 1e-9 && self < 1e-12 && rigid < 1e-6 && groups,
                   "linearity " + num(linear) + ", d(c,c) " + num(self) + ", rotated f_SRVF " + num(rigid) +
                       ", two groups " + (groups ? "recovered" : "not recovered (k=" + std::to_string(c.k) + ")"));
}

// ---------------------------------------------------------------- generator

RampModel uniform_model(double l0, double step, double radius)
{
    RampModel m;
    m.id = "uniform";
    m.cluster_size = 2;
    m.member_ids = {"a", "b"};
    for (std::size_t x = 0; x < kControlPoints; ++x) {
        const double t = static_cast<double>(x) / 8.0;
        m.l_profile[x] = l0 + step * static_cast<double>(x);
        m.shape[x] = {m.l_profile[x], radius * std::cos(3 * t), radius * std::sin(3 * t)};
    }
    LabColor c;
    for (const auto& p : m.shape) c += p / 9.0;
    for (auto& p : m.shape) p -= LabColor{0, c.a, c.b};
    return m;
}

Outcome seeding()
{
    const RampModel m = uniform_model(10, 10, 12);
    const LabColor seed{78, -45, 32};
    const GeneratedRamp r = seed_sequential(m, seed, GamutMode::clip);
    const bool example = r.anchor_index == 7 && r.colors[7] == seed && std::abs(r.colors.front().L - 8.0) < 1e-12 &&
                         std::abs(r.colors.back().L - 88.0) < 1e-12;

    const auto& book = sample_book();
    std::mt19937_64 rng(1005);
    double worst = 0.0;
    int exact = 0;
    for (int i = 0; i < 1000; ++i) {
        const RampModel& model = book.models[rng() % book.models.size()];
        const LabColor s = random_in_gamut(rng);
        std::size_t anchor = 0;
        const ControlPoints p = anchor_model(model, s, &anchor);
        if (p[anchor] == s) ++exact;
        const auto a = pairwise(p), b = pairwise(model.shape);
        for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    }
    return verdict(example && worst < 1e-9 && exact == 1000,
                   std::string("worked example ") + (example ? "exact" : "differs") + " (L " + num(r.colors.front().L) +
                       ".." + num(r.colors.back().L) + "), pairwise deviation " + num(worst) + " over 1000 pairs, " +
                       std::to_string(exact) + " exact anchors");
}

Outcome diverging()
{
    const auto& book = sample_book();
    DivergingOptions clip;
    clip.gamut = GamutMode::clip;
    double worst = 0.0;
    int measured = 0;
    bool gray = true;
    for (const auto& m : book.models) {
        GeneratedRamp r;
        try {
            r = seed_diverging(m, srgb_to_lab(parse_hex("#4A7FB0")), 0.0, clip);
        } catch (const GamutError&) {
            continue;
        }
        gray = gray && r.colors[8].a == 0.0 && r.colors[8].b == 0.0;
        if (r.gamut_status != GamutStatus::clean) continue;
        worst = std::max(worst, std::abs(ab_angle(r.colors[0] - r.colors[8], r.colors[16] - r.colors[8]) - 115.0));
        ++measured;
    }
    const RampModel u = uniform_model(30, 8, 8);
    const LabColor seed{60, 15, -10};
    const GeneratedRamp clamped = seed_diverging(u, seed, 75.0);
    DivergingOptions strict;
    strict.clamp_rotation = false;
    bool rejected = false;
    try {
        (void)seed_diverging(u, seed, 61.0, strict);
    } catch (const InvalidArgument&) {
        rejected = true;
    }
    const bool clamps = clamped.arm_rotation_degrees == 60.0 && clamped.warnings.size() == 1;
    return verdict(measured > 0 && worst < 0.1 && gray && clamps && rejected,
                   "join angle within " + num(worst) + " deg of 115 on " + std::to_string(measured) +
                       " in-gamut models, center gray " + (gray ? "yes" : "no") + ", 75 deg " +
                       (clamps ? "clamped" : "not clamped") + ", 61 deg strict " + (rejected ? "rejected" : "accepted"));
}

Outcome edit_revert()
{
    const auto& book = sample_book();
    std::mt19937_64 rng(1006);
    std::uniform_real_distribution<double> t(-15, 15), rot(-90, 90), sc(0.6, 1.6);
    int reverts = 0, applied = 0, escaped = 0, drifted = 0;
    for (int run = 0; run < 200; ++run) {
        const RampModel& m = book.models[static_cast<std::size_t>(run) % book.models.size()];
        GeneratedRamp r;
        try {
            r = seed_sequential(m, random_in_gamut(rng), GamutMode::clip);
        } catch (const GamutError&) {
            continue;
        }
        for (int step = 0; step < 20; ++step) {
            AffineEdit e;
            switch (rng() % 4) {
            case 0: e.translate_l = t(rng); break;
            case 1: e.translate_a = t(rng), e.translate_b = t(rng); break;
            case 2: e.rotate_ab_degrees = rot(rng); break;
            default: e.scale = sc(rng); break;
            }
            e.reflect = rng() % 5 == 0;
            const GeneratedRamp next = apply_user_edit(r, e);
            if (next.gamut_status == GamutStatus::reverted) {
                ++reverts;
                if (next.colors != r.colors || next.edits != r.edits) ++drifted;
            } else {
                ++applied;
                for (const auto& c : next.colors)
                    if (!oracle::in_gamut({c.L, c.a, c.b})) ++escaped;
                r = next;
            }
        }
    }
    return verdict(escaped == 0 && drifted == 0 && reverts > 0 && applied > 0,
                   std::to_string(applied) + " edits applied, " + std::to_string(reverts) + " reverted, " +
                       std::to_string(escaped) + " out-of-gamut colors shown, " + std::to_string(drifted) +
                       " reverts not bit-identical");
}

// ---------------------------------------------------------------- round trips

struct Run {
    int code = -1;
    std::string out;
};

Run run_cli(const std::string& args)
{
    const fs::path out = fs::temp_directory_path() / ("rampforge-accept-" + std::to_string(::getpid()) + ".out");
    const std::string cmd = std::string("'") + RAMPFORGE_CLI_PATH + "' " + args + " >'" + out.string() + "' 2>/dev/null";
    const int status = std::system(cmd.c_str());
    Run r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, read_file(out)};
    fs::remove(out);
    return r;
}

Outcome round_trips()
{
    int lattice_bad = 0, random_bad = 0;
    for (int r = 0; r < 256; r += 8)
        for (int g = 0; g < 256; g += 8)
            for (int b = 0; b < 256; b += 8) {
                const SRGBColor c{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(b)};
                if (lab_to_srgb(srgb_to_lab(c)) != c) ++lattice_bad;
            }
    std::mt19937_64 rng(1007);
    std::uniform_int_distribution<int> u(0, 255);
    for (int i = 0; i < 100000; ++i) {
        const SRGBColor c{static_cast<std::uint8_t>(u(rng)), static_cast<std::uint8_t>(u(rng)),
                          static_cast<std::uint8_t>(u(rng))};
        if (lab_to_srgb(srgb_to_lab(c)) != c) ++random_bad;
    }

    const fs::path book_path = fs::temp_directory_path() / ("rampforge-accept-" + std::to_string(::getpid()) + ".json");
    save_modelbook(sample_book(), book_path);
    const bool book_ok = load_modelbook(book_path) == sample_book();
    fs::remove(book_path);

    // The CLI reproduces its checked-in goldens byte for byte.
    const fs::path golden = kSource / "tests" / "golden";
    const fs::path trained = fs::temp_directory_path() / ("rampforge-accept-" + std::to_string(::getpid()) + "-book.json");
    const Run train = run_cli("train --corpus '" + kSample.string() + "' --models '" + trained.string() + "' --seed 7");
    const bool train_ok = train.code == 0 && train.out == read_file(golden / "train.txt") &&
                          read_file(trained) == read_file(golden / "book.json");
    fs::remove(trained);
    const Run stats = run_cli("stats --corpus '" + kSample.string() + "'");
    const Run seed = run_cli("seed --models '" + (golden / "book.json").string() +
                             "' --model kmeans-2 --color '#8C6BB1' --gamut strict");
    const bool cli_ok = train_ok && stats.code == 0 && stats.out == read_file(golden / "stats.txt") && seed.code == 0 &&
                        seed.out == read_file(golden / "seed_hex.txt");

    return verdict(lattice_bad == 0 && random_bad == 0 && book_ok && cli_ok,
                   "lattice mismatches " + std::to_string(lattice_bad) + ", random mismatches " + std::to_string(random_bad) +
                       ", model book " + (book_ok ? "equal" : "differs") + ", CLI goldens " + (cli_ok ? "stable" : "differ"));
}

// ---------------------------------------------------------------- end to end

Outcome end_to_end(const fs::path& corpus_path)
{
    const auto t0 = std::chrono::steady_clock::now();
    const Corpus corpus = parse_corpus(corpus_path);
    const ModelBook book = build_modelbook(corpus, {});
    int kmeans = 0, elastic = 0;
    for (const auto& m : book.models) ++(m.method == ClusterMethod::kmeans ? kmeans : elastic);

    std::vector<LabColor> seeds;
    for (const auto& r : corpus.ramps)
        if (r.source == RampSource::colorbrewer)
            for (const auto& c : r.colors) seeds.push_back(c);
    if (seeds.empty()) return fail("no ColorBrewer ramps to draw seeds from");

    int checked = 0, violations = 0, refused = 0, monotone_models = 0;
    for (const auto& m : book.models) {
        if (!monotone_up(m.l_profile)) continue;
        ++monotone_models;
        for (std::size_t i = 0; i < seeds.size(); i += 7) {
            GeneratedRamp r;
            try {
                r = seed_sequential(m, seeds[i], GamutMode::clip);
            } catch (const GamutError&) {
                ++refused;
                continue;
            }
            ++checked;
            for (std::size_t x = 1; x < r.colors.size(); ++x)
                if (!(r.colors[x].L > r.colors[x - 1].L)) {
                    ++violations;
                    break;
                }
        }
    }
    const double secs = seconds_since(t0);
    return verdict(kmeans >= 2 && elastic >= 2 && checked > 0 && violations == 0 && secs < 600.0,
                   "models kmeans " + std::to_string(kmeans) + " / elastic " + std::to_string(elastic) + ", " +
                       std::to_string(checked) + " seeded ramps on " + std::to_string(monotone_models) +
                       " monotone models, " + std::to_string(violations) + " order violations, " +
                       std::to_string(refused) + " seeds refused (L* out of range), " + num(secs) + " s");
}

} // namespace

int main()
{
    struct Criterion {
        std::string name;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria{
        {"corpus constants (published corpus)", corpus_real},
        {"corpus constants (bundled sample)", corpus_sample},
        {"normalization (published corpus)",
         [] { return real_corpus() ? normalization(*real_corpus(), false) : skip("RAMPFORGE_REAL_CORPUS not set"); }},
        {"normalization (bundled sample)", [] { return normalization(kSample, true); }},
        {"tightness oracle", tightness_oracle},
        {"feature oracle", feature_oracle},
        {"k-means small-instance equivalence", kmeans_equivalence},
        {"feature-selection grid", feature_grid},
        {"elastic metric", elastic_metric},
        {"seeding", seeding},
        {"diverging", diverging},
        {"edit/revert", edit_revert},
        {"round trips", round_trips},
        {"end-to-end (published corpus)",
         [] { return real_corpus() ? end_to_end(*real_corpus()) : skip("RAMPFORGE_REAL_CORPUS not set"); }},
        {"end-to-end (bundled sample)", [] { return end_to_end(kSample); }},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = fail(std::string("threw: ") + e.what());
        }
        const char* tag = o.status == Status::pass ? "PASS" : o.status == Status::fail ? "FAIL" : "SKIP";
        if (o.status == Status::fail) ++failed;
        std::cout << tag << "  " << c.name << ": " << o.detail << '\n' << std::flush;
    }
    return failed == 0 ? 0 : 1;
}
