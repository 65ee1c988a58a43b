#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rustseg/metrics.hpp"
#include "rustseg/overlay.hpp"
#include "rustseg/pipeline.hpp"
#include "rustseg/png_io.hpp"
#include "rustseg/synth.hpp"
#include "rustseg/watershed.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rustseg;

namespace {

// Fixed 9-significant-digit float formatting keeps report files byte-stable.
double jnum(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::strtod(buf, nullptr);
}

json metrics_json(const MetricsReport& m) {
    return json{{"tp", m.tp},
                {"fp", m.fp},
                {"fn", m.fn},
                {"tn", m.tn},
                {"precision", jnum(m.precision)},
                {"recall", jnum(m.recall)},
                {"f1", jnum(m.f1)},
                {"iou", jnum(m.iou)},
                {"no_positive_prediction", m.no_positive_prediction},
                {"no_positive_truth", m.no_positive_truth}};
}

json aggregate_json(const AggregateReport& a) {
    return json{{"micro", metrics_json(a.micro)},
                {"macro", json{{"precision", jnum(a.macro_precision)},
                               {"recall", jnum(a.macro_recall)},
                               {"f1", jnum(a.macro_f1)},
                               {"iou", jnum(a.macro_iou)},
                               {"images_counted", a.macro_images}}}};
}

json config_json(const PipelineConfig& c) {
    return json{{"erosion_radius", c.erosion_radius},
                {"dilation_radius", c.dilation_radius},
                {"smooth_gradient", c.smooth_gradient},
                {"mask_threshold", c.mask_threshold},
                {"seed", c.seed}};
}

void config_from_json(const json& j, PipelineConfig& c) {
    if (j.contains("erosion_radius")) c.erosion_radius = j.at("erosion_radius").get<int>();
    if (j.contains("dilation_radius")) c.dilation_radius = j.at("dilation_radius").get<int>();
    if (j.contains("smooth_gradient")) c.smooth_gradient = j.at("smooth_gradient").get<bool>();
    if (j.contains("mask_threshold")) c.mask_threshold = j.at("mask_threshold").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open '" + path + "'");
    json j;
    in >> j;
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot write '" + path + "'");
    out << text;
    if (!out) throw FileError("short write to '" + path + "'");
}

void emit_report(const json& j, const std::string& path) {
    std::string text = j.dump(2);
    text.push_back('\n');
    if (path.empty())
        std::cout << text;
    else
        write_text(path, text);
}

std::vector<std::string> list_pngs(const std::string& dir) {
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".png")
            names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    return names;
}

json synth_spec_json(const SynthSpec& s) {
    auto palette = [](const std::vector<PaletteEntry>& p) {
        json arr = json::array();
        for (const auto& e : p)
            arr.push_back(json{{"mean", e.mean}, {"jitter", e.jitter}});
        return arr;
    };
    return json{{"width", s.width},
                {"height", s.height},
                {"blob_count", {s.blob_count_min, s.blob_count_max}},
                {"blob_scale", {s.blob_scale_min, s.blob_scale_max}},
                {"rust_palette", palette(s.rust_palette)},
                {"background_palette", palette(s.background_palette)},
                {"texture_noise", s.texture_noise}};
}

void synth_spec_from_json(const json& j, SynthSpec& s) {
    if (j.contains("width")) s.width = j.at("width").get<int>();
    if (j.contains("height")) s.height = j.at("height").get<int>();
    if (j.contains("blob_count")) {
        s.blob_count_min = j.at("blob_count").at(0).get<int>();
        s.blob_count_max = j.at("blob_count").at(1).get<int>();
    }
    if (j.contains("blob_scale")) {
        s.blob_scale_min = j.at("blob_scale").at(0).get<int>();
        s.blob_scale_max = j.at("blob_scale").at(1).get<int>();
    }
    auto palette = [](const json& arr) {
        std::vector<PaletteEntry> p;
        for (const auto& e : arr)
            p.push_back({e.at("mean").get<std::array<int, 3>>(), e.at("jitter").get<int>()});
        return p;
    };
    if (j.contains("rust_palette")) s.rust_palette = palette(j.at("rust_palette"));
    if (j.contains("background_palette"))
        s.background_palette = palette(j.at("background_palette"));
    if (j.contains("texture_noise")) s.texture_noise = j.at("texture_noise").get<int>();
}

json degrade_spec_json(const DegradeSpec& d) {
    return json{{"downscale", d.downscale},
                {"boundary_jitter", d.boundary_jitter},
                {"flip_rate", jnum(d.flip_rate)}};
}

void degrade_spec_from_json(const json& j, DegradeSpec& d) {
    if (j.contains("downscale")) d.downscale = j.at("downscale").get<int>();
    if (j.contains("boundary_jitter")) d.boundary_jitter = j.at("boundary_jitter").get<int>();
    if (j.contains("flip_rate")) d.flip_rate = j.at("flip_rate").get<double>();
}

struct RefineJob {
    std::string image, coarse, truth, out;
};

json refine_one(const RefineJob& job, const PipelineConfig& cfg,
                const std::string& overlay_path, std::vector<MetricsReport>* before,
                std::vector<MetricsReport>* after) {
    RgbImage image = load_image(job.image);
    BinaryMask coarse = load_mask(job.coarse, cfg.mask_threshold);

    RefineResult res = refine_mask(image, coarse, cfg);
    save_mask(res.refined, job.out);

    json regions = json::array();
    for (const auto& r : res.regions)
        regions.push_back(json{{"id", r.id},
                               {"pixels", r.pixels},
                               {"segments", r.segments},
                               {"accepted_segments", r.accepted},
                               {"degenerate", r.degenerate}});

    json entry{{"image", fs::path(job.image).filename().string()},
               {"coarse", fs::path(job.coarse).filename().string()},
               {"out", fs::path(job.out).filename().string()},
               {"region_count", res.region_count},
               {"degenerate_regions", res.degenerate_count},
               {"regions", std::move(regions)},
               {"timings_ms", json{{"regions", jnum(res.ms_regions)},
                                   {"watershed", jnum(res.ms_watershed)},
                                   {"projection", jnum(res.ms_projection)},
                                   {"total", jnum(res.ms_total)}}}};

    if (!job.truth.empty()) {
        BinaryMask truth = load_mask(job.truth, cfg.mask_threshold);
        MetricsReport mb = evaluate(coarse, truth);
        MetricsReport ma = evaluate(res.refined, truth);
        entry["metrics_before"] = metrics_json(mb);
        entry["metrics_after"] = metrics_json(ma);
        if (before) before->push_back(mb);
        if (after) after->push_back(ma);
    }

    if (!overlay_path.empty()) {
        auto zones = refine_zones(image, coarse, res.refined, cfg);
        save_image(render_overlay(image, zones, OverlaySpec{}), overlay_path);
    }
    return entry;
}

int cmd_refine(const std::string& image_path, const std::string& coarse_path,
               const std::string& out_path, const std::string& truth_path,
               const std::string& overlay_path, const std::string& report_path,
               const PipelineConfig& cfg) {
    json report{{"config", config_json(cfg)}};
    json images = json::array();
    std::vector<MetricsReport> before, after;

    const bool batch = fs::is_directory(image_path);
    if (batch != fs::is_directory(coarse_path))
        throw DimensionError("refine: image and mask paths must both be files or both directories");

    if (batch) {
        if (out_path.empty())
            throw DimensionError("refine: --out directory is required in batch mode");
        fs::create_directories(out_path);
        auto imgs = list_pngs(image_path);
        auto masks = list_pngs(coarse_path);
        if (imgs.size() != masks.size())
            throw DimensionError("refine: image and mask directories differ in file count");
        std::vector<std::string> truths;
        if (!truth_path.empty()) {
            truths = list_pngs(truth_path);
            if (truths.size() != imgs.size())
                throw DimensionError("refine: truth directory differs in file count");
        }
        for (std::size_t i = 0; i < imgs.size(); ++i) {
            RefineJob job;
            job.image = (fs::path(image_path) / imgs[i]).string();
            job.coarse = (fs::path(coarse_path) / masks[i]).string();
            job.truth = truths.empty() ? "" : (fs::path(truth_path) / truths[i]).string();
            job.out = (fs::path(out_path) / masks[i]).string();
            try {
                images.push_back(refine_one(job, cfg, "", &before, &after));
            } catch (const std::exception& e) {
                std::cerr << "refine: skipping " << imgs[i] << ": " << e.what() << "\n";
                images.push_back(json{{"image", imgs[i]}, {"error", e.what()}});
            }
        }
    } else {
        RefineJob job{image_path, coarse_path, truth_path,
                      out_path.empty() ? "refined.png" : out_path};
        images.push_back(refine_one(job, cfg, overlay_path, &before, &after));
    }

    report["images"] = std::move(images);
    if (!before.empty()) {
        report["aggregate_before"] = aggregate_json(aggregate(before));
        report["aggregate_after"] = aggregate_json(aggregate(after));
    }
    if (!report_path.empty()) emit_report(report, report_path);
    return 0;
}

int cmd_evaluate(const std::vector<std::string>& preds, const std::vector<std::string>& truths,
                 int threshold, const std::string& report_path) {
    if (preds.size() != truths.size() || preds.empty())
        throw DimensionError("evaluate: need matching --pred/--truth lists");

    json images = json::array();
    std::vector<MetricsReport> reports;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        BinaryMask pred = load_mask(preds[i], threshold);
        BinaryMask truth = load_mask(truths[i], threshold);
        MetricsReport m = evaluate(pred, truth);
        reports.push_back(m);
        images.push_back(json{{"pred", fs::path(preds[i]).filename().string()},
                              {"truth", fs::path(truths[i]).filename().string()},
                              {"metrics", metrics_json(m)}});
    }
    AggregateReport agg = aggregate(reports);
    json report{{"images", std::move(images)},
                {"micro", metrics_json(agg.micro)},
                {"macro", json{{"precision", jnum(agg.macro_precision)},
                               {"recall", jnum(agg.macro_recall)},
                               {"f1", jnum(agg.macro_f1)},
                               {"iou", jnum(agg.macro_iou)},
                               {"images_counted", agg.macro_images}}}};
    emit_report(report, report_path);
    return 0;
}

int cmd_synth(const std::string& out_dir, int count, std::uint64_t seed,
              const std::string& spec_path) {
    SynthSpec sspec;
    DegradeSpec dspec;
    if (!spec_path.empty()) {
        json j = load_json_file(spec_path);
        if (j.contains("synth_spec")) synth_spec_from_json(j.at("synth_spec"), sspec);
        if (j.contains("degrade_spec")) degrade_spec_from_json(j.at("degrade_spec"), dspec);
    }
    fs::create_directories(out_dir);

    json items = json::array();
    for (int i = 0; i < count; ++i) {
        char name[32];
        SynthSpec si = sspec;
        DegradeSpec di = dspec;
        si.seed = seed + static_cast<std::uint64_t>(i);
        di.seed = si.seed;
        auto [scene, truth] = synth_generate(si);
        BinaryMask coarse = degrade_mask(truth, di);

        json item;
        std::snprintf(name, sizeof name, "scene_%04d.png", i);
        save_image(scene, (fs::path(out_dir) / name).string());
        item["scene"] = name;
        std::snprintf(name, sizeof name, "truth_%04d.png", i);
        save_mask(truth, (fs::path(out_dir) / name).string());
        item["truth"] = name;
        std::snprintf(name, sizeof name, "coarse_%04d.png", i);
        save_mask(coarse, (fs::path(out_dir) / name).string());
        item["coarse"] = name;
        item["seed"] = si.seed;
        items.push_back(std::move(item));
    }

    json manifest{{"count", count},
                  {"seed", seed},
                  {"synth_spec", synth_spec_json(sspec)},
                  {"degrade_spec", degrade_spec_json(dspec)},
                  {"items", std::move(items)}};
    emit_report(manifest, (fs::path(out_dir) / "manifest.json").string());
    return 0;
}

int cmd_split(const std::string& manifest_path, std::uint64_t seed,
              const std::string& report_path) {
    json manifest = load_json_file(manifest_path);
    const auto& items = manifest.at("items");
    SplitResult split = split_dataset(items.size(), seed);

    auto names = [&](const std::vector<std::size_t>& idx) {
        json arr = json::array();
        for (std::size_t i : idx) arr.push_back(items.at(i).at("scene"));
        return arr;
    };
    json report{{"seed", seed},
                {"counts", json{{"train", split.train.size()},
                                {"val", split.val.size()},
                                {"test", split.test.size()}}},
                {"train", names(split.train)},
                {"val", names(split.val)},
                {"test", names(split.test)}};
    emit_report(report, report_path);
    return 0;
}

int cmd_overlay(const std::string& image_path, const std::string& out_path,
                const std::string& true_fg, const std::string& fuzzy,
                const std::string& contour, double alpha, int threshold) {
    RgbImage image = load_image(image_path);
    OverlaySpec spec;
    spec.alpha = alpha;
    std::vector<std::pair<BinaryMask, ZoneKind>> zones;
    if (!fuzzy.empty())
        zones.emplace_back(load_mask(fuzzy, threshold), ZoneKind::Fuzzy);
    if (!true_fg.empty())
        zones.emplace_back(load_mask(true_fg, threshold), ZoneKind::TrueForeground);
    if (!contour.empty())
        zones.emplace_back(mask_boundary(load_mask(contour, threshold)),
                           ZoneKind::RefinedContour);
    save_image(render_overlay(image, zones, spec), out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Corrosion mask boundary refinement pipeline"};
    app.require_subcommand(1);

    // refine
    auto* refine = app.add_subcommand("refine", "Refine a coarse detection mask");
    std::string r_image, r_coarse, r_out, r_truth, r_overlay, r_report, r_config;
    int r_er = 3, r_dr = 3, r_mt = 128;
    bool r_nosmooth = false;
    std::uint64_t r_seed = 0;
    refine->add_option("image", r_image, "Input RGB PNG (or directory)")->required();
    refine->add_option("mask", r_coarse, "Coarse detection mask PNG (or directory)")->required();
    refine->add_option("--out", r_out, "Refined mask output path (directory in batch mode)");
    refine->add_option("--truth", r_truth, "Ground truth mask for before/after metrics");
    refine->add_option("--overlay", r_overlay, "Write zone overlay PNG (single-image mode)");
    refine->add_option("--report", r_report, "Write run report JSON");
    refine->add_option("--config", r_config, "Pipeline config JSON file");
    auto* o_er = refine->add_option("--erosion-radius", r_er, "Disk radius for the core erosion");
    auto* o_dr = refine->add_option("--dilation-radius", r_dr, "Disk radius for the fuzzy dilation");
    auto* o_ns = refine->add_flag("--no-smooth-gradient", r_nosmooth,
                                  "Disable the 3x3 gradient pre-smoothing");
    auto* o_mt = refine->add_option("--mask-threshold", r_mt, "Luma threshold for mask decoding");
    auto* o_sd = refine->add_option("--seed", r_seed, "Pipeline seed (recorded in reports)");

    // evaluate
    auto* eval = app.add_subcommand("evaluate", "Pixel metrics of predictions vs ground truth");
    std::vector<std::string> e_preds, e_truths;
    std::string e_report;
    int e_mt = 128;
    eval->add_option("--pred", e_preds, "Prediction mask PNG(s)")->required();
    eval->add_option("--truth", e_truths, "Ground truth mask PNG(s)")->required();
    eval->add_option("--report", e_report, "Write report JSON (default: stdout)");
    eval->add_option("--mask-threshold", e_mt, "Luma threshold for mask decoding");

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus with ground truth");
    std::string s_out, s_config;
    int s_count = 10;
    std::uint64_t s_seed = 1;
    synth->add_option("--out", s_out, "Output directory")->required();
    synth->add_option("--count", s_count, "Number of scenes");
    synth->add_option("--seed", s_seed, "Base seed; item i uses seed+i");
    synth->add_option("--config", s_config, "JSON with synth_spec/degrade_spec overrides");

    // split
    auto* split = app.add_subcommand("split", "Deterministic train/val/test split of a corpus");
    std::string p_manifest, p_report;
    std::uint64_t p_seed = 1;
    split->add_option("manifest", p_manifest, "Corpus manifest JSON")->required();
    split->add_option("--seed", p_seed, "Shuffle seed");
    split->add_option("--report", p_report, "Write split JSON (default: stdout)");

    // overlay
    auto* over = app.add_subcommand("overlay", "Render zone masks over an image");
    std::string v_image, v_out, v_true, v_fuzzy, v_contour;
    double v_alpha = 0.5;
    int v_mt = 128;
    over->add_option("image", v_image, "Input RGB PNG")->required();
    over->add_option("--out", v_out, "Output PNG")->required();
    over->add_option("--true-fg", v_true, "High-confidence zone mask");
    over->add_option("--fuzzy", v_fuzzy, "Fuzzy zone mask");
    over->add_option("--contour", v_contour, "Mask whose 1-px boundary is drawn");
    over->add_option("--alpha", v_alpha, "Blend alpha in [0,1]");
    over->add_option("--mask-threshold", v_mt, "Luma threshold for mask decoding");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (refine->parsed()) {
            PipelineConfig cfg;
            if (!r_config.empty()) config_from_json(load_json_file(r_config), cfg);
            if (o_er->count()) cfg.erosion_radius = r_er;
            if (o_dr->count()) cfg.dilation_radius = r_dr;
            if (o_ns->count()) cfg.smooth_gradient = !r_nosmooth;
            if (o_mt->count()) cfg.mask_threshold = r_mt;
            if (o_sd->count()) cfg.seed = r_seed;
            if (cfg.erosion_radius < 0 || cfg.dilation_radius < 0)
                throw DimensionError("radii must be >= 0");
            return cmd_refine(r_image, r_coarse, r_out, r_truth, r_overlay, r_report, cfg);
        }
        if (eval->parsed()) return cmd_evaluate(e_preds, e_truths, e_mt, e_report);
        if (synth->parsed()) return cmd_synth(s_out, s_count, s_seed, s_config);
        if (split->parsed()) return cmd_split(p_manifest, p_seed, p_report);
        if (over->parsed())
            return cmd_overlay(v_image, v_out, v_true, v_fuzzy, v_contour, v_alpha, v_mt);
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
