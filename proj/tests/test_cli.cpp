#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>
#include <sys/wait.h>

#include "rustseg/morphology.hpp"
#include "rustseg/png_io.hpp"

using namespace rustseg;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kBin = RUSTSEG_CLI_BIN;
const fs::path kGolden = RUSTSEG_GOLDEN_DIR;

int run_cli(const std::string& args) {
    std::string cmd = kBin + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path tmp_dir() {
    fs::path d = fs::temp_directory_path() / "rustseg_cli_tests";
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json load_report_without_timings(const fs::path& p) {
    json j = json::parse(slurp(p));
    if (j.contains("images"))
        for (auto& img : j["images"]) img.erase("timings_ms");
    return j;
}

}  // namespace

TEST_CASE("cli: missing input file exits 3") {
    CHECK(run_cli("refine /nonexistent/a.png /nonexistent/b.png --out " +
                  (tmp_dir() / "x.png").string()) == 3);
}

TEST_CASE("cli: mismatched dimensions exit 2") {
    auto d = tmp_dir();
    save_image(RgbImage(8, 8, {120, 60, 40}), (d / "img8.png").string());
    save_mask(BinaryMask(4, 4, true), (d / "mask4.png").string());
    CHECK(run_cli("refine " + (d / "img8.png").string() + " " + (d / "mask4.png").string() +
                  " --out " + (d / "out.png").string()) == 2);
}

TEST_CASE("cli: unknown flags and missing arguments exit 2") {
    CHECK(run_cli("refine") == 2);
    CHECK(run_cli("frobnicate") == 2);
}

TEST_CASE("cli: empty coarse mask refines to an empty mask") {
    auto d = tmp_dir();
    save_image(RgbImage(32, 32, {100, 100, 100}), (d / "scene.png").string());
    save_mask(BinaryMask(32, 32, false), (d / "empty.png").string());
    auto out = d / "empty_refined.png";
    auto report = d / "empty_report.json";
    CHECK(run_cli("refine " + (d / "scene.png").string() + " " + (d / "empty.png").string() +
                  " --out " + out.string() + " --report " + report.string()) == 0);
    CHECK(load_mask(out.string()).count() == 0);
    json j = json::parse(slurp(report));
    CHECK(j["images"][0]["region_count"] == 0);
}

TEST_CASE("cli: full-image coarse mask respects the sandwich bound") {
    auto d = tmp_dir();
    save_image(RgbImage(48, 48, {140, 70, 40}), (d / "full_scene.png").string());
    BinaryMask full(48, 48, true);
    save_mask(full, (d / "full.png").string());
    auto out = d / "full_refined.png";
    CHECK(run_cli("refine " + (d / "full_scene.png").string() + " " + (d / "full.png").string() +
                  " --out " + out.string()) == 0);
    BinaryMask refined = load_mask(out.string());
    BinaryMask core = erode(full, make_se(SeShape::Disk, 3));
    CHECK(mask_subset(core, refined));
    CHECK(mask_subset(refined, full));  // F+ cannot exceed the full frame
}

TEST_CASE("cli: refine golden case is byte identical across runs") {
    auto d = tmp_dir();
    auto scene = kGolden / "scene.png";
    auto coarse = kGolden / "coarse.png";
    REQUIRE(fs::exists(scene));
    REQUIRE(fs::exists(coarse));

    auto run1 = d / "golden_run1", run2 = d / "golden_run2";
    fs::create_directories(run1);
    fs::create_directories(run2);
    auto out1 = run1 / "refined.png";
    auto out2 = run2 / "refined.png";
    auto rep1 = run1 / "report.json";
    auto rep2 = run2 / "report.json";
    CHECK(run_cli("refine " + scene.string() + " " + coarse.string() + " --truth " +
                  (kGolden / "truth.png").string() + " --out " + out1.string() +
                  " --report " + rep1.string()) == 0);
    CHECK(run_cli("refine " + scene.string() + " " + coarse.string() + " --truth " +
                  (kGolden / "truth.png").string() + " --out " + out2.string() +
                  " --report " + rep2.string()) == 0);

    CHECK(slurp(out1) == slurp(out2));
    CHECK(slurp(out1) == slurp(kGolden / "refined.png"));
    CHECK(load_report_without_timings(rep1) == load_report_without_timings(rep2));
    CHECK(load_report_without_timings(rep1) ==
          load_report_without_timings(kGolden / "report.json"));
}

TEST_CASE("cli: evaluate golden case is byte identical") {
    auto d = tmp_dir();
    auto rep1 = d / "eval1.json";
    auto rep2 = d / "eval2.json";
    std::string args = "evaluate --pred " + (kGolden / "refined.png").string() +
                       " --truth " + (kGolden / "truth.png").string() + " --report ";
    CHECK(run_cli(args + rep1.string()) == 0);
    CHECK(run_cli(args + rep2.string()) == 0);
    CHECK(slurp(rep1) == slurp(rep2));
    CHECK(slurp(rep1) == slurp(kGolden / "eval.json"));
}

TEST_CASE("cli: evaluate with mismatched list lengths exits 2") {
    CHECK(run_cli("evaluate --pred " + (kGolden / "refined.png").string() + " --truth " +
                  (kGolden / "truth.png").string() + " --truth " +
                  (kGolden / "coarse.png").string()) == 2);
}

TEST_CASE("cli: synth corpus is deterministic and splits 3/1/1") {
    auto d1 = tmp_dir() / "corpus_a";
    auto d2 = tmp_dir() / "corpus_b";
    fs::remove_all(d1);
    fs::remove_all(d2);
    CHECK(run_cli("synth --out " + d1.string() + " --count 5 --seed 99") == 0);
    CHECK(run_cli("synth --out " + d2.string() + " --count 5 --seed 99") == 0);
    for (const char* name :
         {"manifest.json", "scene_0000.png", "truth_0004.png", "coarse_0002.png"}) {
        CHECK(fs::exists(d1 / name));
        CHECK(slurp(d1 / name) == slurp(d2 / name));
    }

    auto split = tmp_dir() / "split.json";
    CHECK(run_cli("split " + (d1 / "manifest.json").string() + " --seed 3 --report " +
                  split.string()) == 0);
    json s = json::parse(slurp(split));
    CHECK(s["counts"]["train"] == 3);
    CHECK(s["counts"]["val"] == 1);
    CHECK(s["counts"]["test"] == 1);
    CHECK(s["train"].size() == 3);
}

TEST_CASE("cli: synth count=0 writes only the manifest") {
    auto d = tmp_dir() / "corpus_empty";
    fs::remove_all(d);
    CHECK(run_cli("synth --out " + d.string() + " --count 0 --seed 1") == 0);
    CHECK(fs::exists(d / "manifest.json"));
    json m = json::parse(slurp(d / "manifest.json"));
    CHECK(m["items"].empty());
    int pngs = 0;
    for (const auto& e : fs::directory_iterator(d))
        if (e.path().extension() == ".png") ++pngs;
    CHECK(pngs == 0);
}

TEST_CASE("cli: batch refine over directories aggregates metrics") {
    auto base = tmp_dir() / "batch";
    fs::remove_all(base);
    auto corpus = base / "corpus";
    CHECK(run_cli("synth --out " + corpus.string() + " --count 3 --seed 21") == 0);

    // Rearrange into per-kind directories.
    auto imgs = base / "images", masks = base / "masks", truths = base / "truths";
    fs::create_directories(imgs);
    fs::create_directories(masks);
    fs::create_directories(truths);
    for (int i = 0; i < 3; ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%04d.png", i);
        fs::copy_file(corpus / ("scene_" + std::string(buf)), imgs / buf);
        fs::copy_file(corpus / ("coarse_" + std::string(buf)), masks / buf);
        fs::copy_file(corpus / ("truth_" + std::string(buf)), truths / buf);
    }
    auto outdir = base / "refined";
    auto report = base / "report.json";
    CHECK(run_cli("refine " + imgs.string() + " " + masks.string() + " --truth " +
                  truths.string() + " --out " + outdir.string() + " --report " +
                  report.string()) == 0);
    json j = json::parse(slurp(report));
    CHECK(j["images"].size() == 3);
    CHECK(j.contains("aggregate_before"));
    CHECK(j.contains("aggregate_after"));
    for (int i = 0; i < 3; ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%04d.png", i);
        CHECK(fs::exists(outdir / buf));
    }
}

TEST_CASE("cli: config file values apply and flags override them") {
    auto d = tmp_dir();
    save_image(RgbImage(32, 32, {100, 100, 100}), (d / "cfg_scene.png").string());
    save_mask(BinaryMask(32, 32, false), (d / "cfg_mask.png").string());
    std::ofstream((d / "cfg.json").string())
        << R"({"erosion_radius": 5, "smooth_gradient": false})";

    auto report = d / "cfg_report.json";
    std::string base = "refine " + (d / "cfg_scene.png").string() + " " +
                       (d / "cfg_mask.png").string() + " --out " +
                       (d / "cfg_out.png").string() + " --config " +
                       (d / "cfg.json").string() + " --report " + report.string();
    CHECK(run_cli(base) == 0);
    json j = json::parse(slurp(report));
    CHECK(j["config"]["erosion_radius"] == 5);
    CHECK(j["config"]["smooth_gradient"] == false);
    CHECK(j["config"]["dilation_radius"] == 3);  // untouched default

    CHECK(run_cli(base + " --erosion-radius 2") == 0);
    j = json::parse(slurp(report));
    CHECK(j["config"]["erosion_radius"] == 2);
    CHECK(j["config"]["smooth_gradient"] == false);
}

TEST_CASE("cli: negative radii exit 2") {
    CHECK(run_cli("refine " + (kGolden / "scene.png").string() + " " +
                  (kGolden / "coarse.png").string() + " --out /tmp/neg.png" +
                  " --erosion-radius -1") == 2);
}

TEST_CASE("cli: evaluate flags an empty prediction but exits 0") {
    auto d = tmp_dir();
    save_mask(BinaryMask(16, 16, false), (d / "ev_pred.png").string());
    BinaryMask truth(16, 16);
    truth.set(3, 3, true);
    save_mask(truth, (d / "ev_truth.png").string());
    auto report = d / "ev_report.json";
    CHECK(run_cli("evaluate --pred " + (d / "ev_pred.png").string() + " --truth " +
                  (d / "ev_truth.png").string() + " --report " + report.string()) == 0);
    json j = json::parse(slurp(report));
    CHECK(j["micro"]["no_positive_prediction"] == true);
    CHECK(j["micro"]["precision"] == 0.0);
}

TEST_CASE("cli: batch refine skips undecodable images without failing") {
    auto base = tmp_dir() / "batch_bad";
    fs::remove_all(base);
    auto imgs = base / "images", masks = base / "masks";
    fs::create_directories(imgs);
    fs::create_directories(masks);
    save_image(RgbImage(24, 24, {120, 60, 40}), (imgs / "a.png").string());
    save_mask(BinaryMask(24, 24, true), (masks / "a.png").string());
    std::ofstream((imgs / "b.png").string()) << "not a png";
    save_mask(BinaryMask(24, 24, true), (masks / "b.png").string());

    auto outdir = base / "out";
    auto report = base / "report.json";
    CHECK(run_cli("refine " + imgs.string() + " " + masks.string() + " --out " +
                  outdir.string() + " --report " + report.string()) == 0);
    json j = json::parse(slurp(report));
    REQUIRE(j["images"].size() == 2);
    CHECK_FALSE(j["images"][0].contains("error"));
    CHECK(j["images"][1].contains("error"));
    CHECK(fs::exists(outdir / "a.png"));
    CHECK_FALSE(fs::exists(outdir / "b.png"));
}

TEST_CASE("cli: overlay paints zones onto the image") {
    auto d = tmp_dir();
    save_image(RgbImage(8, 8, {0, 0, 0}), (d / "ov_base.png").string());
    BinaryMask zone(8, 8);
    for (int x = 0; x < 8; ++x) zone.set(x, 0, true);
    save_mask(zone, (d / "ov_zone.png").string());
    auto out = d / "ov_out.png";
    CHECK(run_cli("overlay " + (d / "ov_base.png").string() + " --out " + out.string() +
                  " --true-fg " + (d / "ov_zone.png").string() + " --alpha 1.0") == 0);
    RgbImage img = load_image(out.string());
    CHECK(img.at(0, 0) == Rgb{0, 168, 0});
    CHECK(img.at(0, 1) == Rgb{0, 0, 0});
}
