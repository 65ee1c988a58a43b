#include "rustseg/synth.hpp"

#include <algorithm>
#include <cmath>

#include "rustseg/morphology.hpp"
#include "rustseg/rng.hpp"

namespace rustseg {

namespace {

// Separate PCG32 streams so scene and degradation draws never interleave.
constexpr std::uint64_t kSynthStream = 0x2545f4914f6cdd1dULL;
constexpr std::uint64_t kDegradeStream = 0x9e3779b97f4a7c15ULL;

struct Ellipse {
    int cx, cy, a, b;

    bool contains(int x, int y) const {
        std::int64_t dx = x - cx, dy = y - cy;
        std::int64_t aa = a, bb = b;
        return dx * dx * bb * bb + dy * dy * aa * aa <= aa * aa * bb * bb;
    }
};

int clamp_u8(int v) { return std::clamp(v, 0, 255); }

}  // namespace

std::pair<RgbImage, BinaryMask> synth_generate(const SynthSpec& spec) {
    if (spec.width < 32 || spec.height < 32)
        throw DimensionError("synth_generate: dims must be at least 32x32");
    if (spec.blob_count_min > spec.blob_count_max ||
        spec.blob_scale_min > spec.blob_scale_max || spec.blob_scale_min < 2 ||
        spec.rust_palette.empty() || spec.background_palette.empty())
        throw std::invalid_argument("synth_generate: bad spec ranges");

    Pcg32 rng(spec.seed, kSynthStream);
    const int w = spec.width, h = spec.height;

    // Blob geometry. Each blob is a union of 2..4 overlapping ellipses around
    // a common center: axes in [s/2, s], center offsets within s/4, which
    // keeps the union inside a radius-1.5s disk.
    const int nblobs = rng.range(spec.blob_count_min, spec.blob_count_max);
    std::vector<std::vector<Ellipse>> blobs(nblobs);
    std::vector<int> blob_palette(nblobs);
    for (int k = 0; k < nblobs; ++k) {
        const int s = rng.range(spec.blob_scale_min, spec.blob_scale_max);
        const int mx = std::min(3 * s / 2, (w - 1) / 2);
        const int my = std::min(3 * s / 2, (h - 1) / 2);
        const int cx = rng.range(mx, w - 1 - mx);
        const int cy = rng.range(my, h - 1 - my);
        const int nell = rng.range(2, 4);
        for (int e = 0; e < nell; ++e) {
            Ellipse el;
            el.cx = cx + rng.range(-s / 4, s / 4);
            el.cy = cy + rng.range(-s / 4, s / 4);
            el.a = rng.range(std::max(1, s / 2), s);
            el.b = rng.range(std::max(1, s / 2), s);
            blobs[k].push_back(el);
        }
        blob_palette[k] = static_cast<int>(rng.bounded(
            static_cast<std::uint32_t>(spec.rust_palette.size())));
    }

    // Ownership raster: 0 = background, k+1 = blob k (later blobs on top).
    std::vector<std::int32_t> owner(static_cast<std::size_t>(w) * h, 0);
    BinaryMask truth(w, h);
    for (int k = 0; k < nblobs; ++k) {
        for (const Ellipse& el : blobs[k]) {
            const int x0 = std::max(0, el.cx - el.a), x1 = std::min(w - 1, el.cx + el.a);
            const int y0 = std::max(0, el.cy - el.b), y1 = std::min(h - 1, el.cy + el.b);
            for (int y = y0; y <= y1; ++y)
                for (int x = x0; x <= x1; ++x)
                    if (el.contains(x, y)) {
                        owner[static_cast<std::size_t>(y) * w + x] = k + 1;
                        truth.set(x, y, true);
                    }
        }
    }

    const int bg_entry = static_cast<int>(rng.bounded(
        static_cast<std::uint32_t>(spec.background_palette.size())));

    // Texture pass: fixed six draws per pixel in raster order.
    RgbImage image(w, h);
    for (std::size_t i = 0; i < owner.size(); ++i) {
        const PaletteEntry& pal =
            owner[i] ? spec.rust_palette[blob_palette[owner[i] - 1]]
                     : spec.background_palette[bg_entry];
        Rgb& px = image.data()[i];
        std::uint8_t* out = &px.r;
        for (int c = 0; c < 3; ++c) {
            int v = pal.mean[c] + rng.range(-pal.jitter, pal.jitter) +
                    rng.range(-spec.texture_noise, spec.texture_noise);
            out[c] = static_cast<std::uint8_t>(clamp_u8(v));
        }
    }
    return {std::move(image), std::move(truth)};
}

BinaryMask degrade_mask(const BinaryMask& truth, const DegradeSpec& spec) {
    if (spec.downscale < 1)
        throw std::invalid_argument("degrade_mask: downscale must be >= 1");
    if (!(spec.flip_rate >= 0.0 && spec.flip_rate < 1.0))
        throw std::invalid_argument("degrade_mask: flip rate must be in [0,1)");

    const int w = truth.width(), h = truth.height();
    const int f = spec.downscale;

    BinaryMask out(w, h);
    if (f == 1) {
        out = truth;
    } else {
        // Nearest-neighbor down/up-scaling collapses each f x f block to the
        // value of its anchor pixel.
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                out.set(x, y, truth.get(x / f * f, y / f * f));
    }

    if (spec.boundary_jitter >= 0 && spec.flip_rate > 0.0) {
        BinaryMask band = dilate(mask_boundary(truth),
                                 make_se(SeShape::Square, spec.boundary_jitter));
        const auto threshold = static_cast<std::uint64_t>(
            spec.flip_rate * 4294967296.0);
        Pcg32 rng(spec.seed, kDegradeStream);
        auto& bits = out.bits();
        const auto& bandbits = band.bits();
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (!bandbits[i]) continue;
            if (rng.next() < threshold) bits[i] ^= 1;
        }
    }
    return out;
}

namespace {

bool hue_in_range(double hue, double lo, double hi) {
    if (lo <= hi) return hue >= lo && hue <= hi;
    return hue >= lo || hue <= hi;  // wrapped range
}

}  // namespace

BinaryMask hsv_threshold(const RgbImage& image, const HsvRange& t) {
    BinaryMask out(image.width(), image.height());
    const auto& px = image.data();
    auto& bits = out.bits();
    for (std::size_t i = 0; i < px.size(); ++i) {
        const double r = px[i].r, g = px[i].g, b = px[i].b;
        const double mx = std::max({r, g, b});
        const double mn = std::min({r, g, b});
        const double v = mx / 255.0;
        const double delta = mx - mn;
        const double s = mx > 0.0 ? delta / mx : 0.0;
        double hue = 0.0;
        if (delta > 0.0) {
            if (mx == r)      hue = 60.0 * ((g - b) / delta);
            else if (mx == g) hue = 60.0 * ((b - r) / delta + 2.0);
            else              hue = 60.0 * ((r - g) / delta + 4.0);
            if (hue < 0.0) hue += 360.0;
        }
        bits[i] = (hue_in_range(hue, t.h_lo, t.h_hi) &&
                   s >= t.s_lo && s <= t.s_hi &&
                   v >= t.v_lo && v <= t.v_hi)
                      ? 1
                      : 0;
    }
    return out;
}

BinaryMask baseline_detect(const RgbImage& image, const HsvRange& thresholds) {
    BinaryMask m = hsv_threshold(image, thresholds);

    // Opening with disk(1); the erosion half probes in-bounds neighbors only
    // so a detection reaching the frame keeps its frame pixels.
    const int w = m.width(), h = m.height();
    BinaryMask eroded(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!m.get(x, y)) continue;
            bool keep = (x == 0 || m.get(x - 1, y)) && (x == w - 1 || m.get(x + 1, y)) &&
                        (y == 0 || m.get(x, y - 1)) && (y == h - 1 || m.get(x, y + 1));
            eroded.set(x, y, keep);
        }
    return dilate(eroded, make_se(SeShape::Disk, 1));
}

}  // namespace rustseg
