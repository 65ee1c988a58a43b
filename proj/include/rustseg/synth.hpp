#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "rustseg/raster.hpp"

namespace rustseg {

struct PaletteEntry {
    std::array<int, 3> mean;
    int jitter;  // per-channel uniform jitter amplitude
};

// Synthetic corrosion scene: irregular blobs (unions of jittered axis-aligned
// ellipses) of rust texture over a steel-like background. All geometry and
// noise use integer PCG32 draws, so outputs are bit-identical everywhere.
struct SynthSpec {
    int width = 256;
    int height = 256;
    int blob_count_min = 3;
    int blob_count_max = 6;
    int blob_scale_min = 18;  // nominal radius, pixels
    int blob_scale_max = 44;
    std::vector<PaletteEntry> rust_palette = {
        {{152, 72, 42}, 12}, {{128, 62, 36}, 12}, {{174, 92, 52}, 12}};
    std::vector<PaletteEntry> background_palette = {
        {{112, 118, 128}, 10}, {{94, 102, 112}, 10}, {{138, 144, 152}, 10}};
    int texture_noise = 6;  // extra per-channel uniform noise on every pixel
    std::uint64_t seed = 1;
};

// Simulates coarse deep-model output: nearest-neighbor down/up-scaling
// quantizes the contours, then pixels within the jitter band around the true
// boundary are randomly flipped. Pixels farther from the boundary are never
// touched.
struct DegradeSpec {
    int downscale = 8;
    int boundary_jitter = 3;   // Chebyshev band half-width, pixels
    double flip_rate = 0.25;   // in [0,1)
    std::uint64_t seed = 1;
};

std::pair<RgbImage, BinaryMask> synth_generate(const SynthSpec& spec);

BinaryMask degrade_mask(const BinaryMask& truth, const DegradeSpec& spec);

// HSV color-threshold detector (non-deep baseline). Hue in degrees [0,360);
// a range with h_lo > h_hi wraps around 0. Followed by an opening with
// disk(1) to drop speckle (erosion treats out-of-image as foreground so a
// full-frame detection survives the opening).
struct HsvRange {
    double h_lo = 340.0, h_hi = 50.0;
    double s_lo = 0.25, s_hi = 1.0;
    double v_lo = 0.12, v_hi = 0.95;
};

BinaryMask baseline_detect(const RgbImage& image, const HsvRange& thresholds);

// Threshold stage of baseline_detect without the opening (pixel-independent).
BinaryMask hsv_threshold(const RgbImage& image, const HsvRange& thresholds);

}  // namespace rustseg
