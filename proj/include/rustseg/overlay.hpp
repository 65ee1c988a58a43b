#pragma once

#include <array>
#include <utility>
#include <vector>

#include "rustseg/raster.hpp"

namespace rustseg {

enum class ZoneKind { TrueForeground = 0, Fuzzy = 1, RefinedContour = 2 };

struct OverlaySpec {
    // Fill colors indexed by ZoneKind: high-confidence green, fuzzy yellow,
    // refined contour blue.
    std::array<Rgb, 3> colors = {Rgb{0, 168, 0}, Rgb{235, 200, 0}, Rgb{40, 90, 255}};
    double alpha = 0.5;
};

// Alpha-blends each zone over the image, later zones painting over earlier
// ones. Per channel: out = round(alpha * zone + (1 - alpha) * base),
// round-half-up.
RgbImage render_overlay(const RgbImage& image,
                        const std::vector<std::pair<BinaryMask, ZoneKind>>& zones,
                        const OverlaySpec& spec);

}  // namespace rustseg
