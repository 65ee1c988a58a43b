#pragma once

#include <cstdint>
#include <vector>

#include "rustseg/raster.hpp"
#include "rustseg/regions.hpp"

namespace rustseg {

struct DegeneratePartitionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Non-negative gradient values over a windowed domain. Values outside the
// domain are zero and meaningless.
struct GradientField {
    Window win;
    std::vector<float> values;        // win.width * win.height, row-major
    std::vector<std::uint8_t> domain; // same layout, 0/1
};

// Watershed label raster: 0 = outside domain, 1..segment_count inside.
struct SegmentMap {
    Window win;
    std::vector<std::int32_t> labels;
    int segment_count = 0;
};

// Per domain pixel: max over the three channels of the Sobel magnitude, with
// replicate padding at image borders. `domain` is window-local; gradient
// probes read the underlying image, so window edges are not treated as image
// edges.
GradientField color_gradient(const RgbImage& image, const Window& win,
                             const std::vector<std::uint8_t>& domain);

// 3x3 box filter restricted to in-domain pixels (mean over the available
// neighbors including self). Bounds the marker count on textured input.
void box_smooth(GradientField& g);

// Markers are 8-connected components of domain pixels whose gradient is <=
// every in-domain 8-neighbor's gradient (regional-minima plateaus), labeled
// in raster-scan order of their first pixel.
SegmentMap find_markers(const GradientField& g);

// Priority-flood: marker pixels seed a queue keyed by (gradient, insertion
// sequence); pop the lowest key, fix its label, push unlabeled in-domain
// 8-neighbors keyed by their own gradient. Ties break on the sequence number,
// so the result is deterministic; every domain pixel ends up labeled (no
// watershed-line pixels).
SegmentMap watershed_flood(const GradientField& g, const SegmentMap& markers);

// Gradient + markers + flood over domain = R^T u R^F+.
// Throws DegeneratePartitionError when the partition has an empty core.
SegmentMap segment_extended_region(const RgbImage& image, const RegionPartition& partition,
                                   bool smooth_gradient = true);

}  // namespace rustseg
