#pragma once

#include <vector>

#include "rustseg/morphology.hpp"
#include "rustseg/raster.hpp"

namespace rustseg {

// Axis-aligned raster window, used to keep per-region work local.
struct Window {
    int x0 = 0;
    int y0 = 0;
    int width = 0;
    int height = 0;

    bool contains(int x, int y) const {
        return x >= x0 && y >= y0 && x < x0 + width && y < y0 + height;
    }
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y - y0) * width + (x - x0);
    }
    friend bool operator==(const Window&, const Window&) = default;
};

// One 8-connected foreground component. Pixels are in raster-scan order.
struct Region {
    int id = 0;
    std::vector<PixelCoord> pixels;
    int min_x = 0, min_y = 0, max_x = 0, max_y = 0;

    std::size_t cardinality() const { return pixels.size(); }
};

struct RegionSet {
    int width = 0;
    int height = 0;
    std::vector<Region> regions;
};

// Zone masks share one window; each is a window-sized BinaryMask.
struct RegionPartition {
    int region_id = 0;
    bool degenerate = false;  // erosion emptied the true-foreground core
    Window win;
    BinaryMask true_fg;         // R^T
    BinaryMask fuzzy;           // R^F  = R_j \ R^T
    BinaryMask extended_fuzzy;  // R^F+ = dilate(R_j) \ R^T
};

// Maximal 8-connected foreground components, ids assigned in raster-scan
// order of each component's first pixel.
RegionSet extract_regions(const BinaryMask& mask);

// Erode/dilate the region on its own window (clamped to the image) and split
// into true-foreground, fuzzy, and extended-fuzzy zones.
RegionPartition partition_region(const Region& region, int image_width, int image_height,
                                 const StructuringElement& erode_se,
                                 const StructuringElement& dilate_se);

// Convenience: disk SEs of the given radii.
RegionPartition partition_region(const Region& region, int image_width, int image_height,
                                 int erosion_radius, int dilation_radius);

// Region rasterized into the given window.
BinaryMask region_window_mask(const Region& region, const Window& win);

}  // namespace rustseg
