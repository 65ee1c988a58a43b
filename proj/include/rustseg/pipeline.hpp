#pragma once

#include <cstdint>
#include <vector>

#include "rustseg/overlay.hpp"
#include "rustseg/projection.hpp"
#include "rustseg/raster.hpp"
#include "rustseg/regions.hpp"

namespace rustseg {

struct PipelineConfig {
    int erosion_radius = 3;
    int dilation_radius = 3;
    bool smooth_gradient = true;
    int mask_threshold = 128;
    std::uint64_t seed = 0;
};

struct RegionStats {
    int id = 0;
    std::size_t pixels = 0;
    int segments = 0;   // M_j, 0 for degenerate regions
    int accepted = 0;   // accepted segment count
    bool degenerate = false;
};

struct RefineResult {
    BinaryMask refined;
    int region_count = 0;
    int degenerate_count = 0;
    std::vector<RegionStats> regions;
    // Wall-clock stage timings; the only nondeterministic outputs.
    double ms_regions = 0, ms_watershed = 0, ms_projection = 0, ms_total = 0;
};

// Full refinement chain: extract regions, partition each with disk SEs,
// watershed the extended mask, project segments, assemble the final mask.
// Degenerate regions (core emptied by erosion) pass through unrefined.
RefineResult refine_mask(const RgbImage& image, const BinaryMask& coarse,
                         const PipelineConfig& config);

// Overlay zones of a refine run: all true-foreground cores, all fuzzy bands,
// and the 1-px contour of the refined mask.
std::vector<std::pair<BinaryMask, ZoneKind>> refine_zones(const RgbImage& image,
                                                          const BinaryMask& coarse,
                                                          const BinaryMask& refined,
                                                          const PipelineConfig& config);

}  // namespace rustseg
