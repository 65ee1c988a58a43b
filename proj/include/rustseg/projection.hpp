#pragma once

#include <vector>

#include "rustseg/regions.hpp"
#include "rustseg/watershed.hpp"

namespace rustseg {

// Result of projecting one region's watershed segments onto its core.
struct RefinedRegion {
    int region_id = 0;
    std::vector<int> accepted_segments;  // ascending segment ids
    Window win;
    BinaryMask accepted_pixels;  // union of accepted segments
    BinaryMask final_pixels;     // true_fg u accepted_pixels
};

// A segment is accepted iff it shares at least one pixel with the
// true-foreground core. The final region keeps the core unconditionally:
// final = R^T u union(accepted segments).
RefinedRegion project_segments(const SegmentMap& segments, const RegionPartition& partition);

// Pixel-wise union of all refined regions plus the degenerate passthrough
// regions, on a blank width x height mask.
BinaryMask assemble_final_mask(const std::vector<RefinedRegion>& refined,
                               const std::vector<const Region*>& passthrough,
                               int width, int height);

}  // namespace rustseg
