#pragma once

#include <utility>
#include <vector>

#include "rustseg/raster.hpp"

namespace rustseg {

enum class SeShape { Square, Disk, Cross };

// Point-symmetric structuring element containing the origin. Offsets are
// row-convex for all three shapes, which the erode/dilate fast path relies on.
struct StructuringElement {
    SeShape shape = SeShape::Disk;
    int size = 0;
    std::vector<std::pair<int, int>> offsets;  // (dx, dy)

    struct RowSpan {
        int dy;
        int dx_lo;
        int dx_hi;
    };
    std::vector<RowSpan> rows;
    int reach = 0;  // max |dx|, |dy| over all offsets
};

// square(k): max(|dx|,|dy|) <= k; disk(r): dx^2+dy^2 <= r^2; cross(r): |dx|+|dy| <= r.
StructuringElement make_se(SeShape shape, int size);

// Output pixel is foreground iff every p+offset is in-bounds and foreground.
// Out-of-image counts as background.
BinaryMask erode(const BinaryMask& mask, const StructuringElement& se);

// Output pixel is foreground iff some p+offset is in-bounds and foreground.
BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se);

}  // namespace rustseg
