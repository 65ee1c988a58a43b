#include "rustseg/projection.hpp"

namespace rustseg {

RefinedRegion project_segments(const SegmentMap& segments, const RegionPartition& partition) {
    if (!(segments.win == partition.win) ||
        segments.labels.size() != partition.true_fg.bits().size())
        throw DimensionError("project_segments: segment map does not match partition window");

    std::vector<std::uint8_t> accepted(static_cast<std::size_t>(segments.segment_count) + 1, 0);
    const auto& core = partition.true_fg.bits();
    for (std::size_t i = 0; i < core.size(); ++i)
        if (core[i] && segments.labels[i] > 0)
            accepted[segments.labels[i]] = 1;

    RefinedRegion out;
    out.region_id = partition.region_id;
    out.win = partition.win;
    for (int s = 1; s <= segments.segment_count; ++s)
        if (accepted[s]) out.accepted_segments.push_back(s);

    out.accepted_pixels = BinaryMask(partition.win.width, partition.win.height);
    auto& acc = out.accepted_pixels.bits();
    for (std::size_t i = 0; i < segments.labels.size(); ++i)
        if (segments.labels[i] > 0 && accepted[segments.labels[i]])
            acc[i] = 1;

    out.final_pixels = mask_or(partition.true_fg, out.accepted_pixels);
    return out;
}

BinaryMask assemble_final_mask(const std::vector<RefinedRegion>& refined,
                               const std::vector<const Region*>& passthrough,
                               int width, int height) {
    BinaryMask out(width, height);
    for (const auto& rr : refined) {
        const auto& bits = rr.final_pixels.bits();
        for (int wy = 0; wy < rr.win.height; ++wy) {
            const int y = rr.win.y0 + wy;
            for (int wx = 0; wx < rr.win.width; ++wx)
                if (bits[static_cast<std::size_t>(wy) * rr.win.width + wx])
                    out.set(rr.win.x0 + wx, y, true);
        }
    }
    for (const Region* r : passthrough)
        for (const auto& p : r->pixels)
            out.set(p.x, p.y, true);
    return out;
}

}  // namespace rustseg
