#include "rustseg/regions.hpp"

#include <algorithm>
#include <numeric>

namespace rustseg {

namespace {

std::int32_t uf_find(std::vector<std::int32_t>& parent, std::int32_t x) {
    std::int32_t root = x;
    while (parent[root] != root) root = parent[root];
    while (parent[x] != root) {
        std::int32_t next = parent[x];
        parent[x] = root;
        x = next;
    }
    return root;
}

void uf_union(std::vector<std::int32_t>& parent, std::int32_t a, std::int32_t b) {
    a = uf_find(parent, a);
    b = uf_find(parent, b);
    if (a == b) return;
    // Keep the smaller raster index as root so labels follow scan order.
    if (a < b) parent[b] = a; else parent[a] = b;
}

}  // namespace

RegionSet extract_regions(const BinaryMask& mask) {
    const int w = mask.width(), h = mask.height();
    const auto& bits = mask.bits();

    RegionSet rs;
    rs.width = w;
    rs.height = h;

    std::vector<std::int32_t> parent(bits.size());
    std::iota(parent.begin(), parent.end(), 0);

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (!bits[i]) continue;
            std::int32_t idx = static_cast<std::int32_t>(i);
            if (x > 0 && bits[i - 1]) uf_union(parent, idx, idx - 1);
            if (y > 0) {
                std::size_t up = i - w;
                if (bits[up]) uf_union(parent, idx, static_cast<std::int32_t>(up));
                if (x > 0 && bits[up - 1]) uf_union(parent, idx, static_cast<std::int32_t>(up - 1));
                if (x + 1 < w && bits[up + 1]) uf_union(parent, idx, static_cast<std::int32_t>(up + 1));
            }
        }
    }

    // Second pass: number roots in raster order of first occurrence, collect pixels.
    std::vector<std::int32_t> label(bits.size(), 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (!bits[i]) continue;
            std::int32_t root = uf_find(parent, static_cast<std::int32_t>(i));
            std::int32_t& lab = label[root];
            if (lab == 0) {
                lab = static_cast<std::int32_t>(rs.regions.size()) + 1;
                Region r;
                r.id = lab;
                r.min_x = r.max_x = x;
                r.min_y = r.max_y = y;
                rs.regions.push_back(std::move(r));
            }
            Region& r = rs.regions[lab - 1];
            r.pixels.push_back({x, y});
            r.min_x = std::min(r.min_x, x);
            r.max_x = std::max(r.max_x, x);
            r.min_y = std::min(r.min_y, y);
            r.max_y = std::max(r.max_y, y);
        }
    }
    return rs;
}

BinaryMask region_window_mask(const Region& region, const Window& win) {
    BinaryMask m(win.width, win.height);
    auto& bits = m.bits();
    for (const auto& p : region.pixels)
        bits[win.index(p.x, p.y)] = 1;
    return m;
}

RegionPartition partition_region(const Region& region, int image_width, int image_height,
                                 const StructuringElement& erode_se,
                                 const StructuringElement& dilate_se) {
    const int margin = std::max(erode_se.reach, dilate_se.reach);

    Window win;
    win.x0 = std::max(0, region.min_x - margin);
    win.y0 = std::max(0, region.min_y - margin);
    win.width = std::min(image_width - 1, region.max_x + margin) - win.x0 + 1;
    win.height = std::min(image_height - 1, region.max_y + margin) - win.y0 + 1;

    BinaryMask rm = region_window_mask(region, win);
    // Window-local morphology equals full-raster morphology of the region
    // mask: everything beyond the window is non-region, i.e. background, and
    // window edges that coincide with image edges keep the out-of-image
    // convention.
    BinaryMask eroded = erode(rm, erode_se);
    BinaryMask dilated = dilate(rm, dilate_se);

    RegionPartition part;
    part.region_id = region.id;
    part.win = win;
    part.fuzzy = mask_minus(rm, eroded);
    part.extended_fuzzy = mask_minus(dilated, eroded);
    part.true_fg = std::move(eroded);
    part.degenerate = part.true_fg.count() == 0;
    return part;
}

RegionPartition partition_region(const Region& region, int image_width, int image_height,
                                 int erosion_radius, int dilation_radius) {
    return partition_region(region, image_width, image_height,
                            make_se(SeShape::Disk, erosion_radius),
                            make_se(SeShape::Disk, dilation_radius));
}

}  // namespace rustseg
