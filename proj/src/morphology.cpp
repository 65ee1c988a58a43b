#include "rustseg/morphology.hpp"

#include <algorithm>
#include <cstdlib>

namespace rustseg {

StructuringElement make_se(SeShape shape, int size) {
    if (size < 0)
        throw DimensionError("structuring element size must be >= 0");
    StructuringElement se;
    se.shape = shape;
    se.size = size;
    for (int dy = -size; dy <= size; ++dy) {
        int lo = 1, hi = 0;
        for (int dx = -size; dx <= size; ++dx) {
            bool inside = false;
            switch (shape) {
                case SeShape::Square: inside = true; break;
                case SeShape::Disk:   inside = dx * dx + dy * dy <= size * size; break;
                case SeShape::Cross:  inside = std::abs(dx) + std::abs(dy) <= size; break;
            }
            if (inside) {
                se.offsets.emplace_back(dx, dy);
                if (lo > hi) lo = dx;
                hi = dx;
            }
        }
        if (lo <= hi) {
            se.rows.push_back({dy, lo, hi});
            se.reach = std::max({se.reach, std::abs(dy), std::abs(lo), std::abs(hi)});
        }
    }
    return se;
}

namespace {

// Per-row prefix sums of the mask: P[y][x] = number of fg pixels in row y, cols [0,x).
std::vector<std::int32_t> row_prefix(const BinaryMask& m) {
    const int w = m.width(), h = m.height();
    std::vector<std::int32_t> pref(static_cast<std::size_t>(w + 1) * h);
    const auto& bits = m.bits();
    for (int y = 0; y < h; ++y) {
        std::int32_t* p = &pref[static_cast<std::size_t>(y) * (w + 1)];
        const std::uint8_t* row = &bits[static_cast<std::size_t>(y) * w];
        p[0] = 0;
        for (int x = 0; x < w; ++x) p[x + 1] = p[x] + row[x];
    }
    return pref;
}

}  // namespace

BinaryMask erode(const BinaryMask& mask, const StructuringElement& se) {
    const int w = mask.width(), h = mask.height();
    BinaryMask out(w, h);
    auto pref = row_prefix(mask);
    auto& bits = out.bits();
    for (int y = 0; y < h; ++y) {
        std::uint8_t* orow = &bits[static_cast<std::size_t>(y) * w];
        for (int x = 0; x < w; ++x) {
            bool fg = true;
            for (const auto& rs : se.rows) {
                int yy = y + rs.dy;
                int lo = x + rs.dx_lo, hi = x + rs.dx_hi;
                if (yy < 0 || yy >= h || lo < 0 || hi >= w) {
                    fg = false;
                    break;
                }
                const std::int32_t* p = &pref[static_cast<std::size_t>(yy) * (w + 1)];
                if (p[hi + 1] - p[lo] != hi - lo + 1) {
                    fg = false;
                    break;
                }
            }
            orow[x] = fg ? 1 : 0;
        }
    }
    return out;
}

BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se) {
    const int w = mask.width(), h = mask.height();
    BinaryMask out(w, h);
    auto pref = row_prefix(mask);
    auto& bits = out.bits();
    for (int y = 0; y < h; ++y) {
        std::uint8_t* orow = &bits[static_cast<std::size_t>(y) * w];
        for (int x = 0; x < w; ++x) {
            bool fg = false;
            for (const auto& rs : se.rows) {
                int yy = y + rs.dy;
                if (yy < 0 || yy >= h) continue;
                int lo = std::max(0, x + rs.dx_lo);
                int hi = std::min(w - 1, x + rs.dx_hi);
                if (lo > hi) continue;
                const std::int32_t* p = &pref[static_cast<std::size_t>(yy) * (w + 1)];
                if (p[hi + 1] - p[lo] > 0) {
                    fg = true;
                    break;
                }
            }
            orow[x] = fg ? 1 : 0;
        }
    }
    return out;
}

}  // namespace rustseg
