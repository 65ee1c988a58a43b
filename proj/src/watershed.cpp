#include "rustseg/watershed.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace rustseg {

namespace {

constexpr int kNeighbors8[8][2] = {
    {-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}};

}  // namespace

GradientField color_gradient(const RgbImage& image, const Window& win,
                             const std::vector<std::uint8_t>& domain) {
    if (win.width < 1 || win.height < 1 ||
        domain.size() != static_cast<std::size_t>(win.width) * win.height)
        throw DimensionError("color_gradient: domain does not match window");
    if (win.x0 < 0 || win.y0 < 0 || win.x0 + win.width > image.width() ||
        win.y0 + win.height > image.height())
        throw DimensionError("color_gradient: window exceeds image");

    GradientField g;
    g.win = win;
    g.domain = domain;
    g.values.assign(domain.size(), 0.0f);

    const int iw = image.width(), ih = image.height();
    auto clamp_px = [&](int x, int y) -> const Rgb& {
        x = std::clamp(x, 0, iw - 1);
        y = std::clamp(y, 0, ih - 1);
        return image.at(x, y);
    };

    for (int wy = 0; wy < win.height; ++wy) {
        for (int wx = 0; wx < win.width; ++wx) {
            std::size_t i = static_cast<std::size_t>(wy) * win.width + wx;
            if (!domain[i]) continue;
            const int x = win.x0 + wx, y = win.y0 + wy;

            int ch[3][3][3];  // [row][col][channel]
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    const Rgb& p = clamp_px(x + dx, y + dy);
                    ch[dy + 1][dx + 1][0] = p.r;
                    ch[dy + 1][dx + 1][1] = p.g;
                    ch[dy + 1][dx + 1][2] = p.b;
                }

            double best = 0.0;
            for (int c = 0; c < 3; ++c) {
                int gx = (ch[0][2][c] + 2 * ch[1][2][c] + ch[2][2][c]) -
                         (ch[0][0][c] + 2 * ch[1][0][c] + ch[2][0][c]);
                int gy = (ch[2][0][c] + 2 * ch[2][1][c] + ch[2][2][c]) -
                         (ch[0][0][c] + 2 * ch[0][1][c] + ch[0][2][c]);
                double mag = std::sqrt(static_cast<double>(gx) * gx +
                                       static_cast<double>(gy) * gy);
                best = std::max(best, mag);
            }
            g.values[i] = static_cast<float>(best);
        }
    }
    return g;
}

void box_smooth(GradientField& g) {
    const int w = g.win.width, h = g.win.height;
    std::vector<float> out(g.values.size(), 0.0f);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (!g.domain[i]) continue;
            double sum = 0.0;
            int n = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                int yy = y + dy;
                if (yy < 0 || yy >= h) continue;
                for (int dx = -1; dx <= 1; ++dx) {
                    int xx = x + dx;
                    if (xx < 0 || xx >= w) continue;
                    std::size_t j = static_cast<std::size_t>(yy) * w + xx;
                    if (!g.domain[j]) continue;
                    sum += g.values[j];
                    ++n;
                }
            }
            out[i] = static_cast<float>(sum / n);
        }
    }
    g.values = std::move(out);
}

SegmentMap find_markers(const GradientField& g) {
    const int w = g.win.width, h = g.win.height;
    std::vector<std::uint8_t> is_min(g.values.size(), 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (!g.domain[i]) continue;
            bool ok = true;
            for (const auto& d : kNeighbors8) {
                int xx = x + d[0], yy = y + d[1];
                if (xx < 0 || yy < 0 || xx >= w || yy >= h) continue;
                std::size_t j = static_cast<std::size_t>(yy) * w + xx;
                if (g.domain[j] && g.values[j] < g.values[i]) {
                    ok = false;
                    break;
                }
            }
            if (ok) is_min[i] = 1;
        }
    }

    // Label minima plateaus by BFS, raster order of first pixel.
    SegmentMap m;
    m.win = g.win;
    m.labels.assign(g.values.size(), 0);
    std::vector<std::size_t> stack;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (!is_min[i] || m.labels[i] != 0) continue;
            ++m.segment_count;
            m.labels[i] = m.segment_count;
            stack.push_back(i);
            while (!stack.empty()) {
                std::size_t cur = stack.back();
                stack.pop_back();
                int cx = static_cast<int>(cur % w), cy = static_cast<int>(cur / w);
                for (const auto& d : kNeighbors8) {
                    int xx = cx + d[0], yy = cy + d[1];
                    if (xx < 0 || yy < 0 || xx >= w || yy >= h) continue;
                    std::size_t j = static_cast<std::size_t>(yy) * w + xx;
                    if (is_min[j] && m.labels[j] == 0) {
                        m.labels[j] = m.segment_count;
                        stack.push_back(j);
                    }
                }
            }
        }
    }
    return m;
}

namespace {

struct FloodEntry {
    float grad;
    std::uint32_t seq;
    std::uint32_t idx;
    std::int32_t label;
};

struct FloodEntryGreater {
    bool operator()(const FloodEntry& a, const FloodEntry& b) const {
        if (a.grad != b.grad) return a.grad > b.grad;
        return a.seq > b.seq;
    }
};

}  // namespace

SegmentMap watershed_flood(const GradientField& g, const SegmentMap& markers) {
    if (markers.labels.size() != g.values.size() || !(markers.win == g.win))
        throw DimensionError("watershed_flood: markers do not match gradient");

    const int w = g.win.width, h = g.win.height;
    SegmentMap out;
    out.win = g.win;
    out.labels = markers.labels;
    out.segment_count = markers.segment_count;

    std::priority_queue<FloodEntry, std::vector<FloodEntry>, FloodEntryGreater> queue;
    std::vector<std::uint8_t> queued(g.values.size(), 0);
    std::uint32_t seq = 0;

    // A pixel is pushed at most once. All queue entries for a pixel would
    // share its own gradient as key, so the earliest insertion wins anyway;
    // the flag just keeps the queue linear in the domain size.
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (out.labels[i] > 0) {
                queue.push({g.values[i], seq++, static_cast<std::uint32_t>(i), out.labels[i]});
                queued[i] = 1;
            }
        }

    while (!queue.empty()) {
        FloodEntry e = queue.top();
        queue.pop();
        std::size_t i = e.idx;
        if (out.labels[i] == 0) out.labels[i] = e.label;
        const std::int32_t label = out.labels[i];
        int x = static_cast<int>(i % w), y = static_cast<int>(i / w);
        for (const auto& d : kNeighbors8) {
            int xx = x + d[0], yy = y + d[1];
            if (xx < 0 || yy < 0 || xx >= w || yy >= h) continue;
            std::size_t j = static_cast<std::size_t>(yy) * w + xx;
            if (!g.domain[j] || queued[j] || out.labels[j] != 0) continue;
            queue.push({g.values[j], seq++, static_cast<std::uint32_t>(j), label});
            queued[j] = 1;
        }
    }
    return out;
}

SegmentMap segment_extended_region(const RgbImage& image, const RegionPartition& partition,
                                   bool smooth_gradient) {
    if (partition.degenerate)
        throw DegeneratePartitionError("region partition has an empty true-foreground core");

    const BinaryMask domain_mask = mask_or(partition.true_fg, partition.extended_fuzzy);
    GradientField g = color_gradient(image, partition.win, domain_mask.bits());
    if (smooth_gradient) box_smooth(g);
    SegmentMap markers = find_markers(g);
    return watershed_flood(g, markers);
}

}  // namespace rustseg
