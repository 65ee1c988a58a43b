#include "rustseg/pipeline.hpp"

#include <chrono>

#include "rustseg/watershed.hpp"

namespace rustseg {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

RefineResult refine_mask(const RgbImage& image, const BinaryMask& coarse,
                         const PipelineConfig& config) {
    require_same_dims(image, coarse, "refine_mask");

    const auto t_start = std::chrono::steady_clock::now();
    RefineResult res;

    auto t0 = std::chrono::steady_clock::now();
    RegionSet rs = extract_regions(coarse);
    res.region_count = static_cast<int>(rs.regions.size());

    const StructuringElement erode_se = make_se(SeShape::Disk, config.erosion_radius);
    const StructuringElement dilate_se = make_se(SeShape::Disk, config.dilation_radius);

    std::vector<RegionPartition> parts;
    std::vector<const Region*> passthrough;
    parts.reserve(rs.regions.size());
    for (const Region& r : rs.regions) {
        RegionPartition p = partition_region(r, coarse.width(), coarse.height(),
                                             erode_se, dilate_se);
        if (p.degenerate) {
            passthrough.push_back(&r);
            res.regions.push_back({r.id, r.cardinality(), 0, 0, true});
            ++res.degenerate_count;
        } else {
            res.regions.push_back({r.id, r.cardinality(), 0, 0, false});
        }
        parts.push_back(std::move(p));
    }
    res.ms_regions = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    std::vector<SegmentMap> segmaps(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].degenerate) continue;
        segmaps[i] = segment_extended_region(image, parts[i], config.smooth_gradient);
        res.regions[i].segments = segmaps[i].segment_count;
    }
    res.ms_watershed = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    std::vector<RefinedRegion> refined;
    refined.reserve(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].degenerate) continue;
        refined.push_back(project_segments(segmaps[i], parts[i]));
        res.regions[i].accepted = static_cast<int>(refined.back().accepted_segments.size());
    }
    res.refined = assemble_final_mask(refined, passthrough, coarse.width(), coarse.height());
    res.ms_projection = ms_since(t0);

    res.ms_total = ms_since(t_start);
    return res;
}

std::vector<std::pair<BinaryMask, ZoneKind>> refine_zones(const RgbImage& image,
                                                          const BinaryMask& coarse,
                                                          const BinaryMask& refined,
                                                          const PipelineConfig& config) {
    require_same_dims(image, coarse, "refine_zones");

    const StructuringElement erode_se = make_se(SeShape::Disk, config.erosion_radius);
    const StructuringElement dilate_se = make_se(SeShape::Disk, config.dilation_radius);

    BinaryMask cores(coarse.width(), coarse.height());
    BinaryMask fuzzy(coarse.width(), coarse.height());
    RegionSet rs = extract_regions(coarse);
    for (const Region& r : rs.regions) {
        RegionPartition p = partition_region(r, coarse.width(), coarse.height(),
                                             erode_se, dilate_se);
        for (int wy = 0; wy < p.win.height; ++wy)
            for (int wx = 0; wx < p.win.width; ++wx) {
                std::size_t i = static_cast<std::size_t>(wy) * p.win.width + wx;
                const int x = p.win.x0 + wx, y = p.win.y0 + wy;
                if (p.true_fg.bits()[i]) cores.set(x, y, true);
                if (p.fuzzy.bits()[i] || p.extended_fuzzy.bits()[i]) fuzzy.set(x, y, true);
            }
    }

    return {
        {std::move(fuzzy), ZoneKind::Fuzzy},
        {std::move(cores), ZoneKind::TrueForeground},
        {mask_boundary(refined), ZoneKind::RefinedContour},
    };
}

}  // namespace rustseg
