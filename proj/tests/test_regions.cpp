#include <doctest.h>

#include "oracles.hpp"
#include "rustseg/regions.hpp"
#include "rustseg/rng.hpp"

using namespace rustseg;

TEST_CASE("diagonally touching pixels form one region") {
    BinaryMask m(4, 4);
    m.set(1, 1, true);
    m.set(2, 2, true);
    RegionSet rs = extract_regions(m);
    REQUIRE(rs.regions.size() == 1);
    CHECK(rs.regions[0].cardinality() == 2);
}

TEST_CASE("empty mask yields zero regions") {
    CHECK(extract_regions(BinaryMask(8, 8)).regions.empty());
}

TEST_CASE("component extraction matches the flood-fill oracle") {
    Pcg32 rng(515);
    for (int it = 0; it < 30; ++it) {
        BinaryMask m = it % 2 == 0 ? oracle::random_mask(rng, 64, 64, rng.range(10, 70))
                                   : oracle::random_blob_mask(rng, 64, 64);
        RegionSet rs = extract_regions(m);
        auto ref = oracle::ccl_bfs(m);

        std::int32_t ref_count = 0;
        for (auto l : ref) ref_count = std::max(ref_count, l);
        REQUIRE(rs.regions.size() == static_cast<std::size_t>(ref_count));

        // Both label in raster order of first pixel, so ids must agree.
        std::size_t covered = 0;
        for (const Region& r : rs.regions) {
            for (const auto& p : r.pixels) {
                CHECK(ref[static_cast<std::size_t>(p.y) * 64 + p.x] == r.id);
                CHECK(p.x >= r.min_x);
                CHECK(p.x <= r.max_x);
                CHECK(p.y >= r.min_y);
                CHECK(p.y <= r.max_y);
            }
            covered += r.cardinality();
        }
        CHECK(covered == m.count());
    }
}

TEST_CASE("extraction is deterministic") {
    Pcg32 rng(8181);
    BinaryMask m = oracle::random_blob_mask(rng, 40, 40);
    RegionSet a = extract_regions(m);
    RegionSet b = extract_regions(m);
    REQUIRE(a.regions.size() == b.regions.size());
    for (std::size_t i = 0; i < a.regions.size(); ++i) {
        CHECK(a.regions[i].id == b.regions[i].id);
        CHECK(a.regions[i].pixels == b.regions[i].pixels);
    }
}

TEST_CASE("partitioning a 5x5 block with square(1) elements") {
    BinaryMask m(9, 9);
    for (int y = 2; y <= 6; ++y)
        for (int x = 2; x <= 6; ++x) m.set(x, y, true);
    RegionSet rs = extract_regions(m);
    REQUIRE(rs.regions.size() == 1);

    auto se1 = make_se(SeShape::Square, 1);
    RegionPartition p = partition_region(rs.regions[0], 9, 9, se1, se1);
    CHECK_FALSE(p.degenerate);
    CHECK(p.true_fg.count() == 9);          // inner 3x3
    CHECK(p.fuzzy.count() == 16);           // boundary ring of the 5x5 block
    CHECK(p.extended_fuzzy.count() == 40);  // 7x7 dilation minus the 3x3 core
}

TEST_CASE("zero radii make the whole region the core") {
    BinaryMask m(8, 8);
    for (int y = 3; y <= 5; ++y)
        for (int x = 2; x <= 6; ++x) m.set(x, y, true);
    RegionSet rs = extract_regions(m);
    REQUIRE(rs.regions.size() == 1);
    RegionPartition p = partition_region(rs.regions[0], 8, 8, 0, 0);
    CHECK_FALSE(p.degenerate);
    CHECK(p.true_fg.count() == rs.regions[0].cardinality());
    CHECK(p.fuzzy.count() == 0);
    CHECK(p.extended_fuzzy.count() == 0);
}

TEST_CASE("a region thinner than the erosion element is degenerate") {
    BinaryMask m(6, 6);
    m.set(2, 2, true);
    m.set(3, 2, true);
    m.set(2, 3, true);
    m.set(3, 3, true);
    RegionSet rs = extract_regions(m);
    REQUIRE(rs.regions.size() == 1);
    RegionPartition p = partition_region(rs.regions[0], 6, 6, 1, 1);
    CHECK(p.degenerate);
    CHECK(p.true_fg.count() == 0);
}

TEST_CASE("partition zone relations hold on random regions and radii") {
    Pcg32 rng(31337);
    int checked = 0;
    while (checked < 60) {
        BinaryMask m = oracle::random_blob_mask(rng, 48, 48);
        RegionSet rs = extract_regions(m);
        for (const Region& r : rs.regions) {
            auto shape = std::array{SeShape::Disk, SeShape::Square,
                                    SeShape::Cross}[rng.bounded(3)];
            auto er = make_se(shape, rng.range(0, 4));
            auto dr = make_se(shape, rng.range(0, 4));
            RegionPartition p = partition_region(r, 48, 48, er, dr);

            BinaryMask rm = region_window_mask(r, p.win);
            CHECK(mask_or(p.true_fg, p.fuzzy) == rm);
            CHECK(mask_and(p.true_fg, p.fuzzy).count() == 0);
            CHECK(mask_subset(p.fuzzy, p.extended_fuzzy));
            CHECK(mask_and(p.true_fg, p.extended_fuzzy).count() == 0);
            CHECK(p.degenerate == (p.true_fg.count() == 0));
            ++checked;
        }
    }
}
