#pragma once

#include <cstdint>
#include <vector>

#include "rustseg/raster.hpp"

namespace rustseg {

// Pixel confusion counts and derived scores. Metrics with a zero denominator
// are reported as 0 with the matching degenerate flag set.
struct MetricsReport {
    std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;
    double precision = 0.0, recall = 0.0, f1 = 0.0, iou = 0.0;
    bool no_positive_prediction = false;
    bool no_positive_truth = false;
};

// Micro = pooled confusion counts; macro = unweighted mean of per-image
// metrics over images that have positive ground truth.
struct AggregateReport {
    MetricsReport micro;
    double macro_precision = 0.0, macro_recall = 0.0, macro_f1 = 0.0, macro_iou = 0.0;
    int macro_images = 0;  // images contributing to the macro means
};

MetricsReport metrics_from_counts(std::int64_t tp, std::int64_t fp,
                                  std::int64_t fn, std::int64_t tn);

MetricsReport evaluate(const BinaryMask& pred, const BinaryMask& truth);

AggregateReport aggregate(const std::vector<MetricsReport>& reports);

// Deterministic shuffled split: test = round(0.20 n); of the rest,
// val = round(0.25 remaining); train = remainder (round-half-up).
struct SplitResult {
    std::vector<std::size_t> train, val, test;
};

SplitResult split_dataset(std::size_t n, std::uint64_t seed);

}  // namespace rustseg
