#include "rustseg/metrics.hpp"

#include <algorithm>

#include "rustseg/rng.hpp"

namespace rustseg {

MetricsReport metrics_from_counts(std::int64_t tp, std::int64_t fp,
                                  std::int64_t fn, std::int64_t tn) {
    MetricsReport r;
    r.tp = tp;
    r.fp = fp;
    r.fn = fn;
    r.tn = tn;
    r.no_positive_prediction = tp + fp == 0;
    r.no_positive_truth = tp + fn == 0;
    r.precision = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
    r.recall = tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
    r.f1 = r.precision + r.recall > 0.0
               ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
               : 0.0;
    r.iou = tp + fp + fn > 0 ? static_cast<double>(tp) / (tp + fp + fn) : 0.0;
    return r;
}

MetricsReport evaluate(const BinaryMask& pred, const BinaryMask& truth) {
    require_same_dims(pred, truth, "evaluate");
    std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;
    const auto& p = pred.bits();
    const auto& t = truth.bits();
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i]) {
            if (t[i]) ++tp; else ++fp;
        } else {
            if (t[i]) ++fn; else ++tn;
        }
    }
    return metrics_from_counts(tp, fp, fn, tn);
}

AggregateReport aggregate(const std::vector<MetricsReport>& reports) {
    if (reports.empty())
        throw std::invalid_argument("aggregate: empty report list");

    AggregateReport out;
    std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;
    double sp = 0, sr = 0, sf = 0, si = 0;
    for (const auto& r : reports) {
        tp += r.tp;
        fp += r.fp;
        fn += r.fn;
        tn += r.tn;
        if (r.no_positive_truth) continue;
        sp += r.precision;
        sr += r.recall;
        sf += r.f1;
        si += r.iou;
        ++out.macro_images;
    }
    out.micro = metrics_from_counts(tp, fp, fn, tn);
    if (out.macro_images > 0) {
        out.macro_precision = sp / out.macro_images;
        out.macro_recall = sr / out.macro_images;
        out.macro_f1 = sf / out.macro_images;
        out.macro_iou = si / out.macro_images;
    }
    return out;
}

SplitResult split_dataset(std::size_t n, std::uint64_t seed) {
    if (n < 5)
        throw std::invalid_argument("split_dataset: need at least 5 items");

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;

    Pcg32 rng(seed, 0x853c49e6748fea9bULL);
    for (std::size_t i = n - 1; i > 0; --i) {
        std::size_t j = rng.bounded(static_cast<std::uint32_t>(i + 1));
        std::swap(order[i], order[j]);
    }

    // round-half-up in integers: round(n/5) and round(rem/4)
    std::size_t test_n = (2 * n + 5) / 10;
    std::size_t rem = n - test_n;
    std::size_t val_n = (rem + 2) / 4;

    SplitResult out;
    out.test.assign(order.begin(), order.begin() + test_n);
    out.val.assign(order.begin() + test_n, order.begin() + test_n + val_n);
    out.train.assign(order.begin() + test_n + val_n, order.end());
    std::sort(out.test.begin(), out.test.end());
    std::sort(out.val.begin(), out.val.end());
    std::sort(out.train.begin(), out.train.end());
    return out;
}

}  // namespace rustseg
