#include "rustseg/raster.hpp"

namespace rustseg {

BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b) {
    require_same_dims(a, b, "mask_and");
    BinaryMask out(a.width(), a.height());
    for (std::size_t i = 0; i < a.bits().size(); ++i)
        out.bits()[i] = a.bits()[i] & b.bits()[i];
    return out;
}

BinaryMask mask_or(const BinaryMask& a, const BinaryMask& b) {
    require_same_dims(a, b, "mask_or");
    BinaryMask out(a.width(), a.height());
    for (std::size_t i = 0; i < a.bits().size(); ++i)
        out.bits()[i] = a.bits()[i] | b.bits()[i];
    return out;
}

BinaryMask mask_minus(const BinaryMask& a, const BinaryMask& b) {
    require_same_dims(a, b, "mask_minus");
    BinaryMask out(a.width(), a.height());
    for (std::size_t i = 0; i < a.bits().size(); ++i)
        out.bits()[i] = a.bits()[i] & static_cast<std::uint8_t>(!b.bits()[i]);
    return out;
}

BinaryMask mask_not(const BinaryMask& a) {
    BinaryMask out(a.width(), a.height());
    for (std::size_t i = 0; i < a.bits().size(); ++i)
        out.bits()[i] = a.bits()[i] ? 0 : 1;
    return out;
}

bool mask_subset(const BinaryMask& a, const BinaryMask& b) {
    require_same_dims(a, b, "mask_subset");
    for (std::size_t i = 0; i < a.bits().size(); ++i)
        if (a.bits()[i] && !b.bits()[i]) return false;
    return true;
}

BinaryMask mask_boundary(const BinaryMask& m) {
    const int w = m.width(), h = m.height();
    BinaryMask out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!m.get(x, y)) continue;
            bool edge = x == 0 || x == w - 1 || y == 0 || y == h - 1 ||
                        !m.get(x - 1, y) || !m.get(x + 1, y) ||
                        !m.get(x, y - 1) || !m.get(x, y + 1);
            if (edge) out.set(x, y, true);
        }
    }
    return out;
}

}  // namespace rustseg
