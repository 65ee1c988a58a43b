#include "rustseg/overlay.hpp"

#include <cmath>

namespace rustseg {

RgbImage render_overlay(const RgbImage& image,
                        const std::vector<std::pair<BinaryMask, ZoneKind>>& zones,
                        const OverlaySpec& spec) {
    if (!(spec.alpha >= 0.0 && spec.alpha <= 1.0))
        throw std::invalid_argument("overlay alpha must be in [0,1]");

    RgbImage out = image;
    const double a = spec.alpha;
    for (const auto& [mask, kind] : zones) {
        require_same_dims(image, mask, "render_overlay");
        const Rgb c = spec.colors[static_cast<std::size_t>(kind)];
        const auto& bits = mask.bits();
        auto& px = out.data();
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (!bits[i]) continue;
            Rgb& p = px[i];
            p.r = static_cast<std::uint8_t>(std::floor(a * c.r + (1.0 - a) * p.r + 0.5));
            p.g = static_cast<std::uint8_t>(std::floor(a * c.g + (1.0 - a) * p.g + 0.5));
            p.b = static_cast<std::uint8_t>(std::floor(a * c.b + (1.0 - a) * p.b + 0.5));
        }
    }
    return out;
}

}  // namespace rustseg
