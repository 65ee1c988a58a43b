#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rustseg {

// Shape/usage errors (CLI exit 2).
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// I/O and codec errors (CLI exit 3).
struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};
static_assert(sizeof(Rgb) == 3, "Rgb must be packed");

struct PixelCoord {
    int x = 0;
    int y = 0;
    friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

// 8-bit, 3-channel raster, row-major.
class RgbImage {
public:
    RgbImage() = default;
    RgbImage(int width, int height, Rgb fill = {})
        : width_(width), height_(height) {
        if (width < 1 || height < 1)
            throw DimensionError("RgbImage dimensions must be >= 1");
        data_.assign(static_cast<std::size_t>(width) * height, fill);
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t pixel_count() const { return data_.size(); }

    bool in_bounds(int x, int y) const {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }
    Rgb& at(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    const Rgb& at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }

    std::vector<Rgb>& data() { return data_; }
    const std::vector<Rgb>& data() const { return data_; }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<Rgb> data_;
};

// Per-pixel boolean raster, row-major (one byte per pixel, values 0/1).
class BinaryMask {
public:
    BinaryMask() = default;
    BinaryMask(int width, int height, bool fill = false)
        : width_(width), height_(height) {
        if (width < 1 || height < 1)
            throw DimensionError("BinaryMask dimensions must be >= 1");
        bits_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t pixel_count() const { return bits_.size(); }

    bool in_bounds(int x, int y) const {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }
    bool get(int x, int y) const {
        return bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
    }
    void set(int x, int y, bool v) {
        bits_[static_cast<std::size_t>(y) * width_ + x] = v ? 1 : 0;
    }

    std::vector<std::uint8_t>& bits() { return bits_; }
    const std::vector<std::uint8_t>& bits() const { return bits_; }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto b : bits_) n += b;
        return n;
    }

    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> bits_;
};

inline void require_same_dims(const BinaryMask& a, const BinaryMask& b, const char* what) {
    if (a.width() != b.width() || a.height() != b.height())
        throw DimensionError(std::string(what) + ": mask dimensions differ");
}

inline void require_same_dims(const RgbImage& a, const BinaryMask& b, const char* what) {
    if (a.width() != b.width() || a.height() != b.height())
        throw DimensionError(std::string(what) + ": image/mask dimensions differ");
}

// Integer luma per ITU-R 601, round-half-up: round(0.299 r + 0.587 g + 0.114 b).
inline int luma(Rgb c) {
    return (299 * c.r + 587 * c.g + 114 * c.b + 500) / 1000;
}

// Set algebra on same-sized masks.
BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_or(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_minus(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_not(const BinaryMask& a);
bool mask_subset(const BinaryMask& a, const BinaryMask& b);

// Foreground pixels with a background (or out-of-image) 4-neighbor.
BinaryMask mask_boundary(const BinaryMask& m);

}  // namespace rustseg
