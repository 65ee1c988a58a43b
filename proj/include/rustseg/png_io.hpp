#pragma once

#include <string>

#include "rustseg/raster.hpp"

namespace rustseg {

// Decodes an 8-bit PNG. Grayscale and palette images are expanded to RGB,
// alpha is stripped. 16-bit files raise FormatError; a missing file raises
// FileError; corrupt data raises DecodeError.
RgbImage load_image(const std::string& path);

// Decodes a PNG as a binary mask: foreground iff luma >= threshold.
BinaryMask load_mask(const std::string& path, int threshold = 128);

// Writes an 8-bit grayscale PNG, foreground = 255, background = 0.
// Output bytes are identical across platforms (stored-deflate IDAT).
void save_mask(const BinaryMask& mask, const std::string& path);

// Writes an 8-bit RGB PNG with the same deterministic encoding.
void save_image(const RgbImage& image, const std::string& path);

}  // namespace rustseg
