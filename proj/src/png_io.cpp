#include "rustseg/png_io.hpp"

#include <png.h>
#include <zlib.h>

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <memory>

namespace rustseg {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReader() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    }
};

void png_error_trampoline(png_structp png, png_const_charp msg) {
    // Cannot throw through libpng frames; stash the message and longjmp.
    auto* err = static_cast<std::string*>(png_get_error_ptr(png));
    if (err) *err = msg ? msg : "libpng error";
    longjmp(png_jmpbuf(png), 1);
}

void png_warning_ignore(png_structp, png_const_charp) {}

RgbImage decode_rgb8(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp)
        throw FileError("cannot open '" + path + "': " + std::strerror(errno));

    unsigned char sig[8];
    if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0)
        throw DecodeError("'" + path + "' is not a PNG file");

    PngReader rd;
    // Heap storage for the error text: the local pointer is never written
    // after setjmp, so reading it after the longjmp is well defined.
    const auto errmsg = std::make_unique<std::string>();
    rd.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, errmsg.get(),
                                    png_error_trampoline, png_warning_ignore);
    if (!rd.png) throw DecodeError("png_create_read_struct failed");
    rd.info = png_create_info_struct(rd.png);
    if (!rd.info) throw DecodeError("png_create_info_struct failed");

    // Any libpng failure inside the read calls lands here.
    RgbImage image;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(rd.png)))
        throw DecodeError("PNG decode failed for '" + path + "': " + *errmsg);

    png_init_io(rd.png, fp.get());
    png_set_sig_bytes(rd.png, 8);
    png_read_info(rd.png, rd.info);

    png_uint_32 w = 0, h = 0;
    int bit_depth = 0, color_type = 0;
    png_get_IHDR(rd.png, rd.info, &w, &h, &bit_depth, &color_type, nullptr, nullptr, nullptr);

    if (bit_depth == 16)
        throw FormatError("'" + path + "': 16-bit PNG not supported");
    if (w < 1 || h < 1 || w > 1u << 24 || h > 1u << 24)
        throw DecodeError("'" + path + "': bad dimensions");

    // Normalize everything to 8-bit RGB.
    if (color_type == PNG_COLOR_TYPE_PALETTE)
        png_set_palette_to_rgb(rd.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(rd.png);
    if (png_get_valid(rd.png, rd.info, PNG_INFO_tRNS))
        png_set_tRNS_to_alpha(rd.png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(rd.png);
    png_set_strip_alpha(rd.png);
    png_set_interlace_handling(rd.png);
    png_read_update_info(rd.png, rd.info);

    if (png_get_rowbytes(rd.png, rd.info) != static_cast<std::size_t>(w) * 3)
        throw FormatError("'" + path + "': unsupported PNG layout");

    image = RgbImage(static_cast<int>(w), static_cast<int>(h));
    rows.resize(h);
    for (png_uint_32 y = 0; y < h; ++y)
        rows[y] = reinterpret_cast<png_bytep>(&image.at(0, static_cast<int>(y)));
    png_read_image(rd.png, rows.data());
    png_read_end(rd.png, nullptr);
    return image;
}

void put_be32(std::vector<unsigned char>& out, std::uint32_t v) {
    out.push_back(static_cast<unsigned char>(v >> 24));
    out.push_back(static_cast<unsigned char>(v >> 16));
    out.push_back(static_cast<unsigned char>(v >> 8));
    out.push_back(static_cast<unsigned char>(v));
}

void append_chunk(std::vector<unsigned char>& out, const char type[4],
                  const unsigned char* data, std::size_t len) {
    put_be32(out, static_cast<std::uint32_t>(len));
    std::size_t crc_start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data, data + len);
    uLong crc = crc32(0L, out.data() + crc_start, static_cast<uInt>(4 + len));
    put_be32(out, static_cast<std::uint32_t>(crc));
}

// zlib stream of stored (uncompressed) deflate blocks. No compressor is
// involved, so the bytes never depend on the zlib version.
std::vector<unsigned char> zlib_stored(const std::vector<unsigned char>& raw) {
    std::vector<unsigned char> z;
    z.reserve(raw.size() + raw.size() / 65535 * 5 + 16);
    z.push_back(0x78);
    z.push_back(0x01);
    std::size_t pos = 0;
    do {
        std::size_t n = std::min<std::size_t>(65535, raw.size() - pos);
        bool last = pos + n == raw.size();
        z.push_back(last ? 1 : 0);
        z.push_back(static_cast<unsigned char>(n & 0xff));
        z.push_back(static_cast<unsigned char>(n >> 8));
        z.push_back(static_cast<unsigned char>(~n & 0xff));
        z.push_back(static_cast<unsigned char>((~n >> 8) & 0xff));
        z.insert(z.end(), raw.begin() + pos, raw.begin() + pos + n);
        pos += n;
    } while (pos < raw.size());
    uLong ad = adler32(0L, nullptr, 0);
    ad = adler32(ad, raw.data(), static_cast<uInt>(raw.size()));
    put_be32(z, static_cast<std::uint32_t>(ad));
    return z;
}

void write_png(const std::string& path, int width, int height, int channels,
               const unsigned char* pixels) {
    std::vector<unsigned char> raw;
    std::size_t stride = static_cast<std::size_t>(width) * channels;
    raw.reserve((stride + 1) * height);
    for (int y = 0; y < height; ++y) {
        raw.push_back(0);  // filter: none
        raw.insert(raw.end(), pixels + y * stride, pixels + (y + 1) * stride);
    }

    std::vector<unsigned char> out;
    static const unsigned char sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    out.insert(out.end(), sig, sig + 8);

    unsigned char ihdr[13];
    ihdr[0] = static_cast<unsigned char>(width >> 24);
    ihdr[1] = static_cast<unsigned char>(width >> 16);
    ihdr[2] = static_cast<unsigned char>(width >> 8);
    ihdr[3] = static_cast<unsigned char>(width);
    ihdr[4] = static_cast<unsigned char>(height >> 24);
    ihdr[5] = static_cast<unsigned char>(height >> 16);
    ihdr[6] = static_cast<unsigned char>(height >> 8);
    ihdr[7] = static_cast<unsigned char>(height);
    ihdr[8] = 8;                                       // bit depth
    ihdr[9] = channels == 3 ? 2 : 0;                   // color type: RGB or gray
    ihdr[10] = ihdr[11] = ihdr[12] = 0;                // compression/filter/interlace
    append_chunk(out, "IHDR", ihdr, sizeof ihdr);

    std::vector<unsigned char> idat = zlib_stored(raw);
    append_chunk(out, "IDAT", idat.data(), idat.size());
    append_chunk(out, "IEND", nullptr, 0);

    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp)
        throw FileError("cannot write '" + path + "': " + std::strerror(errno));
    if (std::fwrite(out.data(), 1, out.size(), fp.get()) != out.size())
        throw FileError("short write to '" + path + "'");
}

}  // namespace

RgbImage load_image(const std::string& path) { return decode_rgb8(path); }

BinaryMask load_mask(const std::string& path, int threshold) {
    RgbImage img = decode_rgb8(path);
    BinaryMask mask(img.width(), img.height());
    const auto& px = img.data();
    auto& bits = mask.bits();
    for (std::size_t i = 0; i < px.size(); ++i)
        bits[i] = luma(px[i]) >= threshold ? 1 : 0;
    return mask;
}

void save_mask(const BinaryMask& mask, const std::string& path) {
    std::vector<unsigned char> gray(mask.pixel_count());
    const auto& bits = mask.bits();
    for (std::size_t i = 0; i < bits.size(); ++i)
        gray[i] = bits[i] ? 255 : 0;
    write_png(path, mask.width(), mask.height(), 1, gray.data());
}

void save_image(const RgbImage& image, const std::string& path) {
    write_png(path, image.width(), image.height(), 3,
              reinterpret_cast<const unsigned char*>(image.data().data()));
}

}  // namespace rustseg
