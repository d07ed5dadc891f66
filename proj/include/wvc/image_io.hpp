// Copyright (c) 2026 The wvc Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WVC_IMAGE_IO_HPP
#define WVC_IMAGE_IO_HPP

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include <zlib.h>

#include "wvc/error.hpp"
#include "wvc/image.hpp"

namespace wvc {

inline double luma(double r, double g, double b) {
    return 0.299 * r + 0.587 * g + 0.114 * b;
}

namespace detail {

inline std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open file: " + path);
    f.seekg(0, std::ios::end);
    const std::streamoff len = f.tellg();
    f.seekg(0, std::ios::beg);
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(len));
    if (len > 0) f.read(reinterpret_cast<char*>(bytes.data()), len);
    if (!f) throw IoError("cannot read file: " + path);
    return bytes;
}

// --- PGM -----------------------------------------------------------------

// Reads one whitespace/comment-separated token from a PNM header.
inline std::string pnm_token(const std::vector<std::uint8_t>& b, std::size_t& pos,
                             const std::string& path) {
    while (pos < b.size()) {
        if (std::isspace(b[pos])) {
            ++pos;
        } else if (b[pos] == '#') {
            while (pos < b.size() && b[pos] != '\n') ++pos;
        } else {
            break;
        }
    }
    std::size_t start = pos;
    while (pos < b.size() && !std::isspace(b[pos]) && b[pos] != '#') ++pos;
    if (start == pos) throw FormatError("truncated PGM header: " + path);
    return std::string(b.begin() + start, b.begin() + pos);
}

inline long pnm_int(const std::vector<std::uint8_t>& b, std::size_t& pos,
                    const std::string& path) {
    const std::string tok = pnm_token(b, pos, path);
    try {
        return std::stol(tok);
    } catch (const std::exception&) {
        throw FormatError("bad PGM header value '" + tok + "': " + path);
    }
}

inline Image decode_pgm(const std::vector<std::uint8_t>& b, const std::string& path) {
    std::size_t pos = 0;
    const std::string magic = pnm_token(b, pos, path);
    const bool ascii = magic == "P2";
    if (!ascii && magic != "P5") throw FormatError("not a PGM file (P2/P5): " + path);
    const long w = pnm_int(b, pos, path);
    const long h = pnm_int(b, pos, path);
    const long maxval = pnm_int(b, pos, path);
    if (w < 1 || h < 1 || maxval < 1 || maxval > 65535)
        throw FormatError("bad PGM dimensions or maxval: " + path);
    Image img(static_cast<int>(w), static_cast<int>(h));
    const double scale = 1.0 / maxval;
    if (ascii) {
        for (std::size_t i = 0; i < img.size(); ++i) {
            const long v = pnm_int(b, pos, path);
            if (v < 0 || v > maxval) throw FormatError("PGM sample out of range: " + path);
            img.data[i] = v * scale;
        }
    } else {
        ++pos; // single whitespace after maxval
        const int bytes_per = maxval > 255 ? 2 : 1;
        const std::size_t need = img.size() * bytes_per;
        if (b.size() - pos < need) throw FormatError("truncated PGM data: " + path);
        for (std::size_t i = 0; i < img.size(); ++i) {
            long v;
            if (bytes_per == 2) // big-endian per Netpbm
                v = (static_cast<long>(b[pos + 2 * i]) << 8) | b[pos + 2 * i + 1];
            else
                v = b[pos + i];
            if (v > maxval) throw FormatError("PGM sample out of range: " + path);
            img.data[i] = v * scale;
        }
    }
    return img;
}

// --- PNG -----------------------------------------------------------------

inline std::uint32_t be32(const std::uint8_t* p) {
    return (static_cast<std::uint32_t>(p[0]) << 24) | (static_cast<std::uint32_t>(p[1]) << 16) |
           (static_cast<std::uint32_t>(p[2]) << 8) | p[3];
}

inline std::vector<std::uint8_t> zlib_inflate(const std::vector<std::uint8_t>& in,
                                              const std::string& path) {
    std::vector<std::uint8_t> out;
    z_stream zs;
    std::memset(&zs, 0, sizeof(zs));
    if (inflateInit(&zs) != Z_OK) throw FormatError("zlib init failed: " + path);
    zs.next_in = const_cast<Bytef*>(in.data());
    zs.avail_in = static_cast<uInt>(in.size());
    std::uint8_t buf[1 << 15];
    int ret = Z_OK;
    while (ret != Z_STREAM_END) {
        zs.next_out = buf;
        zs.avail_out = sizeof(buf);
        ret = inflate(&zs, Z_NO_FLUSH);
        if (ret != Z_OK && ret != Z_STREAM_END) {
            inflateEnd(&zs);
            throw FormatError("corrupt PNG compressed data: " + path);
        }
        out.insert(out.end(), buf, buf + (sizeof(buf) - zs.avail_out));
    }
    inflateEnd(&zs);
    return out;
}

inline int paeth(int a, int b, int c) {
    const int p = a + b - c;
    const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return a;
    if (pb <= pc) return b;
    return c;
}

inline Image decode_png(const std::vector<std::uint8_t>& b, const std::string& path) {
    static const std::uint8_t sig[8] = {137, 80, 78, 71, 13, 10, 26, 10};
    if (b.size() < 8 || std::memcmp(b.data(), sig, 8) != 0)
        throw FormatError("not a PNG file: " + path);

    std::uint32_t width = 0, height = 0;
    int bit_depth = 0, color_type = -1;
    std::vector<std::uint8_t> idat;
    std::size_t pos = 8;
    bool saw_iend = false;
    while (pos + 8 <= b.size() && !saw_iend) {
        const std::uint32_t len = be32(&b[pos]);
        if (pos + 12 + static_cast<std::size_t>(len) > b.size())
            throw FormatError("truncated PNG chunk: " + path);
        const char* type = reinterpret_cast<const char*>(&b[pos + 4]);
        const std::uint8_t* data = &b[pos + 8];
        if (std::memcmp(type, "IHDR", 4) == 0) {
            if (len != 13) throw FormatError("bad PNG IHDR: " + path);
            width = be32(data);
            height = be32(data + 4);
            bit_depth = data[8];
            color_type = data[9];
            if (data[12] != 0)
                throw FormatError("interlaced PNG not supported: " + path);
        } else if (std::memcmp(type, "IDAT", 4) == 0) {
            idat.insert(idat.end(), data, data + len);
        } else if (std::memcmp(type, "IEND", 4) == 0) {
            saw_iend = true;
        }
        pos += 12 + len;
    }
    if (width == 0 || height == 0 || !saw_iend)
        throw FormatError("missing PNG header or IEND: " + path);
    if (bit_depth != 8 && bit_depth != 16)
        throw FormatError("unsupported PNG bit depth " + std::to_string(bit_depth) +
                          " (8/16 only): " + path);
    if (color_type != 0 && color_type != 2)
        throw FormatError("unsupported PNG color type " + std::to_string(color_type) +
                          " (grayscale/RGB only): " + path);

    const int channels = color_type == 2 ? 3 : 1;
    const int sample_bytes = bit_depth / 8;
    const int bpp = channels * sample_bytes;
    const std::size_t stride = static_cast<std::size_t>(width) * bpp;

    std::vector<std::uint8_t> raw = zlib_inflate(idat, path);
    if (raw.size() != (stride + 1) * height)
        throw FormatError("PNG pixel data has wrong length: " + path);

    // Undo per-scanline filters in place.
    std::vector<std::uint8_t> prev(stride, 0);
    std::vector<std::uint8_t> line(stride);
    Image img(static_cast<int>(width), static_cast<int>(height));
    const double maxv = bit_depth == 16 ? 65535.0 : 255.0;
    for (std::uint32_t y = 0; y < height; ++y) {
        const std::uint8_t filter = raw[y * (stride + 1)];
        const std::uint8_t* src = &raw[y * (stride + 1) + 1];
        for (std::size_t i = 0; i < stride; ++i) {
            const int a = i >= static_cast<std::size_t>(bpp) ? line[i - bpp] : 0;
            const int up = prev[i];
            const int c = i >= static_cast<std::size_t>(bpp) ? prev[i - bpp] : 0;
            int v;
            switch (filter) {
                case 0: v = src[i]; break;
                case 1: v = src[i] + a; break;
                case 2: v = src[i] + up; break;
                case 3: v = src[i] + (a + up) / 2; break;
                case 4: v = src[i] + paeth(a, up, c); break;
                default: throw FormatError("bad PNG filter type: " + path);
            }
            line[i] = static_cast<std::uint8_t>(v);
        }
        for (std::uint32_t x = 0; x < width; ++x) {
            double chan[3];
            for (int ch = 0; ch < channels; ++ch) {
                const std::uint8_t* s = &line[(x * channels + ch) * sample_bytes];
                chan[ch] = bit_depth == 16
                               ? static_cast<double>((s[0] << 8) | s[1]) // big-endian
                               : static_cast<double>(s[0]);
            }
            const double v =
                channels == 3 ? luma(chan[0], chan[1], chan[2]) : chan[0];
            img.at(static_cast<int>(x), static_cast<int>(y)) = v / maxv;
        }
        prev = line;
    }
    return img;
}

} // namespace detail

/// Decodes a PGM (P2/P5) or PNG (8/16-bit grayscale or RGB) file into a
/// grayscale image in [0, 1]. RGB is reduced by the usual luma weights.
inline Image decode_grayscale(const std::string& path) {
    const std::vector<std::uint8_t> bytes = detail::read_file_bytes(path);
    if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '2' || bytes[1] == '5'))
        return detail::decode_pgm(bytes, path);
    if (bytes.size() >= 8 && bytes[0] == 137 && bytes[1] == 'P')
        return detail::decode_png(bytes, path);
    throw FormatError("unsupported image format (PGM P2/P5 or PNG expected): " + path);
}

/// Writes an 8-bit binary PGM (P5). Values are quantized with rounding.
inline void encode_pgm(const Image& img, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open file for writing: " + path);
    f << "P5\n" << img.width << " " << img.height << "\n255\n";
    std::vector<std::uint8_t> row(static_cast<std::size_t>(img.width));
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x)
            row[static_cast<std::size_t>(x)] =
                static_cast<std::uint8_t>(std::lround(clamp01(img.at(x, y)) * 255.0));
        f.write(reinterpret_cast<const char*>(row.data()), row.size());
    }
    if (!f) throw IoError("write failed: " + path);
}

} // namespace wvc

#endif // WVC_IMAGE_IO_HPP
