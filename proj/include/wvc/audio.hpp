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

#ifndef WVC_AUDIO_HPP
#define WVC_AUDIO_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "wvc/error.hpp"
#include "wvc/image.hpp"

namespace wvc {

struct WavData {
    int sample_rate = 0;
    std::vector<double> samples; // mono, in [-1, 1)
};

/// Reads a RIFF WAV file; only PCM-16 mono is accepted.
inline WavData read_wav(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open WAV file: " + path);

    auto u16 = [&f, &path] {
        std::uint8_t b[2];
        f.read(reinterpret_cast<char*>(b), 2);
        if (!f) throw FormatError("corrupt WAV header: " + path);
        return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8);
    };
    auto u32 = [&f, &path] {
        std::uint8_t b[4];
        f.read(reinterpret_cast<char*>(b), 4);
        if (!f) throw FormatError("corrupt WAV header: " + path);
        return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
               (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
    };

    char tag[4];
    f.read(tag, 4);
    if (!f || std::string(tag, 4) != "RIFF") throw FormatError("not a RIFF file: " + path);
    u32(); // riff size
    f.read(tag, 4);
    if (!f || std::string(tag, 4) != "WAVE") throw FormatError("not a WAVE file: " + path);

    WavData wav;
    bool have_fmt = false;
    while (f.read(tag, 4)) {
        const std::uint32_t chunk_len = u32();
        const std::string id(tag, 4);
        if (id == "fmt ") {
            if (chunk_len < 16) throw FormatError("short fmt chunk: " + path);
            const std::uint32_t format = u16();
            const std::uint32_t channels = u16();
            wav.sample_rate = static_cast<int>(u32());
            u32(); // byte rate
            u16(); // block align
            const std::uint32_t bits = u16();
            if (format != 1) throw FormatError("only PCM WAV is supported: " + path);
            if (channels != 1) throw FormatError("only mono WAV is supported: " + path);
            if (bits != 16) throw FormatError("only 16-bit WAV is supported: " + path);
            f.seekg(chunk_len - 16, std::ios::cur);
            have_fmt = true;
        } else if (id == "data") {
            if (!have_fmt) throw FormatError("WAV data before fmt chunk: " + path);
            const std::size_t count = chunk_len / 2;
            wav.samples.resize(count);
            std::vector<std::uint8_t> raw(chunk_len);
            f.read(reinterpret_cast<char*>(raw.data()), chunk_len);
            if (!f) throw FormatError("truncated WAV data: " + path);
            for (std::size_t i = 0; i < count; ++i) {
                const std::int16_t s = static_cast<std::int16_t>(
                    static_cast<std::uint16_t>(raw[2 * i]) |
                    (static_cast<std::uint16_t>(raw[2 * i + 1]) << 8));
                wav.samples[i] = s / 32768.0;
            }
            return wav;
        } else {
            f.seekg(chunk_len + (chunk_len & 1), std::ios::cur);
        }
    }
    throw FormatError("WAV file has no data chunk: " + path);
}

namespace detail {

/// In-place iterative radix-2 FFT; size must be a power of two.
inline void fft_radix2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

} // namespace detail

/// Hann-windowed short-time Fourier magnitudes as log(1 + |X|), one image
/// per full segment of `segment_seconds`, each min-max normalized to [0, 1].
/// Row r is frequency bin r (DC at row 0), columns advance in time; the
/// trailing partial segment is dropped.
inline std::vector<Image> wav_to_log_spectrogram(const std::string& path, int frame, int hop,
                                                 double segment_seconds) {
    if (frame < 2 || (frame & (frame - 1)) != 0)
        throw InvalidArgument("frame length must be a power of two");
    if (hop < 1 || hop > frame) throw InvalidArgument("hop must be in [1, frame]");
    if (segment_seconds <= 0.0) throw InvalidArgument("segment length must be > 0");

    const WavData wav = read_wav(path);
    const std::size_t sps =
        static_cast<std::size_t>(std::llround(wav.sample_rate * segment_seconds));
    if (sps < static_cast<std::size_t>(frame)) throw InvalidArgument("segment shorter than one frame");
    const std::size_t segments = wav.samples.size() / sps;

    std::vector<double> window(static_cast<std::size_t>(frame));
    for (int n = 0; n < frame; ++n)
        window[static_cast<std::size_t>(n)] =
            0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * n / frame));

    const int rows = frame / 2 + 1;
    const int cols = static_cast<int>((sps - static_cast<std::size_t>(frame)) / static_cast<std::size_t>(hop)) + 1;

    std::vector<Image> out;
    out.reserve(segments);
    std::vector<std::complex<double>> buf(static_cast<std::size_t>(frame));
    for (std::size_t seg = 0; seg < segments; ++seg) {
        Image img(cols, rows);
        const double* base = wav.samples.data() + seg * sps;
        for (int col = 0; col < cols; ++col) {
            const double* src = base + static_cast<std::size_t>(col) * hop;
            for (int n = 0; n < frame; ++n)
                buf[static_cast<std::size_t>(n)] = src[n] * window[static_cast<std::size_t>(n)];
            detail::fft_radix2(buf);
            for (int r = 0; r < rows; ++r)
                img.at(col, r) = std::log1p(std::abs(buf[static_cast<std::size_t>(r)]));
        }
        const auto [mn, mx] = std::minmax_element(img.data.begin(), img.data.end());
        const double lo = *mn, hi = *mx;
        if (hi > lo)
            for (double& v : img.data) v = (v - lo) / (hi - lo);
        else
            for (double& v : img.data) v = 0.0;
        out.push_back(std::move(img));
    }
    return out;
}

} // namespace wvc

#endif // WVC_AUDIO_HPP
