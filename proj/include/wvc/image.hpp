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

#ifndef WVC_IMAGE_HPP
#define WVC_IMAGE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "wvc/error.hpp"

namespace wvc {

/// Dense grayscale image, row-major, intensities in [0, 1].
struct Image {
    int width = 0;
    int height = 0;
    std::vector<double> data; // data[y * width + x]

    Image() = default;
    Image(int w, int h, double fill = 0.0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {
        if (w < 1 || h < 1) throw InvalidArgument("image dimensions must be >= 1");
    }

    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    std::size_t size() const { return data.size(); }
};

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

/// Bilinear resize so that min(width, height) == target and the aspect
/// ratio is preserved to the nearest pixel. Identity when the minimum
/// side already equals the target.
inline Image rescale_min_side(const Image& img, int target) {
    if (target < 16) throw InvalidArgument("rescale target must be >= 16");
    const int min_side = std::min(img.width, img.height);
    if (min_side == target) return img;
    const double scale = static_cast<double>(target) / min_side;
    int new_w, new_h;
    if (img.width <= img.height) {
        new_w = target;
        new_h = std::max(target, static_cast<int>(std::lround(img.height * scale)));
    } else {
        new_h = target;
        new_w = std::max(target, static_cast<int>(std::lround(img.width * scale)));
    }
    Image out(new_w, new_h);
    const double sx = static_cast<double>(img.width) / new_w;
    const double sy = static_cast<double>(img.height) / new_h;
    for (int y = 0; y < new_h; ++y) {
        // Pixel-center mapping; clamped at the borders.
        double fy = (y + 0.5) * sy - 0.5;
        fy = std::clamp(fy, 0.0, static_cast<double>(img.height - 1));
        const int y0 = static_cast<int>(fy);
        const int y1 = std::min(y0 + 1, img.height - 1);
        const double wy = fy - y0;
        for (int x = 0; x < new_w; ++x) {
            double fx = (x + 0.5) * sx - 0.5;
            fx = std::clamp(fx, 0.0, static_cast<double>(img.width - 1));
            const int x0 = static_cast<int>(fx);
            const int x1 = std::min(x0 + 1, img.width - 1);
            const double wx = fx - x0;
            const double top = img.at(x0, y0) * (1 - wx) + img.at(x1, y0) * wx;
            const double bot = img.at(x0, y1) * (1 - wx) + img.at(x1, y1) * wx;
            out.at(x, y) = clamp01(top * (1 - wy) + bot * wy);
        }
    }
    return out;
}

namespace detail {

inline std::vector<double> gaussian_kernel(double sigma) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> k(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        k[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
        sum += k[i + radius];
    }
    for (double& v : k) v /= sum;
    return k;
}

// Half-sample symmetric index: ... 2 1 0 | 0 1 2 ... N-1 | N-1 N-2 ...
inline int mirror_index(int i, int n) {
    while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}

} // namespace detail

/// Separable Gaussian smoothing, kernel radius ceil(3*sigma),
/// symmetric boundary extension.
inline Image gaussian_blur(const Image& img, double sigma) {
    if (sigma <= 0.0) return img;
    const std::vector<double> k = detail::gaussian_kernel(sigma);
    const int radius = static_cast<int>(k.size() / 2);
    Image tmp(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            double acc = 0.0;
            for (int m = -radius; m <= radius; ++m)
                acc += k[m + radius] * img.at(detail::mirror_index(x + m, img.width), y);
            tmp.at(x, y) = acc;
        }
    Image out(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            double acc = 0.0;
            for (int m = -radius; m <= radius; ++m)
                acc += k[m + radius] * tmp.at(x, detail::mirror_index(y + m, img.height));
            out.at(x, y) = acc;
        }
    return out;
}

/// Gaussian anti-alias (sigma = factor/2) followed by subsampling every
/// `factor` pixels starting at index 0. factor 1 applies the sigma=0.5
/// blur without subsampling.
inline Image gaussian_downsample(const Image& img, int factor) {
    if (factor < 1) throw InvalidArgument("downsample factor must be >= 1");
    const int out_w = img.width / factor;
    const int out_h = img.height / factor;
    if (out_w < 16 || out_h < 16)
        throw InvalidArgument("downsampled output would be smaller than 16x16");
    Image blurred = gaussian_blur(img, factor / 2.0);
    if (factor == 1) return blurred;
    Image out(out_w, out_h);
    for (int y = 0; y < out_h; ++y)
        for (int x = 0; x < out_w; ++x)
            out.at(x, y) = blurred.at(x * factor, y * factor);
    return out;
}

/// Non-overlapping side x side tiles in row-major order; ragged margins
/// are discarded.
inline std::vector<Image> tile(const Image& img, int side) {
    if (img.width < side || img.height < side)
        throw InvalidArgument("image smaller than tile side");
    const int nx = img.width / side;
    const int ny = img.height / side;
    std::vector<Image> tiles;
    tiles.reserve(static_cast<std::size_t>(nx) * ny);
    for (int ty = 0; ty < ny; ++ty)
        for (int tx = 0; tx < nx; ++tx) {
            Image t(side, side);
            for (int y = 0; y < side; ++y)
                for (int x = 0; x < side; ++x)
                    t.at(x, y) = img.at(tx * side + x, ty * side + y);
            tiles.push_back(std::move(t));
        }
    return tiles;
}

} // namespace wvc

#endif // WVC_IMAGE_HPP
