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

#ifndef WVC_POOLING_HPP
#define WVC_POOLING_HPP

#include <array>
#include <vector>

#include "wvc/wavelet.hpp"

namespace wvc {

/// C1 maps: per (j,k) an array of floor(W/2^j) x floor(H/2^j) block maxima.
struct C1Stack {
    int image_width = 0;
    int image_height = 0;
    int levels = 0;
    std::vector<std::array<std::vector<double>, 3>> maps; // [j-1][k]

    int map_width(int level) const { return image_width >> level; }
    int map_height(int level) const { return image_height >> level; }

    const std::vector<double>& map(int level, int orientation) const {
        return maps[static_cast<std::size_t>(level - 1)][static_cast<std::size_t>(orientation)];
    }
    std::vector<double>& map(int level, int orientation) {
        return maps[static_cast<std::size_t>(level - 1)][static_cast<std::size_t>(orientation)];
    }
};

/// Local maximum over non-overlapping 2^j x 2^j blocks anchored at the
/// origin; ragged border pixels beyond the last full block are discarded.
inline C1Stack c1_pool(const S1Stack& s1) {
    C1Stack c1;
    c1.image_width = s1.width;
    c1.image_height = s1.height;
    c1.levels = s1.levels;
    c1.maps.resize(static_cast<std::size_t>(s1.levels));
    for (int j = 1; j <= s1.levels; ++j) {
        const int block = 1 << j;
        const int out_w = s1.width / block;
        const int out_h = s1.height / block;
        for (int k = 0; k < 3; ++k) {
            const std::vector<double>& src = s1.maps[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k)];
            std::vector<double>& dst = c1.map(j, k);
            dst.assign(static_cast<std::size_t>(out_w) * out_h, 0.0);
            for (int v = 0; v < out_h; ++v)
                for (int u = 0; u < out_w; ++u) {
                    double m = src[static_cast<std::size_t>(v * block) * s1.width + static_cast<std::size_t>(u) * block];
                    for (int dy = 0; dy < block; ++dy) {
                        const double* row = &src[static_cast<std::size_t>(v * block + dy) * s1.width + static_cast<std::size_t>(u) * block];
                        for (int dx = 0; dx < block; ++dx)
                            if (row[dx] > m) m = row[dx];
                    }
                    dst[static_cast<std::size_t>(v) * out_w + u] = m;
                }
        }
    }
    return c1;
}

} // namespace wvc

#endif // WVC_POOLING_HPP
