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

#ifndef WVC_SYNTH_HPP
#define WVC_SYNTH_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "wvc/image.hpp"
#include "wvc/util.hpp"

namespace wvc {

/// One synthetic texture class: an oriented grating with a smoothly
/// varying random phase field plus pixel noise.
struct GratingSpec {
    double orientation_deg = 0.0;
    double wavelength = 12.0; // pixels per cycle
    double amplitude = 0.35;
    double phase_jitter = 1.2;  // radians, peak of the smooth phase field
    double noise_sigma = 0.04;
};

/// The four default texture classes used by the synthetic benchmarks.
inline std::vector<GratingSpec> default_texture_classes() {
    return {
        {0.0, 12.0, 0.35, 1.2, 0.04},
        {45.0, 16.0, 0.35, 1.2, 0.04},
        {90.0, 12.0, 0.35, 1.2, 0.04},
        {135.0, 20.0, 0.35, 1.2, 0.04},
    };
}

/// Seeded oriented-grating texture in [0, 1].
inline Image make_grating_texture(int width, int height, const GratingSpec& spec,
                                  std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, spec.noise_sigma);

    // Smooth phase field: coarse random grid, bilinearly interpolated.
    const int cell = 32;
    const int gw = width / cell + 2, gh = height / cell + 2;
    std::vector<double> grid(static_cast<std::size_t>(gw) * gh);
    for (double& g : grid) g = (uniform_double(rng) * 2.0 - 1.0) * spec.phase_jitter;

    const double theta = spec.orientation_deg * std::numbers::pi / 180.0;
    const double fx = std::cos(theta) * 2.0 * std::numbers::pi / spec.wavelength;
    const double fy = std::sin(theta) * 2.0 * std::numbers::pi / spec.wavelength;

    Image img(width, height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const double gxf = static_cast<double>(x) / cell;
            const double gyf = static_cast<double>(y) / cell;
            const int gx = static_cast<int>(gxf), gy = static_cast<int>(gyf);
            const double ax = gxf - gx, ay = gyf - gy;
            const double p00 = grid[static_cast<std::size_t>(gy) * gw + gx];
            const double p10 = grid[static_cast<std::size_t>(gy) * gw + gx + 1];
            const double p01 = grid[static_cast<std::size_t>(gy + 1) * gw + gx];
            const double p11 = grid[static_cast<std::size_t>(gy + 1) * gw + gx + 1];
            const double phase = (p00 * (1 - ax) + p10 * ax) * (1 - ay) +
                                 (p01 * (1 - ax) + p11 * ax) * ay;
            const double v =
                0.5 + spec.amplitude * std::sin(fx * x + fy * y + phase) + noise(rng);
            img.at(x, y) = clamp01(v);
        }
    return img;
}

/// Two texture swatches placed in opposite quadrants of a neutral
/// background. Returns the scene plus the two object centers.
struct TwoObjectScene {
    Image image;
    std::array<int, 2> center_a{};
    std::array<int, 2> center_b{};
};

inline TwoObjectScene make_two_object_scene(int side, const Image& texture_a,
                                            const Image& texture_b, int object_side,
                                            std::uint64_t seed) {
    if (object_side > side / 2) throw InvalidArgument("objects must fit in a quadrant");
    if (texture_a.width < object_side || texture_a.height < object_side ||
        texture_b.width < object_side || texture_b.height < object_side)
        throw InvalidArgument("textures smaller than the object side");

    std::mt19937_64 rng(seed);
    TwoObjectScene scene;
    scene.image = Image(side, side, 0.5);

    const int margin = side / 2 - object_side;
    auto place = [&](const Image& tex, int qx, int qy) {
        const int jitter_x = margin > 0 ? static_cast<int>(bounded_rand(rng, static_cast<std::uint64_t>(margin + 1))) : 0;
        const int jitter_y = margin > 0 ? static_cast<int>(bounded_rand(rng, static_cast<std::uint64_t>(margin + 1))) : 0;
        const int x0 = qx * (side / 2) + jitter_x;
        const int y0 = qy * (side / 2) + jitter_y;
        const int sx = static_cast<int>(bounded_rand(rng, static_cast<std::uint64_t>(tex.width - object_side + 1)));
        const int sy = static_cast<int>(bounded_rand(rng, static_cast<std::uint64_t>(tex.height - object_side + 1)));
        for (int y = 0; y < object_side; ++y)
            for (int x = 0; x < object_side; ++x)
                scene.image.at(x0 + x, y0 + y) = tex.at(sx + x, sy + y);
        return std::array<int, 2>{x0 + object_side / 2, y0 + object_side / 2};
    };

    // Alternate between the two diagonal quadrant pairs.
    if (bounded_rand(rng, 2) == 0) {
        scene.center_a = place(texture_a, 0, 0);
        scene.center_b = place(texture_b, 1, 1);
    } else {
        scene.center_a = place(texture_a, 1, 0);
        scene.center_b = place(texture_b, 0, 1);
    }
    return scene;
}

} // namespace wvc

#endif // WVC_SYNTH_HPP
