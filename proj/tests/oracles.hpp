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
//
// Naive reference implementations used as test oracles. Everything here is
// written independently of the library's transform paths: plain nested
// loops, explicit wrapping, no shared helpers beyond the filter constants
// themselves (which are validated separately by moment checks).

#ifndef WVC_TESTS_ORACLES_HPP
#define WVC_TESTS_ORACLES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "wvc/image.hpp"
#include "wvc/patches.hpp"
#include "wvc/pooling.hpp"
#include "wvc/util.hpp"

namespace oracle {

// --- small helpers -----------------------------------------------------------

inline wvc::Image random_image(int w, int h, std::uint64_t seed, double lo = 0.0,
                               double hi = 1.0) {
    std::mt19937_64 rng(seed);
    wvc::Image img(w, h);
    for (double& v : img.data) v = lo + (hi - lo) * wvc::uniform_double(rng);
    return img;
}

inline int wrap(int i, int n) {
    i %= n;
    return i < 0 ? i + n : i;
}

// Exact 2x bilinear zoom aligned at the origin, periodic at the far edge:
// out[2i] = in[i], out[2i+1] = (in[i] + in[i+1]) / 2.
inline wvc::Image upsample2x_periodic(const wvc::Image& in) {
    wvc::Image rows(in.width * 2, in.height);
    for (int y = 0; y < in.height; ++y)
        for (int x = 0; x < in.width; ++x) {
            rows.at(2 * x, y) = in.at(x, y);
            rows.at(2 * x + 1, y) = 0.5 * (in.at(x, y) + in.at(wrap(x + 1, in.width), y));
        }
    wvc::Image out(in.width * 2, in.height * 2);
    for (int y = 0; y < in.height; ++y)
        for (int x = 0; x < out.width; ++x) {
            out.at(x, 2 * y) = rows.at(x, y);
            out.at(x, 2 * y + 1) = 0.5 * (rows.at(x, y) + rows.at(x, wrap(y + 1, in.height)));
        }
    return out;
}

// --- wavelet oracles ---------------------------------------------------------

// Centered 1D filter for the oracle's own cascade construction.
struct Filter1D {
    std::vector<double> taps;
    int center = 0;
};

// Plain convolution of a with b upsampled by `dilation`.
inline Filter1D conv_dilated(const Filter1D& a, const Filter1D& b, int dilation) {
    Filter1D out;
    out.taps.assign(a.taps.size() + static_cast<std::size_t>(dilation) * (b.taps.size() - 1), 0.0);
    out.center = a.center + dilation * b.center;
    for (std::size_t m = 0; m < b.taps.size(); ++m)
        for (std::size_t n = 0; n < a.taps.size(); ++n)
            out.taps[n + dilation * m] += a.taps[n] * b.taps[m];
    return out;
}

// Equivalent cascade filters built with the oracle's own composition.
struct Cascade {
    std::vector<Filter1D> low;  // level j at index j-1
    std::vector<Filter1D> high;

    Cascade(const Filter1D& lp, const Filter1D& hp, int levels) {
        Filter1D running{{1.0}, 0};
        for (int j = 1; j <= levels; ++j) {
            const int dilation = 1 << (j - 1);
            high.push_back(conv_dilated(running, hp, dilation));
            running = conv_dilated(running, lp, dilation);
            low.push_back(running);
        }
    }
};

// The definitional double sum with the separable equivalent wavelet,
// periodic wrap, evaluated at one (u, v):
//   Wf(u,v) = sum_{p,q} f((u+p) mod W, (v+q) mod H) fx[p] fy[q] / ||fx x fy||
inline double double_sum_coefficient(const wvc::Image& img, const Filter1D& fx,
                                     const Filter1D& fy, int u, int v) {
    double acc = 0.0;
    for (std::size_t qi = 0; qi < fy.taps.size(); ++qi) {
        const int q = static_cast<int>(qi) - fy.center;
        const int y = wrap(v + q, img.height);
        for (std::size_t pi = 0; pi < fx.taps.size(); ++pi) {
            const int p = static_cast<int>(pi) - fx.center;
            const int x = wrap(u + p, img.width);
            acc += img.at(x, y) * fx.taps[pi] * fy.taps[qi];
        }
    }
    double nx = 0.0, ny = 0.0;
    for (double t : fx.taps) nx += t * t;
    for (double t : fy.taps) ny += t * t;
    return acc / std::sqrt(nx * ny);
}

// Windowed image L2 norm over a wx x wy rectangle centered at (u, v),
// periodic wrap, by explicit summation.
inline double windowed_norm(const wvc::Image& img, int u, int v, int wx, int wy) {
    const int hx = (wx - 1) / 2, hy = (wy - 1) / 2;
    double acc = 0.0;
    for (int q = -hy; q <= wy - 1 - hy; ++q)
        for (int p = -hx; p <= wx - 1 - hx; ++p) {
            const double f = img.at(wrap(u + p, img.width), wrap(v + q, img.height));
            acc += f * f;
        }
    return std::sqrt(acc);
}

// --- pooling oracle ----------------------------------------------------------

inline std::vector<double> naive_maxpool(const std::vector<double>& map, int w, int h,
                                         int block) {
    const int ow = w / block, oh = h / block;
    std::vector<double> out(static_cast<std::size_t>(ow) * oh,
                            -std::numeric_limits<double>::infinity());
    for (int v = 0; v < oh; ++v)
        for (int u = 0; u < ow; ++u)
            for (int dy = 0; dy < block; ++dy)
                for (int dx = 0; dx < block; ++dx)
                    out[static_cast<std::size_t>(v) * ow + u] =
                        std::max(out[static_cast<std::size_t>(v) * ow + u],
                                 map[static_cast<std::size_t>(v * block + dy) * w + u * block + dx]);
    return out;
}

// --- S2/C2 oracle ------------------------------------------------------------

struct NaiveC2 {
    double value = 0.0;
    int u = -1, v = -1, scale = 0;
    bool fits = false;
};

// Five nested loops (scale, v, u, then the window sums), valid placements
// only, explicit (j, v, u) lexicographic tie handling.
inline NaiveC2 naive_c2(const wvc::C1Stack& c1, const wvc::Patch& p) {
    NaiveC2 best;
    for (int j = 1; j <= c1.levels; ++j) {
        const int w = c1.map_width(j), h = c1.map_height(j);
        if (w < p.side || h < p.side) continue;
        for (int v = 0; v <= h - p.side; ++v)
            for (int u = 0; u <= w - p.side; ++u) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k)
                    for (int b = 0; b < p.side; ++b)
                        for (int a = 0; a < p.side; ++a)
                            s += c1.map(j, k)[static_cast<std::size_t>(v + b) * w + (u + a)] *
                                 p.at(a, b, k);
                const bool better =
                    !best.fits || s > best.value ||
                    (s == best.value &&
                     std::array<int, 3>{j, v, u} <
                         std::array<int, 3>{best.scale, best.v, best.u});
                if (better) {
                    best.fits = true;
                    best.value = s;
                    best.u = u;
                    best.v = v;
                    best.scale = j;
                }
            }
    }
    return best;
}

// --- NN oracle ---------------------------------------------------------------

// Exhaustive scan in z-scored space; mean/std recomputed here from scratch.
inline std::size_t naive_nn(const std::vector<std::vector<double>>& train,
                            const std::vector<double>& query) {
    const std::size_t rows = train.size(), cols = query.size();
    std::vector<double> mean(cols, 0.0), sd(cols, 1.0);
    for (std::size_t c = 0; c < cols; ++c) {
        double mu = 0.0;
        for (const auto& r : train) mu += r[c];
        mu /= static_cast<double>(rows);
        double var = 0.0;
        for (const auto& r : train) var += (r[c] - mu) * (r[c] - mu);
        var /= static_cast<double>(rows);
        mean[c] = mu;
        sd[c] = var > 0.0 ? std::sqrt(var) : 1.0;
    }
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_r = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        double d2 = 0.0;
        for (std::size_t c = 0; c < cols; ++c) {
            const double d = (query[c] - train[r][c]) / sd[c];
            d2 += d * d;
        }
        if (d2 < best) {
            best = d2;
            best_r = r;
        }
    }
    return best_r;
}

// --- k-means oracle ----------------------------------------------------------

// Global optimum of 2-means by brute force over all 2-partitions.
inline double best_two_partition_inertia(const std::vector<std::array<double, 2>>& pts) {
    const std::size_t n = pts.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
        std::array<double, 2> sum0{0, 0}, sum1{0, 0};
        std::size_t n0 = 0, n1 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                sum1[0] += pts[i][0];
                sum1[1] += pts[i][1];
                ++n1;
            } else {
                sum0[0] += pts[i][0];
                sum0[1] += pts[i][1];
                ++n0;
            }
        }
        const std::array<double, 2> c0{sum0[0] / n0, sum0[1] / n0};
        const std::array<double, 2> c1{sum1[0] / n1, sum1[1] / n1};
        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& c = (mask & (1u << i)) ? c1 : c0;
            const double dx = pts[i][0] - c[0], dy = pts[i][1] - c[1];
            inertia += dx * dx + dy * dy;
        }
        best = std::min(best, inertia);
    }
    return best;
}

// --- spectrum oracle ---------------------------------------------------------

// Direct Hann-windowed DFT magnitude of one frame at one bin.
inline double direct_dft_magnitude(const double* samples, int frame, int bin) {
    std::complex<double> acc(0.0, 0.0);
    for (int n = 0; n < frame; ++n) {
        const double w = 0.5 * (1.0 - std::cos(2.0 * M_PI * n / frame));
        const double ang = -2.0 * M_PI * bin * n / frame;
        acc += samples[n] * w * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return std::abs(acc);
}

} // namespace oracle

#endif // WVC_TESTS_ORACLES_HPP
