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

#ifndef WVC_WAVELET_HPP
#define WVC_WAVELET_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "wvc/error.hpp"
#include "wvc/image.hpp"

namespace wvc {

/// Orientation index of a detail map.
enum Orientation : int { kHorizontal = 0, kVertical = 1, kDiagonal = 2 };

struct WaveletConfig {
    int levels = 3;         // J, dyadic levels j = 1..J
    double epsilon = 1e-8;  // regularizer added to the energy denominator

    void validate() const {
        if (levels < 1 || levels > 6) throw InvalidArgument("wavelet levels must be in [1, 6]");
        if (epsilon < 0.0) throw InvalidArgument("epsilon must be >= 0");
    }
};

/// A 1D filter with an explicit center tap; taps[i] weights offset i - center.
struct CenteredFilter {
    std::vector<double> taps;
    int center = 0;

    int length() const { return static_cast<int>(taps.size()); }
    double l2_norm() const {
        double s = 0.0;
        for (double t : taps) s += t * t;
        return std::sqrt(s);
    }
};

namespace cdf97 {

// JPEG2000 analysis filters: 9-tap lowpass (DC gain 1) and 7-tap highpass
// (zero mean), both symmetric about the center tap.
inline const CenteredFilter& lowpass() {
    static const CenteredFilter f = [] {
        CenteredFilter lp;
        lp.taps = {0.026748757410810, -0.016864118442875, -0.078223266528990,
                   0.266864118442875, 0.602949018236360,  0.266864118442875,
                   -0.078223266528990, -0.016864118442875, 0.026748757410810};
        lp.center = 4;
        const double sum = std::accumulate(lp.taps.begin(), lp.taps.end(), 0.0);
        if (std::abs(sum - 1.0) > 1e-9) throw Error("CDF 9/7 lowpass DC gain is off");
        return lp;
    }();
    return f;
}

inline const CenteredFilter& highpass() {
    static const CenteredFilter f = [] {
        CenteredFilter hp;
        hp.taps = {0.091271763114250, -0.057543526228500, -0.591271763114250,
                   1.115087052457000, -0.591271763114250, -0.057543526228500,
                   0.091271763114250};
        hp.center = 3;
        const double sum = std::accumulate(hp.taps.begin(), hp.taps.end(), 0.0);
        if (std::abs(sum) > 1e-9) throw Error("CDF 9/7 highpass zeroth moment is off");
        return hp;
    }();
    return f;
}

} // namespace cdf97

/// Effective support length of the level-j cascade of an L-tap filter,
/// (L-1)(2^j - 1) + 1. Used for the S1 normalization window.
inline int support_len(int filter_len, int level) {
    return (filter_len - 1) * ((1 << level) - 1) + 1;
}

/// Per-axis S1 normalization window (x, y) for orientation k at level j.
/// The lowpass axis uses the 9-tap length, the highpass axis the 7-tap one.
inline std::array<int, 2> s1_window(int level, int orientation) {
    const int l9 = support_len(9, level);
    const int l7 = support_len(7, level);
    switch (orientation) {
        case kHorizontal: return {l9, l7}; // lowpass x, highpass y
        case kVertical: return {l7, l9};   // highpass x, lowpass y
        default: return {l7, l7};          // highpass both
    }
}

/// Convolves `a` with `b` upsampled by `dilation` (zeros between taps).
/// This is the composition law for successive correlation passes.
inline CenteredFilter compose(const CenteredFilter& a, const CenteredFilter& b, int dilation) {
    CenteredFilter out;
    out.taps.assign(a.taps.size() + static_cast<std::size_t>(dilation) * (b.taps.size() - 1), 0.0);
    out.center = a.center + dilation * b.center;
    for (std::size_t m = 0; m < b.taps.size(); ++m)
        for (std::size_t n = 0; n < a.taps.size(); ++n)
            out.taps[n + dilation * m] += a.taps[n] * b.taps[m];
    return out;
}

/// Equivalent 1D cascade filters at levels 1..J: lowpass[j-1] is the
/// composition of j dilated lowpass stages, highpass[j-1] replaces the
/// last stage by the highpass filter.
struct EquivalentFilters {
    std::vector<CenteredFilter> lowpass;
    std::vector<CenteredFilter> highpass;

    explicit EquivalentFilters(int levels) {
        CenteredFilter lp = cdf97::lowpass();
        CenteredFilter running{{1.0}, 0}; // identity
        for (int j = 1; j <= levels; ++j) {
            const int dilation = 1 << (j - 1);
            highpass.push_back(compose(running, cdf97::highpass(), dilation));
            running = compose(running, cdf97::lowpass(), dilation);
            lowpass.push_back(running);
        }
    }

    /// L2 norm of the separable 2D equivalent filter for (level, orientation).
    double norm2d(int level, int orientation) const {
        const double nl = lowpass[level - 1].l2_norm();
        const double nh = highpass[level - 1].l2_norm();
        switch (orientation) {
            case kHorizontal:
            case kVertical: return nl * nh;
            default: return nh * nh;
        }
    }
};

/// Full-resolution coefficient maps Wf(u,v,j,k) after unit-L2 equivalent
/// filter normalization, plus the level-J approximation A_J.
struct CoefficientStack {
    int width = 0;
    int height = 0;
    int levels = 0;
    std::vector<std::array<std::vector<double>, 3>> maps; // [j-1][k], row-major
    std::vector<double> approx;                           // A_J, row-major
};

/// S1(u,v,j,k): nonnegative normalized coefficients, same layout.
struct S1Stack {
    int width = 0;
    int height = 0;
    int levels = 0;
    std::vector<std::array<std::vector<double>, 3>> maps;
    std::vector<double> approx;
    WaveletConfig config;
};

namespace detail {

// Correlation along x with a dilated centered filter, periodic wrap:
// out(x,y) = sum_i taps[i] * in((x + s*(i - center)) mod W, y).
inline void row_pass(const std::vector<double>& in, std::vector<double>& out, int w, int h,
                     const CenteredFilter& f, int dilation) {
    const int n = f.length();
    std::vector<int> shift(static_cast<std::size_t>(n)); // per-tap offset, reduced mod w
    for (int i = 0; i < n; ++i) {
        int d = (dilation * (i - f.center)) % w;
        if (d < 0) d += w;
        shift[static_cast<std::size_t>(i)] = d;
    }
    for (int y = 0; y < h; ++y) {
        const double* src = &in[static_cast<std::size_t>(y) * w];
        double* dst = &out[static_cast<std::size_t>(y) * w];
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                int j = x + shift[static_cast<std::size_t>(i)];
                if (j >= w) j -= w;
                acc += f.taps[static_cast<std::size_t>(i)] * src[j];
            }
            dst[x] = acc;
        }
    }
}

// Correlation along y, periodic wrap.
inline void col_pass(const std::vector<double>& in, std::vector<double>& out, int w, int h,
                     const CenteredFilter& f, int dilation) {
    const int n = f.length();
    for (int y = 0; y < h; ++y) {
        double* dst = &out[static_cast<std::size_t>(y) * w];
        for (int x = 0; x < w; ++x) dst[x] = 0.0;
        for (int i = 0; i < n; ++i) {
            int j = (y + dilation * (i - f.center)) % h;
            if (j < 0) j += h;
            const double* src = &in[static_cast<std::size_t>(j) * w];
            const double t = f.taps[static_cast<std::size_t>(i)];
            for (int x = 0; x < w; ++x) dst[x] += t * src[x];
        }
    }
}

// Circular windowed sums along x: out(x,y) = sum of in over a centered
// window of `win` samples, periodic. Windows longer than the axis wrap
// fully `win / w` times plus a remainder.
inline void circular_window_x(const std::vector<double>& in, std::vector<double>& out, int w,
                              int h, int win) {
    const int half = (win - 1) / 2;
    const int copies = win / w;
    const int rem = win % w;
    std::vector<double> prefix(static_cast<std::size_t>(w) + 1);
    for (int y = 0; y < h; ++y) {
        const double* src = &in[static_cast<std::size_t>(y) * w];
        double* dst = &out[static_cast<std::size_t>(y) * w];
        prefix[0] = 0.0;
        for (int x = 0; x < w; ++x) prefix[static_cast<std::size_t>(x) + 1] = prefix[static_cast<std::size_t>(x)] + src[x];
        const double total = prefix[static_cast<std::size_t>(w)];
        for (int x = 0; x < w; ++x) {
            int start = (x - half) % w;
            if (start < 0) start += w;
            double s = copies * total;
            if (rem > 0) {
                const int end = start + rem;
                if (end <= w)
                    s += prefix[static_cast<std::size_t>(end)] - prefix[static_cast<std::size_t>(start)];
                else
                    s += (total - prefix[static_cast<std::size_t>(start)]) + prefix[static_cast<std::size_t>(end - w)];
            }
            dst[x] = s;
        }
    }
}

// Same along y.
inline void circular_window_y(const std::vector<double>& in, std::vector<double>& out, int w,
                              int h, int win) {
    const int half = (win - 1) / 2;
    const int copies = win / h;
    const int rem = win % h;
    std::vector<double> prefix(static_cast<std::size_t>(h) + 1);
    for (int x = 0; x < w; ++x) {
        prefix[0] = 0.0;
        for (int y = 0; y < h; ++y)
            prefix[static_cast<std::size_t>(y) + 1] = prefix[static_cast<std::size_t>(y)] + in[static_cast<std::size_t>(y) * w + x];
        const double total = prefix[static_cast<std::size_t>(h)];
        for (int y = 0; y < h; ++y) {
            int start = (y - half) % h;
            if (start < 0) start += h;
            double s = copies * total;
            if (rem > 0) {
                const int end = start + rem;
                if (end <= h)
                    s += prefix[static_cast<std::size_t>(end)] - prefix[static_cast<std::size_t>(start)];
                else
                    s += (total - prefix[static_cast<std::size_t>(start)]) + prefix[static_cast<std::size_t>(end - h)];
            }
            out[static_cast<std::size_t>(y) * w + x] = s;
        }
    }
}

} // namespace detail

/// Undecimated separable CDF 9/7 transform with periodic extension.
/// Every detail map is divided by the L2 norm of its equivalent 2D
/// cascade filter, so the equivalent wavelets have unit norm at every
/// level. Output maps keep the input resolution.
inline CoefficientStack swt_forward(const Image& img, const WaveletConfig& cfg) {
    cfg.validate();
    if (std::min(img.width, img.height) < (1 << cfg.levels) * 2)
        throw InvalidArgument("image too small for " + std::to_string(cfg.levels) +
                              " wavelet levels");
    static thread_local int cached_levels = 0;
    static thread_local std::vector<std::array<double, 3>> norms;
    if (cached_levels < cfg.levels) {
        EquivalentFilters eq(cfg.levels);
        norms.resize(static_cast<std::size_t>(cfg.levels));
        for (int j = 1; j <= cfg.levels; ++j)
            for (int k = 0; k < 3; ++k)
                norms[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k)] = eq.norm2d(j, k);
        cached_levels = cfg.levels;
    }

    const int w = img.width, h = img.height;
    const std::size_t npix = img.size();
    CoefficientStack out;
    out.width = w;
    out.height = h;
    out.levels = cfg.levels;
    out.maps.resize(static_cast<std::size_t>(cfg.levels));

    const CenteredFilter& lp = cdf97::lowpass();
    const CenteredFilter& hp = cdf97::highpass();

    std::vector<double> approx = img.data;
    std::vector<double> lo_x(npix), hi_x(npix), tmp(npix);
    for (int j = 1; j <= cfg.levels; ++j) {
        const int dilation = 1 << (j - 1);
        detail::row_pass(approx, lo_x, w, h, lp, dilation);
        detail::row_pass(approx, hi_x, w, h, hp, dilation);

        auto& level = out.maps[static_cast<std::size_t>(j - 1)];
        for (int k = 0; k < 3; ++k) level[static_cast<std::size_t>(k)].resize(npix);
        detail::col_pass(lo_x, level[kHorizontal], w, h, hp, dilation);
        detail::col_pass(hi_x, level[kVertical], w, h, lp, dilation);
        detail::col_pass(hi_x, level[kDiagonal], w, h, hp, dilation);
        detail::col_pass(lo_x, tmp, w, h, lp, dilation);
        approx.swap(tmp);

        for (int k = 0; k < 3; ++k) {
            const double inv = 1.0 / norms[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k)];
            for (double& v : level[static_cast<std::size_t>(k)]) v *= inv;
        }
    }
    out.approx = std::move(approx);
    return out;
}

/// S1(u,v,j,k) = |Wf(u,v,j,k)| / (E(u,v,j,k) + eps): the windowed L2 norm
/// of the image over the equivalent filter's support rectangle, centered at
/// (u,v) with periodic wrap, computed from circular prefix sums.
inline S1Stack s1_normalize(const CoefficientStack& raw, const Image& img,
                            const WaveletConfig& cfg) {
    cfg.validate();
    if (raw.width != img.width || raw.height != img.height || raw.levels != cfg.levels)
        throw InvalidArgument("coefficient stack does not match image/config");

    const int w = img.width, h = img.height;
    const std::size_t npix = img.size();
    S1Stack s1;
    s1.width = w;
    s1.height = h;
    s1.levels = cfg.levels;
    s1.config = cfg;
    s1.approx = raw.approx;
    s1.maps.resize(static_cast<std::size_t>(cfg.levels));

    std::vector<double> squared(npix);
    for (std::size_t i = 0; i < npix; ++i) squared[i] = img.data[i] * img.data[i];

    std::vector<double> sum9(npix), sum7(npix), energy(npix);
    for (int j = 1; j <= cfg.levels; ++j) {
        const int l9 = support_len(9, j);
        const int l7 = support_len(7, j);
        detail::circular_window_x(squared, sum9, w, h, l9);
        detail::circular_window_x(squared, sum7, w, h, l7);

        auto& level = s1.maps[static_cast<std::size_t>(j - 1)];
        for (int k = 0; k < 3; ++k) {
            const auto win = s1_window(j, k);
            const std::vector<double>& colsum = win[0] == l9 ? sum9 : sum7;
            detail::circular_window_y(colsum, energy, w, h, win[1]);
            auto& map = level[static_cast<std::size_t>(k)];
            map.resize(npix);
            const std::vector<double>& wf = raw.maps[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k)];
            for (std::size_t i = 0; i < npix; ++i)
                map[i] = std::abs(wf[i]) / (std::sqrt(std::max(energy[i], 0.0)) + cfg.epsilon);
        }
    }
    return s1;
}

/// Equal-width histogram of the approximation coefficients over
/// [min, max], normalized to sum 1. A degenerate range puts all mass
/// in bin 0.
inline std::vector<double> approx_histogram(const S1Stack& s1, int bins) {
    if (bins < 2) throw InvalidArgument("histogram needs at least 2 bins");
    std::vector<double> hist(static_cast<std::size_t>(bins), 0.0);
    const auto& a = s1.approx;
    const auto [mn_it, mx_it] = std::minmax_element(a.begin(), a.end());
    const double mn = *mn_it, mx = *mx_it;
    if (mx <= mn) {
        hist[0] = 1.0;
        return hist;
    }
    const double inv_width = bins / (mx - mn);
    for (double v : a) {
        int b = static_cast<int>((v - mn) * inv_width);
        if (b >= bins) b = bins - 1;
        hist[static_cast<std::size_t>(b)] += 1.0;
    }
    const double inv_n = 1.0 / static_cast<double>(a.size());
    for (double& v : hist) v *= inv_n;
    return hist;
}

} // namespace wvc

#endif // WVC_WAVELET_HPP
