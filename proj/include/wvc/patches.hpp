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

#ifndef WVC_PATCHES_HPP
#define WVC_PATCHES_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wvc/error.hpp"
#include "wvc/pooling.hpp"
#include "wvc/util.hpp"

namespace wvc {

/// How S2 treats the borders of a C1 map.
enum class S2Mode {
    kValid,    // template must fully overlap the map (default pipeline)
    kPeriodic, // placements wrap; makes C2 exactly cyclic-shift invariant
};

inline S2Mode s2_mode_from_string(const std::string& s) {
    if (s == "valid") return S2Mode::kValid;
    if (s == "periodic") return S2Mode::kPeriodic;
    throw InvalidArgument("boundary mode must be 'valid' or 'periodic', got '" + s + "'");
}

inline const char* to_string(S2Mode m) {
    return m == S2Mode::kValid ? "valid" : "periodic";
}

/// An M x M x 3 template cut from training C1 maps, unit L2 norm.
/// values[(k*M + b)*M + a] weights orientation k at offset (a, b).
struct Patch {
    int side = 0;
    std::uint32_t source_image = 0;
    std::uint32_t source_scale = 0;
    std::uint32_t source_u = 0;
    std::uint32_t source_v = 0;
    std::vector<double> values;

    double& at(int a, int b, int k) {
        return values[(static_cast<std::size_t>(k) * side + b) * side + a];
    }
    double at(int a, int b, int k) const {
        return values[(static_cast<std::size_t>(k) * side + b) * side + a];
    }
};

struct PatchBank {
    std::vector<Patch> patches;
    std::vector<std::uint8_t> selection; // 1 = selected; all 1 before selection
    std::uint64_t rng_seed = 0;

    std::size_t selected_count() const {
        std::size_t n = 0;
        for (std::uint8_t s : selection) n += s;
        return n;
    }
};

/// How many patches of each side to learn; order is preserved by the
/// learning pass, so a fixed seed gives a fixed bank.
struct PatchCounts {
    std::vector<std::pair<int, int>> sizes = {{4, 250}, {8, 250}, {12, 250}, {16, 250}};

    int total() const {
        int n = 0;
        for (auto& [side, count] : sizes) n += count;
        return n;
    }
};

/// C2 argmax bookkeeping for one feature.
struct FeatureLocation {
    int u = -1;       // C1 column of the placement (0-based)
    int v = -1;       // C1 row
    int scale = 0;    // level j
    int image_x = -1; // patch center mapped back to image pixels
    int image_y = -1;
    bool fits = true; // false: patch fits at no scale, value is 0
};

struct FeatureVector {
    std::vector<double> values; // one per selected patch
    std::vector<FeatureLocation> locations;
    int unfit_count = 0;
};

/// Dense S2 correlation map of one patch at one level.
struct S2Response {
    int level = 0;
    int width = 0; // 0 x 0 when the patch does not fit at this level
    int height = 0;
    std::vector<double> values;
};

namespace detail {

inline double correlate_at(const std::vector<double>* maps, int map_w, const Patch& p, int u,
                           int v) {
    const int m = p.side;
    double s = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double* plane = maps[k].data();
        const double* tpl = &p.values[static_cast<std::size_t>(k) * m * m];
        for (int b = 0; b < m; ++b) {
            const double* row = plane + static_cast<std::size_t>(v + b) * map_w + u;
            const double* trow = tpl + static_cast<std::size_t>(b) * m;
            double acc = 0.0;
            for (int a = 0; a < m; ++a) acc += row[a] * trow[a];
            s += acc;
        }
    }
    return s;
}

inline double correlate_at_periodic(const std::vector<double>* maps, int map_w, int map_h,
                                    const Patch& p, int u, int v) {
    const int m = p.side;
    double s = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double* plane = maps[k].data();
        const double* tpl = &p.values[static_cast<std::size_t>(k) * m * m];
        for (int b = 0; b < m; ++b) {
            int y = v + b;
            if (y >= map_h) y -= map_h;
            const double* row = plane + static_cast<std::size_t>(y) * map_w;
            const double* trow = tpl + static_cast<std::size_t>(b) * m;
            double acc = 0.0;
            for (int a = 0; a < m; ++a) {
                int x = u + a;
                if (x >= map_w) x -= map_w;
                acc += row[x] * trow[a];
            }
            s += acc;
        }
    }
    return s;
}

inline bool patch_fits(const C1Stack& c1, int level, int side) {
    return c1.map_width(level) >= side && c1.map_height(level) >= side;
}

} // namespace detail

/// Learns N random patches from the training C1 stacks: uniform image,
/// uniform level among those where the window fits, uniform position.
/// Blocks are L2-normalized; zero-norm draws are rejected and redrawn.
inline PatchBank learn_patch_bank(const std::vector<C1Stack>& training,
                                  const PatchCounts& counts, std::uint64_t seed) {
    if (training.empty()) throw InvalidArgument("patch learning needs at least one C1 stack");
    PatchBank bank;
    bank.rng_seed = seed;
    std::mt19937_64 rng(seed);

    for (const auto& [side, count] : counts.sizes) {
        // Images with at least one level where an side x side window fits.
        std::vector<std::size_t> eligible;
        for (std::size_t i = 0; i < training.size(); ++i)
            for (int j = 1; j <= training[i].levels; ++j)
                if (detail::patch_fits(training[i], j, side)) {
                    eligible.push_back(i);
                    break;
                }
        if (eligible.empty())
            throw DataError("patch size " + std::to_string(side) +
                            " fits no level of any training image");

        for (int n = 0; n < count; ++n) {
            Patch p;
            p.side = side;
            p.values.resize(static_cast<std::size_t>(side) * side * 3);
            bool ok = false;
            for (int attempt = 0; attempt < 1000 && !ok; ++attempt) {
                const std::size_t img = eligible[bounded_rand(rng, eligible.size())];
                const C1Stack& c1 = training[img];
                std::vector<int> levels;
                for (int j = 1; j <= c1.levels; ++j)
                    if (detail::patch_fits(c1, j, side)) levels.push_back(j);
                const int j = levels[bounded_rand(rng, levels.size())];
                const int w = c1.map_width(j), h = c1.map_height(j);
                const int u = static_cast<int>(bounded_rand(rng, static_cast<std::uint64_t>(w - side + 1)));
                const int v = static_cast<int>(bounded_rand(rng, static_cast<std::uint64_t>(h - side + 1)));
                double norm_sq = 0.0;
                for (int k = 0; k < 3; ++k) {
                    const std::vector<double>& map = c1.map(j, k);
                    for (int b = 0; b < side; ++b)
                        for (int a = 0; a < side; ++a) {
                            const double val = map[static_cast<std::size_t>(v + b) * w + (u + a)];
                            p.at(a, b, k) = val;
                            norm_sq += val * val;
                        }
                }
                if (norm_sq > 0.0) {
                    const double inv = 1.0 / std::sqrt(norm_sq);
                    for (double& t : p.values) t *= inv;
                    p.source_image = static_cast<std::uint32_t>(img);
                    p.source_scale = static_cast<std::uint32_t>(j);
                    p.source_u = static_cast<std::uint32_t>(u);
                    p.source_v = static_cast<std::uint32_t>(v);
                    ok = true;
                }
            }
            if (!ok)
                throw DataError("patch learning retry budget exhausted for size " +
                                std::to_string(side) + " (all-zero C1 blocks)");
            bank.patches.push_back(std::move(p));
        }
    }
    bank.selection.assign(bank.patches.size(), 1);
    return bank;
}

/// Dense S2 map of one patch at one level (empty when it does not fit).
inline S2Response s2_response(const C1Stack& c1, const Patch& p, int level,
                              S2Mode mode = S2Mode::kValid) {
    S2Response r;
    r.level = level;
    if (!detail::patch_fits(c1, level, p.side)) return r;
    const int w = c1.map_width(level), h = c1.map_height(level);
    const std::vector<double>* maps = c1.maps[static_cast<std::size_t>(level - 1)].data();
    if (mode == S2Mode::kValid) {
        r.width = w - p.side + 1;
        r.height = h - p.side + 1;
    } else {
        r.width = w;
        r.height = h;
    }
    r.values.resize(static_cast<std::size_t>(r.width) * r.height);
    for (int v = 0; v < r.height; ++v)
        for (int u = 0; u < r.width; ++u)
            r.values[static_cast<std::size_t>(v) * r.width + u] =
                mode == S2Mode::kValid ? detail::correlate_at(maps, w, p, u, v)
                                       : detail::correlate_at_periodic(maps, w, h, p, u, v);
    return r;
}

/// C2(i) = max over (u,v,j) of the sliding inner products of patch i with
/// the C1 maps, at every level where the patch fits. Ties go to the
/// lexicographically smallest (j, v, u). Patches that fit nowhere yield a
/// zero value with a flagged sentinel location.
inline FeatureVector extract_features(const C1Stack& c1, const PatchBank& bank,
                                      S2Mode mode = S2Mode::kValid) {
    if (bank.patches.empty() || bank.selected_count() == 0)
        throw InvalidArgument("patch bank has no selected patches");
    if (c1.levels == 0) throw InvalidArgument("empty C1 stack");

    FeatureVector fv;
    fv.values.reserve(bank.selected_count());
    fv.locations.reserve(bank.selected_count());

    for (std::size_t i = 0; i < bank.patches.size(); ++i) {
        if (!bank.selection[i]) continue;
        const Patch& p = bank.patches[i];
        double best = 0.0;
        FeatureLocation loc;
        bool any = false;
        for (int j = 1; j <= c1.levels; ++j) {
            if (!detail::patch_fits(c1, j, p.side)) continue;
            const int w = c1.map_width(j), h = c1.map_height(j);
            const std::vector<double>* maps = c1.maps[static_cast<std::size_t>(j - 1)].data();
            const int u_end = mode == S2Mode::kValid ? w - p.side + 1 : w;
            const int v_end = mode == S2Mode::kValid ? h - p.side + 1 : h;
            for (int v = 0; v < v_end; ++v)
                for (int u = 0; u < u_end; ++u) {
                    const double s = mode == S2Mode::kValid
                                         ? detail::correlate_at(maps, w, p, u, v)
                                         : detail::correlate_at_periodic(maps, w, h, p, u, v);
                    // Ascending (j, v, u) scan order: strict > keeps the
                    // lexicographically smallest argmax on ties.
                    if (!any || s > best) {
                        any = true;
                        best = s;
                        loc.u = u;
                        loc.v = v;
                        loc.scale = j;
                    }
                }
        }
        if (!any) {
            fv.values.push_back(0.0);
            FeatureLocation sentinel;
            sentinel.fits = false;
            fv.locations.push_back(sentinel);
            ++fv.unfit_count;
            continue;
        }
        const int block = 1 << loc.scale;
        loc.image_x = std::min(c1.image_width - 1, block * (loc.u + p.side / 2));
        loc.image_y = std::min(c1.image_height - 1, block * (loc.v + p.side / 2));
        fv.values.push_back(best);
        fv.locations.push_back(loc);
    }
    return fv;
}

} // namespace wvc

#endif // WVC_PATCHES_HPP
