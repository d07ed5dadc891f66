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

#ifndef WVC_CONFIG_HPP
#define WVC_CONFIG_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <string>

#include "wvc/error.hpp"
#include "wvc/patches.hpp"
#include "wvc/wavelet.hpp"

namespace wvc {

/// Flat key=value UTF-8 file; '#' starts a comment, blank lines ignored.
inline std::map<std::string, std::string> parse_kv_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(f, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw DataError("config line " + std::to_string(lineno) + " is not key=value: " + path);
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

/// Pipeline configuration; defaults reproduce the standard experimental
/// setup (3 wavelet levels, 250 patches each of side 4/8/12/16, 200
/// selected features).
struct RunConfig {
    WaveletConfig wavelet;  // levels 3, epsilon 1e-8
    PatchCounts patch_counts;
    std::size_t select_k = 200;
    std::uint64_t seed = 0;
    int hist_bins = 64;
    bool hist_enabled = false;
    double hist_weight = 1.0;
    int feedback_k = 2;
    S2Mode s2_mode = S2Mode::kValid;
    unsigned jobs = 0;  // 0: hardware concurrency
    int min_side = 0;   // 0: no rescale on ingest
    int tile_side = 0;  // 0: no tiling on ingest

    void validate() const {
        wavelet.validate();
        if (patch_counts.sizes.empty()) throw InvalidArgument("no patch sizes configured");
        for (auto& [side, count] : patch_counts.sizes) {
            if (side < 2) throw InvalidArgument("patch side must be >= 2");
            if (count < 1) throw InvalidArgument("patch count must be >= 1");
        }
        if (select_k < 1) throw InvalidArgument("select k must be >= 1");
        if (hist_bins < 2) throw InvalidArgument("histogram bins must be >= 2");
        if (feedback_k < 1) throw InvalidArgument("feedback k must be >= 1");
        if (min_side != 0 && min_side < 16) throw InvalidArgument("min side must be >= 16");
        if (tile_side != 0 && tile_side < 16) throw InvalidArgument("tile side must be >= 16");
    }

    void apply(const std::map<std::string, std::string>& kv) {
        for (const auto& [key, val] : kv) {
            if (key == "levels") wavelet.levels = std::stoi(val);
            else if (key == "epsilon") wavelet.epsilon = std::stod(val);
            else if (key == "select_k") select_k = std::stoul(val);
            else if (key == "seed") seed = std::stoull(val);
            else if (key == "hist_bins") hist_bins = std::stoi(val);
            else if (key == "hist_enabled") hist_enabled = val == "1" || val == "true";
            else if (key == "hist_weight") hist_weight = std::stod(val);
            else if (key == "feedback_k") feedback_k = std::stoi(val);
            else if (key == "boundary") s2_mode = s2_mode_from_string(val);
            else if (key == "jobs") jobs = static_cast<unsigned>(std::stoul(val));
            else if (key == "min_side") min_side = std::stoi(val);
            else if (key == "tile") tile_side = std::stoi(val);
            else if (key == "patch_sizes") {
                // e.g. "4:250,8:250,12:250,16:250"
                PatchCounts pc;
                pc.sizes.clear();
                std::size_t start = 0;
                while (start < val.size()) {
                    std::size_t comma = val.find(',', start);
                    if (comma == std::string::npos) comma = val.size();
                    const std::string item = val.substr(start, comma - start);
                    const std::size_t colon = item.find(':');
                    if (colon == std::string::npos)
                        throw DataError("patch_sizes items must be side:count, got '" + item + "'");
                    pc.sizes.emplace_back(std::stoi(item.substr(0, colon)),
                                          std::stoi(item.substr(colon + 1)));
                    start = comma + 1;
                }
                patch_counts = pc;
            } else {
                throw DataError("unknown config key '" + key + "'");
            }
        }
    }
};

} // namespace wvc

#endif // WVC_CONFIG_HPP
