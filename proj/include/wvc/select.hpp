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

#ifndef WVC_SELECT_HPP
#define WVC_SELECT_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "wvc/error.hpp"
#include "wvc/patches.hpp"

namespace wvc {

/// Row-major matrix of training features: rows = images, cols = patches.
struct FeatureMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

struct SelectionReport {
    std::vector<double> variances;   // per patch, population variance over rows
    std::vector<std::size_t> kept;   // retained indices, variance descending
    std::size_t k = 0;
};

/// Keeps the k columns of highest population variance; ties go to the
/// smaller patch index.
inline SelectionReport select_features(const FeatureMatrix& training, std::size_t k) {
    if (training.rows < 2)
        throw InvalidArgument("feature selection needs at least 2 training rows");
    if (k < 1 || k > training.cols)
        throw InvalidArgument("selection k must be in [1, patch count]");

    SelectionReport report;
    report.k = k;
    report.variances.resize(training.cols);
    const double inv_n = 1.0 / static_cast<double>(training.rows);
    for (std::size_t c = 0; c < training.cols; ++c) {
        double mean = 0.0;
        for (std::size_t r = 0; r < training.rows; ++r) mean += training.at(r, c);
        mean *= inv_n;
        double var = 0.0;
        for (std::size_t r = 0; r < training.rows; ++r) {
            const double d = training.at(r, c) - mean;
            var += d * d;
        }
        report.variances[c] = var * inv_n;
    }

    std::vector<std::size_t> order(training.cols);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return report.variances[a] > report.variances[b];
    });
    report.kept.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    return report;
}

/// Writes the report into the bank's selection mask.
inline void apply_selection(PatchBank& bank, const SelectionReport& report) {
    if (report.variances.size() != bank.patches.size())
        throw InvalidArgument("selection report does not match bank size");
    bank.selection.assign(bank.patches.size(), 0);
    for (std::size_t idx : report.kept) bank.selection[idx] = 1;
}

} // namespace wvc

#endif // WVC_SELECT_HPP
