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

#ifndef WVC_FEEDBACK_HPP
#define WVC_FEEDBACK_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "wvc/classify.hpp"
#include "wvc/error.hpp"
#include "wvc/util.hpp"

namespace wvc {

struct ClusterResult {
    std::vector<int> assignments;
    std::vector<std::array<double, 2>> centroids;
    double inertia = 0.0;
    std::vector<double> inertia_history; // one entry per Lloyd iteration
    int iterations = 0;
};

namespace detail {

inline double sq_dist(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1];
    return dx * dx + dy * dy;
}

} // namespace detail

/// Seeded k-means++ initialization followed by Lloyd iterations until the
/// assignment reaches a fixpoint (or 100 iterations). Empty clusters are
/// repaired by stealing the point farthest from its current centroid.
/// Deterministic for a fixed seed.
inline ClusterResult kmeans_cluster(const std::vector<std::array<double, 2>>& points, int k,
                                    std::uint64_t seed) {
    const std::size_t n = points.size();
    if (k < 1) throw InvalidArgument("k must be >= 1");
    if (static_cast<std::size_t>(k) > n)
        throw InvalidArgument("k exceeds the number of points (" + std::to_string(k) + " > " +
                              std::to_string(n) + ")");

    std::mt19937_64 rng(seed);
    ClusterResult res;
    res.centroids.reserve(static_cast<std::size_t>(k));

    // k-means++ seeding: first centroid uniform, then D^2-weighted.
    res.centroids.push_back(points[bounded_rand(rng, n)]);
    std::vector<double> d2(n);
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& ctr : res.centroids) best = std::min(best, detail::sq_dist(points[i], ctr));
            d2[i] = best;
            total += best;
        }
        std::size_t pick;
        if (total <= 0.0) {
            pick = bounded_rand(rng, n); // all remaining points coincide with a centroid
        } else {
            const double target = uniform_double(rng) * total;
            double acc = 0.0;
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= target) {
                    pick = i;
                    break;
                }
            }
        }
        res.centroids.push_back(points[pick]);
    }

    res.assignments.assign(n, -1);
    std::vector<int> fresh(n, -1);
    for (int iter = 0; iter < 100; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            int best_c = 0;
            for (int c = 0; c < k; ++c) {
                const double d = detail::sq_dist(points[i], res.centroids[static_cast<std::size_t>(c)]);
                if (d < best) {
                    best = d;
                    best_c = c;
                }
            }
            fresh[i] = best_c;
        }

        std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < n; ++i) ++sizes[static_cast<std::size_t>(fresh[i])];
        for (int c = 0; c < k; ++c) {
            if (sizes[static_cast<std::size_t>(c)] > 0) continue;
            // Steal the point farthest from its centroid, from a donor
            // cluster that keeps at least one member.
            double worst = -1.0;
            std::size_t worst_i = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (sizes[static_cast<std::size_t>(fresh[i])] < 2) continue;
                const double d = detail::sq_dist(points[i], res.centroids[static_cast<std::size_t>(fresh[i])]);
                if (d > worst) {
                    worst = d;
                    worst_i = i;
                }
            }
            --sizes[static_cast<std::size_t>(fresh[worst_i])];
            fresh[worst_i] = c;
            ++sizes[static_cast<std::size_t>(c)];
        }

        const bool converged = fresh == res.assignments;
        res.assignments = fresh;
        res.iterations = iter + 1;

        std::vector<std::array<double, 2>> sums(static_cast<std::size_t>(k), {0.0, 0.0});
        for (std::size_t i = 0; i < n; ++i) {
            sums[static_cast<std::size_t>(fresh[i])][0] += points[i][0];
            sums[static_cast<std::size_t>(fresh[i])][1] += points[i][1];
        }
        for (int c = 0; c < k; ++c) {
            res.centroids[static_cast<std::size_t>(c)] = {
                sums[static_cast<std::size_t>(c)][0] / sizes[static_cast<std::size_t>(c)],
                sums[static_cast<std::size_t>(c)][1] / sizes[static_cast<std::size_t>(c)]};
        }

        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            inertia += detail::sq_dist(points[i], res.centroids[static_cast<std::size_t>(fresh[i])]);
        res.inertia = inertia;
        res.inertia_history.push_back(inertia);

        if (converged) break;
    }
    return res;
}

/// One reclassified cluster of C2 argmax locations.
struct ClusterLabel {
    int cluster = 0;
    std::string label;
    bool low_confidence = false;
    double centroid_x = 0.0;
    double centroid_y = 0.0;
    double distance = 0.0;
    std::vector<std::size_t> members; // feature indices (columns of the model)
};

/// Clusters the argmax locations of the feature vector, then runs 1-NN per
/// cluster between the query restricted to that cluster's columns and the
/// training rows restricted to the same columns. Features whose patch fits
/// at no scale carry no location and never join a cluster. Clusters smaller
/// than min_members are labeled but flagged low-confidence.
inline std::vector<ClusterLabel> feedback_classify(const NNModel& model, const FeatureVector& fv,
                                                   int k, std::uint64_t seed,
                                                   std::size_t min_members = 5) {
    if (fv.values.size() != model.train_features.cols)
        throw DataError("feature width does not match model");

    std::vector<std::array<double, 2>> points;
    std::vector<std::size_t> point_cols;
    for (std::size_t i = 0; i < fv.locations.size(); ++i) {
        if (!fv.locations[i].fits) continue;
        points.push_back({static_cast<double>(fv.locations[i].image_x),
                          static_cast<double>(fv.locations[i].image_y)});
        point_cols.push_back(i);
    }
    const ClusterResult clusters = kmeans_cluster(points, k, seed);

    std::vector<ClusterLabel> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) {
        ClusterLabel cl;
        cl.cluster = c;
        cl.centroid_x = clusters.centroids[static_cast<std::size_t>(c)][0];
        cl.centroid_y = clusters.centroids[static_cast<std::size_t>(c)][1];
        for (std::size_t i = 0; i < points.size(); ++i)
            if (clusters.assignments[i] == c) cl.members.push_back(point_cols[i]);
        const Prediction pred = nn_predict_restricted(model, fv.values, cl.members);
        cl.label = pred.label;
        cl.distance = pred.distance;
        cl.low_confidence = cl.members.size() < min_members;
        out.push_back(std::move(cl));
    }
    return out;
}

} // namespace wvc

#endif // WVC_FEEDBACK_HPP
