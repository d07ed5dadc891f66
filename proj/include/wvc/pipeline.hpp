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

#ifndef WVC_PIPELINE_HPP
#define WVC_PIPELINE_HPP

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "wvc/classify.hpp"
#include "wvc/config.hpp"
#include "wvc/feedback.hpp"
#include "wvc/image.hpp"
#include "wvc/image_io.hpp"
#include "wvc/manifest.hpp"
#include "wvc/patches.hpp"
#include "wvc/pooling.hpp"
#include "wvc/select.hpp"
#include "wvc/util.hpp"
#include "wvc/wavelet.hpp"

namespace wvc {

/// S1 then C1 for one image.
inline C1Stack compute_c1(const Image& img, const WaveletConfig& cfg) {
    const CoefficientStack raw = swt_forward(img, cfg);
    const S1Stack s1 = s1_normalize(raw, img, cfg);
    return c1_pool(s1);
}

/// Features plus (optionally) the approximation-coefficient histogram.
struct ImageFeatures {
    FeatureVector features;
    std::vector<double> hist; // empty when histograms are off
};

inline ImageFeatures compute_features(const Image& img, const RunConfig& cfg,
                                      const PatchBank& bank) {
    const CoefficientStack raw = swt_forward(img, cfg.wavelet);
    const S1Stack s1 = s1_normalize(raw, img, cfg.wavelet);
    ImageFeatures out;
    out.features = extract_features(c1_pool(s1), bank, cfg.s2_mode);
    if (cfg.hist_enabled) out.hist = approx_histogram(s1, cfg.hist_bins);
    return out;
}

/// Ingest transform shared by train/predict/evaluate: optional min-side
/// rescale, optional tiling. Without tiling, one sample per image.
inline std::vector<Image> ingest_samples(const Image& decoded, const RunConfig& cfg) {
    Image img = decoded;
    if (cfg.min_side > 0) img = rescale_min_side(img, cfg.min_side);
    if (cfg.tile_side > 0) return tile(img, cfg.tile_side);
    return {std::move(img)};
}

/// Trains the model: C1 stacks for all training samples, random patch
/// bank, full-bank features, variance selection, optional histograms.
inline NNModel train_model(const DatasetManifest& manifest, const RunConfig& cfg) {
    cfg.validate();
    const auto train = manifest.split_entries(Split::kTrain);
    if (train.empty()) throw DataError("manifest has no training entries");

    // Decode and expand every training entry into samples.
    std::vector<Image> samples;
    std::vector<std::string> labels;
    for (const ManifestEntry* e : train) {
        for (Image& s : ingest_samples(decode_grayscale(e->path), cfg)) {
            samples.push_back(std::move(s));
            labels.push_back(e->label);
        }
    }

    std::vector<C1Stack> stacks(samples.size());
    std::vector<std::vector<double>> hists(samples.size());
    std::vector<S1Stack> s1_keep; // only when histograms are on
    parallel_for(samples.size(), cfg.jobs, [&](std::size_t i) {
        const CoefficientStack raw = swt_forward(samples[i], cfg.wavelet);
        const S1Stack s1 = s1_normalize(raw, samples[i], cfg.wavelet);
        stacks[i] = c1_pool(s1);
        if (cfg.hist_enabled) hists[i] = approx_histogram(s1, cfg.hist_bins);
    });

    PatchBank bank = learn_patch_bank(stacks, cfg.patch_counts, cfg.seed);

    FeatureMatrix full;
    full.rows = stacks.size();
    full.cols = bank.patches.size();
    full.values.resize(full.rows * full.cols);
    parallel_for(stacks.size(), cfg.jobs, [&](std::size_t i) {
        const FeatureVector fv = extract_features(stacks[i], bank, cfg.s2_mode);
        std::copy(fv.values.begin(), fv.values.end(), full.values.begin() + static_cast<std::ptrdiff_t>(i * full.cols));
    });

    const std::size_t k = std::min(cfg.select_k, full.cols);
    SelectionReport report = select_features(full, k);
    apply_selection(bank, report);

    // Restrict the stored training features to the selected columns,
    // in bank order.
    std::vector<std::size_t> kept_sorted(report.kept);
    std::sort(kept_sorted.begin(), kept_sorted.end());
    NNModel model;
    model.train_features.rows = full.rows;
    model.train_features.cols = kept_sorted.size();
    model.train_features.values.resize(full.rows * kept_sorted.size());
    for (std::size_t r = 0; r < full.rows; ++r)
        for (std::size_t c = 0; c < kept_sorted.size(); ++c)
            model.train_features.at(r, c) = full.at(r, kept_sorted[c]);

    if (cfg.hist_enabled) {
        model.train_hists.rows = hists.size();
        model.train_hists.cols = static_cast<std::size_t>(cfg.hist_bins);
        model.train_hists.values.resize(model.train_hists.rows * model.train_hists.cols);
        for (std::size_t r = 0; r < hists.size(); ++r)
            std::copy(hists[r].begin(), hists[r].end(),
                      model.train_hists.values.begin() + static_cast<std::ptrdiff_t>(r * model.train_hists.cols));
    }

    model.bank = std::move(bank);
    model.labels = std::move(labels);
    model.wavelet = cfg.wavelet;
    model.s2_mode = cfg.s2_mode;
    model.options.hist_bins = cfg.hist_enabled ? cfg.hist_bins : 0;
    model.options.hist_weight = cfg.hist_weight;
    model.variances = std::move(report.variances);
    model.seed = cfg.seed;
    model.validate();
    model.finalize();
    return model;
}

/// Builds the RunConfig implied by a loaded model (for feature extraction
/// on queries).
inline RunConfig config_from_model(const NNModel& model) {
    RunConfig cfg;
    cfg.wavelet = model.wavelet;
    cfg.s2_mode = model.s2_mode;
    cfg.hist_enabled = model.has_hists();
    cfg.hist_bins = model.has_hists() ? static_cast<int>(model.train_hists.cols) : cfg.hist_bins;
    cfg.hist_weight = model.options.hist_weight;
    cfg.seed = model.seed;
    return cfg;
}

struct PredictionRow {
    std::string path;
    std::string label; // predicted
    double distance = 0.0;
    std::size_t neighbor = 0;
};

/// Predicts one decoded image (after ingest transforms each sample votes;
/// with tiling enabled the row reports the first tile's prediction chain).
inline PredictionRow predict_image(const NNModel& model, const Image& img, const RunConfig& cfg,
                                   const std::string& path) {
    const ImageFeatures f = compute_features(img, cfg, model.bank);
    const Prediction p =
        nn_predict(model, f.features.values, model.has_hists() ? &f.hist : nullptr);
    return {path, p.label, p.distance, p.neighbor};
}

struct EvaluationReport {
    std::size_t total = 0;
    std::size_t correct = 0;
    std::vector<std::string> class_names; // sorted unique test labels
    std::vector<std::vector<std::size_t>> confusion; // [true][predicted]
    struct PerClass {
        std::string name;
        double fpr = 0.0;
        double tpr = 0.0;
        double proportion = 0.0;
        double roc = 0.0;
    };
    std::vector<PerClass> per_class; // one-vs-rest
    std::vector<PredictionRow> rows;
    std::vector<std::string> truths;

    double accuracy() const {
        return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
    }
};

/// Evaluates the model on the manifest's test split. Tiling expands each
/// test image into independently scored samples.
inline EvaluationReport evaluate_model(const NNModel& model, const DatasetManifest& manifest,
                                       const RunConfig& cfg) {
    const auto test = manifest.split_entries(Split::kTest);
    if (test.empty()) throw DataError("manifest has no test entries");

    struct Sample {
        Image img;
        std::string path;
        std::string label;
    };
    std::vector<Sample> samples;
    for (const ManifestEntry* e : test) {
        const Image decoded = decode_grayscale(e->path);
        std::size_t idx = 0;
        for (Image& s : ingest_samples(decoded, cfg)) {
            std::string name = e->path;
            if (cfg.tile_side > 0) name += "#" + std::to_string(idx++);
            samples.push_back({std::move(s), std::move(name), e->label});
        }
    }

    EvaluationReport report;
    report.rows.resize(samples.size());
    parallel_for(samples.size(), cfg.jobs, [&](std::size_t i) {
        report.rows[i] = predict_image(model, samples[i].img, cfg, samples[i].path);
    });

    std::set<std::string> names;
    for (const auto& s : samples) names.insert(s.label);
    for (const auto& row : report.rows) names.insert(row.label);
    report.class_names.assign(names.begin(), names.end());
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < report.class_names.size(); ++i)
        index[report.class_names[i]] = i;

    report.confusion.assign(report.class_names.size(),
                            std::vector<std::size_t>(report.class_names.size(), 0));
    report.total = samples.size();
    report.truths.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        report.truths.push_back(samples[i].label);
        ++report.confusion[index[samples[i].label]][index[report.rows[i].label]];
        if (samples[i].label == report.rows[i].label) ++report.correct;
    }

    // One-vs-rest ROC accuracy per class.
    for (const std::string& name : report.class_names) {
        EvaluationReport::PerClass pc;
        pc.name = name;
        std::size_t tp = 0, fp = 0, pos = 0, neg = 0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const bool truth_pos = samples[i].label == name;
            const bool pred_pos = report.rows[i].label == name;
            if (truth_pos) {
                ++pos;
                if (pred_pos) ++tp;
            } else {
                ++neg;
                if (pred_pos) ++fp;
            }
        }
        pc.tpr = pos == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(pos);
        pc.fpr = neg == 0 ? 0.0 : static_cast<double>(fp) / static_cast<double>(neg);
        pc.proportion = static_cast<double>(pos) / static_cast<double>(samples.size());
        pc.roc = roc_accuracy(pc.fpr, pc.tpr, pc.proportion);
        report.per_class.push_back(std::move(pc));
    }
    return report;
}

} // namespace wvc

#endif // WVC_PIPELINE_HPP
