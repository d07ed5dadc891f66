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

#ifndef WVC_CLASSIFY_HPP
#define WVC_CLASSIFY_HPP

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "wvc/binio.hpp"
#include "wvc/error.hpp"
#include "wvc/patches.hpp"
#include "wvc/select.hpp"
#include "wvc/wavelet.hpp"

namespace wvc {

/// Optional feature blocks appended to the C2 vector.
struct FeatureOptions {
    int hist_bins = 0;         // 0: approximation histogram disabled
    double hist_weight = 1.0;  // weight of the histogram block in the metric
};

/// Nearest-neighbor model: patch bank with selection mask, raw training
/// features (selected columns), optional histograms, one label per row.
struct NNModel {
    static constexpr std::uint32_t kFormatVersion = 1;

    PatchBank bank;
    FeatureMatrix train_features;
    FeatureMatrix train_hists; // rows == 0 when histograms are off
    std::vector<std::string> labels;
    WaveletConfig wavelet;
    S2Mode s2_mode = S2Mode::kValid;
    FeatureOptions options;
    std::vector<double> variances; // per bank patch, from the selection pass
    std::uint64_t seed = 0;

    // Derived z-scoring statistics; populated by finalize().
    std::vector<double> feat_mean, feat_scale;
    std::vector<double> hist_mean, hist_scale;

    bool has_hists() const { return train_hists.rows > 0; }

    /// Recomputes per-coordinate training mean and scale (population
    /// standard deviation; zero deviations are replaced by 1 so constant
    /// coordinates contribute nothing).
    void finalize() {
        compute_stats(train_features, feat_mean, feat_scale);
        compute_stats(train_hists, hist_mean, hist_scale);
    }

    void validate() const {
        if (train_features.rows == 0) throw DataError("model has no training rows");
        if (labels.size() != train_features.rows)
            throw DataError("label count does not match training rows");
        if (has_hists() && train_hists.rows != train_features.rows)
            throw DataError("histogram rows do not match training rows");
        if (train_features.cols != bank.selected_count())
            throw DataError("feature width does not match selected patch count");
    }

private:
    static void compute_stats(const FeatureMatrix& m, std::vector<double>& mean,
                              std::vector<double>& scale) {
        mean.assign(m.cols, 0.0);
        scale.assign(m.cols, 1.0);
        if (m.rows == 0) return;
        const double inv_n = 1.0 / static_cast<double>(m.rows);
        for (std::size_t c = 0; c < m.cols; ++c) {
            double mu = 0.0;
            for (std::size_t r = 0; r < m.rows; ++r) mu += m.at(r, c);
            mu *= inv_n;
            double var = 0.0;
            for (std::size_t r = 0; r < m.rows; ++r) {
                const double d = m.at(r, c) - mu;
                var += d * d;
            }
            var *= inv_n;
            mean[c] = mu;
            scale[c] = var > 0.0 ? std::sqrt(var) : 1.0;
        }
    }
};

struct Prediction {
    std::string label;
    double distance = 0.0;
    std::size_t neighbor = 0;
};

/// 1-NN under the Euclidean metric over [z(C2) || w * z(hist)];
/// ties go to the smaller training row index.
inline Prediction nn_predict(const NNModel& model, const std::vector<double>& feature,
                             const std::vector<double>* hist = nullptr) {
    if (feature.size() != model.train_features.cols)
        throw DataError("feature width " + std::to_string(feature.size()) +
                        " does not match model width " +
                        std::to_string(model.train_features.cols));
    if (model.has_hists() != (hist != nullptr))
        throw DataError(model.has_hists() ? "model stores histograms but none was supplied"
                                          : "model stores no histograms");
    if (hist && hist->size() != model.train_hists.cols)
        throw DataError("histogram width does not match model");

    const std::size_t rows = model.train_features.rows;
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_row = 0;
    const double w2 = model.options.hist_weight * model.options.hist_weight;
    for (std::size_t r = 0; r < rows; ++r) {
        double d2 = 0.0;
        for (std::size_t c = 0; c < model.train_features.cols; ++c) {
            const double d =
                (feature[c] - model.train_features.at(r, c)) / model.feat_scale[c];
            d2 += d * d;
        }
        if (hist)
            for (std::size_t c = 0; c < model.train_hists.cols; ++c) {
                const double d = ((*hist)[c] - model.train_hists.at(r, c)) / model.hist_scale[c];
                d2 += w2 * d * d;
            }
        if (d2 < best) {
            best = d2;
            best_row = r;
        }
    }
    return {model.labels[best_row], std::sqrt(best), best_row};
}

/// 1-NN restricted to a subset of C2 columns, reusing the full-model
/// z-scoring statistics on those columns. Histograms are not involved.
inline Prediction nn_predict_restricted(const NNModel& model,
                                        const std::vector<double>& feature,
                                        const std::vector<std::size_t>& columns) {
    if (feature.size() != model.train_features.cols)
        throw DataError("feature width does not match model");
    if (columns.empty()) throw InvalidArgument("restricted prediction needs >= 1 column");
    for (std::size_t c : columns)
        if (c >= model.train_features.cols) throw InvalidArgument("column index out of range");

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_row = 0;
    for (std::size_t r = 0; r < model.train_features.rows; ++r) {
        double d2 = 0.0;
        for (std::size_t c : columns) {
            const double d = (feature[c] - model.train_features.at(r, c)) / model.feat_scale[c];
            d2 += d * d;
        }
        if (d2 < best) {
            best = d2;
            best_row = r;
        }
    }
    return {model.labels[best_row], std::sqrt(best), best_row};
}

/// ROC accuracy R = 1 - ((1-p)x + p(1-y)) for false positive rate x,
/// true positive rate y and positive proportion p.
inline double roc_accuracy(double x, double y, double p) {
    if (x < 0 || x > 1 || y < 0 || y > 1 || p < 0 || p > 1)
        throw InvalidArgument("roc_accuracy arguments must be in [0, 1]");
    return 1.0 - ((1.0 - p) * x + p * (1.0 - y));
}

// --- model file ------------------------------------------------------------
//
// Layout: magic "WVC1", u32 LE version, then six length-prefixed sections in
// fixed order (config, bank, mask, features, hists, labels), then a u32 LE
// CRC32 over everything that precedes it. All floats are little-endian f64.

namespace detail {

inline std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

inline void write_matrix(ByteWriter& w, const FeatureMatrix& m) {
    w.u32(static_cast<std::uint32_t>(m.rows));
    w.u32(static_cast<std::uint32_t>(m.cols));
    for (double v : m.values) w.f64(v);
}

inline FeatureMatrix read_matrix(ByteReader& r) {
    FeatureMatrix m;
    m.rows = r.u32();
    m.cols = r.u32();
    m.values.resize(m.rows * m.cols);
    for (double& v : m.values) v = r.f64();
    return m;
}

} // namespace detail

inline std::vector<std::uint8_t> serialize_model(const NNModel& model) {
    ByteWriter out;
    out.raw("WVC1", 4);
    out.u32(NNModel::kFormatVersion);

    auto section = [&out](const ByteWriter& payload) {
        out.u64(payload.bytes().size());
        out.raw(payload.bytes().data(), payload.bytes().size());
    };

    {
        ByteWriter cfg;
        std::string text;
        text += "levels=" + std::to_string(model.wavelet.levels) + "\n";
        text += "epsilon=" + detail::format_double(model.wavelet.epsilon) + "\n";
        text += "s2_mode=" + std::string(to_string(model.s2_mode)) + "\n";
        text += "hist_bins=" + std::to_string(model.options.hist_bins) + "\n";
        text += "hist_weight=" + detail::format_double(model.options.hist_weight) + "\n";
        text += "seed=" + std::to_string(model.seed) + "\n";
        cfg.raw(text.data(), text.size());
        section(cfg);
    }
    {
        ByteWriter bank;
        bank.u32(static_cast<std::uint32_t>(model.bank.patches.size()));
        for (const Patch& p : model.bank.patches) {
            bank.u32(static_cast<std::uint32_t>(p.side));
            bank.u32(p.source_image);
            bank.u32(p.source_scale);
            bank.u32(p.source_u);
            bank.u32(p.source_v);
            for (double v : p.values) bank.f64(v);
        }
        section(bank);
    }
    {
        ByteWriter mask;
        mask.u32(static_cast<std::uint32_t>(model.bank.selection.size()));
        for (std::uint8_t s : model.bank.selection) mask.u8(s);
        for (std::size_t i = 0; i < model.bank.selection.size(); ++i)
            mask.f64(i < model.variances.size() ? model.variances[i] : 0.0);
        section(mask);
    }
    {
        ByteWriter features;
        detail::write_matrix(features, model.train_features);
        section(features);
    }
    {
        ByteWriter hists;
        detail::write_matrix(hists, model.train_hists);
        section(hists);
    }
    {
        ByteWriter labels;
        labels.u32(static_cast<std::uint32_t>(model.labels.size()));
        for (const std::string& l : model.labels) labels.str(l);
        section(labels);
    }

    const std::uint32_t crc = crc32_bytes(out.bytes().data(), out.bytes().size());
    out.u32(crc);
    return std::move(out.bytes());
}

inline NNModel deserialize_model(const std::vector<std::uint8_t>& bytes,
                                 const std::string& context) {
    if (bytes.size() < 12) throw TruncationError("model file too short: " + context);
    if (std::memcmp(bytes.data(), "WVC1", 4) != 0)
        throw FormatError("bad magic bytes (not a model file): " + context);

    ByteReader header(bytes.data() + 4, 4, context);
    const std::uint32_t version = header.u32();
    if (version != NNModel::kFormatVersion)
        throw VersionError(version, NNModel::kFormatVersion);

    const std::uint32_t stored_crc =
        static_cast<std::uint32_t>(bytes[bytes.size() - 4]) |
        (static_cast<std::uint32_t>(bytes[bytes.size() - 3]) << 8) |
        (static_cast<std::uint32_t>(bytes[bytes.size() - 2]) << 16) |
        (static_cast<std::uint32_t>(bytes[bytes.size() - 1]) << 24);
    const std::uint32_t actual_crc = crc32_bytes(bytes.data(), bytes.size() - 4);
    if (stored_crc != actual_crc)
        throw ChecksumError("model checksum mismatch (corrupt file): " + context);

    ByteReader r(bytes.data() + 8, bytes.size() - 12, context);
    NNModel model;

    auto open_section = [&r, &context](const char* name) {
        const std::uint64_t len = r.u64();
        if (len > r.remaining())
            throw TruncationError("section '" + std::string(name) + "' truncated: " + context);
        return len;
    };

    {
        const std::uint64_t len = open_section("config");
        std::string text(len, '\0');
        r.raw(text.data(), len);
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = line.substr(0, eq);
            const std::string val = line.substr(eq + 1);
            if (key == "levels") model.wavelet.levels = std::stoi(val);
            else if (key == "epsilon") model.wavelet.epsilon = std::stod(val);
            else if (key == "s2_mode") model.s2_mode = s2_mode_from_string(val);
            else if (key == "hist_bins") model.options.hist_bins = std::stoi(val);
            else if (key == "hist_weight") model.options.hist_weight = std::stod(val);
            else if (key == "seed") model.seed = std::stoull(val);
        }
    }
    {
        open_section("bank");
        const std::uint32_t count = r.u32();
        model.bank.patches.resize(count);
        for (Patch& p : model.bank.patches) {
            p.side = static_cast<int>(r.u32());
            if (p.side < 1 || p.side > 4096)
                throw FormatError("implausible patch side in model: " + context);
            p.source_image = r.u32();
            p.source_scale = r.u32();
            p.source_u = r.u32();
            p.source_v = r.u32();
            p.values.resize(static_cast<std::size_t>(p.side) * p.side * 3);
            for (double& v : p.values) v = r.f64();
        }
        model.bank.rng_seed = 0; // recorded separately in the config section
    }
    {
        open_section("mask");
        const std::uint32_t count = r.u32();
        if (count != model.bank.patches.size())
            throw FormatError("selection mask size does not match bank: " + context);
        model.bank.selection.resize(count);
        for (std::uint8_t& s : model.bank.selection) s = r.u8();
        model.variances.resize(count);
        for (double& v : model.variances) v = r.f64();
    }
    {
        open_section("features");
        model.train_features = detail::read_matrix(r);
    }
    {
        open_section("hists");
        model.train_hists = detail::read_matrix(r);
    }
    {
        open_section("labels");
        const std::uint32_t count = r.u32();
        model.labels.resize(count);
        for (std::string& l : model.labels) l = r.str();
    }

    model.bank.rng_seed = model.seed;
    model.validate();
    model.finalize();
    return model;
}

inline void save_model(const NNModel& model, const std::string& path) {
    const std::vector<std::uint8_t> bytes = serialize_model(model);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open model file for writing: " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (!f) throw IoError("model write failed: " + path);
}

inline NNModel load_model(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open model file: " + path);
    f.seekg(0, std::ios::end);
    const std::streamoff len = f.tellg();
    f.seekg(0, std::ios::beg);
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(len));
    if (len > 0) f.read(reinterpret_cast<char*>(bytes.data()), len);
    if (!f) throw IoError("cannot read model file: " + path);
    return deserialize_model(bytes, path);
}

} // namespace wvc

#endif // WVC_CLASSIFY_HPP
