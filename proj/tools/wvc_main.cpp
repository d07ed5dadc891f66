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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wvc/wvc.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_selection_csv(std::ostream& out, const wvc::NNModel& model) {
    out << "patch_index,variance,kept\n";
    for (std::size_t i = 0; i < model.bank.patches.size(); ++i)
        out << i << "," << model.variances[i] << ","
            << static_cast<int>(model.bank.selection[i]) << "\n";
}

int cmd_train(const wvc::RunConfig& cfg, const std::string& manifest_path,
              const std::string& out_path, const std::string& selection_csv) {
    const wvc::DatasetManifest manifest = wvc::DatasetManifest::load(manifest_path);
    const wvc::NNModel model = wvc::train_model(manifest, cfg);
    wvc::save_model(model, out_path);
    std::cout << "trained on " << model.train_features.rows << " samples, "
              << model.bank.patches.size() << " patches ("
              << model.bank.selected_count() << " selected), wrote " << out_path << "\n";
    if (!selection_csv.empty()) {
        std::ofstream f(selection_csv);
        if (!f) throw wvc::IoError("cannot write " + selection_csv);
        write_selection_csv(f, model);
    }
    return 0;
}

int cmd_predict(const wvc::RunConfig& run, const std::string& model_path,
                const std::vector<std::string>& images, const std::string& out_path) {
    const wvc::NNModel model = wvc::load_model(model_path);
    wvc::RunConfig cfg = wvc::config_from_model(model);
    cfg.jobs = run.jobs;
    cfg.min_side = run.min_side;
    cfg.tile_side = run.tile_side;

    std::vector<wvc::PredictionRow> rows;
    for (const std::string& path : images) {
        const wvc::Image decoded = wvc::decode_grayscale(path);
        std::size_t idx = 0;
        for (const wvc::Image& sample : wvc::ingest_samples(decoded, cfg)) {
            std::string name = path;
            if (cfg.tile_side > 0) name += "#" + std::to_string(idx++);
            rows.push_back(wvc::predict_image(model, sample, cfg, name));
        }
    }
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw wvc::IoError("cannot write " + out_path);
        out = &file;
    }
    *out << "path,predicted,distance,neighbor\n";
    out->precision(12);
    for (const wvc::PredictionRow& r : rows)
        *out << r.path << "," << r.label << "," << r.distance << "," << r.neighbor << "\n";
    return 0;
}

int cmd_evaluate(const wvc::RunConfig& run, const std::string& model_path,
                 const std::string& manifest_path) {
    const wvc::NNModel model = wvc::load_model(model_path);
    const wvc::DatasetManifest manifest = wvc::DatasetManifest::load(manifest_path);
    wvc::RunConfig cfg = wvc::config_from_model(model);
    cfg.jobs = run.jobs;
    cfg.min_side = run.min_side;
    cfg.tile_side = run.tile_side;

    const wvc::EvaluationReport report = wvc::evaluate_model(model, manifest, cfg);
    std::cout << "samples: " << report.total << "\n";
    std::cout << "accuracy: " << report.accuracy() << "\n";
    std::cout << "confusion (rows = truth, cols = predicted):\n ";
    for (const auto& n : report.class_names) std::cout << " " << n;
    std::cout << "\n";
    for (std::size_t r = 0; r < report.class_names.size(); ++r) {
        std::cout << "  " << report.class_names[r];
        for (std::size_t c = 0; c < report.class_names.size(); ++c)
            std::cout << " " << report.confusion[r][c];
        std::cout << "\n";
    }
    std::cout << "one-vs-rest ROC accuracy:\n";
    for (const auto& pc : report.per_class)
        std::cout << "  " << pc.name << ": R=" << pc.roc << " (x=" << pc.fpr << ", y=" << pc.tpr
                  << ", p=" << pc.proportion << ")\n";
    return 0;
}

int cmd_feedback(const wvc::RunConfig& run, const std::string& model_path,
                 const std::string& image_path, const std::string& out_path) {
    const wvc::NNModel model = wvc::load_model(model_path);
    wvc::RunConfig cfg = wvc::config_from_model(model);
    cfg.min_side = run.min_side;

    wvc::Image img = wvc::decode_grayscale(image_path);
    if (cfg.min_side > 0) img = wvc::rescale_min_side(img, cfg.min_side);
    const wvc::ImageFeatures f = wvc::compute_features(img, cfg, model.bank);
    const auto clusters = wvc::feedback_classify(model, f.features, run.feedback_k, run.seed);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw wvc::IoError("cannot write " + out_path);
        out = &file;
    }
    for (const auto& c : clusters) {
        json j;
        j["cluster"] = c.cluster;
        j["label"] = c.label;
        j["flag"] = c.low_confidence ? "low_confidence" : "ok";
        j["centroid_x"] = c.centroid_x;
        j["centroid_y"] = c.centroid_y;
        j["members"] = c.members;
        *out << j.dump() << "\n";
    }
    return 0;
}

int cmd_spectrogram(const std::string& wav_path, const std::string& out_prefix, int frame,
                    int hop, double segment_seconds) {
    const auto images = wvc::wav_to_log_spectrogram(wav_path, frame, hop, segment_seconds);
    for (std::size_t i = 0; i < images.size(); ++i) {
        const std::string path = out_prefix + "_" + std::to_string(i) + ".pgm";
        wvc::encode_pgm(images[i], path);
        std::cout << path << " (" << images[i].width << "x" << images[i].height << ")\n";
    }
    if (images.empty()) std::cout << "no full segment in " << wav_path << "\n";
    return 0;
}

int cmd_simulate_res(const std::string& image_path, int factor, const std::string& out_path) {
    const wvc::Image img = wvc::decode_grayscale(image_path);
    wvc::encode_pgm(wvc::gaussian_downsample(img, factor), out_path);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

int cmd_dynamics(const std::string& scenario_path, const std::string& out_path) {
    const auto kv = wvc::parse_kv_file(scenario_path);
    auto get = [&kv, &scenario_path](const std::string& key) {
        const auto it = kv.find(key);
        if (it == kv.end())
            throw wvc::DataError("scenario is missing key '" + key + "': " + scenario_path);
        return it->second;
    };
    auto get_or = [&kv](const std::string& key, const std::string& fallback) {
        const auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second;
    };

    const std::string mode = get("mode");
    const double t_end = std::stod(get("t_end"));
    const double dt = std::stod(get("dt"));
    wvc::Trajectory traj;
    if (mode == "fn") {
        wvc::OscillatorParams p;
        p.alpha = std::stod(get("alpha"));
        p.beta = std::stod(get("beta"));
        p.c = std::stod(get("c"));
        const double current = std::stod(get("I"));
        p.current = [current](double) { return current; };
        traj = wvc::integrate_oscillator(p, std::stod(get_or("v0", "0")),
                                         std::stod(get_or("w0", "0")), t_end, dt);
    } else if (mode == "layer") {
        wvc::LayerParams p;
        p.k1 = std::stod(get("k1"));
        p.k2 = std::stod(get("k2"));
        p.c1_target = parse_double_list(get("c1"));
        p.c2 = parse_double_list(get("c2"));
        p.cluster_of = parse_int_list(get("clusters"));
        std::stringstream ss(get("pulses"));
        std::string item;
        while (std::getline(ss, item, ';')) {
            const std::size_t a = item.find(':');
            const std::size_t b = item.find(':', a + 1);
            if (a == std::string::npos || b == std::string::npos)
                throw wvc::DataError("pulses must be start:duration:cluster;...");
            p.schedule.pulses.push_back({std::stod(item.substr(0, a)),
                                         std::stod(item.substr(a + 1, b - a - 1)),
                                         std::stoi(item.substr(b + 1))});
        }
        std::vector<double> x0;
        if (kv.contains("x0")) x0 = parse_double_list(kv.at("x0"));
        traj = wvc::integrate_layers(p, std::move(x0), t_end, dt);
    } else {
        throw wvc::DataError("scenario mode must be fn|layer, got '" + mode + "'");
    }

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw wvc::IoError("cannot write " + out_path);
        out = &file;
    }
    out->precision(12);
    *out << "t";
    for (std::size_t i = 0; i < traj.states.front().size(); ++i) *out << ",component_" << i;
    *out << "\n";
    for (std::size_t s = 0; s < traj.times.size(); ++s) {
        *out << traj.times[s];
        for (double v : traj.states[s]) *out << "," << v;
        *out << "\n";
    }
    return 0;
}

int cmd_inspect(const std::string& model_path, const std::string& selection_csv) {
    const wvc::NNModel model = wvc::load_model(model_path);
    std::cout << "model: " << model_path << "\n";
    std::cout << "format version: " << wvc::NNModel::kFormatVersion << "\n";
    std::cout << "wavelet levels: " << model.wavelet.levels
              << ", epsilon: " << model.wavelet.epsilon << "\n";
    std::cout << "s2 boundary: " << wvc::to_string(model.s2_mode) << "\n";
    std::cout << "patches: " << model.bank.patches.size() << " ("
              << model.bank.selected_count() << " selected)\n";
    std::cout << "training rows: " << model.train_features.rows
              << ", feature width: " << model.train_features.cols << "\n";
    std::cout << "histograms: "
              << (model.has_hists() ? std::to_string(model.train_hists.cols) + " bins"
                                    : std::string("off"))
              << "\n";
    std::cout << "seed: " << model.seed << "\n";
    std::map<std::string, std::size_t> label_counts;
    for (const auto& l : model.labels) ++label_counts[l];
    std::cout << "labels:";
    for (const auto& [l, n] : label_counts) std::cout << " " << l << "(" << n << ")";
    std::cout << "\n";
    if (!selection_csv.empty()) {
        std::ofstream f(selection_csv);
        if (!f) throw wvc::IoError("cannot write " + selection_csv);
        write_selection_csv(f, model);
        std::cout << "selection report: " << selection_csv << "\n";
    } else {
        write_selection_csv(std::cout, model);
    }
    return 0;
}

int cmd_gen_textures(const std::string& out_dir, std::uint64_t seed, int scenes) {
    fs::create_directories(out_dir);
    const auto classes = wvc::default_texture_classes();
    std::ofstream manifest(fs::path(out_dir) / "manifest.csv");
    if (!manifest) throw wvc::IoError("cannot write manifest in " + out_dir);
    manifest << "path,label,split\n";
    for (std::size_t c = 0; c < classes.size(); ++c) {
        const std::string label = "class" + std::to_string(c);
        const wvc::Image full = wvc::make_grating_texture(512, 512, classes[c], seed + c * 1000);
        wvc::encode_pgm(full, (fs::path(out_dir) / (label + ".pgm")).string());
        const auto tiles = wvc::tile(full, 128);
        for (std::size_t t = 0; t < tiles.size(); ++t) {
            const std::string name = label + "_tile" + std::to_string(t) + ".pgm";
            wvc::encode_pgm(tiles[t], (fs::path(out_dir) / name).string());
            manifest << name << "," << label << "," << (t % 2 == 0 ? "train" : "test") << "\n";
        }
    }
    std::cout << "wrote 4 classes x 16 tiles + manifest.csv to " << out_dir << "\n";
    if (scenes > 0) {
        std::ofstream scene_csv(fs::path(out_dir) / "scenes.csv");
        scene_csv << "path,label_a,label_b,ax,ay,bx,by\n";
        std::mt19937_64 rng(seed ^ 0x5ce9e5u);
        for (int s = 0; s < scenes; ++s) {
            const std::size_t a = wvc::bounded_rand(rng, classes.size());
            std::size_t b = wvc::bounded_rand(rng, classes.size() - 1);
            if (b >= a) ++b;
            const wvc::Image ta = wvc::make_grating_texture(160, 160, classes[a], rng());
            const wvc::Image tb = wvc::make_grating_texture(160, 160, classes[b], rng());
            const auto scene = wvc::make_two_object_scene(192, ta, tb, 80, rng());
            const std::string name = "scene" + std::to_string(s) + ".pgm";
            wvc::encode_pgm(scene.image, (fs::path(out_dir) / name).string());
            scene_csv << name << ",class" << a << ",class" << b << "," << scene.center_a[0]
                      << "," << scene.center_a[1] << "," << scene.center_b[0] << ","
                      << scene.center_b[1] << "\n";
        }
        std::cout << "wrote " << scenes << " two-object scenes + scenes.csv\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wvc - hierarchical wavelet/patch features for image, texture and "
                 "sound classification"};
    app.require_subcommand(1);

    // Pipeline options live on the top-level app; subcommands fall through,
    // so both `wvc --seed 7 train ...` and `wvc train --seed 7 ...` work and
    // a flat key=value --config file can set any of them (flags win).
    wvc::RunConfig run;
    std::string boundary = "valid", patch_sizes;
    app.set_config("--config", "", "flat key=value config file");
    app.add_option("--seed", run.seed, "RNG seed (default 0)");
    app.add_option("--levels", run.wavelet.levels, "wavelet levels J (default 3)");
    app.add_option("--epsilon", run.wavelet.epsilon, "S1 denominator regularizer");
    app.add_option("--select-k", run.select_k, "retained feature count (default 200)");
    auto* hist_opt = app.add_option("--hist-bins", run.hist_bins,
                                    "approximation-histogram bins; enables the block");
    app.add_option("--hist-weight", run.hist_weight, "histogram block weight (default 1)");
    app.add_option("--feedback-k", run.feedback_k, "cluster count for feedback (default 2)");
    app.add_option("--jobs", run.jobs, "worker threads (default: WVC_JOBS or all cores)");
    app.add_option("--boundary", boundary, "S2 boundary mode: valid|periodic");
    app.add_option("--min-side", run.min_side, "rescale so min side equals this (0 = off)");
    app.add_option("--tile", run.tile_side, "tile images to this side (0 = off)");
    app.add_option("--patch-sizes", patch_sizes, "side:count list, e.g. 4:250,8:250");

    auto* train = app.add_subcommand("train", "train a nearest-neighbor model from a manifest");
    std::string train_manifest, train_out, train_selection_csv;
    train->add_option("--manifest", train_manifest, "dataset CSV (path,label,split)")->required();
    train->add_option("--out", train_out, "output model file")->required();
    train->add_option("--selection-csv", train_selection_csv, "dump the selection report CSV");

    auto* predict = app.add_subcommand("predict", "classify images with a trained model");
    std::string predict_model, predict_out;
    std::vector<std::string> predict_images;
    predict->add_option("--model", predict_model, "model file")->required();
    predict->add_option("--out", predict_out, "output CSV (default stdout)");
    predict->add_option("images", predict_images, "image files")->required();

    auto* evaluate = app.add_subcommand("evaluate", "accuracy + ROC report on a manifest");
    std::string eval_model, eval_manifest;
    evaluate->add_option("--model", eval_model, "model file")->required();
    evaluate->add_option("--manifest", eval_manifest, "dataset CSV")->required();

    auto* feedback =
        app.add_subcommand("feedback", "cluster C2 locations and reclassify each cluster");
    std::string fb_model, fb_image, fb_out;
    feedback->add_option("--model", fb_model, "model file")->required();
    feedback->add_option("--image", fb_image, "scene image")->required();
    feedback->add_option("--out", fb_out, "output JSON lines (default stdout)");

    auto* spectrogram = app.add_subcommand("spectrogram", "WAV to log-spectrogram PGM images");
    std::string spec_wav, spec_prefix;
    int spec_frame = 1024, spec_hop = 512;
    double spec_segment = 5.0;
    spectrogram->add_option("--wav", spec_wav, "mono PCM-16 WAV file")->required();
    spectrogram->add_option("--out-prefix", spec_prefix, "output path prefix")->required();
    spectrogram->add_option("--frame", spec_frame, "FFT frame (power of two, default 1024)");
    spectrogram->add_option("--hop", spec_hop, "hop size (default 512)");
    spectrogram->add_option("--segment-seconds", spec_segment, "segment length (default 5)");

    auto* simres = app.add_subcommand("simulate-res",
                                      "Gaussian convolution + subsampling resolution change");
    std::string sim_image, sim_out;
    int sim_factor = 2;
    simres->add_option("--image", sim_image, "input image")->required();
    simres->add_option("--factor", sim_factor, "subsampling factor (default 2)");
    simres->add_option("--out", sim_out, "output PGM")->required();

    auto* dynamics = app.add_subcommand("dynamics", "integrate a dynamics scenario to CSV");
    std::string dyn_scenario, dyn_out;
    dynamics->add_option("--scenario", dyn_scenario, "key=value scenario file")->required();
    dynamics->add_option("--out", dyn_out, "trajectory CSV (default stdout)");

    auto* inspect = app.add_subcommand("inspect", "print a model summary + selection report");
    std::string ins_model, ins_selection_csv;
    inspect->add_option("--model", ins_model, "model file")->required();
    inspect->add_option("--selection-csv", ins_selection_csv, "write the report CSV here");

    auto* gen =
        app.add_subcommand("gen-textures", "generate the synthetic oriented-grating corpus");
    gen->group(""); // hidden
    std::string gen_out;
    std::uint64_t gen_seed = 0;
    int gen_scenes = 0;
    gen->add_option("--out", gen_out, "output directory")->required();
    gen->add_option("--seed", gen_seed, "corpus seed (default 0)");
    gen->add_option("--scenes", gen_scenes, "also write this many two-object scenes");

    for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        run.s2_mode = wvc::s2_mode_from_string(boundary);
        if (hist_opt->count() > 0) run.hist_enabled = true;
        if (!patch_sizes.empty()) {
            wvc::RunConfig scratch;
            scratch.apply({{"patch_sizes", patch_sizes}});
            run.patch_counts = scratch.patch_counts;
        }
        if (run.jobs == 0)
            if (const char* env = std::getenv("WVC_JOBS"))
                run.jobs = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
        run.validate();

        if (*train) return cmd_train(run, train_manifest, train_out, train_selection_csv);
        if (*predict) return cmd_predict(run, predict_model, predict_images, predict_out);
        if (*evaluate) return cmd_evaluate(run, eval_model, eval_manifest);
        if (*feedback) return cmd_feedback(run, fb_model, fb_image, fb_out);
        if (*spectrogram)
            return cmd_spectrogram(spec_wav, spec_prefix, spec_frame, spec_hop, spec_segment);
        if (*simres) return cmd_simulate_res(sim_image, sim_factor, sim_out);
        if (*dynamics) return cmd_dynamics(dyn_scenario, dyn_out);
        if (*inspect) return cmd_inspect(ins_model, ins_selection_csv);
        if (*gen) return cmd_gen_textures(gen_out, gen_seed, gen_scenes);
    } catch (const wvc::InvalidArgument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const wvc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
