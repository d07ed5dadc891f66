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

#ifndef WVC_MANIFEST_HPP
#define WVC_MANIFEST_HPP

#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "wvc/error.hpp"

namespace wvc {

enum class Split { kTrain, kTest };

struct ManifestEntry {
    std::string path;
    std::string label;
    Split split = Split::kTrain;
};

/// CSV dataset listing with header `path,label,split`. Relative paths are
/// resolved against the manifest's directory.
struct DatasetManifest {
    std::vector<ManifestEntry> entries;

    std::vector<const ManifestEntry*> split_entries(Split s) const {
        std::vector<const ManifestEntry*> out;
        for (const auto& e : entries)
            if (e.split == s) out.push_back(&e);
        return out;
    }

    /// Paths must be unique and every label appearing in the test split
    /// must also appear in the train split.
    void validate() const {
        std::set<std::string> paths;
        std::set<std::string> train_labels;
        for (const auto& e : entries) {
            if (!paths.insert(e.path).second)
                throw DataError("duplicate path in manifest: " + e.path);
            if (e.split == Split::kTrain) train_labels.insert(e.label);
        }
        for (const auto& e : entries)
            if (e.split == Split::kTest && !train_labels.contains(e.label))
                throw DataError("label '" + e.label + "' appears in test but not in train");
    }

    static DatasetManifest load(const std::string& path) {
        std::ifstream f(path);
        if (!f) throw IoError("cannot open manifest: " + path);
        const std::filesystem::path base = std::filesystem::path(path).parent_path();

        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };

        DatasetManifest m;
        std::string line;
        std::size_t lineno = 0;
        bool header_seen = false;
        while (std::getline(f, line)) {
            ++lineno;
            line = trim(line);
            if (line.empty()) continue;
            std::vector<std::string> fields;
            std::size_t start = 0;
            for (std::size_t i = 0; i <= line.size(); ++i)
                if (i == line.size() || line[i] == ',') {
                    fields.push_back(trim(line.substr(start, i - start)));
                    start = i + 1;
                }
            if (!header_seen) {
                if (fields != std::vector<std::string>{"path", "label", "split"})
                    throw DataError("manifest header must be 'path,label,split': " + path);
                header_seen = true;
                continue;
            }
            if (fields.size() != 3)
                throw DataError("manifest line " + std::to_string(lineno) +
                                " needs 3 fields: " + path);
            ManifestEntry e;
            std::filesystem::path p(fields[0]);
            e.path = p.is_absolute() ? p.string() : (base / p).string();
            e.label = fields[1];
            if (fields[2] == "train")
                e.split = Split::kTrain;
            else if (fields[2] == "test")
                e.split = Split::kTest;
            else
                throw DataError("manifest line " + std::to_string(lineno) +
                                ": split must be train|test, got '" + fields[2] + "'");
            if (e.label.empty())
                throw DataError("manifest line " + std::to_string(lineno) + ": empty label");
            m.entries.push_back(std::move(e));
        }
        if (!header_seen) throw DataError("manifest is empty: " + path);
        m.validate();
        return m;
    }
};

} // namespace wvc

#endif // WVC_MANIFEST_HPP
