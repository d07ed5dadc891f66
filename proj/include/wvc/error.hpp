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

#ifndef WVC_ERROR_HPP
#define WVC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace wvc {

/// Base class for all wvc errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// File could not be opened, read or written.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

/// File content is not in a supported format (bad magic, bad header,
/// unsupported variant).
class FormatError : public Error {
public:
    explicit FormatError(const std::string& msg) : Error(msg) {}
};

/// Model file carries a version this build cannot read.
class VersionError : public FormatError {
public:
    VersionError(unsigned found, unsigned supported)
        : FormatError("unsupported model version " + std::to_string(found) +
                      " (this build reads version " + std::to_string(supported) + ")"),
          found_(found), supported_(supported) {}
    unsigned found() const { return found_; }
    unsigned supported() const { return supported_; }

private:
    unsigned found_;
    unsigned supported_;
};

/// Stored checksum does not match the recomputed one.
class ChecksumError : public FormatError {
public:
    explicit ChecksumError(const std::string& msg) : FormatError(msg) {}
};

/// File ends before a declared section does.
class TruncationError : public FormatError {
public:
    explicit TruncationError(const std::string& msg) : FormatError(msg) {}
};

/// Caller violated a documented precondition (sizes, ranges, widths).
class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

/// Input data is readable but inconsistent (manifest labels, dimension
/// mismatches between model and query, ...).
class DataError : public Error {
public:
    explicit DataError(const std::string& msg) : Error(msg) {}
};

} // namespace wvc

#endif // WVC_ERROR_HPP
