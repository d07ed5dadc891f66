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

#ifndef WVC_WVC_HPP
#define WVC_WVC_HPP

#include "wvc/audio.hpp"
#include "wvc/classify.hpp"
#include "wvc/config.hpp"
#include "wvc/dynamics.hpp"
#include "wvc/error.hpp"
#include "wvc/feedback.hpp"
#include "wvc/image.hpp"
#include "wvc/image_io.hpp"
#include "wvc/manifest.hpp"
#include "wvc/patches.hpp"
#include "wvc/pipeline.hpp"
#include "wvc/pooling.hpp"
#include "wvc/select.hpp"
#include "wvc/synth.hpp"
#include "wvc/util.hpp"
#include "wvc/wavelet.hpp"

#endif // WVC_WVC_HPP
