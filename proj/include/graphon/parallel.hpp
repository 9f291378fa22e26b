// Copyright 2026 The graphonctl Authors
//
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

#pragma once

#include <cstddef>
#include <functional>

namespace graphon {

/// Thread cap for library-internal parallel loops. Defaults to
/// GRAPHON_CTL_THREADS when set, otherwise the hardware concurrency.
std::size_t max_threads();
void set_max_threads(std::size_t n);  // 0 restores the default

/// Runs body(i) for i in [0, count). Iterations must be independent; the
/// first exception thrown by any iteration is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace graphon
