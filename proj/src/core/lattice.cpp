// Copyright 2026 The qcorral Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcorral/lattice.hpp"

#include <string>

#include "qcorral/error.hpp"

namespace qcorral {

Lattice::Lattice(int j_min, int j_max) : j_min_(j_min), j_max_(j_max) {
    if (static_cast<long long>(j_max) - static_cast<long long>(j_min) + 1 < 3) {
        throw SizingError(
            "lattice [" + std::to_string(j_min) + ", " + std::to_string(j_max) + "] has fewer than 3 sites");
    }
}

Lattice Lattice::symmetric(int half_width) {
    return Lattice(-half_width, half_width);
}

}  // namespace qcorral
