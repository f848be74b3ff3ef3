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

#ifndef QCORRAL_LATTICE_HPP
#define QCORRAL_LATTICE_HPP

#include <cstddef>

namespace qcorral {

/// A finite window [j_min, j_max] of the infinite one-dimensional lattice.
class Lattice {
   public:
    /// Throws SizingError unless j_max - j_min + 1 >= 3.
    Lattice(int j_min, int j_max);

    /// The lattice [-half_width, half_width].
    static Lattice symmetric(int half_width);

    int j_min() const noexcept {
        return j_min_;
    }
    int j_max() const noexcept {
        return j_max_;
    }
    std::size_t size() const noexcept {
        return static_cast<std::size_t>(j_max_ - j_min_ + 1);
    }
    bool contains(int j) const noexcept {
        return j >= j_min_ && j <= j_max_;
    }
    /// Array offset of site j. Caller guarantees contains(j).
    std::size_t index(int j) const noexcept {
        return static_cast<std::size_t>(j - j_min_);
    }
    int site(std::size_t index) const noexcept {
        return j_min_ + static_cast<int>(index);
    }

    bool operator==(const Lattice &other) const noexcept = default;

   private:
    int j_min_;
    int j_max_;
};

}  // namespace qcorral

#endif
