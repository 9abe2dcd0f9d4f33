// Copyright 2026 The Strata Authors
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

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>

#include "strata/errors.hpp"

namespace strata {

/// Widest register supported by the bit-mask representations.
inline constexpr int kMaxQubits = 64;

/// Largest register for which 2^N-sized arrays are ever materialized.
inline constexpr int kMaxEnumerationQubits = 24;

inline constexpr std::uint64_t low_mask(int n) noexcept {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

inline constexpr int popcount(std::uint64_t v) noexcept { return std::popcount(v); }

inline constexpr bool parity(std::uint64_t v) noexcept { return (std::popcount(v) & 1) != 0; }

inline void require_qubits(int n, int cap = kMaxQubits) {
    if (n < 1 || n > cap) {
        throw DimensionError("qubit count " + std::to_string(n) + " outside [1, " +
                             std::to_string(cap) + "]");
    }
}

/// In-place Walsh-Hadamard transform: v[k] <- sum_l (-1)^{popcount(k & l)} v[l].
/// Length must be a power of two. Unnormalized.
template <typename T>
void walsh_hadamard(std::span<T> v) {
    const std::size_t n = v.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw DimensionError("Walsh-Hadamard length must be a power of two");
    }
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t i = 0; i < n; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                T a = v[j];
                T b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

}  // namespace strata
