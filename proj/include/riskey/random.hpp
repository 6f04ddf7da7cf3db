// SPDX-License-Identifier: Apache-2.0
//
// riskey: keyhole-model channel estimation for RIS-assisted MIMO links
// Copyright (C) 2026 The riskey authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "riskey/linalg.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace riskey
{

// SplitMix64 finalizer. Used to derive independent stream seeds from structured keys.
constexpr std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b)
{
    return mix64(mix64(a) ^ (b + 0x632be59bd9b4e019ULL));
}

// Seeded source of circularly-symmetric complex Gaussian samples.
// A generator is owned by a single task; equal seeds produce equal streams.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // CN(0, variance): (x + jy) * sqrt(variance / 2) with x, y ~ N(0, 1)
    cdouble complex_normal(double variance = 1.0)
    {
        const double scale = std::sqrt(0.5 * variance);
        const double re = normal_(engine_);
        const double im = normal_(engine_);
        return {scale * re, scale * im};
    }

    // Entries are filled in row-major order so the stream does not depend on storage layout.
    ComplexMatrix complex_normal_matrix(Eigen::Index rows, Eigen::Index cols, double variance = 1.0)
    {
        ComplexMatrix out(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r)
            for (Eigen::Index c = 0; c < cols; ++c)
                out(r, c) = complex_normal(variance);
        return out;
    }

    // Uniform on [lo, hi)
    double uniform(double lo, double hi)
    {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace riskey
