/* Copyright (C) 2026 The circlezeros authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License. See accompanying LICENSE file.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace circlezeros {

// Counter-based seed derivation: item i of a batch draws from a generator
// seeded by split_seed(master, i). Each item's random stream is then a pure
// function of (master, i), so batches can be partitioned across any number of
// workers and still reproduce bit for bit.
//
// The mix is the splitmix64 finalizer applied to master + i * golden_gamma,
// which is the standard way to decorrelate consecutive counters.
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Random source with hand-rolled output distributions.
//
// mt19937_64 itself is pinned by the standard, but std::uniform_real_distribution
// and friends are implementation-defined, so using them would break the
// bitwise-reproducibility contract across toolchains. Everything below maps raw
// 64-bit words to doubles the same way everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1): top 53 bits scaled by 2^-53.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1]: shifted so log() is always finite.
    double uniform01_pos() {
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Standard normal via Box-Muller; the spare value is cached.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = uniform01_pos();
        double v = uniform01();
        double r = std::sqrt(-2.0 * std::log(u));
        double a = 6.283185307179586476925286766559 * v;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::complex<double> complex_gaussian(double sigma) {
        // Independent real and imaginary parts, each N(0, sigma^2 / 2), so the
        // complex variance is sigma^2.
        double s = sigma * 0.7071067811865475244;
        return {s * gaussian(), s * gaussian()};
    }

    // Uniform on the closed disk of radius r around 0.
    std::complex<double> uniform_disk(double r) {
        double rad = r * std::sqrt(uniform01());
        double ang = 6.283185307179586476925286766559 * uniform01();
        return {rad * std::cos(ang), rad * std::sin(ang)};
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace circlezeros
