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

#include <stdexcept>
#include <string>

namespace circlezeros {

// Common base so callers can catch everything from this library in one place.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Input is too close to a singular configuration for the requested computation
// (e.g. nearly coincident roots under a finite-difference step).
class DegenerateInput : public Error {
public:
    explicit DegenerateInput(const std::string& msg) : Error(msg) {}
};

// Angle vector length does not match what the density/statistic expects.
class ArityMismatch : public Error {
public:
    ArityMismatch(const std::string& msg, std::size_t expected, std::size_t got)
        : Error(msg + " (expected " + std::to_string(expected) + ", got " +
                std::to_string(got) + ")"),
          expected(expected),
          got(got) {}
    std::size_t expected;
    std::size_t got;
};

// Not enough data points to carry out a fit or test.
class InsufficientData : public Error {
public:
    explicit InsufficientData(const std::string& msg) : Error(msg) {}
};

// A data file did not parse as the expected format.
class FormatError : public Error {
public:
    explicit FormatError(const std::string& msg) : Error(msg) {}
};

// An experiment configuration failed schema validation.
class ConfigInvalid : public Error {
public:
    explicit ConfigInvalid(const std::string& msg) : Error(msg) {}
};

}  // namespace circlezeros
