// Copyright 2026 The qwalk Authors
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

#ifndef QWALK_ERRORS_HPP
#define QWALK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qwalk {

/// Rejected argument (non-finite angle, q < 1, empty capacity, ...).
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The amplitude table is too small for the requested number of steps.
struct CapacityError : std::length_error {
    using std::length_error::length_error;
};

/// Least-squares fit requested on degenerate abscissae.
struct FitError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A numerical invariant (norm, finiteness) broke during evolution.
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qwalk

#endif  // QWALK_ERRORS_HPP
