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

#ifndef QWALK_QWALK_HPP
#define QWALK_QWALK_HPP

#include "qwalk/coin.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/experiments.hpp"
#include "qwalk/observables.hpp"
#include "qwalk/potential.hpp"
#include "qwalk/version.hpp"
#include "qwalk/walk.hpp"
#include "qwalk/walk_state.hpp"

#endif  // QWALK_QWALK_HPP
