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

// Umbrella header for the strata library.

#pragma once

#include "strata/bits.hpp"
#include "strata/errors.hpp"
#include "strata/format.hpp"
#include "strata/frame.hpp"
#include "strata/io.hpp"
#include "strata/models.hpp"
#include "strata/nelder_mead.hpp"
#include "strata/optimize.hpp"
#include "strata/oracle.hpp"
#include "strata/pauli.hpp"
#include "strata/states.hpp"
#include "strata/witness.hpp"
