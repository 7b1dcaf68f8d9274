// Copyright 2026 The qdes Authors
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

#include "qdes/alphabet.hpp"
#include "qdes/automata.hpp"
#include "qdes/blm.hpp"
#include "qdes/composition.hpp"
#include "qdes/equivalence.hpp"
#include "qdes/evaluate.hpp"
#include "qdes/fixtures.hpp"
#include "qdes/io.hpp"
#include "qdes/language.hpp"
#include "qdes/linalg.hpp"
#include "qdes/machine_view.hpp"
#include "qdes/reduction.hpp"
#include "qdes/span.hpp"
#include "qdes/supervisory.hpp"
