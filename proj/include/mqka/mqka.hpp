// Copyright 2026 The mqka Authors
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

#include "mqka/adversary.hpp"
#include "mqka/analysis.hpp"
#include "mqka/engine.hpp"
#include "mqka/errors.hpp"
#include "mqka/key.hpp"
#include "mqka/outcome.hpp"
#include "mqka/protocols.hpp"
#include "mqka/rng.hpp"
#include "mqka/topology.hpp"
#include "mqka/toy_quantum.hpp"
