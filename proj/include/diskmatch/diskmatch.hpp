// Copyright 2026 the diskmatch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License is
// distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and limitations under the License.

#ifndef DISKMATCH_DISKMATCH_HPP
#define DISKMATCH_DISKMATCH_HPP

#include "diskmatch/density.hpp"
#include "diskmatch/estimators.hpp"
#include "diskmatch/general_match.hpp"
#include "diskmatch/geometry.hpp"
#include "diskmatch/harness.hpp"
#include "diskmatch/importance.hpp"
#include "diskmatch/instances.hpp"
#include "diskmatch/intersection_graph.hpp"
#include "diskmatch/io.hpp"
#include "diskmatch/match_engine.hpp"
#include "diskmatch/matching.hpp"
#include "diskmatch/neighbor_index.hpp"
#include "diskmatch/sweep.hpp"
#include "diskmatch/unit_match.hpp"

#endif  // DISKMATCH_DISKMATCH_HPP
