/*
 * Copyright (c) 2026, the reverb project authors.
 * All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef REVERB_EXPLORE_HPP_
#define REVERB_EXPLORE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "reverb/trace.hpp"

namespace reverb {

/**
 * Bounded breadth-first state-space walk with canonical-form deduplication:
 * every system reachable in at most depth steps is visited exactly once up
 * to identifier renaming. A derivation here is a maximal path of the pruned
 * search tree: it ends at the depth bound, at a system with no enabled
 * choices, or with a step onto an already-visited system.
 *
 * Requested checks run over the whole explored space. Step-local checks
 * (conservative, soundness) run once per unique transition; whole-run
 * checks (wellformed, lemma) run once per maximal derivation. Every step of
 * every bounded derivation is covered either way, just without re-checking
 * shared prefixes. Checks are defined for the rollback semantics only.
 */
struct ExploreRequest {
  std::string program_text;
  Semantics semantics{Semantics::kRollback};
  std::size_t depth{0};
  // Any of: wellformed, conservative, soundness, lemma.
  std::vector<std::string> checks;
  // Visited-state cap. When hit, the report is flagged truncated and counts
  // stop being exhaustive; nothing is ever sampled.
  std::size_t state_limit{1u << 20};
};

struct Counterexample {
  std::string check;
  std::size_t index;  // step position within the derivation below
  std::string what;
  std::vector<std::string> keys;  // choice keys from the initial system
};

struct ExploreReport {
  std::string digest;
  Semantics semantics{Semantics::kRollback};
  std::size_t depth{0};
  std::size_t states{0};       // distinct canonical systems, initial included
  std::size_t derivations{0};  // maximal derivations enumerated
  bool truncated{false};
  std::map<std::string, std::size_t> violations;  // per requested check
  std::vector<Counterexample> counterexamples;    // at most 5 retained
};

std::variant<ExploreReport, RunError> explore(const ExploreRequest& req);

// Line-oriented, tab-separated, byte-deterministic report rendering.
std::string report_text(const ExploreReport& r);

}  // namespace reverb

#endif  // REVERB_EXPLORE_HPP_
