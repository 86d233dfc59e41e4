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

#ifndef REVERB_SCHED_HPP_
#define REVERB_SCHED_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "reverb/step.hpp"

namespace reverb {

enum class PickStatus {
  kOk,
  kExhausted,  // scripted policy ran out of keys
  kMismatch,   // scripted key not currently enabled
};

struct Picked {
  PickStatus status{PickStatus::kOk};
  Choice choice;
  std::string detail;  // offending key on kMismatch
};

// Deterministic selection among enabled choices. Stateful: the default
// policy carries a fairness cursor, the random one a generator, the
// scripted one its position.
class Scheduler {
 public:
  virtual ~Scheduler() = default;
  virtual Picked pick(const std::vector<Choice>& enabled) = 0;
  virtual std::string describe() const = 0;
};

// Backward steps first, then ripe delayed commits, then forward steps;
// within the first two classes the lowest pid wins. Forward processes take
// turns round-robin so a busy low pid cannot starve the others, and a
// process with several receivable messages takes the lowest tag.
std::unique_ptr<Scheduler> make_priority_default();

// mt19937_64 indexing; avoids uniform_int_distribution on purpose, its
// output is implementation-defined and would break cross-platform trace
// determinism.
std::unique_ptr<Scheduler> make_seeded_random(std::uint64_t seed);

// Follows a fixed list of Choice::key() strings.
std::unique_ptr<Scheduler> make_scripted(std::vector<std::string> keys);

}  // namespace reverb

#endif  // REVERB_SCHED_HPP_
