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

#ifndef REVERB_STANDARD_HPP_
#define REVERB_STANDARD_HPP_

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reverb/lang.hpp"
#include "reverb/step.hpp"

namespace reverb {

// Irreversible actor semantics: interleaved local steps, asynchronous
// messages, no histories.

struct StdProc {
  Pid pid;
  LocalState state;
};

struct StdMessage {
  Pid from;
  Pid to;
  Value val;
  // Send order; identifies the message for receive choices and keeps
  // serialization deterministic. Not part of semantic equality.
  std::uint32_t arrival{0};
};

struct StdSystem {
  std::shared_ptr<const Program> prog;
  std::vector<StdProc> procs;       // in pid order (pids mint sequentially)
  std::vector<StdMessage> msgs;     // in arrival order
  std::uint32_t next_pid{2};
  std::uint32_t next_arrival{1};
};

// Initial system: one process running main.
StdSystem std_init(std::shared_ptr<const Program> prog);

// A process whose head statement cannot step and never will (local error).
struct Fault {
  Pid pid;
  std::string msg;
};

// All rule instances applicable right now, in canonical order (by pid, then
// rule, then message arrival).
std::vector<Choice> std_enabled(const StdSystem& sys);

// Processes stuck on a local error (unbound variable etc.). A faulted
// process halts the run; checkpoint operators in a standard system also
// fault (they have no standard rule).
std::vector<Fault> std_faults(const StdSystem& sys);

// Applies one enabled choice. nullopt if the choice is not currently
// enabled; the input is never mutated.
std::optional<std::pair<StepLabel, StdSystem>> std_step(const StdSystem& sys,
                                                        const Choice& c);

// "final" when every process has emptied its statements, "deadlock" when
// some process waits forever. Only meaningful when std_enabled is empty.
std::string std_terminal(const StdSystem& sys);

// One-line serialization. Counters and arrival indices are included only
// on request (snapshots omit them so equal configurations print equally).
std::string std_system_str(const StdSystem& sys, bool with_counters = false);

}  // namespace reverb

#endif  // REVERB_STANDARD_HPP_
