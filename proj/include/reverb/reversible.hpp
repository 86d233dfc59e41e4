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

#ifndef REVERB_REVERSIBLE_HPP_
#define REVERB_REVERSIBLE_HPP_

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reverb/lang.hpp"
#include "reverb/rollback.hpp"  // HistoryEntry
#include "reverb/standard.hpp"  // Fault
#include "reverb/step.hpp"

namespace reverb {

// Uncontrolled reversible semantics: every step records, any process may
// undo its newest entry whenever the side conditions hold; there is no
// rollback target driving the backward rules.
//
// Histories reuse HistoryEntry with only the seq/send/rec/spawn variants;
// rec entries carry empty checkpoint sets here. That keeps them directly
// comparable with projected rollback histories.

struct RevMessage {
  Pid from;
  Pid to;
  Tag tag;
  Value val;
};
bool operator==(const RevMessage&, const RevMessage&);

struct RevProc {
  Pid pid;
  History hist;
  LocalState state;
};
bool operator==(const RevProc&, const RevProc&);

struct RevSystem {
  std::shared_ptr<const Program> prog;
  std::vector<RevProc> procs;    // pid order
  std::vector<RevMessage> msgs;  // send order
  std::uint32_t next_pid{2};
  std::uint32_t next_tag{1};

  Pid fresh_pid() { return Pid{next_pid++}; }
  Tag fresh_tag() { return Tag{next_tag++}; }
};

RevSystem rev_init(std::shared_ptr<const Program> prog);

/**
 * All applicable forward and backward instances. Undo-send needs its tagged
 * message still floating; undo-spawn needs the child with an empty history;
 * undo-seq and undo-receive only need the matching head entry.
 */
std::vector<Choice> rev_enabled(const RevSystem& sys);

// Checkpoint operators have no rules here, so reaching one is a fault, as
// are the usual local errors.
std::vector<Fault> rev_faults(const RevSystem& sys);

std::optional<std::pair<StepLabel, RevSystem>> rev_step(const RevSystem& sys,
                                                        const Choice& c);

std::string rev_terminal(const RevSystem& sys);

std::string rev_system_str(const RevSystem& sys, bool with_counters = false);

const RevProc* rev_find(const RevSystem& sys, Pid pid);

}  // namespace reverb

#endif  // REVERB_REVERSIBLE_HPP_
