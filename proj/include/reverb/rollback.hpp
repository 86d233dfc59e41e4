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

#ifndef REVERB_ROLLBACK_HPP_
#define REVERB_ROLLBACK_HPP_

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "reverb/lang.hpp"
#include "reverb/standard.hpp"  // Fault
#include "reverb/step.hpp"

namespace reverb {

// Checkpoint-instrumented semantics. While a process has active checkpoints
// it records a Landauer history; rollback(tau) turns the process backward
// and undo rules consume the history causally, pulling in the processes the
// rolled-back work touched.

struct RbMessage {
  TauSet chks;  // sender's active checkpoints at send time
  Pid from;
  Pid to;
  Tag tag;
  Value val;
};
bool operator==(const RbMessage&, const RbMessage&);

// History entries, one per recorded forward step. Stored states are the
// pre-step local states, so undo is restoration.
struct HSeq {
  LocalState s;
};
struct HSend {
  LocalState s;
  Pid dest;
  Tag tag;
};
struct HRec {
  TauSet forced;    // checkpoints this receive introduced (msg_chks minus
                    // the pre-receive active set)
  TauSet msg_chks;  // the message's checkpoint set, restored on undo
  LocalState s;
  Pid from;
  Tag tag;
  Value val;
};
struct HSpawn {
  LocalState s;
  Pid child;
};
struct HCheck {
  Tau t;
  LocalState s;
};
struct HCommit {
  Tau t;
  LocalState s;
};

struct HistoryEntry {
  std::variant<HSeq, HSend, HRec, HSpawn, HCheck, HCommit> e;
};
bool operator==(const HistoryEntry&, const HistoryEntry&);

// back() is the newest entry.
using History = std::vector<HistoryEntry>;

std::string to_string(const HistoryEntry& e);
std::string to_string(const History& h);  // newest first

// A commit that arrived while newer checkpoints were still active: parked
// with the history and dependent processes captured at commit time.
struct DelayedCommit {
  Tau t;
  History hist;
  PidSet deps;
};
bool operator==(const DelayedCommit&, const DelayedCommit&);

struct RbProc {
  Pid pid;
  TauSet chks;                        // C: active checkpoints
  std::vector<DelayedCommit> delayed; // D, kept sorted by tau
  History hist;
  LocalState state;
  // Engaged while rolling back; holds the rollback target.
  std::optional<Tau> back_target;
  // Handler-mode resume point: statements after the rollback call, installed
  // when the undo reaches the checkpoint.
  std::optional<std::vector<Statement>> resume;
};
bool operator==(const RbProc&, const RbProc&);

struct RbSystem {
  std::shared_ptr<const Program> prog;
  std::vector<RbProc> procs;     // pid order
  std::vector<RbMessage> msgs;   // send order
  std::uint32_t next_pid{2};
  std::uint32_t next_tau{1};
  std::uint32_t next_tag{1};
  bool handler_mode{false};

  Pid fresh_pid() { return Pid{next_pid++}; }
  Tau fresh_tau() { return Tau{next_tau++}; }
  Tag fresh_tag() { return Tag{next_tag++}; }
};

RbSystem rb_init(std::shared_ptr<const Program> prog,
                 bool handler_mode = false);

// History update: identity when no checkpoint is active, else records the
// entry as the new head.
History add_hist(const TauSet& c, HistoryEntry e, const History& h);

/**
 * Is t the newest still-active checkpoint introduced in h? Committed or
 * rolled-away checkpoints in between do not block. Used both to decide
 * commit-vs-delay and to test a parked commit for readiness.
 */
bool last_active(Tau t, const History& h, const TauSet& c);

/**
 * Processes this history passed work to since t was introduced: spawn
 * children and send destinations of entries newer than t's introduction.
 * A checkpoint inherited at spawn time has no introducing entry; the whole
 * history counts as newer then.
 */
PidSet dep_pids(Tau t, const History& h);

/**
 * Removes t from the active set of each process in deps, transitively
 * following each one's own dependents. Unknown pids are a logic error (the
 * engine only deletes processes whose work is fully undone).
 */
RbSystem propagate_commit(Tau t, const PidSet& deps, const RbSystem& sys);

std::vector<Choice> rb_enabled(const RbSystem& sys);
std::vector<Fault> rb_faults(const RbSystem& sys);

std::optional<std::pair<StepLabel, RbSystem>> rb_step(const RbSystem& sys,
                                                      const Choice& c);

// Classification when no choice is enabled: "stuck-backward" if some
// process is still rolling back, else "deadlock"/"final" as in the
// standard engine.
std::string rb_terminal(const RbSystem& sys);

std::string rb_system_str(const RbSystem& sys, bool with_counters = false);

const RbProc* rb_find(const RbSystem& sys, Pid pid);

}  // namespace reverb

#endif  // REVERB_ROLLBACK_HPP_
