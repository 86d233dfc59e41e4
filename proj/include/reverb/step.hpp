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

#ifndef REVERB_STEP_HPP_
#define REVERB_STEP_HPP_

#include <string>

#include "reverb/ids.hpp"

namespace reverb {

/**
 * Rule vocabulary shared by the three engines. The standard engine uses the
 * first four; the reversible engine adds their undo forms; the rollback
 * engine uses everything.
 */
enum class Rule {
  kSeq,
  kSend,
  kReceive,
  kSpawn,
  kCheck,
  kCommit,       // commit executed on the spot
  kCommitDelay,  // commit postponed into the delayed set
  kDelay,        // a postponed commit firing
  kRollback,     // rollback call flipping the process backward
  kBSeq,
  kBSend,
  kBSendProp,   // undo-send propagating rollback into the receiver
  kBReceive,
  kBSpawn,
  kBSpawnProp,  // undo-spawn propagating rollback into the child
  kBCheck,
  kBCommit,
};

inline bool rule_is_backward(Rule r) {
  switch (r) {
    case Rule::kBSeq:
    case Rule::kBSend:
    case Rule::kBSendProp:
    case Rule::kBReceive:
    case Rule::kBSpawn:
    case Rule::kBSpawnProp:
    case Rule::kBCheck:
    case Rule::kBCommit:
      return true;
    default:
      return false;
  }
}

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::kSeq: return "seq";
    case Rule::kSend: return "send";
    case Rule::kReceive: return "rec";
    case Rule::kSpawn: return "spawn";
    case Rule::kCheck: return "check";
    case Rule::kCommit: return "commit";
    case Rule::kCommitDelay: return "commit-delay";
    case Rule::kDelay: return "delayed-commit";
    case Rule::kRollback: return "rollback";
    case Rule::kBSeq: return "undo-seq";
    case Rule::kBSend: return "undo-send";
    case Rule::kBSendProp: return "rollback-send";
    case Rule::kBReceive: return "undo-rec";
    case Rule::kBSpawn: return "undo-spawn";
    case Rule::kBSpawnProp: return "rollback-spawn";
    case Rule::kBCheck: return "undo-check";
    case Rule::kBCommit: return "undo-commit";
  }
  return "?";
}

/**
 * A schedulable alternative at some system. aux identifies the message for
 * receive choices (tag number, or arrival index in the standard engine) and
 * the checkpoint for delayed-commit choices; aux_kind tells which ('l', 'm'
 * or 't', 0 when unused).
 */
struct Choice {
  Rule rule;
  Pid pid;
  std::uint32_t aux{0};
  char aux_kind{0};

  std::string key() const;
  auto operator<=>(const Choice&) const = default;
};

// What a step did, with enough detail to print the display label.
struct StepLabel {
  Rule rule;
  Pid pid;
  Pid child{0};
  Tag tag{0};
  Tau tau{0};

  // "p1,spawn(p2)", "p2,rec(l3)", "p1,commit(tau1)"; detail omitted when the
  // id was never minted (standard-engine send/receive).
  std::string str() const;
};

std::string choice_rule_key(Rule r);

}  // namespace reverb

#endif  // REVERB_STEP_HPP_
