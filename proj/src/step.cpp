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

#include "reverb/step.hpp"

namespace reverb {

std::string choice_rule_key(Rule r) {
  switch (r) {
    case Rule::kSeq: return "seq";
    case Rule::kSend: return "send";
    case Rule::kReceive: return "rec";
    case Rule::kSpawn: return "spawn";
    case Rule::kCheck: return "check";
    case Rule::kCommit: return "commit";      // exec-vs-delay decided in-step
    case Rule::kCommitDelay: return "commit";
    case Rule::kDelay: return "delay";
    case Rule::kRollback: return "rollback";
    case Rule::kBSeq: return "bseq";
    case Rule::kBSend: return "bsend";
    case Rule::kBSendProp: return "bsend-prop";
    case Rule::kBReceive: return "brec";
    case Rule::kBSpawn: return "bspawn";
    case Rule::kBSpawnProp: return "bspawn-prop";
    case Rule::kBCheck: return "bcheck";
    case Rule::kBCommit: return "bcommit";
  }
  return "?";
}

std::string Choice::key() const {
  std::string out = to_string(pid) + ":" + choice_rule_key(rule);
  if (aux_kind == 'l') out += ":l" + std::to_string(aux);
  if (aux_kind == 'm') out += ":m" + std::to_string(aux);
  if (aux_kind == 't') out += ":tau" + std::to_string(aux);
  return out;
}

std::string StepLabel::str() const {
  std::string out = to_string(pid) + ",";
  switch (rule) {
    case Rule::kSeq:
      return out + "seq";
    case Rule::kSend:
      return tag.n ? out + "send(" + to_string(tag) + ")" : out + "send";
    case Rule::kReceive:
      return tag.n ? out + "rec(" + to_string(tag) + ")" : out + "rec";
    case Rule::kSpawn:
      return out + "spawn(" + to_string(child) + ")";
    case Rule::kCheck:
      return out + "check(" + to_string(tau) + ")";
    case Rule::kCommit:
      return out + "commit(" + to_string(tau) + ")";
    case Rule::kCommitDelay:
      return out + "delay(" + to_string(tau) + ")";
    case Rule::kDelay:
      return out + "delayed-commit(" + to_string(tau) + ")";
    case Rule::kRollback:
      return out + "rollback(" + to_string(tau) + ")";
    case Rule::kBSeq:
      return out + "undo-seq";
    case Rule::kBSend:
      return out + "undo-send(" + to_string(tag) + ")";
    case Rule::kBSendProp:
      return out + "rollback-send(" + to_string(child) + "," + to_string(tag) +
             ")";
    case Rule::kBReceive:
      return out + "undo-rec(" + to_string(tag) + ")";
    case Rule::kBSpawn:
      return out + "undo-spawn(" + to_string(child) + ")";
    case Rule::kBSpawnProp:
      return out + "rollback-spawn(" + to_string(child) + ")";
    case Rule::kBCheck:
      return out + "undo-check(" + to_string(tau) + ")";
    case Rule::kBCommit:
      return out + "undo-commit(" + to_string(tau) + ")";
  }
  return out + "?";
}

}  // namespace reverb
