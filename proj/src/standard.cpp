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

#include "reverb/standard.hpp"

#include <algorithm>
#include <cassert>

namespace reverb {

StdSystem std_init(std::shared_ptr<const Program> prog) {
  StdSystem sys;
  sys.procs.push_back(StdProc{Pid{1}, LocalState{{}, prog->procs.at("main")}});
  sys.prog = std::move(prog);
  return sys;
}

namespace {

// The head statement is receive: list one choice per matching message.
void receive_choices(const StdSystem& sys, const StdProc& p,
                     std::vector<Choice>* out) {
  const auto& rec = std::get<ReceiveStmt>(p.state.pending.front().s);
  for (const auto& m : sys.msgs) {
    if (m.to != p.pid) continue;
    if (match_rec(rec.clauses, m.val))
      out->push_back(Choice{Rule::kReceive, p.pid, m.arrival, 'm'});
  }
}

}  // namespace

std::vector<Choice> std_enabled(const StdSystem& sys) {
  std::vector<Choice> out;
  for (const auto& p : sys.procs) {
    if (!p.state.pending.empty() &&
        std::holds_alternative<ReceiveStmt>(p.state.pending.front().s)) {
      receive_choices(sys, p, &out);
      continue;
    }
    auto r = local_step(p.state, *sys.prog);
    if (const auto* st = std::get_if<LocalStep>(&r)) {
      if (std::holds_alternative<SeqLabel>(st->label.l))
        out.push_back(Choice{Rule::kSeq, p.pid});
      else if (std::holds_alternative<SendLabel>(st->label.l))
        out.push_back(Choice{Rule::kSend, p.pid});
      else if (std::holds_alternative<SpawnLabel>(st->label.l))
        out.push_back(Choice{Rule::kSpawn, p.pid});
      // Checkpoint operators have no standard rule; std_faults reports them.
    }
  }
  return out;
}

std::vector<Fault> std_faults(const StdSystem& sys) {
  std::vector<Fault> out;
  for (const auto& p : sys.procs) {
    if (!p.state.pending.empty() &&
        std::holds_alternative<ReceiveStmt>(p.state.pending.front().s))
      continue;
    auto r = local_step(p.state, *sys.prog);
    if (const auto* err = std::get_if<LocalError>(&r)) {
      out.push_back(Fault{p.pid, err->msg});
    } else if (const auto* st = std::get_if<LocalStep>(&r)) {
      if (std::holds_alternative<CheckLabel>(st->label.l) ||
          std::holds_alternative<CommitLabel>(st->label.l) ||
          std::holds_alternative<RollbackLabel>(st->label.l))
        out.push_back(
            Fault{p.pid, "checkpoint operator under standard semantics"});
    }
  }
  return out;
}

std::optional<std::pair<StepLabel, StdSystem>> std_step(const StdSystem& sys,
                                                        const Choice& c) {
  auto enabled = std_enabled(sys);
  if (std::find(enabled.begin(), enabled.end(), c) == enabled.end())
    return std::nullopt;

  StdSystem out = sys;
  auto* proc = &out.procs[0];
  for (auto& p : out.procs)
    if (p.pid == c.pid) proc = &p;

  switch (c.rule) {
    case Rule::kSeq: {
      auto r = local_step(proc->state, *sys.prog);
      proc->state = std::get<LocalStep>(r).next;
      return std::make_pair(StepLabel{Rule::kSeq, c.pid}, std::move(out));
    }
    case Rule::kSend: {
      auto r = local_step(proc->state, *sys.prog);
      const auto& st = std::get<LocalStep>(r);
      const auto& lbl = std::get<SendLabel>(st.label.l);
      proc->state = st.next;
      out.msgs.push_back(
          StdMessage{c.pid, lbl.dest, lbl.val, out.next_arrival++});
      return std::make_pair(StepLabel{Rule::kSend, c.pid}, std::move(out));
    }
    case Rule::kSpawn: {
      auto r = local_step(proc->state, *sys.prog);
      const auto& st = std::get<LocalStep>(r);
      const auto& lbl = std::get<SpawnLabel>(st.label.l);
      Pid child{out.next_pid++};
      proc->state = bind_future(st.next, Value::pid(child));
      out.procs.push_back(StdProc{child, lbl.child});
      StepLabel sl{Rule::kSpawn, c.pid};
      sl.child = child;
      return std::make_pair(sl, std::move(out));
    }
    case Rule::kReceive: {
      auto it = std::find_if(out.msgs.begin(), out.msgs.end(),
                             [&](const StdMessage& m) {
                               return m.arrival == c.aux && m.to == c.pid;
                             });
      assert(it != out.msgs.end());
      const auto& rec = std::get<ReceiveStmt>(proc->state.pending.front().s);
      auto hit = match_rec(rec.clauses, it->val);
      assert(hit);
      proc->state =
          bind_future(proc->state, rec.clauses[hit->index], hit->binds);
      out.msgs.erase(it);
      return std::make_pair(StepLabel{Rule::kReceive, c.pid}, std::move(out));
    }
    default:
      return std::nullopt;
  }
}

std::string std_terminal(const StdSystem& sys) {
  for (const auto& p : sys.procs)
    if (!p.state.pending.empty()) return "deadlock";
  return "final";
}

std::string std_system_str(const StdSystem& sys, bool with_counters) {
  std::string out;
  for (const auto& p : sys.procs) {
    out += to_string(p.pid) + to_string(p.state) + " ";
  }
  out += "| msgs:";
  if (with_counters) {
    for (const auto& m : sys.msgs)
      out += " (" + to_string(m.from) + "->" + to_string(m.to) + "," +
             to_string(m.val) + ")@" + std::to_string(m.arrival);
    out += " | next_pid=" + std::to_string(sys.next_pid) +
           " next_arrival=" + std::to_string(sys.next_arrival);
  } else {
    std::vector<std::string> items;
    for (const auto& m : sys.msgs)
      items.push_back(" (" + to_string(m.from) + "->" + to_string(m.to) +
                      "," + to_string(m.val) + ")");
    std::sort(items.begin(), items.end());
    for (const auto& s : items) out += s;
  }
  return out;
}

}  // namespace reverb
