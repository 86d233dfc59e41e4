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

#include "reverb/reversible.hpp"

#include <algorithm>
#include <cassert>

namespace reverb {

bool operator==(const RevMessage& a, const RevMessage& b) {
  return a.from == b.from && a.to == b.to && a.tag == b.tag && a.val == b.val;
}

bool operator==(const RevProc& a, const RevProc& b) {
  return a.pid == b.pid && a.hist == b.hist && a.state == b.state;
}

RevSystem rev_init(std::shared_ptr<const Program> prog) {
  RevSystem sys;
  sys.procs.push_back(
      RevProc{Pid{1}, {}, LocalState{{}, prog->procs.at("main")}});
  sys.prog = std::move(prog);
  return sys;
}

const RevProc* rev_find(const RevSystem& sys, Pid pid) {
  for (const auto& p : sys.procs)
    if (p.pid == pid) return &p;
  return nullptr;
}

namespace {

RevProc* find_mut(RevSystem& sys, Pid pid) {
  for (auto& p : sys.procs)
    if (p.pid == pid) return &p;
  return nullptr;
}

bool tag_floating(const RevSystem& sys, Tag tag) {
  return std::any_of(sys.msgs.begin(), sys.msgs.end(),
                     [&](const RevMessage& m) { return m.tag == tag; });
}

void forward_choices(const RevSystem& sys, const RevProc& p,
                     std::vector<Choice>* out) {
  if (!p.state.pending.empty()) {
    if (const auto* rec =
            std::get_if<ReceiveStmt>(&p.state.pending.front().s)) {
      for (const auto& m : sys.msgs) {
        if (m.to != p.pid) continue;
        if (match_rec(rec->clauses, m.val))
          out->push_back(Choice{Rule::kReceive, p.pid, m.tag.n, 'l'});
      }
      return;
    }
  }
  LocalResult r = local_step(p.state, *sys.prog);
  const auto* step = std::get_if<LocalStep>(&r);
  if (step == nullptr) return;
  if (std::holds_alternative<SeqLabel>(step->label.l))
    out->push_back(Choice{Rule::kSeq, p.pid});
  else if (std::holds_alternative<SendLabel>(step->label.l))
    out->push_back(Choice{Rule::kSend, p.pid});
  else if (std::holds_alternative<SpawnLabel>(step->label.l))
    out->push_back(Choice{Rule::kSpawn, p.pid});
  // Checkpoint operators have no rule here; rev_faults reports them.
}

// One potential undo per process, determined by its newest history entry.
void backward_choices(const RevSystem& sys, const RevProc& p,
                      std::vector<Choice>* out) {
  if (p.hist.empty()) return;
  const HistoryEntry& top = p.hist.back();
  if (std::holds_alternative<HSeq>(top.e)) {
    out->push_back(Choice{Rule::kBSeq, p.pid});
  } else if (const auto* snd = std::get_if<HSend>(&top.e)) {
    // Only while the message still floats; once the receiver consumed it,
    // that receive must be undone first.
    if (tag_floating(sys, snd->tag))
      out->push_back(Choice{Rule::kBSend, p.pid, snd->tag.n, 'l'});
  } else if (const auto* rec = std::get_if<HRec>(&top.e)) {
    out->push_back(Choice{Rule::kBReceive, p.pid, rec->tag.n, 'l'});
  } else if (const auto* sp = std::get_if<HSpawn>(&top.e)) {
    const RevProc* child = rev_find(sys, sp->child);
    if (child != nullptr && child->hist.empty())
      out->push_back(Choice{Rule::kBSpawn, p.pid});
  }
  // HCheck / HCommit never occur in these histories.
}

}  // namespace

std::vector<Choice> rev_enabled(const RevSystem& sys) {
  std::vector<Choice> out;
  for (const auto& p : sys.procs) {
    forward_choices(sys, p, &out);
    backward_choices(sys, p, &out);
  }
  std::sort(out.begin(), out.end(), [](const Choice& a, const Choice& b) {
    if (a.pid != b.pid) return a.pid < b.pid;
    if (a.rule != b.rule) return a.rule < b.rule;
    return a.aux < b.aux;
  });
  return out;
}

std::vector<Fault> rev_faults(const RevSystem& sys) {
  std::vector<Fault> out;
  for (const auto& p : sys.procs) {
    LocalResult r = local_step(p.state, *sys.prog);
    if (const auto* err = std::get_if<LocalError>(&r)) {
      out.push_back(Fault{p.pid, err->msg});
    } else if (const auto* step = std::get_if<LocalStep>(&r)) {
      if (std::holds_alternative<CheckLabel>(step->label.l) ||
          std::holds_alternative<CommitLabel>(step->label.l) ||
          std::holds_alternative<RollbackLabel>(step->label.l))
        out.push_back(
            Fault{p.pid, "checkpoint operator under reversible semantics"});
    }
  }
  return out;
}

std::optional<std::pair<StepLabel, RevSystem>> rev_step(const RevSystem& sys,
                                                        const Choice& c) {
  auto en = rev_enabled(sys);
  if (std::find(en.begin(), en.end(), c) == en.end()) return std::nullopt;

  RevSystem out = sys;
  RevProc* p = find_mut(out, c.pid);
  LocalState s0 = p->state;

  switch (c.rule) {
    case Rule::kReceive: {
      Tag tag{c.aux};
      auto it = std::find_if(out.msgs.begin(), out.msgs.end(),
                             [&](const RevMessage& m) { return m.tag == tag; });
      const RevMessage m = *it;
      const auto& rec = std::get<ReceiveStmt>(p->state.pending.front().s);
      auto hit = match_rec(rec.clauses, m.val);
      p->hist.push_back(HistoryEntry{HRec{{}, {}, s0, m.from, m.tag, m.val}});
      p->state = bind_future(p->state, rec.clauses[hit->index], hit->binds);
      out.msgs.erase(it);
      return std::make_pair(
          StepLabel{Rule::kReceive, c.pid, Pid{0}, tag, Tau{0}}, out);
    }
    case Rule::kSeq: {
      LocalResult r = local_step(p->state, *out.prog);
      p->hist.push_back(HistoryEntry{HSeq{s0}});
      p->state = std::get<LocalStep>(r).next;
      return std::make_pair(StepLabel{Rule::kSeq, c.pid}, out);
    }
    case Rule::kSend: {
      LocalResult r = local_step(p->state, *out.prog);
      const auto& step = std::get<LocalStep>(r);
      const auto& l = std::get<SendLabel>(step.label.l);
      Tag tag = out.fresh_tag();
      p->hist.push_back(HistoryEntry{HSend{s0, l.dest, tag}});
      p->state = step.next;
      out.msgs.push_back(RevMessage{c.pid, l.dest, tag, l.val});
      return std::make_pair(
          StepLabel{Rule::kSend, c.pid, Pid{0}, tag, Tau{0}}, out);
    }
    case Rule::kSpawn: {
      LocalResult r = local_step(p->state, *out.prog);
      const auto& step = std::get<LocalStep>(r);
      const auto& l = std::get<SpawnLabel>(step.label.l);
      Pid child = out.fresh_pid();
      p->hist.push_back(HistoryEntry{HSpawn{s0, child}});
      p->state = bind_future(step.next, Value::pid(child));
      out.procs.push_back(RevProc{child, {}, l.child});
      StepLabel sl{Rule::kSpawn, c.pid};
      sl.child = child;
      return std::make_pair(sl, out);
    }
    case Rule::kBSeq: {
      const auto& e = std::get<HSeq>(p->hist.back().e);
      p->state = e.s;
      p->hist.pop_back();
      return std::make_pair(StepLabel{Rule::kBSeq, c.pid}, out);
    }
    case Rule::kBSend: {
      const auto e = std::get<HSend>(p->hist.back().e);
      out.msgs.erase(std::find_if(
          out.msgs.begin(), out.msgs.end(),
          [&](const RevMessage& m) { return m.tag == e.tag; }));
      p->state = e.s;
      p->hist.pop_back();
      return std::make_pair(
          StepLabel{Rule::kBSend, c.pid, Pid{0}, e.tag, Tau{0}}, out);
    }
    case Rule::kBReceive: {
      const auto e = std::get<HRec>(p->hist.back().e);
      p->state = e.s;
      p->hist.pop_back();
      out.msgs.push_back(RevMessage{e.from, c.pid, e.tag, e.val});
      return std::make_pair(
          StepLabel{Rule::kBReceive, c.pid, Pid{0}, e.tag, Tau{0}}, out);
    }
    case Rule::kBSpawn: {
      const auto e = std::get<HSpawn>(p->hist.back().e);
      out.procs.erase(std::find_if(
          out.procs.begin(), out.procs.end(),
          [&](const RevProc& q) { return q.pid == e.child; }));
      p = find_mut(out, c.pid);  // erase may have shifted the vector
      p->state = e.s;
      p->hist.pop_back();
      StepLabel sl{Rule::kBSpawn, c.pid};
      sl.child = e.child;
      return std::make_pair(sl, out);
    }
    default:
      return std::nullopt;
  }
}

std::string rev_terminal(const RevSystem& sys) {
  for (const auto& p : sys.procs)
    if (!p.state.pending.empty()) return "deadlock";
  return "final";
}

std::string rev_system_str(const RevSystem& sys, bool with_counters) {
  std::string out;
  for (const auto& p : sys.procs) {
    out += to_string(p.pid) + "[h=" + to_string(p.hist) +
           " st=" + to_string(p.state) + "] ";
  }
  out += "| msgs:";
  std::vector<std::string> items;
  for (const auto& m : sys.msgs)
    items.push_back(" (" + to_string(m.from) + "->" + to_string(m.to) + "," +
                    to_string(m.tag) + "," + to_string(m.val) + ")");
  if (!with_counters) std::sort(items.begin(), items.end());
  for (const auto& s : items) out += s;
  if (with_counters)
    out += " | next_pid=" + std::to_string(sys.next_pid) +
           " next_tag=" + std::to_string(sys.next_tag);
  return out;
}

}  // namespace reverb
