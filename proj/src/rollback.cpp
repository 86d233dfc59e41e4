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

#include "reverb/rollback.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace reverb {

bool operator==(const RbMessage& a, const RbMessage& b) {
  return a.chks == b.chks && a.from == b.from && a.to == b.to &&
         a.tag == b.tag && a.val == b.val;
}

bool operator==(const HistoryEntry& a, const HistoryEntry& b) {
  if (a.e.index() != b.e.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.e);
        if constexpr (std::is_same_v<T, HSeq>) {
          return x.s == y.s;
        } else if constexpr (std::is_same_v<T, HSend>) {
          return x.s == y.s && x.dest == y.dest && x.tag == y.tag;
        } else if constexpr (std::is_same_v<T, HRec>) {
          return x.forced == y.forced && x.msg_chks == y.msg_chks &&
                 x.s == y.s && x.from == y.from && x.tag == y.tag &&
                 x.val == y.val;
        } else if constexpr (std::is_same_v<T, HSpawn>) {
          return x.s == y.s && x.child == y.child;
        } else if constexpr (std::is_same_v<T, HCheck>) {
          return x.t == y.t && x.s == y.s;
        } else {
          static_assert(std::is_same_v<T, HCommit>);
          return x.t == y.t && x.s == y.s;
        }
      },
      a.e);
}

bool operator==(const DelayedCommit& a, const DelayedCommit& b) {
  return a.t == b.t && a.hist == b.hist && a.deps == b.deps;
}

bool operator==(const RbProc& a, const RbProc& b) {
  return a.pid == b.pid && a.chks == b.chks && a.delayed == b.delayed &&
         a.hist == b.hist && a.state == b.state &&
         a.back_target == b.back_target && a.resume == b.resume;
}

std::string to_string(const HistoryEntry& e) {
  std::ostringstream os;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, HSeq>) {
          os << "seq(" << to_string(x.s) << ")";
        } else if constexpr (std::is_same_v<T, HSend>) {
          os << "send(" << to_string(x.s) << "," << to_string(x.dest) << ","
             << to_string(x.tag) << ")";
        } else if constexpr (std::is_same_v<T, HRec>) {
          os << "rec(" << to_string(x.forced) << "," << to_string(x.msg_chks)
             << "," << to_string(x.s) << "," << to_string(x.from) << ","
             << to_string(x.tag) << "," << to_string(x.val) << ")";
        } else if constexpr (std::is_same_v<T, HSpawn>) {
          os << "spawn(" << to_string(x.s) << "," << to_string(x.child)
             << ")";
        } else if constexpr (std::is_same_v<T, HCheck>) {
          os << "check(" << to_string(x.t) << "," << to_string(x.s) << ")";
        } else {
          static_assert(std::is_same_v<T, HCommit>);
          os << "commit(" << to_string(x.t) << "," << to_string(x.s) << ")";
        }
      },
      e.e);
  return os.str();
}

std::string to_string(const History& h) {
  std::ostringstream os;
  os << "[";
  for (auto it = h.rbegin(); it != h.rend(); ++it) {
    if (it != h.rbegin()) os << "; ";
    os << to_string(*it);
  }
  os << "]";
  return os.str();
}

RbSystem rb_init(std::shared_ptr<const Program> prog, bool handler_mode) {
  RbSystem sys;
  sys.prog = prog;
  sys.handler_mode = handler_mode;
  RbProc p;
  p.pid = Pid{1};
  p.state = LocalState{{}, prog->procs.at("main")};
  sys.procs.push_back(std::move(p));
  return sys;
}

History add_hist(const TauSet& c, HistoryEntry e, const History& h) {
  if (c.empty()) return h;
  History out = h;
  out.push_back(std::move(e));
  return out;
}

bool last_active(Tau t, const History& h, const TauSet& c) {
  for (auto it = h.rbegin(); it != h.rend(); ++it) {
    if (const auto* chk = std::get_if<HCheck>(&it->e)) {
      if (chk->t == t) return true;
      if (c.count(chk->t) != 0) return false;
      continue;  // committed or rolled away, does not block
    }
    if (const auto* rec = std::get_if<HRec>(&it->e)) {
      if (rec->forced.count(t) != 0) return true;
      bool blocks = std::any_of(rec->forced.begin(), rec->forced.end(),
                                [&](Tau f) { return c.count(f) != 0; });
      if (blocks) return false;
    }
  }
  return false;
}

PidSet dep_pids(Tau t, const History& h) {
  // Newest entry introducing t, or one before the start when t was
  // inherited at spawn time.
  std::ptrdiff_t intro = -1;
  for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(h.size()) - 1; i >= 0;
       --i) {
    if (const auto* chk = std::get_if<HCheck>(&h[i].e)) {
      if (chk->t == t) {
        intro = i;
        break;
      }
    } else if (const auto* rec = std::get_if<HRec>(&h[i].e)) {
      if (rec->forced.count(t) != 0) {
        intro = i;
        break;
      }
    }
  }
  PidSet out;
  for (std::size_t i = static_cast<std::size_t>(intro + 1); i < h.size();
       ++i) {
    if (const auto* sp = std::get_if<HSpawn>(&h[i].e)) {
      out.insert(sp->child);
    } else if (const auto* sn = std::get_if<HSend>(&h[i].e)) {
      out.insert(sn->dest);
    }
  }
  return out;
}

namespace {

RbProc* find_mut(RbSystem& sys, Pid pid) {
  for (auto& p : sys.procs)
    if (p.pid == pid) return &p;
  return nullptr;
}

void propagate_into(Tau t, const PidSet& deps, RbSystem& sys) {
  std::deque<Pid> work(deps.begin(), deps.end());
  while (!work.empty()) {
    Pid q = work.front();
    work.pop_front();
    RbProc* p = find_mut(sys, q);
    if (p == nullptr)
      throw std::logic_error("commit propagation reached a deleted process");
    if (p->chks.erase(t) == 0) continue;
    for (Pid r : dep_pids(t, p->hist)) work.push_back(r);
  }
}

// A floating message is not receivable while its sender is rolling back
// past the send: the undo-send rule must win the race for it.
bool msg_frozen(const RbSystem& sys, const RbMessage& m) {
  const RbProc* s = rb_find(sys, m.from);
  if (s == nullptr || !s->back_target.has_value()) return false;
  for (const auto& e : s->hist) {
    if (const auto* sn = std::get_if<HSend>(&e.e)) {
      if (sn->tag == m.tag) return true;
    }
  }
  return false;
}

const RbMessage* find_msg(const RbSystem& sys, Tag tag) {
  for (const auto& m : sys.msgs)
    if (m.tag == tag) return &m;
  return nullptr;
}

bool hist_has_rec_tag(const History& h, Tag tag) {
  for (const auto& e : h) {
    if (const auto* rec = std::get_if<HRec>(&e.e)) {
      if (rec->tag == tag) return true;
    }
  }
  return false;
}

void backward_choices(const RbSystem& sys, const RbProc& p,
                      std::vector<Choice>& out) {
  Tau target = *p.back_target;
  if (p.hist.empty()) return;  // waits for its spawner's undo
  const HistoryEntry& top = p.hist.back();
  if (std::holds_alternative<HSeq>(top.e)) {
    out.push_back(Choice{Rule::kBSeq, p.pid, 0, 0});
  } else if (const auto* sn = std::get_if<HSend>(&top.e)) {
    if (find_msg(sys, sn->tag) != nullptr) {
      out.push_back(Choice{Rule::kBSend, p.pid, sn->tag.n, 'l'});
    } else {
      const RbProc* dest = rb_find(sys, sn->dest);
      if (dest != nullptr && !dest->back_target.has_value() &&
          hist_has_rec_tag(dest->hist, sn->tag) &&
          dest->chks.count(target) != 0) {
        out.push_back(Choice{Rule::kBSendProp, p.pid, sn->tag.n, 'l'});
      }
      // Otherwise the receiver is already rolling back; wait for it.
    }
  } else if (const auto* rec = std::get_if<HRec>(&top.e)) {
    out.push_back(Choice{Rule::kBReceive, p.pid, rec->tag.n, 'l'});
  } else if (const auto* sp = std::get_if<HSpawn>(&top.e)) {
    const RbProc* child = rb_find(sys, sp->child);
    if (child == nullptr) return;
    if (child->back_target == p.back_target && child->hist.empty()) {
      out.push_back(Choice{Rule::kBSpawn, p.pid, 0, 0});
    } else if (!child->back_target.has_value() &&
               child->chks.count(target) != 0) {
      out.push_back(Choice{Rule::kBSpawnProp, p.pid, 0, 0});
    }
  } else if (std::holds_alternative<HCheck>(top.e)) {
    out.push_back(Choice{Rule::kBCheck, p.pid, 0, 0});
  } else {
    out.push_back(Choice{Rule::kBCommit, p.pid, 0, 0});
  }
}

void forward_choices(const RbSystem& sys, const RbProc& p,
                     std::vector<Choice>& out) {
  for (const auto& dc : p.delayed) {
    if (last_active(dc.t, p.hist, p.chks))
      out.push_back(Choice{Rule::kDelay, p.pid, dc.t.n, 't'});
  }
  if (!p.state.pending.empty()) {
    if (const auto* rec = std::get_if<ReceiveStmt>(&p.state.pending.front().s)) {
      for (const auto& m : sys.msgs) {
        if (m.to != p.pid) continue;
        if (!match_rec(rec->clauses, m.val).has_value()) continue;
        if (msg_frozen(sys, m)) continue;
        out.push_back(Choice{Rule::kReceive, p.pid, m.tag.n, 'l'});
      }
      return;
    }
  }
  LocalResult r = local_step(p.state, *sys.prog);
  const auto* step = std::get_if<LocalStep>(&r);
  if (step == nullptr) return;  // stuck or faulted, no choice
  std::visit(
      [&](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, SeqLabel>) {
          out.push_back(Choice{Rule::kSeq, p.pid, 0, 0});
        } else if constexpr (std::is_same_v<T, SendLabel>) {
          out.push_back(Choice{Rule::kSend, p.pid, 0, 0});
        } else if constexpr (std::is_same_v<T, SpawnLabel>) {
          out.push_back(Choice{Rule::kSpawn, p.pid, 0, 0});
        } else if constexpr (std::is_same_v<T, CheckLabel>) {
          out.push_back(Choice{Rule::kCheck, p.pid, 0, 0});
        } else if constexpr (std::is_same_v<T, CommitLabel>) {
          if (p.chks.count(l.t) != 0)
            out.push_back(Choice{Rule::kCommit, p.pid, l.t.n, 't'});
        } else {
          static_assert(std::is_same_v<T, RollbackLabel>);
          if (p.chks.count(l.t) != 0)
            out.push_back(Choice{Rule::kRollback, p.pid, l.t.n, 't'});
        }
      },
      step->label.l);
}

}  // namespace

RbSystem propagate_commit(Tau t, const PidSet& deps, const RbSystem& sys) {
  RbSystem out = sys;
  propagate_into(t, deps, out);
  return out;
}

std::vector<Choice> rb_enabled(const RbSystem& sys) {
  std::vector<Choice> out;
  for (const auto& p : sys.procs) {
    if (p.back_target.has_value())
      backward_choices(sys, p, out);
    else
      forward_choices(sys, p, out);
  }
  std::sort(out.begin(), out.end(), [](const Choice& a, const Choice& b) {
    if (a.pid != b.pid) return a.pid < b.pid;
    if (a.rule != b.rule) return a.rule < b.rule;
    return a.aux < b.aux;
  });
  return out;
}

std::vector<Fault> rb_faults(const RbSystem& sys) {
  std::vector<Fault> out;
  for (const auto& p : sys.procs) {
    if (p.back_target.has_value()) continue;
    LocalResult r = local_step(p.state, *sys.prog);
    if (const auto* err = std::get_if<LocalError>(&r)) {
      out.push_back(Fault{p.pid, err->msg});
      continue;
    }
    if (const auto* step = std::get_if<LocalStep>(&r)) {
      Tau named{0};
      if (const auto* cl = std::get_if<CommitLabel>(&step->label.l))
        named = cl->t;
      else if (const auto* rl = std::get_if<RollbackLabel>(&step->label.l))
        named = rl->t;
      bool delayed = std::any_of(
          p.delayed.begin(), p.delayed.end(),
          [&](const DelayedCommit& d) { return d.t == named; });
      // Naming a currently-delayed checkpoint is not a fault, just a
      // process with no applicable rule.
      if (named.n != 0 && p.chks.count(named) == 0 && !delayed) {
        out.push_back(
            Fault{p.pid, "inactive checkpoint " + to_string(named)});
      }
    }
  }
  return out;
}

namespace {

bool choice_enabled(const RbSystem& sys, const Choice& c) {
  auto en = rb_enabled(sys);
  return std::find(en.begin(), en.end(), c) != en.end();
}

std::optional<std::pair<StepLabel, RbSystem>> forward_step(
    const RbSystem& sys, const Choice& c) {
  RbSystem out = sys;
  RbProc* p = find_mut(out, c.pid);
  LocalState s0 = p->state;  // pre-step state, the history payload

  if (c.rule == Rule::kReceive) {
    Tag tag{c.aux};
    auto it = std::find_if(out.msgs.begin(), out.msgs.end(),
                           [&](const RbMessage& m) { return m.tag == tag; });
    const RbMessage m = *it;
    const auto& rec = std::get<ReceiveStmt>(p->state.pending.front().s);
    auto hit = match_rec(rec.clauses, m.val);
    TauSet forced;
    for (Tau t : m.chks)
      if (p->chks.count(t) == 0) forced.insert(t);
    TauSet merged = p->chks;
    merged.insert(m.chks.begin(), m.chks.end());
    p->hist = add_hist(merged,
                       HistoryEntry{HRec{forced, m.chks, s0, m.from, m.tag,
                                         m.val}},
                       p->hist);
    p->chks = merged;
    p->state = bind_future(p->state, rec.clauses[hit->index], hit->binds);
    out.msgs.erase(it);
    return std::make_pair(
        StepLabel{Rule::kReceive, c.pid, Pid{0}, tag, Tau{0}}, out);
  }

  if (c.rule == Rule::kDelay) {
    Tau t{c.aux};
    auto it = std::find_if(p->delayed.begin(), p->delayed.end(),
                           [&](const DelayedCommit& d) { return d.t == t; });
    DelayedCommit dc = *it;
    p->delayed.erase(it);
    propagate_into(t, dc.deps, out);
    return std::make_pair(StepLabel{Rule::kDelay, c.pid, Pid{0}, Tag{0}, t},
                          out);
  }

  LocalResult r = local_step(p->state, *out.prog);
  const auto& step = std::get<LocalStep>(r);

  switch (c.rule) {
    case Rule::kSeq: {
      p->hist = add_hist(p->chks, HistoryEntry{HSeq{s0}}, p->hist);
      p->state = step.next;
      return std::make_pair(
          StepLabel{Rule::kSeq, c.pid, Pid{0}, Tag{0}, Tau{0}}, out);
    }
    case Rule::kSend: {
      const auto& l = std::get<SendLabel>(step.label.l);
      Tag tag = out.fresh_tag();
      p->hist =
          add_hist(p->chks, HistoryEntry{HSend{s0, l.dest, tag}}, p->hist);
      p->state = step.next;
      out.msgs.push_back(RbMessage{p->chks, c.pid, l.dest, tag, l.val});
      return std::make_pair(
          StepLabel{Rule::kSend, c.pid, Pid{0}, tag, Tau{0}}, out);
    }
    case Rule::kSpawn: {
      const auto& l = std::get<SpawnLabel>(step.label.l);
      Pid child = out.fresh_pid();
      p->hist =
          add_hist(p->chks, HistoryEntry{HSpawn{s0, child}}, p->hist);
      p->state = bind_future(step.next, Value::pid(child));
      RbProc cp;
      cp.pid = child;
      cp.chks = p->chks;  // inherited, with no introducing entry
      cp.state = l.child;
      out.procs.push_back(std::move(cp));
      return std::make_pair(
          StepLabel{Rule::kSpawn, c.pid, child, Tag{0}, Tau{0}}, out);
    }
    case Rule::kCheck: {
      Tau t = out.fresh_tau();
      TauSet merged = p->chks;
      merged.insert(t);
      p->hist = add_hist(merged, HistoryEntry{HCheck{t, s0}}, p->hist);
      p->chks = merged;
      p->state = bind_future(step.next, Value::chk(t));
      return std::make_pair(
          StepLabel{Rule::kCheck, c.pid, Pid{0}, Tag{0}, t}, out);
    }
    case Rule::kCommit: {
      Tau t{c.aux};
      History pre = p->hist;
      PidSet deps = dep_pids(t, pre);
      bool now = last_active(t, pre, p->chks);
      p->hist = add_hist(p->chks, HistoryEntry{HCommit{t, s0}}, p->hist);
      p->chks.erase(t);
      p->state = step.next;
      if (now) {
        propagate_into(t, deps, out);
        return std::make_pair(
            StepLabel{Rule::kCommit, c.pid, Pid{0}, Tag{0}, t}, out);
      }
      // Park with the pre-commit history; insert keeping tau order.
      DelayedCommit dc{t, std::move(pre), deps};
      auto pos = std::find_if(p->delayed.begin(), p->delayed.end(),
                              [&](const DelayedCommit& d) { return t < d.t; });
      p->delayed.insert(pos, std::move(dc));
      return std::make_pair(
          StepLabel{Rule::kCommitDelay, c.pid, Pid{0}, Tag{0}, t}, out);
    }
    case Rule::kRollback: {
      Tau t{c.aux};
      p->state = step.next;
      p->back_target = t;
      if (out.handler_mode) p->resume = p->state.pending;
      return std::make_pair(
          StepLabel{Rule::kRollback, c.pid, Pid{0}, Tag{0}, t}, out);
    }
    default:
      return std::nullopt;
  }
}

std::optional<std::pair<StepLabel, RbSystem>> backward_step(
    const RbSystem& sys, const Choice& c) {
  RbSystem out = sys;
  RbProc* p = find_mut(out, c.pid);
  Tau target = *p->back_target;
  HistoryEntry top = p->hist.back();

  switch (c.rule) {
    case Rule::kBSeq: {
      p->state = std::get<HSeq>(top.e).s;
      p->hist.pop_back();
      return std::make_pair(
          StepLabel{Rule::kBSeq, c.pid, Pid{0}, Tag{0}, Tau{0}}, out);
    }
    case Rule::kBSend: {
      const auto& e = std::get<HSend>(top.e);
      auto it =
          std::find_if(out.msgs.begin(), out.msgs.end(),
                       [&](const RbMessage& m) { return m.tag == e.tag; });
      out.msgs.erase(it);
      p->state = e.s;
      p->hist.pop_back();
      return std::make_pair(
          StepLabel{Rule::kBSend, c.pid, Pid{0}, e.tag, Tau{0}}, out);
    }
    case Rule::kBSendProp: {
      const auto& e = std::get<HSend>(top.e);
      RbProc* dest = find_mut(out, e.dest);
      dest->back_target = target;
      return std::make_pair(
          StepLabel{Rule::kBSendProp, c.pid, e.dest, e.tag, Tau{0}}, out);
    }
    case Rule::kBReceive: {
      const auto& e = std::get<HRec>(top.e);
      out.msgs.push_back(RbMessage{e.msg_chks, e.from, c.pid, e.tag, e.val});
      for (Tau t : e.forced) p->chks.erase(t);
      bool done = e.forced.count(target) != 0;
      p->state = e.s;
      p->hist.pop_back();
      if (done) p->back_target.reset();
      return std::make_pair(
          StepLabel{Rule::kBReceive, c.pid, Pid{0}, e.tag, Tau{0}}, out);
    }
    case Rule::kBSpawn: {
      const auto& e = std::get<HSpawn>(top.e);
      auto it = std::find_if(out.procs.begin(), out.procs.end(),
                             [&](const RbProc& q) { return q.pid == e.child; });
      Pid child = e.child;
      out.procs.erase(it);
      p = find_mut(out, c.pid);  // erase may have shifted the vector
      p->state = std::get<HSpawn>(top.e).s;
      p->hist.pop_back();
      return std::make_pair(
          StepLabel{Rule::kBSpawn, c.pid, child, Tag{0}, Tau{0}}, out);
    }
    case Rule::kBSpawnProp: {
      const auto& e = std::get<HSpawn>(top.e);
      RbProc* child = find_mut(out, e.child);
      child->back_target = target;
      return std::make_pair(
          StepLabel{Rule::kBSpawnProp, c.pid, e.child, Tag{0}, Tau{0}}, out);
    }
    case Rule::kBCheck: {
      const auto& e = std::get<HCheck>(top.e);
      p->chks.erase(e.t);
      p->state = e.s;
      p->hist.pop_back();
      if (e.t == target) {
        p->back_target.reset();
        if (out.handler_mode && p->resume.has_value()) {
          p->state.pending = *p->resume;
          p->resume.reset();
        }
      }
      return std::make_pair(
          StepLabel{Rule::kBCheck, c.pid, Pid{0}, Tag{0}, e.t}, out);
    }
    case Rule::kBCommit: {
      const auto& e = std::get<HCommit>(top.e);
      p->chks.insert(e.t);
      auto it = std::find_if(p->delayed.begin(), p->delayed.end(),
                             [&](const DelayedCommit& d) { return d.t == e.t; });
      if (it != p->delayed.end()) p->delayed.erase(it);
      p->state = e.s;
      p->hist.pop_back();
      return std::make_pair(
          StepLabel{Rule::kBCommit, c.pid, Pid{0}, Tag{0}, e.t}, out);
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

std::optional<std::pair<StepLabel, RbSystem>> rb_step(const RbSystem& sys,
                                                      const Choice& c) {
  if (!choice_enabled(sys, c)) return std::nullopt;
  if (rule_is_backward(c.rule)) return backward_step(sys, c);
  return forward_step(sys, c);
}

std::string rb_terminal(const RbSystem& sys) {
  for (const auto& p : sys.procs)
    if (p.back_target.has_value()) return "stuck-backward";
  for (const auto& p : sys.procs)
    if (!p.state.pending.empty()) return "deadlock";
  return "final";
}

std::string rb_system_str(const RbSystem& sys, bool with_counters) {
  std::ostringstream os;
  for (const auto& p : sys.procs) {
    os << to_string(p.pid) << "[C=" << to_string(p.chks) << " D={";
    for (std::size_t i = 0; i < p.delayed.size(); ++i) {
      if (i != 0) os << ",";
      os << "(" << to_string(p.delayed[i].t) << ","
         << to_string(p.delayed[i].hist) << ","
         << to_string(p.delayed[i].deps) << ")";
    }
    os << "}";
    if (p.back_target.has_value())
      os << " B(" << to_string(*p.back_target) << ")";
    if (p.resume.has_value()) {
      os << " R[";
      for (std::size_t i = 0; i < p.resume->size(); ++i) {
        if (i != 0) os << "; ";
        os << to_string((*p.resume)[i]);
      }
      os << "]";
    }
    os << " h=" << to_string(p.hist) << " st=" << to_string(p.state) << "]\n";
  }
  std::vector<std::string> ms;
  for (const auto& m : sys.msgs) {
    ms.push_back("(" + to_string(m.chks) + "," + to_string(m.from) + "->" +
                 to_string(m.to) + "," + to_string(m.tag) + "," +
                 to_string(m.val) + ")");
  }
  if (!with_counters) std::sort(ms.begin(), ms.end());
  for (const auto& s : ms) os << "msg " << s << "\n";
  if (with_counters) {
    os << "next_pid=" << sys.next_pid << " next_tau=" << sys.next_tau
       << " next_tag=" << sys.next_tag << "\n";
  }
  return os.str();
}

const RbProc* rb_find(const RbSystem& sys, Pid pid) {
  for (const auto& p : sys.procs)
    if (p.pid == pid) return &p;
  return nullptr;
}

}  // namespace reverb
