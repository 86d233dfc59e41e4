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

#include "reverb/canon.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <variant>
#include <vector>

namespace reverb {

namespace {

// First-occurrence renaming tables, one per identifier kind. Statements are
// not walked: source programs cannot write pid or checkpoint literals, so
// ids only live in environments, histories, checkpoint sets and messages.
class Renamer {
 public:
  void see_pid(Pid p) { see(pids_, p.n); }
  void see_tau(Tau t) { see(taus_, t.n); }
  void see_tag(Tag l) { see(tags_, l.n); }

  void see_value(const Value& v) {
    if (const auto* p = std::get_if<Pid>(&v.v)) {
      see_pid(*p);
    } else if (const auto* t = std::get_if<Tau>(&v.v)) {
      see_tau(*t);
    } else if (const auto* items = std::get_if<ValueList>(&v.v)) {
      for (const auto& it : *items) see_value(it);
    }
  }

  void see_state(const LocalState& s) {
    for (const auto& [name, v] : s.env) see_value(v);
  }

  void see_entry(const HistoryEntry& e) {
    std::visit(
        [&](const auto& h) {
          using T = std::decay_t<decltype(h)>;
          if constexpr (std::is_same_v<T, HSeq>) {
            see_state(h.s);
          } else if constexpr (std::is_same_v<T, HSend>) {
            see_state(h.s);
            see_pid(h.dest);
            see_tag(h.tag);
          } else if constexpr (std::is_same_v<T, HRec>) {
            for (Tau t : h.forced) see_tau(t);
            for (Tau t : h.msg_chks) see_tau(t);
            see_state(h.s);
            see_pid(h.from);
            see_tag(h.tag);
            see_value(h.val);
          } else if constexpr (std::is_same_v<T, HSpawn>) {
            see_state(h.s);
            see_pid(h.child);
          } else {
            see_tau(h.t);
            see_state(h.s);
          }
        },
        e.e);
  }

  Pid pid(Pid p) const { return Pid{at(pids_, p.n)}; }
  Tau tau(Tau t) const { return Tau{at(taus_, t.n)}; }
  Tag tag(Tag l) const { return Tag{at(tags_, l.n)}; }

  bool knows_pid(Pid p) const { return pids_.count(p.n) != 0; }
  bool knows_tag(Tag l) const { return tags_.count(l.n) != 0; }

  Value value(const Value& v) const {
    if (const auto* p = std::get_if<Pid>(&v.v)) return Value::pid(pid(*p));
    if (const auto* t = std::get_if<Tau>(&v.v)) return Value::chk(tau(*t));
    if (const auto* items = std::get_if<ValueList>(&v.v)) {
      ValueList out;
      for (const auto& it : *items) out.push_back(value(it));
      return Value::tuple(std::move(out));
    }
    return v;
  }

  LocalState state(const LocalState& s) const {
    LocalState out = s;
    for (auto& [name, v] : out.env) v = value(v);
    return out;
  }

  TauSet taus(const TauSet& c) const {
    TauSet out;
    for (Tau t : c) out.insert(tau(t));
    return out;
  }

  PidSet pids(const PidSet& c) const {
    PidSet out;
    for (Pid p : c) out.insert(pid(p));
    return out;
  }

  HistoryEntry entry(const HistoryEntry& e) const {
    return std::visit(
        [&](const auto& h) -> HistoryEntry {
          using T = std::decay_t<decltype(h)>;
          if constexpr (std::is_same_v<T, HSeq>) {
            return HistoryEntry{HSeq{state(h.s)}};
          } else if constexpr (std::is_same_v<T, HSend>) {
            return HistoryEntry{HSend{state(h.s), pid(h.dest), tag(h.tag)}};
          } else if constexpr (std::is_same_v<T, HRec>) {
            return HistoryEntry{HRec{taus(h.forced), taus(h.msg_chks),
                                     state(h.s), pid(h.from), tag(h.tag),
                                     value(h.val)}};
          } else if constexpr (std::is_same_v<T, HSpawn>) {
            return HistoryEntry{HSpawn{state(h.s), pid(h.child)}};
          } else if constexpr (std::is_same_v<T, HCheck>) {
            return HistoryEntry{HCheck{tau(h.t), state(h.s)}};
          } else {
            return HistoryEntry{HCommit{tau(h.t), state(h.s)}};
          }
        },
        e.e);
  }

  History hist(const History& h) const {
    History out;
    for (const auto& e : h) out.push_back(entry(e));
    return out;
  }

  // Rename-independent ordering key for an id not yet registered ("?") or a
  // value containing one; used to walk messages in a stable order before
  // their residual ids get names.
  std::string mask_value(const Value& v) const {
    if (const auto* p = std::get_if<Pid>(&v.v))
      return pids_.count(p->n) ? to_string(pid(*p)) : std::string("p?");
    if (const auto* t = std::get_if<Tau>(&v.v))
      return taus_.count(t->n) ? to_string(tau(*t)) : std::string("tau?");
    if (const auto* items = std::get_if<ValueList>(&v.v)) {
      std::string out = "{";
      for (std::size_t i = 0; i < items->size(); ++i) {
        if (i) out += ",";
        out += mask_value((*items)[i]);
      }
      return out + "}";
    }
    return to_string(v);
  }

  std::string mask_taus(const TauSet& c) const {
    std::string out = "{";
    for (Tau t : c) {
      out += taus_.count(t.n) ? to_string(tau(t)) : std::string("tau?");
      out += ",";
    }
    return out + "}";
  }

 private:
  static void see(std::map<std::uint32_t, std::uint32_t>& m,
                  std::uint32_t n) {
    if (m.count(n) == 0) {
      auto fresh = static_cast<std::uint32_t>(m.size() + 1);
      m.emplace(n, fresh);
    }
  }
  static std::uint32_t at(const std::map<std::uint32_t, std::uint32_t>& m,
                          std::uint32_t n) {
    auto it = m.find(n);
    // Every id reachable from the system is registered by the walk; an
    // unknown one here is a traversal bug.
    return it == m.end() ? 0 : it->second;
  }

  std::map<std::uint32_t, std::uint32_t> pids_;
  std::map<std::uint32_t, std::uint32_t> taus_;
  std::map<std::uint32_t, std::uint32_t> tags_;
};

/**
 * Visit processes in reference-discovery order: the first process seeds the
 * walk, and each later one is taken when its pid has the smallest canonical
 * number among those already referenced (by a spawn entry, an environment
 * binding or a payload). Storage order would mis-rank a process that was
 * undone and respawned, since the respawn appends it at the end of the
 * vector. A process nothing references yet falls back to storage order.
 */
template <typename Proc, typename SeeFields>
void walk_procs(const std::vector<Proc>& procs, const Renamer& rn,
                SeeFields see) {
  std::vector<bool> done(procs.size(), false);
  for (std::size_t n = 0; n < procs.size(); ++n) {
    std::size_t next = procs.size();
    for (std::size_t i = 0; i < procs.size(); ++i) {
      if (done[i] || !rn.knows_pid(procs[i].pid)) continue;
      if (next == procs.size() ||
          rn.pid(procs[i].pid).n < rn.pid(procs[next].pid).n)
        next = i;
    }
    if (next == procs.size())
      for (std::size_t i = 0; i < procs.size() && next == procs.size(); ++i)
        if (!done[i]) next = i;
    see(procs[next]);
    done[next] = true;
  }
}

// Visit messages in mask order so ids that appear nowhere else (a tag sent
// outside any checkpoint, say) get names independent of send interleaving.
template <typename Msg, typename MaskFn, typename SeeFn>
void walk_msgs(const std::vector<Msg>& msgs, MaskFn mask, SeeFn see) {
  std::vector<std::size_t> order(msgs.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::string> keys;
  keys.reserve(msgs.size());
  for (const auto& m : msgs) keys.push_back(mask(m));
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return keys[a] < keys[b];
                   });
  for (std::size_t i : order) see(msgs[i]);
}

}  // namespace

std::string canon_std(const StdSystem& sys) {
  Renamer rn;
  walk_procs(sys.procs, rn, [&](const StdProc& p) {
    rn.see_pid(p.pid);
    rn.see_state(p.state);
  });
  walk_msgs(
      sys.msgs,
      [&](const StdMessage& m) {
        return rn.mask_value(Value::pid(m.from)) + ">" +
               rn.mask_value(Value::pid(m.to)) + ":" + rn.mask_value(m.val);
      },
      [&](const StdMessage& m) {
        rn.see_pid(m.from);
        rn.see_pid(m.to);
        rn.see_value(m.val);
      });

  StdSystem out = sys;
  for (auto& p : out.procs) {
    p.pid = rn.pid(p.pid);
    p.state = rn.state(p.state);
  }
  for (auto& m : out.msgs) {
    m.from = rn.pid(m.from);
    m.to = rn.pid(m.to);
    m.val = rn.value(m.val);
  }
  std::sort(out.procs.begin(), out.procs.end(),
            [](const StdProc& a, const StdProc& b) { return a.pid < b.pid; });
  return std_system_str(out, false);
}

std::string canon_rev(const RevSystem& sys) {
  Renamer rn;
  walk_procs(sys.procs, rn, [&](const RevProc& p) {
    rn.see_pid(p.pid);
    for (const auto& e : p.hist) rn.see_entry(e);
    rn.see_state(p.state);
  });
  walk_msgs(
      sys.msgs,
      [&](const RevMessage& m) {
        return rn.mask_value(Value::pid(m.from)) + ">" +
               rn.mask_value(Value::pid(m.to)) + ":" + rn.mask_value(m.val) +
               (rn.knows_tag(m.tag) ? to_string(rn.tag(m.tag)) : "l?");
      },
      [&](const RevMessage& m) {
        rn.see_pid(m.from);
        rn.see_pid(m.to);
        rn.see_tag(m.tag);
        rn.see_value(m.val);
      });

  RevSystem out = sys;
  for (auto& p : out.procs) {
    p.pid = rn.pid(p.pid);
    p.hist = rn.hist(p.hist);
    p.state = rn.state(p.state);
  }
  for (auto& m : out.msgs) {
    m.from = rn.pid(m.from);
    m.to = rn.pid(m.to);
    m.tag = rn.tag(m.tag);
    m.val = rn.value(m.val);
  }
  std::sort(out.procs.begin(), out.procs.end(),
            [](const RevProc& a, const RevProc& b) { return a.pid < b.pid; });
  return rev_system_str(out, false);
}

std::string canon_rb(const RbSystem& sys) {
  Renamer rn;
  walk_procs(sys.procs, rn, [&](const RbProc& p) {
    rn.see_pid(p.pid);
    for (Tau t : p.chks) rn.see_tau(t);
    for (const auto& d : p.delayed) {
      rn.see_tau(d.t);
      for (const auto& e : d.hist) rn.see_entry(e);
      for (Pid q : d.deps) rn.see_pid(q);
    }
    for (const auto& e : p.hist) rn.see_entry(e);
    if (p.back_target) rn.see_tau(*p.back_target);
    rn.see_state(p.state);
  });
  walk_msgs(
      sys.msgs,
      [&](const RbMessage& m) {
        return rn.mask_taus(m.chks) + rn.mask_value(Value::pid(m.from)) + ">" +
               rn.mask_value(Value::pid(m.to)) + ":" + rn.mask_value(m.val) +
               (rn.knows_tag(m.tag) ? to_string(rn.tag(m.tag)) : "l?");
      },
      [&](const RbMessage& m) {
        for (Tau t : m.chks) rn.see_tau(t);
        rn.see_pid(m.from);
        rn.see_pid(m.to);
        rn.see_tag(m.tag);
        rn.see_value(m.val);
      });

  RbSystem out = sys;
  for (auto& p : out.procs) {
    p.pid = rn.pid(p.pid);
    p.chks = rn.taus(p.chks);
    for (auto& d : p.delayed) {
      d.t = rn.tau(d.t);
      d.hist = rn.hist(d.hist);
      d.deps = rn.pids(d.deps);
    }
    std::sort(p.delayed.begin(), p.delayed.end(),
              [](const DelayedCommit& a, const DelayedCommit& b) {
                return a.t < b.t;
              });
    p.hist = rn.hist(p.hist);
    if (p.back_target) p.back_target = rn.tau(*p.back_target);
    p.state = rn.state(p.state);
  }
  for (auto& m : out.msgs) {
    m.chks = rn.taus(m.chks);
    m.from = rn.pid(m.from);
    m.to = rn.pid(m.to);
    m.tag = rn.tag(m.tag);
    m.val = rn.value(m.val);
  }
  std::sort(out.procs.begin(), out.procs.end(),
            [](const RbProc& a, const RbProc& b) { return a.pid < b.pid; });
  return rb_system_str(out, false);
}

}  // namespace reverb
