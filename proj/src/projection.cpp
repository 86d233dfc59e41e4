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

#include "reverb/projection.hpp"

#include <memory>
#include <utility>
#include <variant>

namespace reverb {

namespace {

const Value& ok_atom() {
  static const Value ok = Value::atom("ok");
  return ok;
}

}  // namespace

Value erase_value(const Value& v) {
  if (v.is_chk()) return ok_atom();
  if (const auto* items = std::get_if<ValueList>(&v.v)) {
    ValueList out;
    out.reserve(items->size());
    for (const auto& it : *items) out.push_back(erase_value(it));
    return Value::tuple(std::move(out));
  }
  return v;
}

std::vector<Statement> erase_stmts(const std::vector<Statement>& stmts) {
  std::vector<Statement> out;
  for (std::size_t i = 0; i < stmts.size(); ++i) {
    const Statement& st = stmts[i];
    if (const auto* chk = std::get_if<CheckStmt>(&st.s)) {
      // The binding disappears; later uses of the variable read ok.
      auto tail = erase_stmts({stmts.begin() + i + 1, stmts.end()});
      tail = subst_var(tail, chk->target, ok_atom());
      out.insert(out.end(), tail.begin(), tail.end());
      return out;
    }
    if (const auto* slot = std::get_if<SlotStmt>(&st.s)) {
      auto tail = erase_stmts({stmts.begin() + i + 1, stmts.end()});
      tail = subst_var(tail, slot->target, ok_atom());
      out.insert(out.end(), tail.begin(), tail.end());
      return out;
    }
    if (std::holds_alternative<CommitStmt>(st.s) ||
        std::holds_alternative<RollbackStmt>(st.s))
      continue;
    if (const auto* rec = std::get_if<ReceiveStmt>(&st.s)) {
      ReceiveStmt erased;
      for (const auto& cl : rec->clauses)
        erased.clauses.push_back(Clause{cl.pat, erase_stmts(cl.body)});
      out.push_back(Statement{std::move(erased)});
      continue;
    }
    out.push_back(st);
  }
  return out;
}

LocalState erase_state(const LocalState& s) {
  LocalState out;
  for (const auto& [name, v] : s.env) out.env.emplace(name, erase_value(v));
  out.pending = erase_stmts(s.pending);
  return out;
}

Program erase_program(const Program& prog) {
  Program out = prog;
  for (auto& [name, body] : out.procs) body = erase_stmts(body);
  return out;
}

History r_hist(const History& h) {
  History out;
  for (const auto& e : h) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, HSeq>) {
            out.push_back(HistoryEntry{HSeq{erase_state(x.s)}});
          } else if constexpr (std::is_same_v<T, HSend>) {
            out.push_back(
                HistoryEntry{HSend{erase_state(x.s), x.dest, x.tag}});
          } else if constexpr (std::is_same_v<T, HRec>) {
            out.push_back(HistoryEntry{HRec{{}, {}, erase_state(x.s), x.from,
                                            x.tag, erase_value(x.val)}});
          } else if constexpr (std::is_same_v<T, HSpawn>) {
            out.push_back(
                HistoryEntry{HSpawn{erase_state(x.s), x.child}});
          }
          // check/commit entries vanish
        },
        e.e);
  }
  return out;
}

StdSystem proj_sta(const RbSystem& sys) {
  StdSystem out;
  out.prog = std::make_shared<const Program>(erase_program(*sys.prog));
  for (const auto& p : sys.procs)
    out.procs.push_back(StdProc{p.pid, erase_state(p.state)});
  for (const auto& m : sys.msgs)
    out.msgs.push_back(StdMessage{m.from, m.to, erase_value(m.val), m.tag.n});
  out.next_pid = sys.next_pid;
  out.next_arrival = sys.next_tag;
  return out;
}

RevSystem proj_rev(const RbSystem& sys) {
  RevSystem out;
  out.prog = std::make_shared<const Program>(erase_program(*sys.prog));
  for (const auto& p : sys.procs)
    out.procs.push_back(RevProc{p.pid, r_hist(p.hist), erase_state(p.state)});
  for (const auto& m : sys.msgs)
    out.msgs.push_back(RevMessage{m.from, m.to, m.tag, erase_value(m.val)});
  out.next_pid = sys.next_pid;
  out.next_tag = sys.next_tag;
  return out;
}

LocalState norm_state(const LocalState& s) {
  LocalState out;
  out.pending = s.pending;
  for (const auto& [name, v] : s.env)
    out.pending = subst_var(out.pending, name, v);
  return out;
}

std::string norm_std_key(const StdSystem& sys) {
  StdSystem copy = sys;
  for (auto& p : copy.procs) p.state = norm_state(p.state);
  return std_system_str(copy, false);
}

std::string norm_rev_key(const RevSystem& sys) {
  RevSystem copy = sys;
  for (auto& p : copy.procs) {
    p.state = norm_state(p.state);
    for (auto& e : p.hist)
      std::visit([](auto& x) { x.s = norm_state(x.s); }, e.e);
  }
  return rev_system_str(copy, false);
}

}  // namespace reverb
