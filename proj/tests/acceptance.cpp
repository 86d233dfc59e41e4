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

// Acceptance gate: the ten release criteria, one line of output each, each
// with a pinned wall-clock budget. Runs without any test framework so the
// pass/fail lines stay exactly one per criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fixtures.hpp"
#include "mutation_corpus.hpp"
#include "reverb/canon.hpp"
#include "reverb/explore.hpp"
#include "reverb/progen.hpp"
#include "reverb/reversible.hpp"
#include "reverb/rollback.hpp"
#include "reverb/sched.hpp"
#include "reverb/trace.hpp"

namespace reverb {
namespace {

void expect(bool cond, const std::string& what) {
  if (!cond) throw std::runtime_error(what);
}

const RbSystem& state_at(const corpus::Recorded& r, std::size_t i) {
  return i == 0 ? r.d.initial : r.d.steps[i - 1].post;
}

std::string label_at(const corpus::Recorded& r, std::size_t i) {
  return r.d.steps[i].label.str();
}

const TauSet& chks_of(const RbSystem& sys, std::uint32_t pid) {
  const RbProc* p = rb_find(sys, Pid{pid});
  expect(p != nullptr, "process p" + std::to_string(pid) + " missing");
  return p->chks;
}

TauSet taus(std::initializer_list<std::uint32_t> ns) {
  TauSet out;
  for (auto n : ns) out.insert(Tau{n});
  return out;
}

std::string entry_shape(const HistoryEntry& e) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, HSeq>) {
          return "seq";
        } else if constexpr (std::is_same_v<T, HSend>) {
          return "send(" + to_string(x.tag) + ")";
        } else if constexpr (std::is_same_v<T, HRec>) {
          return "rec(" + to_string(x.tag) + ")";
        } else if constexpr (std::is_same_v<T, HSpawn>) {
          return "spawn(" + to_string(x.child) + ")";
        } else if constexpr (std::is_same_v<T, HCheck>) {
          return "check(" + to_string(x.t) + ")";
        } else {
          static_assert(std::is_same_v<T, HCommit>);
          return "commit(" + to_string(x.t) + ")";
        }
      },
      e.e);
}

std::string hist_shape(const History& h) {
  std::string out = "[";
  for (auto it = h.rbegin(); it != h.rend(); ++it) {
    if (it != h.rbegin()) out += ",";
    out += entry_shape(*it);
  }
  return out + "]";
}

// (active set, delayed set, history shape, mode), stored states suppressed.
std::string config_row(const RbProc& p) {
  std::string d = "{";
  for (std::size_t i = 0; i < p.delayed.size(); ++i) {
    if (i != 0) d += ",";
    d += "(" + to_string(p.delayed[i].t) + "," + hist_shape(p.delayed[i].hist) +
         "," + to_string(p.delayed[i].deps) + ")";
  }
  d += "}";
  std::string mode = p.back_target.has_value()
                         ? "B(" + to_string(*p.back_target) + ")"
                         : "F";
  return to_string(p.chks) + "|" + d + "|" + hist_shape(p.hist) + "|" + mode;
}

//
// 1. A scripted schedule replays the seven-step opening of the relay
//    pipeline, label for label.
//

void scripted_replay() {
  RunRequest req;
  req.program_text = fixtures::kRelay;
  req.semantics = Semantics::kStandard;
  req.script = {"p1:spawn", "p2:spawn", "p1:send", "p2:rec:m1",
                "p2:send", "p3:rec:m2", "p1:send"};
  req.max_steps = 7;
  auto out = run(req);
  const Trace* t = std::get_if<Trace>(&out);
  expect(t != nullptr, "run rejected the scripted request");
  expect(t->records.size() == 7, "expected exactly seven records");
  const std::vector<std::string> want = {
      "p1,spawn(p2)", "p2,spawn(p3)", "p1,send", "p2,rec",
      "p2,send",      "p3,rec",       "p1,send",
  };
  for (std::size_t i = 0; i < want.size(); ++i)
    expect(t->records[i].label == want[i],
           "label " + std::to_string(i) + " is " + t->records[i].label +
               ", want " + want[i]);
}

//
// 2. Active-set annotations along the commit-then-rollback relay: empty
//    before the first check, growing through the two checks, {tau1}
//    everywhere once the commit has propagated, empty once the rollback
//    is done.
//

void commit_rollback_annotations() {
  corpus::Recorded r = corpus::record_run(fixtures::kRelayRollback, 30);
  expect(r.d.steps.size() == 30, "expected a 30-step default run");

  // Anchor the probe points to the events they annotate.
  expect(label_at(r, 4) == "p1,check(tau1)", "step 4 is not the first check");
  expect(label_at(r, 10) == "p1,check(tau2)",
         "step 10 is not the second check");
  expect(label_at(r, 14) == "p1,commit(tau2)", "step 14 is not the commit");
  expect(label_at(r, 17) == "p1,rollback(tau1)",
         "step 17 is not the rollback");
  expect(label_at(r, 29) == "p1,undo-check(tau1)",
         "step 29 does not finish the rollback");

  for (std::uint32_t pid = 1; pid <= 3; ++pid)
    expect(chks_of(state_at(r, 4), pid).empty(),
           "p" + std::to_string(pid) + " active before the first check");
  expect(chks_of(state_at(r, 5), 1) == taus({1}),
         "p1 after the first check is not {tau1}");
  expect(chks_of(state_at(r, 11), 1) == taus({1, 2}),
         "p1 after the second check is not {tau1,tau2}");
  // The commit strips tau2 from p1 and p2 immediately; p3 holds {tau1}
  // once the send it is waiting for has carried the active set to it.
  for (std::uint32_t pid = 1; pid <= 3; ++pid)
    expect(chks_of(state_at(r, 17), pid) == taus({1}),
           "p" + std::to_string(pid) + " is not {tau1} post-propagation");
  const RbSystem& done = state_at(r, 30);
  for (std::uint32_t pid = 1; pid <= 3; ++pid) {
    expect(chks_of(done, pid).empty(),
           "p" + std::to_string(pid) + " still active after the rollback");
    expect(!rb_find(done, Pid{pid})->back_target.has_value(),
           "p" + std::to_string(pid) + " still rolling back");
  }
}

//
// 3. The delayed-commit relay walks p1 through exactly twelve
//    configurations: the parked commit tuple appears with its dependency
//    on p2, and undoing the commit restores {tau1,tau2}.
//

void twelve_configurations() {
  corpus::Recorded r = corpus::record_run(fixtures::kRelayDelayed, 26);
  expect(r.d.steps.size() == 26, "expected a 26-step default run");

  std::vector<std::string> rows;
  std::optional<RbProc> prev;
  for (std::size_t i = 0; i <= r.d.steps.size(); ++i) {
    const RbProc* p = rb_find(state_at(r, i), Pid{1});
    expect(p != nullptr, "p1 missing");
    if (!prev.has_value() || !(*prev == *p)) {
      rows.push_back(config_row(*p));
      prev = *p;
    }
  }

  const std::string h7 = "[send(l5),check(tau2),send(l3),check(tau1)]";
  const std::vector<std::string> want = {
      "{}|{}|[]|F",
      "{}|{}|[]|F",
      "{}|{}|[]|F",
      "{tau1}|{}|[check(tau1)]|F",
      "{tau1}|{}|[send(l3),check(tau1)]|F",
      "{tau1,tau2}|{}|[check(tau2),send(l3),check(tau1)]|F",
      "{tau1,tau2}|{}|" + h7 + "|F",
      "{tau2}|{(tau1," + h7 + ",{p2})}|[commit(tau1)," + h7.substr(1) + "|F",
      "{tau2}|{(tau1," + h7 + ",{p2})}|[commit(tau1)," + h7.substr(1) +
          "|B(tau2)",
      "{tau1,tau2}|{}|" + h7 + "|B(tau2)",
      "{tau1,tau2}|{}|[check(tau2),send(l3),check(tau1)]|B(tau2)",
      "{tau1}|{}|[send(l3),check(tau1)]|F",
  };
  expect(rows.size() == want.size(),
         "p1 crossed " + std::to_string(rows.size()) +
             " configurations, want 12");
  for (std::size_t i = 0; i < want.size(); ++i)
    expect(rows[i] == want[i], "configuration " + std::to_string(i) + " is " +
                                   rows[i] + ", want " + want[i]);
}

//
// 4-6. Exploration over the example programs (depth 12) and one hundred
//      generated programs (depth 10), one criterion per checker.
//

void explored_zero_violations(const std::string& check) {
  auto sweep = [&](const std::string& src, std::size_t depth) {
    ExploreRequest req;
    req.program_text = src;
    req.semantics = Semantics::kRollback;
    req.depth = depth;
    req.checks = {check};
    auto out = explore(req);
    const ExploreReport* rep = std::get_if<ExploreReport>(&out);
    expect(rep != nullptr, "explore rejected a corpus program");
    expect(!rep->truncated, "state limit hit; counts not exhaustive");
    expect(rep->states > 0, "no states explored");
    auto it = rep->violations.find(check);
    expect(it != rep->violations.end(), "check not reported: " + check);
    expect(it->second == 0, check + ": " + std::to_string(it->second) +
                                " violations, first: " +
                                (rep->counterexamples.empty()
                                     ? std::string("none retained")
                                     : rep->counterexamples[0].what));
  };
  for (const char* src :
       {fixtures::kRelay, fixtures::kRelayRollback, fixtures::kRelayDelayed})
    sweep(src, 12);
  for (std::uint64_t seed = 1; seed <= 100; ++seed)
    sweep(gen_program(seed, GenLimits{3, 8}), 10);
}

//
// 7. Every recorded forward step, frozen mid-run, has a backward rule that
//    restores the acting process and the message multiset exactly.
//

void local_inverse_pairs() {
  const char* seq_prog =
      "proc main:\n"
      "  T = check\n"
      "  seq a\n"
      "  seq b\n"
      "  commit(T)\n"
      "end\n";
  const char* spawn_prog =
      "proc main:\n"
      "  T = check\n"
      "  P = spawn w\n"
      "  send P, go\n"
      "  commit(T)\n"
      "end\n"
      "proc w:\n"
      "  receive\n"
      "  |go -> end\n"
      "end\n";
  const std::vector<std::string> programs = {
      fixtures::kRelayRollback, fixtures::kRelayDelayed, seq_prog,
      spawn_prog};

  auto sorted_msgs = [](const RbSystem& s) {
    auto ms = s.msgs;
    std::sort(ms.begin(), ms.end(),
              [](const RbMessage& a, const RbMessage& b) {
                return a.tag < b.tag;
              });
    return ms;
  };

  int pairs = 0;
  std::set<Rule> covered;
  for (std::uint64_t seed = 1; seed <= 40 && pairs < 1000; ++seed) {
    for (const auto& src : programs) {
      Program prog = fixtures::parse_or_die(src);
      auto sched = make_seeded_random(seed);
      RbSystem sys = rb_init(std::make_shared<const Program>(prog));
      std::vector<RbSystem> states = {sys};
      for (int i = 0; i < 40; ++i) {
        if (!rb_faults(sys).empty()) break;
        auto en = rb_enabled(sys);
        if (en.empty()) break;
        Picked p = sched->pick(en);
        if (p.status != PickStatus::kOk) break;
        auto stepped = rb_step(sys, p.choice);
        expect(stepped.has_value(), "scheduler picked a refused step");
        sys = stepped->second;
        states.push_back(sys);
      }

      for (const auto& st : states) {
        for (const Choice& c : rb_enabled(st)) {
          if (rule_is_backward(c.rule) || c.rule == Rule::kDelay ||
              c.rule == Rule::kCommit || c.rule == Rule::kRollback)
            continue;
          auto stepped = rb_step(st, c);
          expect(stepped.has_value(), "enabled choice refused");
          const StepLabel& lbl = stepped->first;
          RbSystem after = stepped->second;
          const RbProc* pre = rb_find(st, c.pid);
          const RbProc* post = rb_find(after, c.pid);
          if (post->hist.size() != pre->hist.size() + 1)
            continue;  // unrecorded step, nothing to undo

          Tau target =
              lbl.rule == Rule::kCheck ? lbl.tau : *post->chks.begin();
          for (auto& q : after.procs) {
            if (q.pid == c.pid) q.back_target = target;
            if (lbl.rule == Rule::kSpawn && q.pid == lbl.child)
              q.back_target = target;
          }
          Choice undo{};
          switch (lbl.rule) {
            case Rule::kSeq: undo = {Rule::kBSeq, c.pid, 0, 0}; break;
            case Rule::kSend: undo = {Rule::kBSend, c.pid, lbl.tag.n, 'l'};
              break;
            case Rule::kReceive:
              undo = {Rule::kBReceive, c.pid, lbl.tag.n, 'l'};
              break;
            case Rule::kSpawn: undo = {Rule::kBSpawn, c.pid, 0, 0}; break;
            case Rule::kCheck: undo = {Rule::kBCheck, c.pid, 0, 0}; break;
            default: continue;
          }
          auto undone = rb_step(after, undo);
          expect(undone.has_value(), "matching undo rule refused");
          const RbProc* back = rb_find(undone->second, c.pid);
          expect(back != nullptr, "actor vanished across the round trip");
          expect(back->chks == pre->chks, "active set not restored");
          expect(back->hist == pre->hist, "history not restored");
          expect(back->state == pre->state, "local state not restored");
          expect(undone->second.procs.size() == st.procs.size(),
                 "process count changed");
          expect(sorted_msgs(undone->second) == sorted_msgs(st),
                 "message multiset not restored");
          covered.insert(lbl.rule);
          ++pairs;
        }
      }
    }
  }
  expect(pairs >= 1000,
         "only " + std::to_string(pairs) + " pairs exercised, want 1000");
  for (Rule rule : {Rule::kSeq, Rule::kSend, Rule::kReceive, Rule::kSpawn,
                    Rule::kCheck})
    expect(covered.count(rule) == 1,
           std::string("no pair covered ") + rule_name(rule));
}

//
// 8. Under the always-reversible semantics, stepping forward then applying
//    the reconstructed inverse restores the system; redoing an undone send
//    or spawn compares up to fresh-id renaming.
//

void reversible_round_trips() {
  const char* seq_spawn = R"(proc main:
  seq a
  P = spawn w
  send P, {m, 1}
  seq b
end
proc w:
  receive |{m, N} -> seq c end
end
)";

  auto msgs_by_tag = [](const RevSystem& sys) {
    auto out = sys.msgs;
    std::sort(out.begin(), out.end(),
              [](const RevMessage& a, const RevMessage& b) {
                return a.tag < b.tag;
              });
    return out;
  };
  auto same_config = [&](const RevSystem& a, const RevSystem& b) {
    return a.procs == b.procs && msgs_by_tag(a) == msgs_by_tag(b);
  };
  auto inverse_of = [](const StepLabel& l) {
    switch (l.rule) {
      case Rule::kSeq: return Choice{Rule::kBSeq, l.pid};
      case Rule::kSend: return Choice{Rule::kBSend, l.pid, l.tag.n, 'l'};
      case Rule::kReceive:
        return Choice{Rule::kBReceive, l.pid, l.tag.n, 'l'};
      case Rule::kSpawn: return Choice{Rule::kBSpawn, l.pid};
      case Rule::kBSeq: return Choice{Rule::kSeq, l.pid};
      case Rule::kBSend: return Choice{Rule::kSend, l.pid};
      case Rule::kBReceive:
        return Choice{Rule::kReceive, l.pid, l.tag.n, 'l'};
      case Rule::kBSpawn: return Choice{Rule::kSpawn, l.pid};
      default: return Choice{Rule::kSeq, Pid{0}};
    }
  };

  int pairs = 0;
  std::set<Rule> covered;
  for (const char* src : {fixtures::kRelay, seq_spawn}) {
    Program prog = fixtures::parse_or_die(src);
    for (std::uint64_t seed = 1; seed <= 8 && pairs < 2000; ++seed) {
      auto sched = make_seeded_random(seed);
      RevSystem sys = rev_init(std::make_shared<const Program>(prog));
      std::vector<RevSystem> states = {sys};
      for (int i = 0; i < 40; ++i) {
        if (!rev_faults(sys).empty()) break;
        auto en = rev_enabled(sys);
        if (en.empty()) break;
        Picked p = sched->pick(en);
        if (p.status != PickStatus::kOk) break;
        auto stepped = rev_step(sys, p.choice);
        expect(stepped.has_value(), "scheduler picked a refused step");
        sys = stepped->second;
        states.push_back(sys);
      }

      for (const auto& st : states) {
        for (const Choice& c : rev_enabled(st)) {
          auto fwd = rev_step(st, c);
          expect(fwd.has_value(), "enabled choice refused");
          Choice inv = inverse_of(fwd->first);
          auto en = rev_enabled(fwd->second);
          expect(std::find(en.begin(), en.end(), inv) != en.end(),
                 "inverse not enabled after the step");
          auto back = rev_step(fwd->second, inv);
          expect(back.has_value(), "inverse refused");
          if (c.rule == Rule::kBSend || c.rule == Rule::kBSpawn) {
            expect(canon_rev(back->second) == canon_rev(st),
                   "redo did not restore the system up to renaming");
          } else {
            expect(same_config(back->second, st),
                   "undo did not restore the system exactly");
          }
          covered.insert(c.rule);
          ++pairs;
        }
      }
    }
  }
  expect(pairs >= 500,
         "only " + std::to_string(pairs) + " pairs exercised, want 500");
  for (Rule rule : {Rule::kSeq, Rule::kSend, Rule::kReceive, Rule::kSpawn,
                    Rule::kBSeq, Rule::kBSend, Rule::kBReceive,
                    Rule::kBSpawn})
    expect(covered.count(rule) == 1,
           std::string("no pair covered ") + rule_name(rule));
}

//
// 9. Each conformance checker rejects every mutant aimed at it, three per
//    checker, with the pinned message or step index.
//

void mutation_sensitivity() {
  auto mutants = corpus::build_mutation_corpus();
  expect(mutants.size() == 12, "corpus shrank");
  std::set<std::string> checkers;
  for (const auto& m : mutants) checkers.insert(m.checker);
  expect(checkers.size() == 4, "a checker has no mutants");

  for (const auto& m : mutants) {
    Verdict v = corpus::run_checker(m.checker, m.d);
    expect(!v.pass, m.checker + " accepted mutant: " + m.name);
    expect(!v.violations.empty(), m.checker + " failed without detail");
    if (!m.expect.empty())
      expect(v.violations[0].what.find(m.expect) != std::string::npos,
             m.checker + " on " + m.name + ": got \"" +
                 v.violations[0].what + "\"");
    if (m.expect_index >= 0)
      expect(v.violations[0].index ==
                 static_cast<std::size_t>(m.expect_index),
             m.checker + " on " + m.name + ": flagged step " +
                 std::to_string(v.violations[0].index));
  }
}

//
// 10. Identical requests serialize byte-identically, and verify() accepts
//     every trace the engine emits.
//

void deterministic_traces() {
  struct Fixture {
    const char* src;
    Semantics sem;
  };
  const std::vector<Fixture> fixtures = {
      {fixtures::kRelay, Semantics::kStandard},
      {fixtures::kRelay, Semantics::kRollback},
      {fixtures::kRelay, Semantics::kReversible},
      {fixtures::kRelayRollback, Semantics::kRollback},
      {fixtures::kRelayDelayed, Semantics::kRollback},
  };
  for (const Fixture& f : fixtures) {
    RunRequest req;
    req.program_text = f.src;
    req.semantics = f.sem;
    req.policy = "random";
    req.seed = 11;
    // Bounded because the reversible engine never terminates on its own.
    req.max_steps = 48;
    req.snapshots = true;
    auto first = run(req);
    auto second = run(req);
    const Trace* a = std::get_if<Trace>(&first);
    const Trace* b = std::get_if<Trace>(&second);
    expect(a != nullptr && b != nullptr, "run rejected a fixture");
    std::string ta = serialize(*a);
    expect(ta == serialize(*b), "two identical runs diverged");
    auto parsed = parse_trace(ta);
    const Trace* back = std::get_if<Trace>(&parsed);
    expect(back != nullptr, "engine trace does not parse");
    Verdict v = verify(*back);
    expect(v.pass, "verify rejects the engine's own trace: " +
                       (v.violations.empty() ? std::string("no detail")
                                             : v.violations[0].what));
  }
}

struct Criterion {
  int n;
  const char* what;
  double budget_ms;
  std::function<void()> body;
};

}  // namespace
}  // namespace reverb

int main() {
  using reverb::Criterion;
  const std::vector<Criterion> criteria = {
      {1, "scripted replay pins the seven-step relay opening", 1000,
       reverb::scripted_replay},
      {2, "commit propagation and rollback leave the annotated active sets",
       1000, reverb::commit_rollback_annotations},
      {3, "delayed commit walks p1 through twelve configurations", 1000,
       reverb::twelve_configurations},
      {4, "soundness: zero violations over explored spaces", 60000,
       [] { reverb::explored_zero_violations("soundness"); }},
      {5, "conservative projection: zero violations over forward prefixes",
       30000, [] { reverb::explored_zero_violations("conservative"); }},
      {6, "rollback windows: zero violations over explored spaces", 30000,
       [] { reverb::explored_zero_violations("lemma"); }},
      {7, "1000 forward steps have exact local inverses", 10000,
       reverb::local_inverse_pairs},
      {8, "500 reversible step pairs restore the system", 10000,
       reverb::reversible_round_trips},
      {9, "each checker rejects its three mutants", 10000,
       reverb::mutation_sensitivity},
      {10, "byte-identical traces that verify() accepts", 5000,
       reverb::deterministic_traces},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string err;
    try {
      c.body();
    } catch (const std::exception& e) {
      err = e.what();
    }
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    if (err.empty() && ms > c.budget_ms) err = "over budget";
    if (err.empty()) {
      std::printf("pass %2d  %-62s %8.1f ms  (limit %.0f ms)\n", c.n, c.what,
                  ms, c.budget_ms);
    } else {
      std::printf("FAIL %2d  %-62s %8.1f ms  (%s)\n", c.n, c.what, ms,
                  err.c_str());
      ++failed;
    }
  }
  if (failed != 0) {
    std::printf("acceptance: %d of %zu criteria failed\n", failed,
                criteria.size());
    return 1;
  }
  std::printf("acceptance: all %zu criteria hold\n", criteria.size());
  return 0;
}
