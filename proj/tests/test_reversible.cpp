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

#include <algorithm>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "reverb/canon.hpp"
#include "reverb/reversible.hpp"
#include "reverb/sched.hpp"

namespace reverb {
namespace {

// Operator-free program with seq steps, so undo-seq shows up in the
// round-trip coverage (the relay fixture has no seq statements).
const char* kSeqSpawn = R"(proc main:
  seq a
  P = spawn w
  send P, {m, 1}
  seq b
end
proc w:
  receive |{m, N} -> seq c end
end
)";

struct RevRun {
  std::vector<std::string> labels;
  std::vector<RevSystem> states;
  std::string status;
};

RevRun run_rev(const Program& prog, Scheduler& sched, int max_steps) {
  RevRun r;
  RevSystem sys = rev_init(std::make_shared<const Program>(prog));
  r.states.push_back(sys);
  for (int i = 0; i < max_steps; ++i) {
    if (!rev_faults(sys).empty()) {
      r.status = "runtime-fault";
      return r;
    }
    auto en = rev_enabled(sys);
    if (en.empty()) {
      r.status = rev_terminal(sys);
      return r;
    }
    Picked p = sched.pick(en);
    if (p.status == PickStatus::kExhausted) {
      r.status = "max-steps";
      return r;
    }
    REQUIRE(p.status == PickStatus::kOk);
    auto stepped = rev_step(sys, p.choice);
    REQUIRE(stepped.has_value());
    r.labels.push_back(stepped->first.str());
    sys = stepped->second;
    r.states.push_back(sys);
  }
  r.status = "max-steps";
  return r;
}

RevRun run_script(const char* src, std::vector<std::string> keys) {
  Program prog = fixtures::parse_or_die(src);
  auto sched = make_scripted(std::move(keys));
  return run_rev(prog, *sched, 1000);
}

std::vector<RevMessage> msgs_by_tag(const RevSystem& sys) {
  auto out = sys.msgs;
  std::sort(out.begin(), out.end(),
            [](const RevMessage& a, const RevMessage& b) {
              return a.tag < b.tag;
            });
  return out;
}

// Procs plus message multiset; counters deliberately excluded (undo does not
// rewind the mint counters).
bool same_config(const RevSystem& a, const RevSystem& b) {
  return a.procs == b.procs && msgs_by_tag(a) == msgs_by_tag(b);
}

std::string hist_shape(const History& h) {
  std::string out = "[";
  for (auto it = h.rbegin(); it != h.rend(); ++it) {
    if (it != h.rbegin()) out += ",";
    out += to_string(*it).substr(0, to_string(*it).find('('));
    const auto& e = *it;
    if (const auto* s = std::get_if<HSend>(&e.e))
      out += "(" + to_string(s->tag) + ")";
    else if (const auto* r = std::get_if<HRec>(&e.e))
      out += "(" + to_string(r->tag) + ")";
    else if (const auto* sp = std::get_if<HSpawn>(&e.e))
      out += "(" + to_string(sp->child) + ")";
  }
  return out + "]";
}

// The inverse of a just-taken step, reconstructed from its label.
Choice inverse_of(const StepLabel& l) {
  switch (l.rule) {
    case Rule::kSeq: return Choice{Rule::kBSeq, l.pid};
    case Rule::kSend: return Choice{Rule::kBSend, l.pid, l.tag.n, 'l'};
    case Rule::kReceive: return Choice{Rule::kBReceive, l.pid, l.tag.n, 'l'};
    case Rule::kSpawn: return Choice{Rule::kBSpawn, l.pid};
    case Rule::kBSeq: return Choice{Rule::kSeq, l.pid};
    case Rule::kBSend: return Choice{Rule::kSend, l.pid};
    case Rule::kBReceive: return Choice{Rule::kReceive, l.pid, l.tag.n, 'l'};
    case Rule::kBSpawn: return Choice{Rule::kSpawn, l.pid};
    default: return Choice{Rule::kSeq, Pid{0}};
  }
}

/**
 * For every choice enabled at sys: take it, take the reconstructed inverse,
 * and require the original configuration back. Undoing a forward step must
 * restore it exactly; redoing an undone send or spawn mints a fresh id, so
 * those compare up to renaming. Returns the number of pairs checked.
 */
int check_roundtrip_pairs(const RevSystem& sys, std::set<Rule>* coverage) {
  int pairs = 0;
  for (const Choice& c : rev_enabled(sys)) {
    auto fwd = rev_step(sys, c);
    REQUIRE(fwd.has_value());
    Choice inv = inverse_of(fwd->first);
    auto en = rev_enabled(fwd->second);
    REQUIRE(std::find(en.begin(), en.end(), inv) != en.end());
    auto back = rev_step(fwd->second, inv);
    REQUIRE(back.has_value());
    if (c.rule == Rule::kBSend || c.rule == Rule::kBSpawn) {
      CHECK(canon_rev(back->second) == canon_rev(sys));
    } else {
      CHECK(same_config(back->second, sys));
    }
    if (coverage != nullptr) coverage->insert(c.rule);
    ++pairs;
  }
  return pairs;
}

}  // namespace

TEST_CASE("every forward step records, including outside any checkpoint") {
  auto r = run_script(fixtures::kRelay,
                      {"p1:spawn", "p2:spawn", "p1:send", "p2:rec:l1",
                       "p2:send", "p3:rec:l2", "p1:send"});
  REQUIRE(r.status == "max-steps");  // script exhausted mid-run
  REQUIRE(r.labels.size() == 7);
  CHECK(r.labels == std::vector<std::string>{
                        "p1,spawn(p2)", "p2,spawn(p3)", "p1,send(l1)",
                        "p2,rec(l1)", "p2,send(l2)", "p3,rec(l2)",
                        "p1,send(l3)"});

  const RevSystem& sys = r.states.back();
  REQUIRE(sys.procs.size() == 3);
  CHECK(hist_shape(sys.procs[0].hist) == "[send(l3),send(l1),spawn(p2)]");
  CHECK(hist_shape(sys.procs[1].hist) == "[send(l2),rec(l1),spawn(p3)]");
  CHECK(hist_shape(sys.procs[2].hist) == "[rec(l2)]");

  // Receive entries carry no checkpoint sets in this semantics.
  for (const auto& p : sys.procs)
    for (const auto& e : p.hist)
      if (const auto* rec = std::get_if<HRec>(&e.e)) {
        CHECK(rec->forced.empty());
        CHECK(rec->msg_chks.empty());
      }

  REQUIRE(sys.msgs.size() == 1);
  CHECK(sys.msgs[0].tag == Tag{3});
  CHECK(sys.msgs[0].val == Value::atom("v3"));
}

TEST_CASE("six forward steps then their undos restore the initial system") {
  auto r = run_script(fixtures::kRelay,
                      {"p1:spawn", "p2:spawn", "p1:send", "p2:rec:l1",
                       "p2:send", "p3:rec:l2",
                       // reverse chronological undo
                       "p3:brec:l2", "p2:bsend:l2", "p2:brec:l1",
                       "p1:bsend:l1", "p2:bspawn", "p1:bspawn"});
  REQUIRE(r.labels.size() == 12);
  CHECK(r.labels[6] == "p3,undo-rec(l2)");
  CHECK(r.labels[10] == "p2,undo-spawn(p3)");
  CHECK(r.labels[11] == "p1,undo-spawn(p2)");

  const RevSystem& initial = r.states.front();
  const RevSystem& done = r.states.back();
  CHECK(same_config(done, initial));
  CHECK(done.procs.size() == 1);
  CHECK(done.procs[0].hist.empty());
  // Counters do not rewind.
  CHECK(done.next_pid == 4);
  CHECK(done.next_tag == 3);
  // With an empty history the only moves left are the initial forward ones.
  auto en = rev_enabled(done);
  REQUIRE(en.size() == 1);
  CHECK(en[0] == Choice{Rule::kSpawn, Pid{1}});
}

TEST_CASE("undo side conditions gate send and spawn") {
  // After the first receive, p1's newest entry is the consumed send(l1):
  // p1 has no undo until p2 gives the message back.
  auto r = run_script(fixtures::kRelay,
                      {"p1:spawn", "p2:spawn", "p1:send", "p2:rec:l1"});
  auto en = rev_enabled(r.states.back());
  CHECK(en == std::vector<Choice>{Choice{Rule::kSend, Pid{1}},
                                  Choice{Rule::kSend, Pid{2}},
                                  Choice{Rule::kBReceive, Pid{2}, 1, 'l'}});

  // After the two spawns, p1 cannot undo (p2's history is nonempty) but p2
  // can (p3 is still untouched).
  auto r2 = run_script(fixtures::kRelay, {"p1:spawn", "p2:spawn"});
  auto en2 = rev_enabled(r2.states.back());
  CHECK(en2 == std::vector<Choice>{Choice{Rule::kSend, Pid{1}},
                                   Choice{Rule::kBSpawn, Pid{2}}});
}

TEST_CASE("checkpoint operators have no rule and fault") {
  Program prog = fixtures::parse_or_die("proc main:\n  T = check\nend\n");
  RevSystem sys = rev_init(std::make_shared<const Program>(prog));
  CHECK(rev_enabled(sys).empty());
  auto faults = rev_faults(sys);
  REQUIRE(faults.size() == 1);
  CHECK(faults[0].pid == Pid{1});
  CHECK(faults[0].msg == "checkpoint operator under reversible semantics");

  // Reached mid-run as well: the relay-with-checkpoints fixture faults at
  // the first check call.
  auto r = run_script(fixtures::kRelayRollback, {"p1:spawn", "p1:send"});
  CHECK(r.status == "runtime-fault");
  REQUIRE(r.labels.size() == 2);
}

TEST_CASE("each step moves exactly one history by exactly one entry") {
  Program prog = fixtures::parse_or_die(fixtures::kRelay);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto sched = make_seeded_random(seed);
    auto r = run_rev(prog, *sched, 50);
    for (std::size_t i = 1; i < r.states.size(); ++i) {
      const auto& before = r.states[i - 1];
      const auto& after = r.states[i];
      int grew = 0, shrank = 0;
      for (const auto& pb : before.procs) {
        const RevProc* pa = rev_find(after, pb.pid);
        if (pa == nullptr) {
          CHECK(pb.hist.empty());  // deleted by undo-spawn, already reset
          continue;
        }
        if (pa->hist.size() == pb.hist.size() + 1) ++grew;
        else if (pb.hist.size() == pa->hist.size() + 1) ++shrank;
        else CHECK(pa->hist.size() == pb.hist.size());
      }
      for (const auto& pa : after.procs)
        if (rev_find(before, pa.pid) == nullptr)
          CHECK(pa.hist.empty());  // fresh spawn starts blank
      CHECK(grew + shrank == 1);
      bool backward = r.labels[i - 1].find("undo-") != std::string::npos;
      CHECK((backward ? shrank : grew) == 1);
    }
  }
}

TEST_CASE("undo/redo round trip at every reachable choice") {
  std::set<Rule> coverage;
  int pairs = 0;
  for (const char* src : {fixtures::kRelay, kSeqSpawn}) {
    Program prog = fixtures::parse_or_die(src);
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      auto sched = make_seeded_random(seed);
      auto r = run_rev(prog, *sched, 40);
      for (const auto& sys : r.states)
        pairs += check_roundtrip_pairs(sys, &coverage);
    }
  }
  CHECK(pairs >= 500);
  for (Rule rule : {Rule::kSeq, Rule::kSend, Rule::kReceive, Rule::kSpawn,
                    Rule::kBSeq, Rule::kBSend, Rule::kBReceive, Rule::kBSpawn})
    CHECK(coverage.count(rule) == 1);
}

TEST_CASE("seeded runs replay bit-identically") {
  Program prog = fixtures::parse_or_die(fixtures::kRelay);
  for (std::uint64_t seed : {3u, 11u}) {
    auto s1 = make_seeded_random(seed);
    auto s2 = make_seeded_random(seed);
    auto r1 = run_rev(prog, *s1, 60);
    auto r2 = run_rev(prog, *s2, 60);
    CHECK(r1.labels == r2.labels);
    CHECK(rev_system_str(r1.states.back(), true) ==
          rev_system_str(r2.states.back(), true));
  }
}

TEST_CASE("canonical form is stable under id renumbering") {
  auto r = run_script(fixtures::kRelay,
                      {"p1:spawn", "p2:spawn", "p1:send", "p1:send"});
  const RevSystem& sys = r.states.back();
  REQUIRE(sys.msgs.size() == 2);

  // Renumber tag 2 to 9 everywhere it occurs; the canonical form must not
  // care which concrete number the mint produced.
  RevSystem bumped = sys;
  for (auto& p : bumped.procs)
    for (auto& e : p.hist)
      if (auto* s = std::get_if<HSend>(&e.e))
        if (s->tag == Tag{2}) s->tag = Tag{9};
  for (auto& m : bumped.msgs)
    if (m.tag == Tag{2}) m.tag = Tag{9};
  CHECK(canon_rev(bumped) == canon_rev(sys));
  CHECK(rev_system_str(bumped, false) != rev_system_str(sys, false));

  // A real difference still shows.
  RevSystem other = sys;
  other.msgs[0].val = Value::atom("vX");
  CHECK(canon_rev(other) != canon_rev(sys));
}

}  // namespace reverb
