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

#include "reverb/conformance.hpp"

#include <map>
#include <set>
#include <utility>

namespace reverb {

namespace {

void flag(Verdict& v, std::size_t index, const char* rule, std::string what) {
  v.pass = false;
  v.violations.push_back(Violation{index, rule, std::move(what)});
}

bool is_origin(const RbSystem& sys) {
  if (sys.procs.size() != 1 || !sys.msgs.empty()) return false;
  const RbProc& p = sys.procs.front();
  return p.pid == Pid{1} && p.chks.empty() && p.delayed.empty() &&
         p.hist.empty() && !p.back_target.has_value();
}

// Does some one-step standard successor of sys match the key?
bool std_step_matches(const StdSystem& sys, const std::string& key) {
  for (const Choice& c : std_enabled(sys)) {
    auto r = std_step(sys, c);
    if (r && norm_std_key(r->second) == key) return true;
  }
  return false;
}

bool rev_step_matches(const RevSystem& sys, const std::string& key) {
  for (const Choice& c : rev_enabled(sys)) {
    auto r = rev_step(sys, c);
    if (r && norm_rev_key(r->second) == key) return true;
  }
  return false;
}

bool is_operator_rule(Rule r) {
  return r == Rule::kCheck || r == Rule::kCommit || r == Rule::kCommitDelay ||
         r == Rule::kDelay;
}

}  // namespace

Verdict check_well_defined(const Derivation& d) {
  Verdict v;
  if (!is_origin(d.initial))
    flag(v, 0, "wellformed", "initial snapshot is not an origin system");

  std::map<Tau, Pid> creator;
  std::set<std::pair<Pid, Tau>> committed;  // effective commits
  std::set<std::pair<Pid, Tau>> rolled;

  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const StepLabel& l = d.steps[i].label;
    switch (l.rule) {
      case Rule::kCheck:
        creator[l.tau] = l.pid;
        break;
      case Rule::kCommit:
      case Rule::kCommitDelay:
      case Rule::kRollback: {
        const char* op = l.rule == Rule::kRollback ? "rollback" : "commit";
        auto it = creator.find(l.tau);
        if (it == creator.end()) {
          flag(v, i, "wellformed",
               std::string(op) + "(" + to_string(l.tau) +
                   ") with no preceding check step");
        } else if (it->second != l.pid) {
          flag(v, i, "wellformed",
               std::string(op) + "(" + to_string(l.tau) + ") by " +
                   to_string(l.pid) + " but the checkpoint was created by " +
                   to_string(it->second));
        }
        auto key = std::make_pair(l.pid, l.tau);
        if (l.rule == Rule::kRollback) {
          rolled.insert(key);
          if (committed.count(key))
            flag(v, i, "wellformed",
                 "both commit and rollback effective for " + to_string(l.tau));
        } else {
          committed.insert(key);
          if (rolled.count(key))
            flag(v, i, "wellformed",
                 "both commit and rollback effective for " + to_string(l.tau));
        }
        break;
      }
      case Rule::kBCommit:
        // The commit entry left the history; a fresh action is legal again.
        committed.erase(std::make_pair(l.pid, l.tau));
        break;
      default:
        break;
    }
  }
  return v;
}

Verdict check_conservative(const Derivation& d,
                           std::vector<std::string>* branch_log) {
  Verdict v;
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    Rule rule = d.steps[i].label.rule;
    if (rule == Rule::kRollback || rule_is_backward(rule)) break;

    std::string before = norm_std_key(proj_sta(d.at(i)));
    std::string after = norm_std_key(proj_sta(d.steps[i].post));
    if (is_operator_rule(rule)) {
      if (before == after) {
        if (branch_log) branch_log->push_back("sta-equal");
      } else {
        flag(v, i, "conservative",
             "operator step changed the standard projection");
      }
    } else {
      if (std_step_matches(proj_sta(d.at(i)), after)) {
        if (branch_log) branch_log->push_back("sta-step");
      } else {
        flag(v, i, "conservative",
             "no standard rule produces the projected successor");
      }
    }
  }
  return v;
}

Verdict check_soundness(const Derivation& d,
                        std::vector<std::string>* branch_log) {
  Verdict v;
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const RbSystem& before = d.at(i);
    const RbSystem& after = d.steps[i].post;

    StdSystem sta_b = proj_sta(before);
    std::string sta_before = norm_std_key(sta_b);
    std::string sta_after = norm_std_key(proj_sta(after));
    if (sta_before == sta_after) {
      if (branch_log) branch_log->push_back("sta-equal");
      continue;
    }
    if (std_step_matches(sta_b, sta_after)) {
      if (branch_log) branch_log->push_back("sta-step");
      continue;
    }
    RevSystem rev_b = proj_rev(before);
    std::string rev_before = norm_rev_key(rev_b);
    std::string rev_after = norm_rev_key(proj_rev(after));
    if (rev_before == rev_after) {
      if (branch_log) branch_log->push_back("rev-equal");
      continue;
    }
    if (rev_step_matches(rev_b, rev_after)) {
      if (branch_log) branch_log->push_back("rev-step");
      continue;
    }
    flag(v, i, "soundness",
         std::string("step ") + rule_name(d.steps[i].label.rule) +
             " matches no branch of the per-step disjunction");
  }
  return v;
}

Verdict check_lemma_rollback(const Derivation& d) {
  Verdict v;
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const StepLabel& l = d.steps[i].label;
    if (l.rule != Rule::kRollback) continue;

    std::size_t check_at = d.steps.size();
    for (std::size_t j = 0; j < i; ++j) {
      const StepLabel& c = d.steps[j].label;
      if (c.rule == Rule::kCheck && c.tau == l.tau && c.pid == l.pid)
        check_at = j;
    }
    if (check_at == d.steps.size()) {
      flag(v, i, "lemma",
           "rollback(" + to_string(l.tau) + ") has no minting check step");
      continue;
    }
    for (std::size_t k = check_at + 1; k <= i; ++k) {
      const RbProc* p = rb_find(d.steps[k].post, l.pid);
      if (p == nullptr || p->chks.empty()) {
        flag(v, k, "lemma",
             "active checkpoint set of " + to_string(l.pid) +
                 " empty inside the rollback window of " + to_string(l.tau));
        break;
      }
    }
  }
  return v;
}

Verdict check_replayable(const Derivation& d) {
  Verdict v;
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    auto r = rb_step(d.at(i), d.steps[i].choice);
    if (!r) {
      flag(v, i, "replay", "recorded choice is not enabled");
      continue;
    }
    if (r->first.str() != d.steps[i].label.str())
      flag(v, i, "replay", "label mismatch: engine says " + r->first.str());
    if (rb_system_str(r->second, true) !=
        rb_system_str(d.steps[i].post, true))
      flag(v, i, "replay", "snapshot mismatch after replaying the choice");
  }
  return v;
}

}  // namespace reverb
