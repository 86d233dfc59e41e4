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

#include "reverb/explore.hpp"

#include <deque>
#include <memory>
#include <set>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "engine_ops.hpp"
#include "reverb/conformance.hpp"

namespace reverb {

namespace {

constexpr std::size_t kMaxCounterexamples = 5;

struct CheckSet {
  bool wellformed{false};
  bool conservative{false};
  bool soundness{false};
  bool lemma{false};

  bool any_edge() const { return conservative || soundness; }
  bool any_path() const { return wellformed || lemma; }
};

void note(ExploreReport& rep, const Verdict& v, std::size_t index_offset,
          const std::vector<std::string>& keys) {
  for (const auto& viol : v.violations) {
    auto it = rep.violations.find(viol.rule);
    if (it == rep.violations.end()) continue;
    ++it->second;
    if (rep.counterexamples.size() < kMaxCounterexamples)
      rep.counterexamples.push_back(Counterexample{
          viol.rule, index_offset + viol.index, viol.what, keys});
  }
}

// Rebuilds the derivation for a key path by replaying from the origin.
// Paths come from the walk itself, so every key is enabled.
Derivation rebuild(const RbSystem& origin,
                   const std::vector<std::string>& keys) {
  Derivation d;
  d.initial = origin;
  RbSystem sys = origin;
  for (const auto& key : keys) {
    for (const auto& c : rb_enabled(sys)) {
      if (c.key() != key) continue;
      auto stepped = rb_step(sys, c);
      d.steps.push_back(DerivStep{c, stepped->first, stepped->second});
      sys = std::move(stepped->second);
      break;
    }
  }
  return d;
}

template <typename Ops>
void walk(std::shared_ptr<const Program> prog, const ExploreRequest& req,
          const CheckSet& want, ExploreReport& rep) {
  struct Node {
    typename Ops::Sys sys;
    std::vector<std::string> keys;
  };

  typename Ops::Sys origin = Ops::init(prog, false);
  std::unordered_set<std::string> visited;
  std::deque<Node> queue;
  visited.insert(Ops::canon(origin));
  queue.push_back(Node{origin, {}});

  // Runs the whole-run checkers on a maximal derivation.
  auto close_path = [&](const std::vector<std::string>& keys) {
    ++rep.derivations;
    if constexpr (std::is_same_v<Ops, RbOps>) {
      if (!want.any_path() || keys.empty()) return;
      Derivation d = rebuild(origin, keys);
      if (want.wellformed) note(rep, check_well_defined(d), 0, keys);
      if (want.lemma) note(rep, check_lemma_rollback(d), 0, keys);
    }
  };

  while (!queue.empty()) {
    Node n = std::move(queue.front());
    queue.pop_front();

    std::vector<Choice> en;
    if (n.keys.size() < req.depth && Ops::faults(n.sys).empty())
      en = Ops::enabled(n.sys);
    if (en.empty()) {
      close_path(n.keys);
      continue;
    }

    for (const auto& c : en) {
      auto stepped = Ops::step(n.sys, c);
      std::vector<std::string> path = n.keys;
      path.push_back(c.key());

      if constexpr (std::is_same_v<Ops, RbOps>) {
        if (want.any_edge()) {
          Derivation edge;
          edge.initial = n.sys;
          edge.steps.push_back(DerivStep{c, stepped->first, stepped->second});
          if (want.conservative)
            note(rep, check_conservative(edge), n.keys.size(), path);
          if (want.soundness)
            note(rep, check_soundness(edge), n.keys.size(), path);
        }
      }

      std::string ckey = Ops::canon(stepped->second);
      if (visited.count(ckey) != 0) {
        // Step onto known ground: the path ends here.
        close_path(path);
      } else if (visited.size() >= req.state_limit) {
        rep.truncated = true;
      } else {
        visited.insert(std::move(ckey));
        queue.push_back(Node{std::move(stepped->second), std::move(path)});
      }
    }
  }
  rep.states = visited.size();
}

}  // namespace

std::variant<ExploreReport, RunError> explore(const ExploreRequest& req) {
  std::string text = req.program_text;
  if (text.empty() || text.back() != '\n') text.push_back('\n');
  ParseResult parsed = parse_program(text);
  if (const auto* err = std::get_if<ParseError>(&parsed)) {
    return RunError{"parse error at " + std::to_string(err->line) + ":" +
                    std::to_string(err->col) + ": " + err->msg};
  }
  auto prog = std::make_shared<const Program>(std::get<Program>(parsed));
  if (req.semantics == Semantics::kStandard && program_has_operators(*prog))
    return RunError{
        "program uses checkpoint operators; pick the rollback semantics"};

  CheckSet want;
  for (const auto& c : req.checks) {
    if (c == "wellformed") want.wellformed = true;
    else if (c == "conservative") want.conservative = true;
    else if (c == "soundness") want.soundness = true;
    else if (c == "lemma") want.lemma = true;
    else return RunError{"unknown check: " + c};
  }
  if ((want.any_edge() || want.any_path()) &&
      req.semantics != Semantics::kRollback)
    return RunError{"checks are defined for the rollback semantics only"};

  ExploreReport rep;
  rep.digest = digest_hex(prog->digest);
  rep.semantics = req.semantics;
  rep.depth = req.depth;
  for (const auto& c : req.checks) rep.violations[c] = 0;

  switch (req.semantics) {
    case Semantics::kStandard:
      walk<StdOps>(prog, req, want, rep);
      break;
    case Semantics::kRollback:
      walk<RbOps>(prog, req, want, rep);
      break;
    case Semantics::kReversible:
      walk<RevOps>(prog, req, want, rep);
      break;
  }
  return rep;
}

std::string report_text(const ExploreReport& r) {
  std::ostringstream os;
  os << "reverb-explore\t1\n";
  os << "digest\t" << r.digest << "\n";
  os << "semantics\t" << semantics_name(r.semantics) << "\n";
  os << "depth\t" << r.depth << "\n";
  os << "states\t" << r.states << "\n";
  os << "derivations\t" << r.derivations << "\n";
  os << "truncated\t" << (r.truncated ? 1 : 0) << "\n";
  for (const auto& [name, count] : r.violations)
    os << "check\t" << name << "\t" << count << "\n";
  for (const auto& ce : r.counterexamples) {
    os << "counterexample\t" << ce.check << "\t" << ce.index << "\t"
       << ce.what << "\t";
    for (std::size_t i = 0; i < ce.keys.size(); ++i) {
      if (i != 0) os << ";";
      os << ce.keys[i];
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace reverb
