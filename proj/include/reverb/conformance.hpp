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

#ifndef REVERB_CONFORMANCE_HPP_
#define REVERB_CONFORMANCE_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "reverb/projection.hpp"
#include "reverb/rollback.hpp"
#include "reverb/step.hpp"

namespace reverb {

// A recorded run of the checkpoint engine: the initial system plus, per
// step, the choice taken, the label it produced and the system after it.
// Snapshot i is steps[i-1].post, snapshot 0 the initial system.

struct DerivStep {
  Choice choice;
  StepLabel label;
  RbSystem post;
};

struct Derivation {
  RbSystem initial;
  std::vector<DerivStep> steps;

  const RbSystem& at(std::size_t i) const {
    return i == 0 ? initial : steps[i - 1].post;
  }
};

struct Violation {
  std::size_t index;  // step index (0-based)
  std::string rule;
  std::string what;
};

struct Verdict {
  bool pass{true};
  std::vector<Violation> violations;
};

/**
 * Discipline checks on the use of the operators: the derivation starts at an
 * origin system; commit/rollback calls are preceded by the check that minted
 * their checkpoint, made by the same process; and no process ever holds an
 * effective commit and a rollback for the same checkpoint at once (an undone
 * commit stops counting).
 */
Verdict check_well_defined(const Derivation& d);

/**
 * The forward prefix of the derivation projects, step by step, onto the
 * standard semantics: operator steps land on equal projections, the rest on
 * legal standard steps. Checking stops at the first rollback call or
 * backward step, which is where the guarantee ends. branch_log, when given,
 * receives one entry per checked step saying which case applied.
 */
Verdict check_conservative(const Derivation& d,
                           std::vector<std::string>* branch_log = nullptr);

/**
 * Per-step soundness disjunction over the whole derivation, backward steps
 * included: each step's projections satisfy at least one of sta-equal,
 * sta-step, rev-equal, rev-step. Step legality is successor membership in
 * the target semantics.
 */
Verdict check_soundness(const Derivation& d,
                        std::vector<std::string>* branch_log = nullptr);

/**
 * Rollback window: for every rollback(tau) step, the minting check(tau) step
 * exists earlier, and the caller's active checkpoint set stays nonempty at
 * every snapshot after the check up to and including the rollback.
 */
Verdict check_lemma_rollback(const Derivation& d);

// Replay validation used on imported derivations: every choice must be
// enabled and reproduce the recorded snapshot bit-exactly.
Verdict check_replayable(const Derivation& d);

}  // namespace reverb

#endif  // REVERB_CONFORMANCE_HPP_
