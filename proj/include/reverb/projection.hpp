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

#ifndef REVERB_PROJECTION_HPP_
#define REVERB_PROJECTION_HPP_

#include <string>
#include <vector>

#include "reverb/lang.hpp"
#include "reverb/reversible.hpp"
#include "reverb/rollback.hpp"
#include "reverb/standard.hpp"

namespace reverb {

// Erasure: maps checkpoint-instrumented data onto the operator-free
// fragment. Checkpoint ids become the atom ok; a check binding disappears
// into a substitution of ok for its variable; commit/rollback calls vanish.
// A program that itself pattern-matches on the atom ok can collide with the
// erasure and is outside the guarantees (the generator never emits one).

Value erase_value(const Value& v);
std::vector<Statement> erase_stmts(const std::vector<Statement>& stmts);
LocalState erase_state(const LocalState& s);
Program erase_program(const Program& prog);

// History cleanup for the reversible projection: seq/send/spawn entries kept
// (states erased), rec entries lose their two checkpoint sets, check/commit
// entries are deleted. Order of the survivors is preserved.
History r_hist(const History& h);

/**
 * Projection onto the standard semantics: forward and backward processes
 * alike become plain processes with erased states; checkpoint sets, delayed
 * commits, histories, rollback targets, message checkpoint sets and message
 * tags are all dropped. Message arrival order is taken from the tags so
 * replay choices stay aligned.
 */
StdSystem proj_sta(const RbSystem& sys);

// Projection onto the reversible semantics: histories pass through r_hist,
// states through erasure, messages keep their tags but drop the checkpoint
// sets. Counters are copied so a projected step mints the same ids the
// instrumented step did.
RevSystem proj_rev(const RbSystem& sys);

/**
 * Environment closure: every binding is substituted into the pending
 * statements and the environment emptied. Erasure substitutes where the
 * engine binds, so projected states are compared modulo this quotient.
 */
LocalState norm_state(const LocalState& s);

// Comparison keys: serialized system with normed states, counters excluded.
std::string norm_std_key(const StdSystem& sys);
std::string norm_rev_key(const RevSystem& sys);

}  // namespace reverb

#endif  // REVERB_PROJECTION_HPP_
