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

#ifndef REVERB_TRACE_HPP_
#define REVERB_TRACE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "reverb/conformance.hpp"
#include "reverb/sched.hpp"

namespace reverb {

enum class Semantics { kStandard, kRollback, kReversible };

const char* semantics_name(Semantics s);
std::optional<Semantics> semantics_from(const std::string& name);

// Does any process body use check/commit/rollback? The standard semantics
// statically rejects such programs.
bool program_has_operators(const Program& prog);

// 16 lowercase hex digits of the source digest.
std::string digest_hex(std::uint64_t d);

/**
 * A recorded run. The file form is line-oriented and tab-separated: "#"
 * header lines carry the metadata and the embedded program source, then one
 * record line per step (index, choice key, label, optional snapshot), then a
 * closing "# status" line. Identical inputs serialize byte-identically.
 */
struct TraceRecord {
  std::size_t index{0};
  std::string key;       // Choice::key(), sufficient to replay the step
  std::string label;     // StepLabel::str()
  std::string snapshot;  // one-line system dump, empty unless requested
};

struct Trace {
  int version{1};
  std::string digest;        // digest_hex of program_text
  std::string program_text;  // embedded so a trace file is self-contained
  Semantics semantics{Semantics::kRollback};
  std::string policy{"default"};
  std::uint64_t seed{0};
  bool handler{false};
  bool snapshots{false};
  std::vector<TraceRecord> records;
  // final | deadlock | max-steps | stuck-backward | runtime-fault
  std::string status;
  std::string fault;  // pid and message when status is runtime-fault
};

// Bad input (parse failure, unknown policy, script problems). Maps to the
// usage exit code, as opposed to engine faults which live in Trace::status.
struct RunError {
  std::string msg;
};

struct RunRequest {
  std::string program_text;
  Semantics semantics{Semantics::kRollback};
  // "default", "random", or "script:PATH" (one choice key per line).
  std::string policy{"default"};
  // In-process scripts; when nonempty this wins over policy and is recorded
  // as policy "script".
  std::vector<std::string> script;
  std::uint64_t seed{0};
  std::size_t max_steps{10000};
  bool handler{false};
  bool snapshots{false};
};

/**
 * Parses, then steps the chosen engine under the policy until termination,
 * fault, or the step bound. The standard engine statically rejects programs
 * containing checkpoint operators (RunError); the reversible engine lets
 * them fault at run time instead, which lands in the trace status.
 */
std::variant<Trace, RunError> run(const RunRequest& req);

std::string serialize(const Trace& t);

struct TraceFormatError {
  std::size_t line{0};
  std::string msg;
};

std::variant<Trace, TraceFormatError> parse_trace(const std::string& text);

/**
 * Replays the embedded program under the recorded choices and confirms the
 * trace record by record: keys enabled, labels equal, snapshots equal where
 * present, terminal status equal. Faithful-mode rollback traces additionally
 * run the four conformance checkers over the replayed derivation. The first
 * replay divergence stops the replay; its index is in the violation.
 */
Verdict verify(const Trace& t);

}  // namespace reverb

#endif  // REVERB_TRACE_HPP_
