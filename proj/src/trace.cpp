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

#include "reverb/trace.hpp"

#include <charconv>
#include <fstream>
#include <memory>
#include <sstream>
#include <utility>

#include "engine_ops.hpp"

namespace reverb {

namespace {

bool stmt_has_operator(const Statement& st) {
  if (const auto* rec = std::get_if<ReceiveStmt>(&st.s)) {
    for (const auto& c : rec->clauses)
      for (const auto& inner : c.body)
        if (stmt_has_operator(inner)) return true;
    return false;
  }
  return std::holds_alternative<CheckStmt>(st.s) ||
         std::holds_alternative<CommitStmt>(st.s) ||
         std::holds_alternative<RollbackStmt>(st.s) ||
         std::holds_alternative<SlotStmt>(st.s);
}

// Steps until termination, fault, bound, or script exhaustion. A scripted
// key that is not enabled surfaces in *mismatch and aborts the run.
template <typename Ops>
void drive(typename Ops::Sys sys, Scheduler& pol, std::size_t max_steps,
           bool snaps, Trace& out, std::string* mismatch) {
  for (std::size_t i = 0; i <= max_steps; ++i) {
    auto faults = Ops::faults(sys);
    if (!faults.empty()) {
      out.status = "runtime-fault";
      out.fault = fault_line(faults.front());
      return;
    }
    auto en = Ops::enabled(sys);
    if (en.empty()) {
      out.status = Ops::terminal(sys);
      return;
    }
    if (i == max_steps) break;
    Picked p = pol.pick(en);
    if (p.status == PickStatus::kExhausted) break;
    if (p.status == PickStatus::kMismatch) {
      *mismatch = "script key not enabled at step " + std::to_string(i) +
                  ": " + p.detail;
      return;
    }
    auto stepped = Ops::step(sys, p.choice);
    // Enabled choices always step; a nullopt here would be an engine bug.
    out.records.push_back(TraceRecord{i, p.choice.key(), stepped->first.str(),
                                      snaps ? Ops::str(stepped->second)
                                            : std::string{}});
    sys = std::move(stepped->second);
  }
  out.status = "max-steps";
}

void flag(Verdict& v, std::size_t index, const char* rule, std::string what) {
  v.pass = false;
  v.violations.push_back(Violation{index, rule, std::move(what)});
}

/**
 * Replays the records against a fresh engine. observe sees every post-step
 * system (used to rebuild the rollback derivation for the checkers).
 * Returns false at the first divergence, which is already flagged.
 */
template <typename Ops, typename Observe>
bool replay(const Trace& t, typename Ops::Sys sys, Verdict& v,
            Observe observe) {
  for (const auto& rec : t.records) {
    auto faults = Ops::faults(sys);
    if (!faults.empty()) {
      flag(v, rec.index, "replay", "record follows a runtime fault");
      return false;
    }
    auto en = Ops::enabled(sys);
    const Choice* hit = nullptr;
    for (const auto& c : en)
      if (c.key() == rec.key) {
        hit = &c;
        break;
      }
    if (hit == nullptr) {
      flag(v, rec.index, "replay", "choice not enabled: " + rec.key);
      return false;
    }
    auto stepped = Ops::step(sys, *hit);
    if (stepped->first.str() != rec.label) {
      flag(v, rec.index, "replay",
           "label mismatch: engine says " + stepped->first.str());
      return false;
    }
    if (!rec.snapshot.empty() && Ops::str(stepped->second) != rec.snapshot) {
      flag(v, rec.index, "replay", "snapshot mismatch");
      return false;
    }
    observe(*hit, stepped->first, stepped->second);
    sys = std::move(stepped->second);
  }

  std::string actual;
  std::string actual_fault;
  auto faults = Ops::faults(sys);
  if (!faults.empty()) {
    actual = "runtime-fault";
    actual_fault = fault_line(faults.front());
  } else if (Ops::enabled(sys).empty()) {
    actual = Ops::terminal(sys);
  } else {
    actual = "max-steps";
  }
  if (actual != t.status || actual_fault != t.fault) {
    flag(v, t.records.size(), "replay",
         "status mismatch: engine says " + actual +
             (actual_fault.empty() ? "" : " (" + actual_fault + ")"));
    return false;
  }
  return true;
}

std::variant<std::vector<std::string>, RunError> read_script(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) return RunError{"cannot open script file: " + path};
  std::vector<std::string> keys;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (!line.empty() && line[0] != '#') keys.push_back(line);
  }
  return keys;
}

}  // namespace

bool program_has_operators(const Program& prog) {
  for (const auto& [name, body] : prog.procs)
    for (const auto& st : body)
      if (stmt_has_operator(st)) return true;
  return false;
}

const char* semantics_name(Semantics s) {
  switch (s) {
    case Semantics::kStandard: return "standard";
    case Semantics::kRollback: return "rollback";
    case Semantics::kReversible: return "reversible";
  }
  return "?";
}

std::optional<Semantics> semantics_from(const std::string& name) {
  if (name == "standard") return Semantics::kStandard;
  if (name == "rollback") return Semantics::kRollback;
  if (name == "reversible") return Semantics::kReversible;
  return std::nullopt;
}

std::string digest_hex(std::uint64_t d) {
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[d & 0xf];
    d >>= 4;
  }
  return out;
}

std::variant<Trace, RunError> run(const RunRequest& req) {
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
  if (req.handler && req.semantics != Semantics::kRollback)
    return RunError{"handler mode applies to the rollback semantics only"};

  Trace t;
  t.program_text = text;
  t.digest = digest_hex(prog->digest);
  t.semantics = req.semantics;
  t.seed = req.seed;
  t.handler = req.handler;
  t.snapshots = req.snapshots;

  std::unique_ptr<Scheduler> pol;
  if (!req.script.empty()) {
    t.policy = "script";
    pol = make_scripted(req.script);
  } else if (req.policy == "default") {
    t.policy = "default";
    pol = make_priority_default();
  } else if (req.policy == "random") {
    t.policy = "random";
    pol = make_seeded_random(req.seed);
  } else if (req.policy.rfind("script:", 0) == 0) {
    auto keys = read_script(req.policy.substr(7));
    if (const auto* err = std::get_if<RunError>(&keys)) return *err;
    t.policy = "script";
    pol = make_scripted(std::get<std::vector<std::string>>(keys));
  } else {
    return RunError{"unknown policy: " + req.policy};
  }

  std::string mismatch;
  switch (req.semantics) {
    case Semantics::kStandard:
      drive<StdOps>(StdOps::init(prog, false), *pol, req.max_steps,
                    req.snapshots, t, &mismatch);
      break;
    case Semantics::kRollback:
      drive<RbOps>(RbOps::init(prog, req.handler), *pol, req.max_steps,
                   req.snapshots, t, &mismatch);
      break;
    case Semantics::kReversible:
      drive<RevOps>(RevOps::init(prog, false), *pol, req.max_steps,
                    req.snapshots, t, &mismatch);
      break;
  }
  if (!mismatch.empty()) return RunError{std::move(mismatch)};
  return t;
}

namespace {

// Snapshot texts are multi-line for the instrumented engines; the record
// line stays one line by escaping them.
std::string escape_field(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape_field(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\' || i + 1 == s.size()) {
      out += s[i];
      continue;
    }
    char next = s[++i];
    if (next == 't') out += '\t';
    else if (next == 'n') out += '\n';
    else out += next;
  }
  return out;
}

}  // namespace

std::string serialize(const Trace& t) {
  std::ostringstream os;
  os << "# reverb-trace\t" << t.version << "\n";
  os << "# digest\t" << t.digest << "\n";
  os << "# semantics\t" << semantics_name(t.semantics) << "\n";
  os << "# policy\t" << t.policy << "\n";
  os << "# seed\t" << t.seed << "\n";
  os << "# mode\t" << (t.handler ? "handler" : "faithful") << "\n";
  os << "# snapshots\t" << (t.snapshots ? 1 : 0) << "\n";
  std::size_t start = 0;
  while (start < t.program_text.size()) {
    std::size_t nl = t.program_text.find('\n', start);
    if (nl == std::string::npos) nl = t.program_text.size();
    os << "# prog\t" << t.program_text.substr(start, nl - start) << "\n";
    start = nl + 1;
  }
  for (const auto& r : t.records) {
    os << r.index << "\t" << r.key << "\t" << r.label;
    if (!r.snapshot.empty()) os << "\t" << escape_field(r.snapshot);
    os << "\n";
  }
  if (!t.fault.empty()) os << "# fault\t" << t.fault << "\n";
  os << "# status\t" << t.status << "\n";
  return os.str();
}

namespace {

bool parse_u64(const std::string& s, std::uint64_t& out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

}  // namespace

std::variant<Trace, TraceFormatError> parse_trace(const std::string& text) {
  Trace t;
  t.policy.clear();
  bool saw_magic = false;
  std::vector<std::string> prog_lines;
  std::size_t lineno = 0;
  std::size_t start = 0;
  bool closed = false;

  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(start, nl - start);
    start = nl + 1;
    ++lineno;
    if (line.empty()) continue;
    if (closed)
      return TraceFormatError{lineno, "content after the status line"};

    if (line[0] == '#') {
      if (line.size() < 3 || line[1] != ' ')
        return TraceFormatError{lineno, "malformed header line"};
      std::size_t tab = line.find('\t');
      std::string key = line.substr(2, tab == std::string::npos
                                           ? std::string::npos
                                           : tab - 2);
      std::string val =
          tab == std::string::npos ? std::string{} : line.substr(tab + 1);
      if (key == "reverb-trace") {
        saw_magic = true;
        std::uint64_t ver = 0;
        if (!parse_u64(val, ver))
          return TraceFormatError{lineno, "bad version: " + val};
        t.version = static_cast<int>(ver);
      } else if (key == "digest") {
        t.digest = val;
      } else if (key == "semantics") {
        auto s = semantics_from(val);
        if (!s.has_value())
          return TraceFormatError{lineno, "unknown semantics: " + val};
        t.semantics = *s;
      } else if (key == "policy") {
        t.policy = val;
      } else if (key == "seed") {
        if (!parse_u64(val, t.seed))
          return TraceFormatError{lineno, "bad seed: " + val};
      } else if (key == "mode") {
        if (val != "faithful" && val != "handler")
          return TraceFormatError{lineno, "unknown mode: " + val};
        t.handler = (val == "handler");
      } else if (key == "snapshots") {
        if (val != "0" && val != "1")
          return TraceFormatError{lineno, "bad snapshots flag: " + val};
        t.snapshots = (val == "1");
      } else if (key == "prog") {
        prog_lines.push_back(val);
      } else if (key == "fault") {
        t.fault = val;
      } else if (key == "status") {
        t.status = val;
        closed = true;
      } else {
        return TraceFormatError{lineno, "unknown header: " + key};
      }
      continue;
    }

    if (!saw_magic)
      return TraceFormatError{lineno, "missing reverb-trace header"};
    std::vector<std::string> fields;
    std::size_t fstart = 0;
    while (true) {
      std::size_t tab = line.find('\t', fstart);
      if (tab == std::string::npos) {
        fields.push_back(line.substr(fstart));
        break;
      }
      fields.push_back(line.substr(fstart, tab - fstart));
      fstart = tab + 1;
    }
    if (fields.size() != 3 && fields.size() != 4)
      return TraceFormatError{lineno, "record needs 3 or 4 fields"};
    TraceRecord rec;
    std::uint64_t idx = 0;
    if (!parse_u64(fields[0], idx))
      return TraceFormatError{lineno, "bad record index: " + fields[0]};
    rec.index = idx;
    if (rec.index != t.records.size())
      return TraceFormatError{lineno, "record index out of order"};
    rec.key = fields[1];
    rec.label = fields[2];
    if (fields.size() == 4) rec.snapshot = unescape_field(fields[3]);
    t.records.push_back(std::move(rec));
  }

  if (!saw_magic) return TraceFormatError{1, "missing reverb-trace header"};
  if (!closed) return TraceFormatError{lineno, "missing status line"};
  if (t.version != 1)
    return TraceFormatError{1,
                            "unsupported version " + std::to_string(t.version)};
  for (const auto& pl : prog_lines) t.program_text += pl + "\n";
  return t;
}

Verdict verify(const Trace& t) {
  Verdict v;
  if (digest_hex(source_digest(t.program_text)) != t.digest) {
    flag(v, 0, "format", "digest does not match the embedded program");
    return v;
  }
  ParseResult parsed = parse_program(t.program_text);
  if (const auto* err = std::get_if<ParseError>(&parsed)) {
    flag(v, 0, "format",
         "embedded program does not parse: " + err->msg + " at " +
             std::to_string(err->line) + ":" + std::to_string(err->col));
    return v;
  }
  auto prog = std::make_shared<const Program>(std::get<Program>(parsed));

  switch (t.semantics) {
    case Semantics::kStandard:
      replay<StdOps>(t, StdOps::init(prog, false), v,
                     [](const Choice&, const StepLabel&, const StdSystem&) {});
      break;
    case Semantics::kReversible:
      replay<RevOps>(t, RevOps::init(prog, false), v,
                     [](const Choice&, const StepLabel&, const RevSystem&) {});
      break;
    case Semantics::kRollback: {
      Derivation d;
      d.initial = RbOps::init(prog, t.handler);
      bool ok = replay<RbOps>(
          t, d.initial, v,
          [&d](const Choice& c, const StepLabel& l, const RbSystem& post) {
            d.steps.push_back(DerivStep{c, l, post});
          });
      // The checkers assume faithful restoration; handler mode swaps in the
      // resume continuation and is checked by replay only.
      if (ok && !t.handler) {
        for (const Verdict& cv :
             {check_well_defined(d), check_conservative(d), check_soundness(d),
              check_lemma_rollback(d)}) {
          for (const auto& viol : cv.violations) {
            v.pass = false;
            v.violations.push_back(viol);
          }
        }
      }
      break;
    }
  }
  return v;
}

}  // namespace reverb
