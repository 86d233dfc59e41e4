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

#ifndef REVERB_LANG_HPP_
#define REVERB_LANG_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "reverb/ids.hpp"

namespace reverb {

// ---------------------------------------------------------------------------
// Values
// ---------------------------------------------------------------------------

struct Value;
using ValueList = std::vector<Value>;

/**
 * Runtime value: atom, integer, tuple, process id, or checkpoint id.
 * Process and checkpoint ids only enter a run through spawn/check bindings
 * and message payloads; source programs can only write atoms, integers and
 * tuples.
 */
struct Value {
  std::variant<std::string, std::int64_t, ValueList, Pid, Tau> v;

  static Value atom(std::string a) { return Value{std::move(a)}; }
  static Value integer(std::int64_t i) { return Value{i}; }
  static Value tuple(ValueList items) { return Value{std::move(items)}; }
  static Value pid(Pid p) { return Value{p}; }
  static Value chk(Tau t) { return Value{t}; }

  bool is_pid() const { return std::holds_alternative<Pid>(v); }
  bool is_chk() const { return std::holds_alternative<Tau>(v); }
};

bool operator==(const Value& a, const Value& b);
bool operator<(const Value& a, const Value& b);
std::string to_string(const Value& v);

// ---------------------------------------------------------------------------
// Expressions and patterns
// ---------------------------------------------------------------------------

struct Expr;

struct VarExpr {
  std::string name;
};
struct LitExpr {
  Value val;
};
struct TupleExpr {
  std::vector<Expr> items;
};
// Unfilled future: placeholder left by local_step for spawn/check, filled by
// the system rule via bind_future before the step completes.
struct SlotExpr {};

struct Expr {
  std::variant<VarExpr, LitExpr, TupleExpr, SlotExpr> e;
};

bool operator==(const Expr& a, const Expr& b);
std::string to_string(const Expr& e);

struct Pattern;

struct WildcardPat {};
struct VarPat {
  std::string name;
};
struct LitPat {
  Value val;
};
struct TuplePat {
  std::vector<Pattern> items;
};

struct Pattern {
  std::variant<WildcardPat, VarPat, LitPat, TuplePat> p;
};

bool operator==(const Pattern& a, const Pattern& b);
std::string to_string(const Pattern& p);

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

struct Statement;

struct Clause {
  Pattern pat;
  std::vector<Statement> body;
};

struct SpawnStmt {
  std::string target;  // variable receiving the child pid
  std::string proc;    // spawned proc name
};
struct SendStmt {
  Expr dest;
  Expr payload;
};
struct ReceiveStmt {
  std::vector<Clause> clauses;
};
struct CheckStmt {
  std::string target;  // variable receiving the checkpoint id
};
struct CommitStmt {
  Expr arg;
};
struct RollbackStmt {
  Expr arg;
};
struct SeqStmt {
  std::string tag;  // label of a "seq NAME" no-op step
};
// Internal: pending future left by spawn/check, never produced by the parser.
struct SlotStmt {
  std::string target;
};

struct Statement {
  std::variant<SpawnStmt, SendStmt, ReceiveStmt, CheckStmt, CommitStmt,
               RollbackStmt, SeqStmt, SlotStmt>
      s;
};

bool operator==(const Statement& a, const Statement& b);
bool operator==(const Clause& a, const Clause& b);
std::string to_string(const Statement& s);
std::string to_string(const std::vector<Statement>& body);

// ---------------------------------------------------------------------------
// Local states
// ---------------------------------------------------------------------------

using Env = std::map<std::string, Value>;
using Bindings = std::map<std::string, Value>;

struct LocalState {
  Env env;
  std::vector<Statement> pending;  // pending[0] is the next statement
};

bool operator==(const LocalState& a, const LocalState& b);
std::string to_string(const LocalState& s);

// ---------------------------------------------------------------------------
// Programs
// ---------------------------------------------------------------------------

struct Program {
  std::map<std::string, std::vector<Statement>> procs;
  std::string source;        // original text, kept for trace embedding
  std::uint64_t digest{0};   // FNV-1a of the source text
};

struct ParseError {
  int line{0};
  int col{0};
  std::string msg;
};

using ParseResult = std::variant<Program, ParseError>;

ParseResult parse_program(const std::string& text);
std::uint64_t source_digest(const std::string& text);

// ---------------------------------------------------------------------------
// Local stepping
// ---------------------------------------------------------------------------

struct SeqLabel {};
struct SendLabel {
  Pid dest;
  Value val;
};
struct SpawnLabel {
  std::string proc;
  LocalState child;
};
struct CheckLabel {};
struct CommitLabel {
  Tau t;
};
struct RollbackLabel {
  Tau t;
};

struct LocalLabel {
  std::variant<SeqLabel, SendLabel, SpawnLabel, CheckLabel, CommitLabel,
               RollbackLabel>
      l;
};

struct LocalStep {
  LocalLabel label;
  LocalState next;
};
struct Stuck {};
struct LocalError {
  std::string msg;
};

using LocalResult = std::variant<LocalStep, Stuck, LocalError>;

/**
 * One process-local step. Send/commit/rollback evaluate their arguments into
 * the label; spawn/check leave an unfilled future slot for the system rule;
 * a receive head or empty pending is Stuck (receive completion is a system
 * rule). Unbound variables and ill-typed operator arguments are LocalErrors.
 */
LocalResult local_step(const LocalState& s, const Program& prog);

using EvalResult = std::variant<Value, LocalError>;
EvalResult eval_expr(const Expr& e, const Env& env);

// ---------------------------------------------------------------------------
// Receive matching and future binding
// ---------------------------------------------------------------------------

std::optional<Bindings> match(const Pattern& pat, const Value& v);

struct MatchHit {
  std::size_t index;
  Bindings binds;
};

// First-match clause selection: lowest index whose pattern matches v.
std::optional<MatchHit> match_rec(const std::vector<Clause>& cs,
                                  const Value& v);

/**
 * Fills the pending future of a post-spawn/post-check state: the head must
 * be the slot left by local_step; the target variable is bound to v and the
 * slot removed. Throws std::logic_error if no slot is pending.
 */
LocalState bind_future(const LocalState& s, const Value& v);

/**
 * Receive-flavored future binding: the head must be a receive statement; the
 * clause's bindings are installed and its body prepended to the remaining
 * statements. Throws std::logic_error if the head is not a receive.
 */
LocalState bind_future(const LocalState& s, const Clause& c,
                       const Bindings& b);

// ---------------------------------------------------------------------------
// Variable scoping utilities (shared by the projections)
// ---------------------------------------------------------------------------

// Does this pattern bind the given name?
bool pattern_binds(const Pattern& p, const std::string& name);

/**
 * Substitutes a value for every free occurrence of a variable in a statement
 * sequence, stopping at statements that rebind the name (spawn/check/slot
 * targets, receive clause patterns). When only some clauses of a receive
 * rebind the name, statements after that receive are left untouched: which
 * binding they see depends on the clause taken at runtime.
 */
std::vector<Statement> subst_var(const std::vector<Statement>& stmts,
                                 const std::string& name, const Value& v);

// Is there a free occurrence of the name in the statement sequence?
bool occurs_free(const std::vector<Statement>& stmts, const std::string& name);

}  // namespace reverb

#endif  // REVERB_LANG_HPP_
