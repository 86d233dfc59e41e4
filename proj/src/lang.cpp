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

#include "reverb/lang.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace reverb {

// ---------------------------------------------------------------------------
// Value comparison and printing
// ---------------------------------------------------------------------------

bool operator==(const Value& a, const Value& b) {
  if (a.v.index() != b.v.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        return x == std::get<T>(b.v);
      },
      a.v);
}

bool operator<(const Value& a, const Value& b) {
  if (a.v.index() != b.v.index()) return a.v.index() < b.v.index();
  if (const auto* s = std::get_if<std::string>(&a.v))
    return *s < std::get<std::string>(b.v);
  if (const auto* i = std::get_if<std::int64_t>(&a.v))
    return *i < std::get<std::int64_t>(b.v);
  if (const auto* t = std::get_if<ValueList>(&a.v)) {
    const auto& u = std::get<ValueList>(b.v);
    for (std::size_t k = 0; k < t->size() && k < u.size(); ++k) {
      if ((*t)[k] < u[k]) return true;
      if (u[k] < (*t)[k]) return false;
    }
    return t->size() < u.size();
  }
  if (const auto* p = std::get_if<Pid>(&a.v)) return *p < std::get<Pid>(b.v);
  return std::get<Tau>(a.v) < std::get<Tau>(b.v);
}

std::string to_string(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v.v)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&v.v)) return std::to_string(*i);
  if (const auto* t = std::get_if<ValueList>(&v.v)) {
    std::string out = "{";
    for (std::size_t k = 0; k < t->size(); ++k) {
      if (k) out += ",";
      out += to_string((*t)[k]);
    }
    return out + "}";
  }
  if (const auto* p = std::get_if<Pid>(&v.v)) return "#" + to_string(*p);
  return "#" + to_string(std::get<Tau>(v.v));
}

// ---------------------------------------------------------------------------
// Expr / Pattern / Statement equality and printing
// ---------------------------------------------------------------------------

bool operator==(const Expr& a, const Expr& b) {
  if (a.e.index() != b.e.index()) return false;
  if (const auto* v = std::get_if<VarExpr>(&a.e))
    return v->name == std::get<VarExpr>(b.e).name;
  if (const auto* l = std::get_if<LitExpr>(&a.e))
    return l->val == std::get<LitExpr>(b.e).val;
  if (const auto* t = std::get_if<TupleExpr>(&a.e))
    return t->items == std::get<TupleExpr>(b.e).items;
  return true;  // SlotExpr
}

std::string to_string(const Expr& e) {
  if (const auto* v = std::get_if<VarExpr>(&e.e)) return v->name;
  if (const auto* l = std::get_if<LitExpr>(&e.e)) return to_string(l->val);
  if (const auto* t = std::get_if<TupleExpr>(&e.e)) {
    std::string out = "{";
    for (std::size_t k = 0; k < t->items.size(); ++k) {
      if (k) out += ",";
      out += to_string(t->items[k]);
    }
    return out + "}";
  }
  return "<slot>";
}

bool operator==(const Pattern& a, const Pattern& b) {
  if (a.p.index() != b.p.index()) return false;
  if (std::holds_alternative<WildcardPat>(a.p)) return true;
  if (const auto* v = std::get_if<VarPat>(&a.p))
    return v->name == std::get<VarPat>(b.p).name;
  if (const auto* l = std::get_if<LitPat>(&a.p))
    return l->val == std::get<LitPat>(b.p).val;
  return std::get<TuplePat>(a.p).items == std::get<TuplePat>(b.p).items;
}

std::string to_string(const Pattern& p) {
  if (std::holds_alternative<WildcardPat>(p.p)) return "_";
  if (const auto* v = std::get_if<VarPat>(&p.p)) return v->name;
  if (const auto* l = std::get_if<LitPat>(&p.p)) return to_string(l->val);
  const auto& t = std::get<TuplePat>(p.p);
  std::string out = "{";
  for (std::size_t k = 0; k < t.items.size(); ++k) {
    if (k) out += ",";
    out += to_string(t.items[k]);
  }
  return out + "}";
}

bool operator==(const Clause& a, const Clause& b) {
  return a.pat == b.pat && a.body == b.body;
}

bool operator==(const Statement& a, const Statement& b) {
  if (a.s.index() != b.s.index()) return false;
  if (const auto* x = std::get_if<SpawnStmt>(&a.s)) {
    const auto& y = std::get<SpawnStmt>(b.s);
    return x->target == y.target && x->proc == y.proc;
  }
  if (const auto* x = std::get_if<SendStmt>(&a.s)) {
    const auto& y = std::get<SendStmt>(b.s);
    return x->dest == y.dest && x->payload == y.payload;
  }
  if (const auto* x = std::get_if<ReceiveStmt>(&a.s))
    return x->clauses == std::get<ReceiveStmt>(b.s).clauses;
  if (const auto* x = std::get_if<CheckStmt>(&a.s))
    return x->target == std::get<CheckStmt>(b.s).target;
  if (const auto* x = std::get_if<CommitStmt>(&a.s))
    return x->arg == std::get<CommitStmt>(b.s).arg;
  if (const auto* x = std::get_if<RollbackStmt>(&a.s))
    return x->arg == std::get<RollbackStmt>(b.s).arg;
  if (const auto* x = std::get_if<SeqStmt>(&a.s))
    return x->tag == std::get<SeqStmt>(b.s).tag;
  return std::get<SlotStmt>(a.s).target == std::get<SlotStmt>(b.s).target;
}

std::string to_string(const Statement& s) {
  if (const auto* x = std::get_if<SpawnStmt>(&s.s))
    return x->target + " = spawn " + x->proc;
  if (const auto* x = std::get_if<SendStmt>(&s.s))
    return "send " + to_string(x->dest) + ", " + to_string(x->payload);
  if (const auto* x = std::get_if<ReceiveStmt>(&s.s)) {
    std::string out = "receive";
    for (const auto& c : x->clauses) {
      out += " |" + to_string(c.pat) + " -> " + to_string(c.body);
    }
    return out + " end";
  }
  if (const auto* x = std::get_if<CheckStmt>(&s.s)) return x->target + " = check";
  if (const auto* x = std::get_if<CommitStmt>(&s.s))
    return "commit(" + to_string(x->arg) + ")";
  if (const auto* x = std::get_if<RollbackStmt>(&s.s))
    return "rollback(" + to_string(x->arg) + ")";
  if (const auto* x = std::get_if<SeqStmt>(&s.s)) return "seq " + x->tag;
  return std::get<SlotStmt>(s.s).target + " = <slot>";
}

std::string to_string(const std::vector<Statement>& body) {
  std::string out = "[";
  for (std::size_t k = 0; k < body.size(); ++k) {
    if (k) out += "; ";
    out += to_string(body[k]);
  }
  return out + "]";
}

bool operator==(const LocalState& a, const LocalState& b) {
  return a.env == b.env && a.pending == b.pending;
}

std::string to_string(const LocalState& s) {
  std::string out = "({";
  bool first = true;
  for (const auto& [k, v] : s.env) {
    if (!first) out += ", ";
    out += k + "=" + to_string(v);
    first = false;
  }
  out += "} ";
  out += to_string(s.pending);
  return out + ")";
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
  kProc, kEnd, kSend, kReceive, kSpawn, kCheck, kCommit, kRollback, kSeq,
  kVar, kAtom, kInt,
  kEquals, kComma, kLBrace, kRBrace, kLParen, kRParen, kPipe, kArrow,
  kColon, kWildcard, kEof,
};

struct Token {
  Tok kind;
  std::string text;
  std::int64_t num{0};
  int line{1};
  int col{1};
};

struct LexFail {
  int line;
  int col;
  std::string msg;
};

std::variant<std::vector<Token>, LexFail> lex(const std::string& text) {
  std::vector<Token> toks;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto bump = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') {
        bump(text[i]);
        ++i;
      }
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      bump(c);
      ++i;
      continue;
    }
    int tl = line, tc = col;
    auto push = [&](Tok k, std::string s) {
      toks.push_back(Token{k, std::move(s), 0, tl, tc});
    };
    if (c == '=' ) { push(Tok::kEquals, "="); bump(c); ++i; continue; }
    if (c == ',') { push(Tok::kComma, ","); bump(c); ++i; continue; }
    if (c == '{') { push(Tok::kLBrace, "{"); bump(c); ++i; continue; }
    if (c == '}') { push(Tok::kRBrace, "}"); bump(c); ++i; continue; }
    if (c == '(') { push(Tok::kLParen, "("); bump(c); ++i; continue; }
    if (c == ')') { push(Tok::kRParen, ")"); bump(c); ++i; continue; }
    if (c == '|') { push(Tok::kPipe, "|"); bump(c); ++i; continue; }
    if (c == ':') { push(Tok::kColon, ":"); bump(c); ++i; continue; }
    if (c == '-') {
      if (i + 1 < text.size() && text[i + 1] == '>') {
        push(Tok::kArrow, "->");
        bump(c); bump('>');
        i += 2;
        continue;
      }
      if (i + 1 < text.size() && text[i + 1] >= '0' && text[i + 1] <= '9') {
        std::size_t j = i + 1;
        while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
        std::string lit = text.substr(i, j - i);
        try {
          std::int64_t n = std::stoll(lit);
          toks.push_back(Token{Tok::kInt, lit, n, tl, tc});
        } catch (const std::out_of_range&) {
          return LexFail{tl, tc, "integer out of range"};
        }
        for (; i < j; ++i) bump(text[i]);
        continue;
      }
      return LexFail{tl, tc, "stray '-'"};
    }
    if (c >= '0' && c <= '9') {
      std::size_t j = i;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
      std::string lit = text.substr(i, j - i);
      try {
        std::int64_t n = std::stoll(lit);
        toks.push_back(Token{Tok::kInt, lit, n, tl, tc});
      } catch (const std::out_of_range&) {
        return LexFail{tl, tc, "integer out of range"};
      }
      for (; i < j; ++i) bump(text[i]);
      continue;
    }
    auto ident_char = [](char x) {
      return (x >= 'a' && x <= 'z') || (x >= 'A' && x <= 'Z') ||
             (x >= '0' && x <= '9') || x == '_';
    };
    if (c == '_' || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string word = text.substr(i, j - i);
      for (; i < j; ++i) bump(text[i]);
      if (word == "_") { push(Tok::kWildcard, word); continue; }
      if (word[0] == '_') return LexFail{tl, tc, "bad identifier '" + word + "'"};
      if (word == "proc") { push(Tok::kProc, word); continue; }
      if (word == "end") { push(Tok::kEnd, word); continue; }
      if (word == "send") { push(Tok::kSend, word); continue; }
      if (word == "receive") { push(Tok::kReceive, word); continue; }
      if (word == "spawn") { push(Tok::kSpawn, word); continue; }
      if (word == "check") { push(Tok::kCheck, word); continue; }
      if (word == "commit") { push(Tok::kCommit, word); continue; }
      if (word == "rollback") { push(Tok::kRollback, word); continue; }
      if (word == "seq") { push(Tok::kSeq, word); continue; }
      if (word[0] >= 'A' && word[0] <= 'Z') { push(Tok::kVar, word); continue; }
      push(Tok::kAtom, word);
      continue;
    }
    return LexFail{tl, tc, std::string("unexpected character '") + c + "'"};
  }
  toks.push_back(Token{Tok::kEof, "", 0, line, col});
  return toks;
}

// ---------------------------------------------------------------------------
// Parser (recursive descent over the token list)
// ---------------------------------------------------------------------------

struct Parser {
  const std::vector<Token>& toks;
  std::size_t pos{0};
  std::optional<ParseError> err;

  const Token& peek() const { return toks[pos]; }
  const Token& next() { return toks[pos++]; }
  bool at(Tok k) const { return toks[pos].kind == k; }

  void fail(const Token& t, std::string msg) {
    if (!err) err = ParseError{t.line, t.col, std::move(msg)};
  }

  bool expect(Tok k, const char* what) {
    if (at(k)) {
      next();
      return true;
    }
    fail(peek(), std::string("expected ") + what);
    return false;
  }

  std::optional<Expr> parse_expr() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kVar:
        next();
        return Expr{VarExpr{t.text}};
      case Tok::kAtom:
        next();
        return Expr{LitExpr{Value::atom(t.text)}};
      case Tok::kInt:
        next();
        return Expr{LitExpr{Value::integer(t.num)}};
      case Tok::kLBrace: {
        next();
        std::vector<Expr> items;
        auto first = parse_expr();
        if (!first) return std::nullopt;
        items.push_back(std::move(*first));
        while (at(Tok::kComma)) {
          next();
          auto e = parse_expr();
          if (!e) return std::nullopt;
          items.push_back(std::move(*e));
        }
        if (!expect(Tok::kRBrace, "'}'")) return std::nullopt;
        return Expr{TupleExpr{std::move(items)}};
      }
      default:
        fail(t, "expected expression");
        return std::nullopt;
    }
  }

  std::optional<Pattern> parse_pattern() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kWildcard:
        next();
        return Pattern{WildcardPat{}};
      case Tok::kVar:
        next();
        return Pattern{VarPat{t.text}};
      case Tok::kAtom:
        next();
        return Pattern{LitPat{Value::atom(t.text)}};
      case Tok::kInt:
        next();
        return Pattern{LitPat{Value::integer(t.num)}};
      case Tok::kLBrace: {
        next();
        std::vector<Pattern> items;
        auto first = parse_pattern();
        if (!first) return std::nullopt;
        items.push_back(std::move(*first));
        while (at(Tok::kComma)) {
          next();
          auto p = parse_pattern();
          if (!p) return std::nullopt;
          items.push_back(std::move(*p));
        }
        if (!expect(Tok::kRBrace, "'}'")) return std::nullopt;
        return Pattern{TuplePat{std::move(items)}};
      }
      default:
        fail(t, "expected pattern");
        return std::nullopt;
    }
  }

  bool collect_pattern_vars(const Pattern& p, const Token& where,
                            std::set<std::string>* seen) {
    if (const auto* v = std::get_if<VarPat>(&p.p)) {
      if (!seen->insert(v->name).second) {
        fail(where, "duplicate pattern variable '" + v->name + "'");
        return false;
      }
      return true;
    }
    if (const auto* t = std::get_if<TuplePat>(&p.p)) {
      for (const auto& item : t->items)
        if (!collect_pattern_vars(item, where, seen)) return false;
    }
    return true;
  }

  std::optional<Statement> parse_stmt() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kVar: {
        next();
        if (!expect(Tok::kEquals, "'='")) return std::nullopt;
        if (at(Tok::kSpawn)) {
          next();
          const Token& name = peek();
          if (!expect(Tok::kAtom, "proc name")) return std::nullopt;
          return Statement{SpawnStmt{t.text, name.text}};
        }
        if (at(Tok::kCheck)) {
          next();
          return Statement{CheckStmt{t.text}};
        }
        fail(peek(), "expected 'spawn' or 'check'");
        return std::nullopt;
      }
      case Tok::kSend: {
        next();
        auto dest = parse_expr();
        if (!dest) return std::nullopt;
        if (!expect(Tok::kComma, "','")) return std::nullopt;
        auto payload = parse_expr();
        if (!payload) return std::nullopt;
        return Statement{SendStmt{std::move(*dest), std::move(*payload)}};
      }
      case Tok::kReceive: {
        next();
        std::vector<Clause> clauses;
        if (!at(Tok::kPipe)) {
          fail(peek(), "expected '|' clause");
          return std::nullopt;
        }
        while (at(Tok::kPipe)) {
          const Token& bar = next();
          auto pat = parse_pattern();
          if (!pat) return std::nullopt;
          std::set<std::string> seen;
          if (!collect_pattern_vars(*pat, bar, &seen)) return std::nullopt;
          if (!expect(Tok::kArrow, "'->'")) return std::nullopt;
          std::vector<Statement> body;
          while (!at(Tok::kPipe) && !at(Tok::kEnd) && !at(Tok::kEof)) {
            auto st = parse_stmt();
            if (!st) return std::nullopt;
            body.push_back(std::move(*st));
          }
          clauses.push_back(Clause{std::move(*pat), std::move(body)});
        }
        if (!expect(Tok::kEnd, "'end'")) return std::nullopt;
        return Statement{ReceiveStmt{std::move(clauses)}};
      }
      case Tok::kCommit:
      case Tok::kRollback: {
        bool is_commit = t.kind == Tok::kCommit;
        next();
        if (!expect(Tok::kLParen, "'('")) return std::nullopt;
        auto arg = parse_expr();
        if (!arg) return std::nullopt;
        if (!expect(Tok::kRParen, "')'")) return std::nullopt;
        if (is_commit) return Statement{CommitStmt{std::move(*arg)}};
        return Statement{RollbackStmt{std::move(*arg)}};
      }
      case Tok::kSeq: {
        next();
        const Token& name = peek();
        if (!expect(Tok::kAtom, "label after 'seq'")) return std::nullopt;
        return Statement{SeqStmt{name.text}};
      }
      default:
        fail(t, "expected statement");
        return std::nullopt;
    }
  }
};

}  // namespace

std::uint64_t source_digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;  // FNV offset basis
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;  // FNV prime
  }
  return h;
}

ParseResult parse_program(const std::string& text) {
  auto lexed = lex(text);
  if (const auto* lf = std::get_if<LexFail>(&lexed))
    return ParseError{lf->line, lf->col, lf->msg};
  const auto& toks = std::get<std::vector<Token>>(lexed);
  Parser p{toks, 0, std::nullopt};

  Program prog;
  prog.source = text;
  prog.digest = source_digest(text);

  while (!p.at(Tok::kEof)) {
    const Token& kw = p.peek();
    if (!p.expect(Tok::kProc, "'proc'")) return *p.err;
    const Token& name = p.peek();
    if (!p.expect(Tok::kAtom, "proc name")) return *p.err;
    if (!p.expect(Tok::kColon, "':'")) return *p.err;
    std::vector<Statement> body;
    while (!p.at(Tok::kEnd) && !p.at(Tok::kEof)) {
      auto st = p.parse_stmt();
      if (!st) return *p.err;
      body.push_back(std::move(*st));
    }
    if (!p.expect(Tok::kEnd, "'end'")) return *p.err;
    if (prog.procs.count(name.text)) {
      return ParseError{name.line, name.col,
                        "duplicate proc name '" + name.text + "'"};
    }
    prog.procs.emplace(name.text, std::move(body));
    (void)kw;
  }
  if (!prog.procs.count("main")) {
    const Token& eof = toks.back();
    return ParseError{eof.line, eof.col, "missing main"};
  }
  return prog;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

EvalResult eval_expr(const Expr& e, const Env& env) {
  if (const auto* v = std::get_if<VarExpr>(&e.e)) {
    auto it = env.find(v->name);
    if (it == env.end())
      return LocalError{"unbound variable '" + v->name + "'"};
    return it->second;
  }
  if (const auto* l = std::get_if<LitExpr>(&e.e)) return l->val;
  if (const auto* t = std::get_if<TupleExpr>(&e.e)) {
    ValueList items;
    items.reserve(t->items.size());
    for (const auto& item : t->items) {
      auto r = eval_expr(item, env);
      if (const auto* err = std::get_if<LocalError>(&r)) return *err;
      items.push_back(std::get<Value>(r));
    }
    return Value::tuple(std::move(items));
  }
  return LocalError{"unfilled future evaluated"};
}

// ---------------------------------------------------------------------------
// Local stepping
// ---------------------------------------------------------------------------

LocalResult local_step(const LocalState& s, const Program& prog) {
  if (s.pending.empty()) return Stuck{};
  const Statement& head = s.pending.front();

  auto rest = [&]() {
    return std::vector<Statement>(s.pending.begin() + 1, s.pending.end());
  };

  if (const auto* x = std::get_if<SeqStmt>(&head.s)) {
    (void)x;
    return LocalStep{LocalLabel{SeqLabel{}}, LocalState{s.env, rest()}};
  }
  if (const auto* x = std::get_if<SendStmt>(&head.s)) {
    auto d = eval_expr(x->dest, s.env);
    if (const auto* err = std::get_if<LocalError>(&d)) return *err;
    const Value& dv = std::get<Value>(d);
    if (!dv.is_pid())
      return LocalError{"send destination is not a process id"};
    auto pay = eval_expr(x->payload, s.env);
    if (const auto* err = std::get_if<LocalError>(&pay)) return *err;
    return LocalStep{
        LocalLabel{SendLabel{std::get<Pid>(dv.v), std::get<Value>(pay)}},
        LocalState{s.env, rest()}};
  }
  if (std::holds_alternative<ReceiveStmt>(head.s)) return Stuck{};
  if (const auto* x = std::get_if<SpawnStmt>(&head.s)) {
    auto it = prog.procs.find(x->proc);
    if (it == prog.procs.end())
      return LocalError{"spawn of unknown proc '" + x->proc + "'"};
    LocalState child{Env{}, it->second};
    std::vector<Statement> pend = rest();
    pend.insert(pend.begin(), Statement{SlotStmt{x->target}});
    return LocalStep{LocalLabel{SpawnLabel{x->proc, std::move(child)}},
                     LocalState{s.env, std::move(pend)}};
  }
  if (const auto* x = std::get_if<CheckStmt>(&head.s)) {
    std::vector<Statement> pend = rest();
    pend.insert(pend.begin(), Statement{SlotStmt{x->target}});
    return LocalStep{LocalLabel{CheckLabel{}},
                     LocalState{s.env, std::move(pend)}};
  }
  if (const auto* x = std::get_if<CommitStmt>(&head.s)) {
    auto a = eval_expr(x->arg, s.env);
    if (const auto* err = std::get_if<LocalError>(&a)) return *err;
    const Value& av = std::get<Value>(a);
    if (!av.is_chk())
      return LocalError{"commit argument is not a checkpoint id"};
    // The call reduces to the throwaway atom ok and the sequence consumes it
    // within the same step.
    return LocalStep{LocalLabel{CommitLabel{std::get<Tau>(av.v)}},
                     LocalState{s.env, rest()}};
  }
  if (const auto* x = std::get_if<RollbackStmt>(&head.s)) {
    auto a = eval_expr(x->arg, s.env);
    if (const auto* err = std::get_if<LocalError>(&a)) return *err;
    const Value& av = std::get<Value>(a);
    if (!av.is_chk())
      return LocalError{"rollback argument is not a checkpoint id"};
    return LocalStep{LocalLabel{RollbackLabel{std::get<Tau>(av.v)}},
                     LocalState{s.env, rest()}};
  }
  // A pending future reaching local_step means an engine skipped bind_future.
  return LocalError{"unfilled future at head"};
}

// ---------------------------------------------------------------------------
// Matching
// ---------------------------------------------------------------------------

std::optional<Bindings> match(const Pattern& pat, const Value& v) {
  if (std::holds_alternative<WildcardPat>(pat.p)) return Bindings{};
  if (const auto* var = std::get_if<VarPat>(&pat.p)) {
    Bindings b;
    b.emplace(var->name, v);
    return b;
  }
  if (const auto* lit = std::get_if<LitPat>(&pat.p)) {
    if (lit->val == v) return Bindings{};
    return std::nullopt;
  }
  const auto& tp = std::get<TuplePat>(pat.p);
  const auto* items = std::get_if<ValueList>(&v.v);
  if (!items || items->size() != tp.items.size()) return std::nullopt;
  Bindings all;
  for (std::size_t k = 0; k < tp.items.size(); ++k) {
    auto sub = match(tp.items[k], (*items)[k]);
    if (!sub) return std::nullopt;
    // Pattern variables are distinct (parser-enforced), so inserts never
    // collide.
    all.insert(sub->begin(), sub->end());
  }
  return all;
}

std::optional<MatchHit> match_rec(const std::vector<Clause>& cs,
                                  const Value& v) {
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (auto b = match(cs[i].pat, v)) return MatchHit{i, std::move(*b)};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Future binding
// ---------------------------------------------------------------------------

LocalState bind_future(const LocalState& s, const Value& v) {
  if (s.pending.empty())
    throw std::logic_error("bind_future: no pending future slot");
  const auto* slot = std::get_if<SlotStmt>(&s.pending.front().s);
  if (!slot) throw std::logic_error("bind_future: no pending future slot");
  LocalState out;
  out.env = s.env;
  out.env[slot->target] = v;
  out.pending.assign(s.pending.begin() + 1, s.pending.end());
  return out;
}

LocalState bind_future(const LocalState& s, const Clause& c,
                       const Bindings& b) {
  if (s.pending.empty() ||
      !std::holds_alternative<ReceiveStmt>(s.pending.front().s))
    throw std::logic_error("bind_future: head is not a receive");
  LocalState out;
  out.env = s.env;
  for (const auto& [k, v] : b) out.env[k] = v;
  out.pending = c.body;
  out.pending.insert(out.pending.end(), s.pending.begin() + 1,
                     s.pending.end());
  return out;
}

// ---------------------------------------------------------------------------
// Scoped substitution
// ---------------------------------------------------------------------------

bool pattern_binds(const Pattern& p, const std::string& name) {
  if (const auto* v = std::get_if<VarPat>(&p.p)) return v->name == name;
  if (const auto* t = std::get_if<TuplePat>(&p.p)) {
    for (const auto& item : t->items)
      if (pattern_binds(item, name)) return true;
  }
  return false;
}

namespace {

Expr subst_expr(const Expr& e, const std::string& name, const Value& v) {
  if (const auto* var = std::get_if<VarExpr>(&e.e)) {
    if (var->name == name) return Expr{LitExpr{v}};
    return e;
  }
  if (const auto* t = std::get_if<TupleExpr>(&e.e)) {
    TupleExpr out;
    out.items.reserve(t->items.size());
    for (const auto& item : t->items)
      out.items.push_back(subst_expr(item, name, v));
    return Expr{std::move(out)};
  }
  return e;
}

bool expr_reads(const Expr& e, const std::string& name) {
  if (const auto* var = std::get_if<VarExpr>(&e.e)) return var->name == name;
  if (const auto* t = std::get_if<TupleExpr>(&e.e)) {
    for (const auto& item : t->items)
      if (expr_reads(item, name)) return true;
  }
  return false;
}

}  // namespace

std::vector<Statement> subst_var(const std::vector<Statement>& stmts,
                                 const std::string& name, const Value& v) {
  std::vector<Statement> out;
  out.reserve(stmts.size());
  for (std::size_t i = 0; i < stmts.size(); ++i) {
    const Statement& st = stmts[i];
    bool stop = false;
    if (const auto* x = std::get_if<SpawnStmt>(&st.s)) {
      out.push_back(st);
      stop = x->target == name;
    } else if (const auto* x = std::get_if<SendStmt>(&st.s)) {
      out.push_back(Statement{SendStmt{subst_expr(x->dest, name, v),
                                       subst_expr(x->payload, name, v)}});
    } else if (const auto* x = std::get_if<ReceiveStmt>(&st.s)) {
      ReceiveStmt rec;
      bool any_rebinds = false;
      for (const auto& c : x->clauses) {
        if (pattern_binds(c.pat, name)) {
          any_rebinds = true;
          rec.clauses.push_back(c);
        } else {
          rec.clauses.push_back(Clause{c.pat, subst_var(c.body, name, v)});
        }
      }
      out.push_back(Statement{std::move(rec)});
      // After a receive where some clause rebinds the name, which binding a
      // trailing occurrence sees depends on the clause taken; leave it alone.
      stop = any_rebinds;
    } else if (const auto* x = std::get_if<CheckStmt>(&st.s)) {
      out.push_back(st);
      stop = x->target == name;
    } else if (const auto* x = std::get_if<CommitStmt>(&st.s)) {
      out.push_back(Statement{CommitStmt{subst_expr(x->arg, name, v)}});
    } else if (const auto* x = std::get_if<RollbackStmt>(&st.s)) {
      out.push_back(Statement{RollbackStmt{subst_expr(x->arg, name, v)}});
    } else if (std::holds_alternative<SeqStmt>(st.s)) {
      out.push_back(st);
    } else {
      const auto& slot = std::get<SlotStmt>(st.s);
      out.push_back(st);
      stop = slot.target == name;
    }
    if (stop) {
      out.insert(out.end(), stmts.begin() + i + 1, stmts.end());
      return out;
    }
  }
  return out;
}

bool occurs_free(const std::vector<Statement>& stmts,
                 const std::string& name) {
  for (const Statement& st : stmts) {
    if (const auto* x = std::get_if<SpawnStmt>(&st.s)) {
      if (x->target == name) return false;
    } else if (const auto* x = std::get_if<SendStmt>(&st.s)) {
      if (expr_reads(x->dest, name) || expr_reads(x->payload, name))
        return true;
    } else if (const auto* x = std::get_if<ReceiveStmt>(&st.s)) {
      bool all_rebind = !x->clauses.empty();
      for (const auto& c : x->clauses) {
        if (pattern_binds(c.pat, name)) continue;
        all_rebind = false;
        if (occurs_free(c.body, name)) return true;
      }
      // If every clause rebinds, nothing after the receive can see the old
      // binding. If only some do, a trailing occurrence may still read it;
      // keep scanning conservatively.
      if (all_rebind) return false;
    } else if (const auto* x = std::get_if<CheckStmt>(&st.s)) {
      if (x->target == name) return false;
    } else if (const auto* x = std::get_if<CommitStmt>(&st.s)) {
      if (expr_reads(x->arg, name)) return true;
    } else if (const auto* x = std::get_if<RollbackStmt>(&st.s)) {
      if (expr_reads(x->arg, name)) return true;
    } else if (std::holds_alternative<SeqStmt>(st.s)) {
      continue;
    } else if (std::get_if<SlotStmt>(&st.s)) {
      if (std::get<SlotStmt>(st.s).target == name) return false;
    }
  }
  return false;
}

}  // namespace reverb
