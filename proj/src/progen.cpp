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

#include "reverb/progen.hpp"

#include <random>
#include <sstream>
#include <vector>

namespace reverb {

namespace {

// Shared atom vocabulary; "ok" is reserved by the instrumentation-erasing
// projections and must never appear in source programs.
const char* kAtoms[] = {"a", "b", "c", "go", "ping", "stop"};
constexpr std::size_t kAtomCount = 6;

// Same driver the random scheduler uses: raw modulo on mt19937_64 output,
// identical on every platform.
struct Dice {
  std::mt19937_64 gen;
  explicit Dice(std::uint64_t seed) : gen(seed) {}
  std::size_t pick(std::size_t n) {
    return static_cast<std::size_t>(gen() % n);
  }
  const char* atom() { return kAtoms[pick(kAtomCount)]; }
  bool chance(std::size_t percent) { return pick(100) < percent; }
};

struct ProcState {
  std::vector<std::string> pid_vars;
  std::vector<std::string> open_checks;
  std::size_t next_check{1};
  std::size_t next_pat{1};
};

void emit_send(std::ostringstream& os, const std::string& indent, Dice& d,
               const std::vector<std::string>& pid_vars) {
  const std::string& target = pid_vars[d.pick(pid_vars.size())];
  os << indent << "send " << target << ", ";
  if (d.chance(40)) {
    const std::string& carried = pid_vars[d.pick(pid_vars.size())];
    os << "{" << d.atom() << ", " << carried << "}";
  } else {
    os << d.atom();
  }
  os << "\n";
}

// Emits one receive statement. Clause-body statements are drawn against
// `allowance`; returns how many were actually spent.
std::size_t emit_receive(std::ostringstream& os, Dice& d, ProcState& ps,
                         std::size_t allowance) {
  std::size_t n_clauses = 1 + d.pick(2);
  std::size_t spent = 0;
  os << "  receive\n";
  std::string bound_var;
  for (std::size_t ci = 0; ci < n_clauses; ++ci) {
    std::string var;
    os << "    |";
    if (d.chance(50)) {
      var = "X" + std::to_string(ps.next_pat++);
      os << "{" << d.atom() << ", " << var << "}";
    } else {
      os << d.atom();
    }
    os << " ->";
    // Clause-local scope: the pattern variable, if any, is a pid.
    std::vector<std::string> scope = ps.pid_vars;
    if (!var.empty()) scope.push_back(var);
    std::size_t body_len = d.pick(3);
    if (body_len > allowance - spent) body_len = allowance - spent;
    spent += body_len;
    if (body_len == 0) os << "\n";
    for (std::size_t bi = 0; bi < body_len; ++bi) {
      if (bi == 0) os << " ";
      if (!scope.empty() && d.chance(60)) {
        std::string inner_indent = bi == 0 ? "" : "      ";
        emit_send(os, inner_indent, d, scope);
      } else {
        os << (bi == 0 ? "" : "      ") << "seq " << d.atom() << "\n";
      }
    }
    if (ci == 0 && n_clauses == 1) bound_var = var;
  }
  os << "  end\n";
  // Only a single-clause tuple pattern guarantees the variable is bound
  // once the receive completes; with alternatives the other clause may have
  // fired and left it undefined.
  if (!bound_var.empty()) ps.pid_vars.push_back(bound_var);
  return spent;
}

void emit_body(std::ostringstream& os, Dice& d, std::size_t budget,
               std::size_t hard_cap, std::size_t n_spawns, bool multi_proc) {
  ProcState ps;
  std::size_t used = 0;
  for (std::size_t i = 0; i < n_spawns && used < budget; ++i, ++used) {
    std::string var = "P" + std::to_string(i + 1);
    os << "  " << var << " = spawn w" << (i + 1) << "\n";
    ps.pid_vars.push_back(var);
  }
  while (used < budget) {
    ++used;
    std::size_t roll = d.pick(100);
    if (roll < 55 && roll >= 30 && !ps.pid_vars.empty()) {
      emit_send(os, "  ", d, ps.pid_vars);
    } else if (roll >= 55 && roll < 75 && multi_proc) {
      used += emit_receive(os, d, ps, budget - used);
    } else if (roll >= 75 && roll < 90) {
      std::string var = "T" + std::to_string(ps.next_check++);
      os << "  " << var << " = check\n";
      ps.open_checks.push_back(var);
    } else if (roll >= 90 && !ps.open_checks.empty()) {
      std::string var = ps.open_checks.back();
      ps.open_checks.pop_back();
      os << "  " << (d.chance(60) ? "commit" : "rollback") << "(" << var
         << ")\n";
    } else {
      os << "  seq " << d.atom() << "\n";
    }
  }
  // Settle some of the still-open checkpoints so commits are not rare,
  // without busting the statement limit.
  while (!ps.open_checks.empty() && used < hard_cap && d.chance(50)) {
    ++used;
    std::string var = ps.open_checks.back();
    ps.open_checks.pop_back();
    os << "  " << (d.chance(60) ? "commit" : "rollback") << "(" << var
       << ")\n";
  }
}

}  // namespace

std::string gen_program(std::uint64_t seed, const GenLimits& lim) {
  Dice d(seed);
  std::size_t max_procs = lim.max_procs == 0 ? 1 : lim.max_procs;
  std::size_t max_stmts = lim.max_stmts == 0 ? 1 : lim.max_stmts;
  std::size_t n_procs = 1 + d.pick(max_procs);

  std::ostringstream os;
  os << "# generated: seed " << seed << "\n";
  for (std::size_t p = 0; p < n_procs; ++p) {
    os << "proc " << (p == 0 ? "main" : "w" + std::to_string(p)) << ":\n";
    std::size_t budget = 1 + d.pick(max_stmts);
    std::size_t spawns = p == 0 ? n_procs - 1 : 0;
    if (budget < spawns) budget = spawns;
    std::size_t cap = max_stmts < budget ? budget : max_stmts;
    emit_body(os, d, budget, cap, spawns, n_procs > 1);
    os << "end\n";
  }
  return os.str();
}

}  // namespace reverb
