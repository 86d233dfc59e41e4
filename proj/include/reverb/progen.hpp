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

#ifndef REVERB_PROGEN_HPP_
#define REVERB_PROGEN_HPP_

#include <cstdint>
#include <string>

namespace reverb {

struct GenLimits {
  std::size_t max_procs{3};  // including main
  std::size_t max_stmts{8};  // statements per process, clause bodies included
};

/**
 * Deterministic random program source within the limits. Generated programs
 * follow the conventions that keep runs well defined and fault free:
 * commit/rollback only on checkpoint variables the process minted itself,
 * at most one of the two per checkpoint, always after its check; send
 * targets are variables that can only hold pids (spawn bindings, or
 * variables bound by a {atom, Var} pattern, which only ever matches the
 * {atom, pid} tuples the generator emits). Receives that never match simply
 * deadlock, which is a legitimate terminal. The atom "ok" is never used.
 */
std::string gen_program(std::uint64_t seed, const GenLimits& lim = {});

}  // namespace reverb

#endif  // REVERB_PROGEN_HPP_
