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

#ifndef REVERB_SRC_ENGINE_OPS_HPP_
#define REVERB_SRC_ENGINE_OPS_HPP_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "reverb/canon.hpp"
#include "reverb/reversible.hpp"
#include "reverb/rollback.hpp"
#include "reverb/standard.hpp"

// Uniform face over the three engines so the harness loops (run, replay,
// explore) can be written once. Internal to the library.

namespace reverb {

struct StdOps {
  using Sys = StdSystem;
  static Sys init(std::shared_ptr<const Program> p, bool) {
    return std_init(std::move(p));
  }
  static std::vector<Choice> enabled(const Sys& s) { return std_enabled(s); }
  static std::vector<Fault> faults(const Sys& s) { return std_faults(s); }
  static auto step(const Sys& s, const Choice& c) { return std_step(s, c); }
  static std::string terminal(const Sys& s) { return std_terminal(s); }
  static std::string str(const Sys& s) { return std_system_str(s, true); }
  static std::string canon(const Sys& s) { return canon_std(s); }
};

struct RbOps {
  using Sys = RbSystem;
  static Sys init(std::shared_ptr<const Program> p, bool handler) {
    return rb_init(std::move(p), handler);
  }
  static std::vector<Choice> enabled(const Sys& s) { return rb_enabled(s); }
  static std::vector<Fault> faults(const Sys& s) { return rb_faults(s); }
  static auto step(const Sys& s, const Choice& c) { return rb_step(s, c); }
  static std::string terminal(const Sys& s) { return rb_terminal(s); }
  static std::string str(const Sys& s) { return rb_system_str(s, true); }
  static std::string canon(const Sys& s) { return canon_rb(s); }
};

struct RevOps {
  using Sys = RevSystem;
  static Sys init(std::shared_ptr<const Program> p, bool) {
    return rev_init(std::move(p));
  }
  static std::vector<Choice> enabled(const Sys& s) { return rev_enabled(s); }
  static std::vector<Fault> faults(const Sys& s) { return rev_faults(s); }
  static auto step(const Sys& s, const Choice& c) { return rev_step(s, c); }
  static std::string terminal(const Sys& s) { return rev_terminal(s); }
  static std::string str(const Sys& s) { return rev_system_str(s, true); }
  static std::string canon(const Sys& s) { return canon_rev(s); }
};

inline std::string fault_line(const Fault& f) {
  return to_string(f.pid) + ": " + f.msg;
}

}  // namespace reverb

#endif  // REVERB_SRC_ENGINE_OPS_HPP_
