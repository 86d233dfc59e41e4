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

#ifndef REVERB_IDS_HPP_
#define REVERB_IDS_HPP_

#include <compare>
#include <cstdint>
#include <set>
#include <string>

namespace reverb {

/**
 * Identifiers minted by the engines. Each kind counts up from 1 inside a
 * system snapshot, so replaying the same schedule reproduces the same ids.
 */
struct Pid {
  std::uint32_t n{0};
  auto operator<=>(const Pid&) const = default;
};

// Checkpoint identifier (the tau of a check call).
struct Tau {
  std::uint32_t n{0};
  auto operator<=>(const Tau&) const = default;
};

// Message tag; unique per sent message while it is in flight or on record.
struct Tag {
  std::uint32_t n{0};
  auto operator<=>(const Tag&) const = default;
};

using PidSet = std::set<Pid>;
using TauSet = std::set<Tau>;

inline std::string to_string(Pid p) { return "p" + std::to_string(p.n); }
inline std::string to_string(Tau t) { return "tau" + std::to_string(t.n); }
inline std::string to_string(Tag l) { return "l" + std::to_string(l.n); }

inline std::string to_string(const TauSet& ts) {
  std::string out = "{";
  bool first = true;
  for (Tau t : ts) {
    if (!first) out += ",";
    out += to_string(t);
    first = false;
  }
  return out + "}";
}

inline std::string to_string(const PidSet& ps) {
  std::string out = "{";
  bool first = true;
  for (Pid p : ps) {
    if (!first) out += ",";
    out += to_string(p);
    first = false;
  }
  return out + "}";
}

}  // namespace reverb

#endif  // REVERB_IDS_HPP_
