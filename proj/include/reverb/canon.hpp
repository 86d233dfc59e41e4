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

#ifndef REVERB_CANON_HPP_
#define REVERB_CANON_HPP_

#include <string>

#include "reverb/reversible.hpp"
#include "reverb/rollback.hpp"
#include "reverb/standard.hpp"

namespace reverb {

/**
 * Canonical serialization: process, checkpoint and message identifiers are
 * renamed to 1,2,3,... by first occurrence in a fixed traversal (processes
 * in pid order with their histories oldest first, then messages), and the
 * fresh-id counters are dropped. Two systems that differ only in which
 * concrete ids a run happened to mint serialize equally, which is what the
 * exploration dedup and the undo/redo round-trip checks compare.
 */
std::string canon_std(const StdSystem& sys);
std::string canon_rev(const RevSystem& sys);
std::string canon_rb(const RbSystem& sys);

}  // namespace reverb

#endif  // REVERB_CANON_HPP_
