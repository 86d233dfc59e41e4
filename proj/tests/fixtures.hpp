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

#ifndef REVERB_TESTS_FIXTURES_HPP_
#define REVERB_TESTS_FIXTURES_HPP_

#include <stdexcept>
#include <string>

#include "reverb/lang.hpp"

namespace reverb::fixtures {

// Three processes relaying atoms. p1 drives v1/v3/v5 into p2; p2 forwards
// v2/v6 to p3; p3 answers v4/v7. The first tuple messages carry pids so the
// children learn who to answer.
inline const char* kRelay = R"(# relay pipeline, no checkpoint operators
proc main:
  P2 = spawn p2body
  send P2, {v1, P2}
  send P2, v3
  send P2, v5
end
proc p2body:
  P3 = spawn p3body
  receive |{v1, Me} -> end
  send P3, {v2, Me}
  receive |v3 -> end
  receive |v4 -> end
  receive |v5 -> end
  send P3, v6
  receive |v7 -> end
end
proc p3body:
  receive |{v2, Peer} -> end
  send Peer, v4
  receive |v6 -> end
  send Peer, v7
end
)";

// Same pipeline, with p1 checkpointing twice, committing the second
// checkpoint and rolling back to the first.
inline const char* kRelayRollback = R"(# relay pipeline, commit newer, roll back older
proc main:
  P2 = spawn p2body
  send P2, {v1, P2}
  T1 = check
  send P2, v3
  T2 = check
  send P2, v5
  commit(T2)
  rollback(T1)
end
proc p2body:
  P3 = spawn p3body
  receive |{v1, Me} -> end
  send P3, {v2, Me}
  receive |v3 -> end
  receive |v4 -> end
  receive |v5 -> end
  send P3, v6
  receive |v7 -> end
end
proc p3body:
  receive |{v2, Peer} -> end
  send Peer, v4
  receive |v6 -> end
  send Peer, v7
end
)";

// Commit/rollback arguments swapped: the commit of the older checkpoint must
// be delayed while the newer one is still active.
inline const char* kRelayDelayed = R"(# relay pipeline, commit older (delayed), roll back newer
proc main:
  P2 = spawn p2body
  send P2, {v1, P2}
  T1 = check
  send P2, v3
  T2 = check
  send P2, v5
  commit(T1)
  rollback(T2)
end
proc p2body:
  P3 = spawn p3body
  receive |{v1, Me} -> end
  send P3, {v2, Me}
  receive |v3 -> end
  receive |v4 -> end
  receive |v5 -> end
  send P3, v6
  receive |v7 -> end
end
proc p3body:
  receive |{v2, Peer} -> end
  send Peer, v4
  receive |v6 -> end
  send Peer, v7
end
)";

inline Program parse_or_die(const std::string& src) {
  auto r = parse_program(src);
  if (const auto* err = std::get_if<ParseError>(&r)) {
    throw std::runtime_error("fixture parse failed at " +
                             std::to_string(err->line) + ":" +
                             std::to_string(err->col) + ": " + err->msg);
  }
  return std::get<Program>(r);
}

}  // namespace reverb::fixtures

#endif  // REVERB_TESTS_FIXTURES_HPP_
