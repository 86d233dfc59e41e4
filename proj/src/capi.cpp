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

#include "reverb.h"

#include <sstream>
#include <string>
#include <variant>

#include "reverb/explore.hpp"
#include "reverb/trace.hpp"

struct rv_result {
  std::string text;
  std::string error;
  std::string status;
};

namespace {

using namespace reverb;

rv_status finish(rv_result** out, rv_result r, rv_status st) {
  if (out != nullptr) *out = new rv_result(std::move(r));
  return st;
}

rv_status usage(rv_result** out, std::string msg) {
  rv_result r;
  r.error = std::move(msg);
  return finish(out, std::move(r), RV_USAGE);
}

std::optional<Semantics> pick_semantics(const char* s) {
  if (s == nullptr || *s == '\0') return Semantics::kRollback;
  return semantics_from(s);
}

std::vector<std::string> split_checks(const char* s) {
  std::vector<std::string> out;
  if (s == nullptr) return out;
  std::string cur;
  for (const char* p = s;; ++p) {
    if (*p == ',' || *p == '\0') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
      if (*p == '\0') break;
    } else if (*p != ' ') {
      cur += *p;
    }
  }
  return out;
}

}  // namespace

extern "C" {

rv_status rv_run(const char* program_text, const rv_run_opts* opts,
                 rv_result** out) {
  if (program_text == nullptr) return usage(out, "no program text");
  try {
    RunRequest req;
    req.program_text = program_text;
    if (opts != nullptr) {
      auto sem = pick_semantics(opts->semantics);
      if (!sem.has_value())
        return usage(out, std::string("unknown semantics: ") +
                              opts->semantics);
      req.semantics = *sem;
      if (opts->policy != nullptr && *opts->policy != '\0')
        req.policy = opts->policy;
      req.seed = opts->seed;
      if (opts->max_steps != 0) req.max_steps = opts->max_steps;
      req.handler = opts->handler != 0;
      req.snapshots = opts->snapshots != 0;
    }
    auto r = run(req);
    if (const auto* e = std::get_if<RunError>(&r)) return usage(out, e->msg);
    const Trace& t = std::get<Trace>(r);
    rv_result res;
    res.text = serialize(t);
    res.status = t.status;
    return finish(out, std::move(res),
                  t.status == "runtime-fault" ? RV_FAULT : RV_OK);
  } catch (const std::exception& e) {
    return finish(out, rv_result{"", e.what(), ""}, RV_FAULT);
  }
}

rv_status rv_explore(const char* program_text, const rv_explore_opts* opts,
                     rv_result** out) {
  if (program_text == nullptr) return usage(out, "no program text");
  try {
    ExploreRequest req;
    req.program_text = program_text;
    if (opts != nullptr) {
      auto sem = pick_semantics(opts->semantics);
      if (!sem.has_value())
        return usage(out, std::string("unknown semantics: ") +
                              opts->semantics);
      req.semantics = *sem;
      req.depth = opts->depth;
      req.checks = split_checks(opts->checks);
    }
    auto r = explore(req);
    if (const auto* e = std::get_if<RunError>(&r)) return usage(out, e->msg);
    const ExploreReport& rep = std::get<ExploreReport>(r);
    std::size_t bad = 0;
    for (const auto& [check, count] : rep.violations) bad += count;
    rv_result res;
    res.text = report_text(rep);
    return finish(out, std::move(res), bad == 0 ? RV_OK : RV_VIOLATION);
  } catch (const std::exception& e) {
    return finish(out, rv_result{"", e.what(), ""}, RV_FAULT);
  }
}

rv_status rv_verify(const char* trace_text, rv_result** out) {
  if (trace_text == nullptr) return usage(out, "no trace text");
  try {
    auto parsed = parse_trace(trace_text);
    if (const auto* fe = std::get_if<TraceFormatError>(&parsed))
      return usage(out, "trace line " + std::to_string(fe->line) + ": " +
                            fe->msg);
    Verdict v = verify(std::get<Trace>(parsed));
    rv_result res;
    if (v.pass) {
      res.text = "ok\n";
      return finish(out, std::move(res), RV_OK);
    }
    std::ostringstream os;
    for (const auto& viol : v.violations)
      os << viol.index << "\t" << viol.rule << "\t" << viol.what << "\n";
    res.text = os.str();
    return finish(out, std::move(res), RV_VIOLATION);
  } catch (const std::exception& e) {
    return finish(out, rv_result{"", e.what(), ""}, RV_FAULT);
  }
}

const char* rv_result_text(const rv_result* r) {
  return r == nullptr ? "" : r->text.c_str();
}

const char* rv_result_error(const rv_result* r) {
  return r == nullptr ? "" : r->error.c_str();
}

const char* rv_result_status(const rv_result* r) {
  return r == nullptr ? "" : r->status.c_str();
}

void rv_result_free(rv_result* r) { delete r; }

const char* rv_version(void) { return "0.1.0"; }

}  // extern "C"
