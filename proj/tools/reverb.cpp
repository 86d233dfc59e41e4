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

// Command line front end. Talks to the engines exclusively through the C
// API in reverb.h; exit codes are the rv_status values.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "reverb.h"

namespace {

bool slurp(const std::string& path, std::string* out, std::string* err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    *err = "cannot read " + path;
    return false;
  }
  std::ostringstream os;
  os << in.rdbuf();
  *out = os.str();
  return true;
}

// Empty path means stdout.
bool emit(const std::string& path, const char* text, std::string* err) {
  if (path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    *err = "cannot write " + path;
    return false;
  }
  return true;
}

int report(rv_status st, rv_result* res, const std::string& out_path) {
  std::string err;
  if (st == RV_USAGE) {
    std::cerr << "reverb: " << rv_result_error(res) << "\n";
  } else if (!emit(out_path, rv_result_text(res), &err)) {
    std::cerr << "reverb: " << err << "\n";
    st = RV_USAGE;
  }
  rv_result_free(res);
  return static_cast<int>(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"message-passing programs with checkpoint, commit and "
               "rollback: run, explore, verify"};
  app.set_version_flag("--version", rv_version());
  app.require_subcommand(1);

  std::string file;
  std::string semantics = "rollback";
  std::string policy = "default";
  std::uint64_t seed = 0;
  std::size_t max_steps = 10000;
  std::string mode = "faithful";
  bool snapshots = false;
  std::string out_path;

  CLI::App* run_cmd = app.add_subcommand("run", "step a program to a "
                                                "terminal and record a trace");
  run_cmd->add_option("FILE", file, "program source")->required();
  run_cmd->add_option("--semantics", semantics,
                      "standard, rollback or reversible");
  run_cmd->add_option("--policy", policy, "default, random or script:PATH");
  run_cmd->add_option("--seed", seed, "seed for the random policy");
  run_cmd->add_option("--max-steps", max_steps, "step bound");
  run_cmd->add_option("--mode", mode, "faithful or handler")
      ->check(CLI::IsMember({"faithful", "handler"}));
  run_cmd->add_flag("--snapshots", snapshots, "embed per-step snapshots");
  run_cmd->add_option("--out", out_path, "trace file (default stdout)");

  std::size_t depth = 0;
  std::string checks;
  std::string report_path;

  CLI::App* explore_cmd =
      app.add_subcommand("explore", "enumerate every schedule to a depth");
  explore_cmd->add_option("FILE", file, "program source")->required();
  explore_cmd->add_option("--semantics", semantics,
                          "standard, rollback or reversible");
  explore_cmd->add_option("--depth", depth, "exploration depth")->required();
  explore_cmd->add_option(
      "--check", checks,
      "comma-separated: wellformed,conservative,soundness,lemma");
  explore_cmd->add_option("--report", report_path,
                          "report file (default stdout)");

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "replay a trace and re-check it");
  verify_cmd->add_option("TRACE", file, "trace file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(RV_USAGE);
  }

  std::string text;
  std::string err;
  if (!slurp(file, &text, &err)) {
    std::cerr << "reverb: " << err << "\n";
    return static_cast<int>(RV_USAGE);
  }

  if (run_cmd->parsed()) {
    rv_run_opts opts{};
    opts.semantics = semantics.c_str();
    opts.policy = policy.c_str();
    opts.seed = seed;
    opts.max_steps = max_steps;
    opts.handler = mode == "handler" ? 1 : 0;
    opts.snapshots = snapshots ? 1 : 0;
    rv_result* res = nullptr;
    rv_status st = rv_run(text.c_str(), &opts, &res);
    return report(st, res, out_path);
  }

  if (explore_cmd->parsed()) {
    rv_explore_opts opts{};
    opts.semantics = semantics.c_str();
    opts.depth = depth;
    opts.checks = checks.c_str();
    rv_result* res = nullptr;
    rv_status st = rv_explore(text.c_str(), &opts, &res);
    return report(st, res, report_path);
  }

  rv_result* res = nullptr;
  rv_status st = rv_verify(text.c_str(), &res);
  return report(st, res, "");
}
