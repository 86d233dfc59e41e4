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

#include "reverb/sched.hpp"

#include <algorithm>
#include <random>
#include <utility>

namespace reverb {

namespace {

class PriorityDefault final : public Scheduler {
 public:
  Picked pick(const std::vector<Choice>& enabled) override {
    // enabled arrives sorted by (pid, rule, aux).
    const Choice* best_back = nullptr;
    const Choice* best_delay = nullptr;
    for (const auto& c : enabled) {
      if (rule_is_backward(c.rule)) {
        if (best_back == nullptr) best_back = &c;
      } else if (c.rule == Rule::kDelay) {
        if (best_delay == nullptr) best_delay = &c;
      }
    }
    if (best_back != nullptr) return Picked{PickStatus::kOk, *best_back, {}};
    if (best_delay != nullptr) return Picked{PickStatus::kOk, *best_delay, {}};

    // Forward: lowest pid strictly after the cursor, wrapping around.
    const Choice* wrap = nullptr;   // lowest-pid forward choice overall
    const Choice* ahead = nullptr;  // lowest-pid forward choice past cursor
    for (const auto& c : enabled) {
      if (rule_is_backward(c.rule) || c.rule == Rule::kDelay) continue;
      if (wrap == nullptr) wrap = &c;
      if (c.pid.n > last_ && ahead == nullptr) ahead = &c;
    }
    const Choice* take = ahead != nullptr ? ahead : wrap;
    last_ = take->pid.n;
    return Picked{PickStatus::kOk, *take, {}};
  }

  std::string describe() const override { return "default"; }

 private:
  std::uint32_t last_{0};
};

class SeededRandom final : public Scheduler {
 public:
  explicit SeededRandom(std::uint64_t seed) : gen_(seed), seed_(seed) {}

  Picked pick(const std::vector<Choice>& enabled) override {
    std::size_t i =
        static_cast<std::size_t>(gen_() % enabled.size());
    return Picked{PickStatus::kOk, enabled[i], {}};
  }

  std::string describe() const override {
    return "random:" + std::to_string(seed_);
  }

 private:
  std::mt19937_64 gen_;
  std::uint64_t seed_;
};

class Scripted final : public Scheduler {
 public:
  explicit Scripted(std::vector<std::string> keys) : keys_(std::move(keys)) {}

  Picked pick(const std::vector<Choice>& enabled) override {
    if (next_ == keys_.size())
      return Picked{PickStatus::kExhausted, Choice{}, {}};
    const std::string& key = keys_[next_];
    auto it = std::find_if(enabled.begin(), enabled.end(),
                           [&](const Choice& c) { return c.key() == key; });
    if (it == enabled.end())
      return Picked{PickStatus::kMismatch, Choice{}, key};
    ++next_;
    return Picked{PickStatus::kOk, *it, {}};
  }

  std::string describe() const override { return "script"; }

 private:
  std::vector<std::string> keys_;
  std::size_t next_{0};
};

}  // namespace

std::unique_ptr<Scheduler> make_priority_default() {
  return std::make_unique<PriorityDefault>();
}

std::unique_ptr<Scheduler> make_seeded_random(std::uint64_t seed) {
  return std::make_unique<SeededRandom>(seed);
}

std::unique_ptr<Scheduler> make_scripted(std::vector<std::string> keys) {
  return std::make_unique<Scripted>(std::move(keys));
}

}  // namespace reverb
