// Copyright 2026 The mqka Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mqka/key.hpp"

namespace mqka {

// What a coalition knows about honest keys: a set of linear facts
// "XOR of the keys selected by `mask` equals `value`", kept in reduced form
// so any XOR combination can be queried. Participant ids index mask bits.
class XorKnowledge {
 public:
  explicit XorKnowledge(std::size_t key_length) : key_length_(key_length) {}

  void add(std::uint64_t mask, Key value) {
    reduce(mask, value);
    if (mask == 0) return;
    rows_.push_back({mask, std::move(value)});
  }

  std::optional<Key> solve(std::uint64_t target) const {
    Key value = Key::zeros(key_length_);
    reduce(target, value);
    if (target != 0) return std::nullopt;
    return value;
  }

  bool determines(std::uint64_t target) const { return solve(target).has_value(); }

 private:
  struct Row {
    std::uint64_t mask;
    Key value;
  };

  void reduce(std::uint64_t& mask, Key& value) const {
    for (const auto& r : rows_) {
      const std::uint64_t pivot = r.mask & (~r.mask + 1);
      if (mask & pivot) {
        mask ^= r.mask;
        value ^= r.value;
      }
    }
  }

  std::size_t key_length_;
  std::vector<Row> rows_;
};

inline std::uint64_t participant_bit(int p) { return std::uint64_t{1} << p; }

}  // namespace mqka
