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
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mqka/errors.hpp"
#include "mqka/rng.hpp"

namespace mqka {

/// Fixed-length bitstring. Bit 0 is the leftmost character of the textual form.
class Key {
 public:
  Key() = default;

  static Key zeros(std::size_t length) { return Key(length); }

  static Key ones(std::size_t length) {
    Key k(length);
    for (std::size_t i = 0; i < length; ++i) k.set(i, true);
    return k;
  }

  static Key random(std::size_t length, Rng& rng) {
    Key k(length);
    for (std::size_t i = 0; i < length; ++i) k.set(i, rng.bit());
    return k;
  }

  /// Parses a string of '0'/'1' characters.
  static Key from_bits(std::string_view bits) {
    if (bits.empty()) throw StructuralError("key must have at least one bit");
    Key k(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] != '0' && bits[i] != '1') throw StructuralError("invalid binary digit in key");
      k.set(i, bits[i] == '1');
    }
    return k;
  }

  /// Parses lowercase/uppercase hex (4 bits per digit) or a "0b"-prefixed binary string.
  static Key parse(std::string_view text) {
    if (text.starts_with("0b")) return from_bits(text.substr(2));
    if (text.starts_with("0x")) text.remove_prefix(2);
    if (text.empty()) throw StructuralError("empty key");
    Key k(text.size() * 4);
    for (std::size_t i = 0; i < text.size(); ++i) {
      int v = hex_value(text[i]);
      if (v < 0) throw StructuralError("invalid hex digit in key: " + std::string(text));
      for (int b = 0; b < 4; ++b) k.set(i * 4 + b, (v >> (3 - b)) & 1);
    }
    return k;
  }

  std::size_t size() const { return length_; }

  bool bit(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }

  void set(std::size_t i, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (value) {
      words_[i / 64] |= mask;
    } else {
      words_[i / 64] &= ~mask;
    }
  }

  bool is_zero() const {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  std::size_t popcount() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
    return n;
  }

  Key& operator^=(const Key& other) {
    require_same_length(*this, other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
  }

  friend Key operator^(Key a, const Key& b) { return a ^= b; }

  friend bool operator==(const Key&, const Key&) = default;

  std::string to_bits() const {
    std::string s(length_, '0');
    for (std::size_t i = 0; i < length_; ++i) {
      if (bit(i)) s[i] = '1';
    }
    return s;
  }

  /// Lowercase hex when the length is a multiple of 4, otherwise "0b..." binary.
  std::string to_string() const {
    if (length_ % 4 != 0) return "0b" + to_bits();
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string s(length_ / 4, '0');
    for (std::size_t i = 0; i < s.size(); ++i) {
      int v = 0;
      for (int b = 0; b < 4; ++b) v = (v << 1) | (bit(i * 4 + b) ? 1 : 0);
      s[i] = kDigits[v];
    }
    return s;
  }

  static void require_same_length(const Key& a, const Key& b) {
    if (a.size() != b.size()) {
      throw StructuralError("key length mismatch: " + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
    }
  }

 private:
  explicit Key(std::size_t length) : length_(length), words_((length + 63) / 64, 0) {}

  static int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  }

  std::size_t length_ = 0;
  std::vector<std::uint64_t> words_;
};

/// XOR of every key in the list. The list must be non-empty and uniform in length.
inline Key xor_fold(std::span<const Key> keys) {
  if (keys.empty()) throw StructuralError("xor_fold of an empty key list");
  Key acc = keys.front();
  for (std::size_t i = 1; i < keys.size(); ++i) acc ^= keys[i];
  return acc;
}

inline Key xor_fold(std::initializer_list<Key> keys) {
  return xor_fold(std::span<const Key>(keys.begin(), keys.size()));
}

/// The key a colluder encodes in place of its own so that the XOR of all
/// contributions becomes `expected` instead of `final_key`.
inline Key forged_key(const Key& own, const Key& expected, const Key& final_key) {
  Key::require_same_length(own, expected);
  Key::require_same_length(own, final_key);
  return own ^ expected ^ final_key;
}

}  // namespace mqka
