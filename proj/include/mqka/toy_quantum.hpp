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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "mqka/errors.hpp"
#include "mqka/key.hpp"
#include "mqka/rng.hpp"

// Symbolic two-register model of an entangled sequence. No amplitudes are
// tracked: the pair keeps a ledger of the bit flips applied to its data
// particles, and BB84 decoys record whether a flip landed on them.

namespace mqka {

enum class Basis { Z, X };

struct DecoyState {
  Basis basis = Basis::Z;
  bool eigenvalue = false;
  ParticipantId preparer = 0;
  // Parity of bit flips applied to this particle since preparation.
  bool flipped = false;
  std::vector<ParticipantId> known_to;

  bool known_by(ParticipantId p) const {
    return std::find(known_to.begin(), known_to.end(), p) != known_to.end();
  }

  // Outcome of measuring in the preparation basis. A bit flip is an X
  // operator: it toggles Z eigenstates and leaves X eigenstates alone.
  bool measure() const { return basis == Basis::Z ? (eigenvalue != flipped) : eigenvalue; }

  bool disturbed() const { return measure() != eigenvalue; }
};

struct DetectionResult {
  std::size_t checked = 0;
  std::size_t failed = 0;

  bool passed() const { return failed == 0; }
};

class SequencePair {
 public:
  struct Particle {
    // Data particles carry their data index; decoys carry their state.
    std::size_t data_index = 0;
    std::optional<DecoyState> decoy;
  };

  static SequencePair generate(ParticipantId owner, std::size_t length, Rng& rng) {
    if (length == 0) throw StructuralError("sequence must carry at least one data particle");
    SequencePair p;
    p.owner_ = owner;
    p.flips_ = Key::zeros(length);
    p.descriptor_ = rng.next();
    p.home_holder_ = owner;
    p.travel_holder_ = owner;
    p.descriptor_holders_ = {owner};
    p.travel_.resize(length);
    for (std::size_t i = 0; i < length; ++i) p.travel_[i].data_index = i;
    return p;
  }

  ParticipantId owner() const { return owner_; }
  std::uint64_t descriptor() const { return descriptor_; }
  std::size_t data_length() const { return flips_.size(); }
  std::size_t physical_length() const { return travel_.size(); }
  ParticipantId travel_holder() const { return travel_holder_; }
  ParticipantId home_holder() const { return home_holder_; }
  bool consumed() const { return consumed_; }
  const std::vector<Particle>& travel_half() const { return travel_; }

  // Ground truth for tests; participants learn it only through joint_measure.
  const Key& accumulated_flips() const { return flips_; }

  std::size_t decoy_count() const {
    return static_cast<std::size_t>(
        std::count_if(travel_.begin(), travel_.end(), [](const Particle& q) { return q.decoy.has_value(); }));
  }

  bool knows_descriptor(ParticipantId p) const {
    return std::find(descriptor_holders_.begin(), descriptor_holders_.end(), p) != descriptor_holders_.end();
  }

  void send_travel(ParticipantId from, ParticipantId to) {
    require_travel_holder(from, "send the travel half");
    travel_holder_ = to;
  }

  void send_home(ParticipantId from, ParticipantId to) {
    if (home_holder_ != from) throw ProtocolViolation("participant does not hold the home half");
    home_holder_ = to;
  }

  void share_descriptor(ParticipantId from, ParticipantId to) {
    if (!knows_descriptor(from)) throw ProtocolViolation("participant does not know the initial state");
    if (!knows_descriptor(to)) descriptor_holders_.push_back(to);
  }

  void encode(ParticipantId actor, const Key& key) {
    require_travel_holder(actor, "encode");
    if (key.size() != data_length()) throw StructuralError("encoding key length does not match sequence");
    for (const auto& q : travel_) {
      if (q.decoy && !q.decoy->known_by(actor)) {
        throw ProtocolViolation("encoding before the decoy positions were revealed");
      }
    }
    flips_ ^= key;
  }

  void insert_decoys(ParticipantId actor, std::size_t count, Rng& rng) {
    require_travel_holder(actor, "insert decoys");
    for (std::size_t n = 0; n < count; ++n) {
      Particle q;
      q.decoy = DecoyState{rng.bit() ? Basis::X : Basis::Z, rng.bit(), actor, false, {actor}};
      auto pos = static_cast<std::ptrdiff_t>(rng.uniform(travel_.size() + 1));
      travel_.insert(travel_.begin() + pos, std::move(q));
    }
  }

  // The preparer publishes the positions (and states) of its decoys to `to`.
  void reveal_decoys(ParticipantId revealer, ParticipantId to) {
    for (auto& q : travel_) {
      if (q.decoy && q.decoy->preparer == revealer && !q.decoy->known_by(to)) {
        q.decoy->known_to.push_back(to);
      }
    }
  }

  // Measures every decoy in its preparation basis and removes it.
  DetectionResult verify_decoys(ParticipantId verifier) {
    require_travel_holder(verifier, "verify decoys");
    DetectionResult result;
    for (const auto& q : travel_) {
      if (q.decoy && !q.decoy->known_by(verifier)) {
        throw ProtocolViolation("verifying decoys before their positions were revealed");
      }
    }
    std::vector<Particle> kept;
    kept.reserve(travel_.size());
    for (auto& q : travel_) {
      if (q.decoy) {
        ++result.checked;
        if (q.decoy->disturbed()) ++result.failed;
      } else {
        kept.push_back(std::move(q));
      }
    }
    travel_ = std::move(kept);
    return result;
  }

  // Out-of-turn tampering by someone who cannot tell decoys from data.
  // `mask` covers the physical travel half, decoys included.
  void blind_flip(ParticipantId actor, const Key& mask) {
    require_travel_holder(actor, "tamper with");
    if (mask.size() != travel_.size()) throw StructuralError("blind flip mask must cover the physical sequence");
    for (const auto& q : travel_) {
      if (q.decoy && q.decoy->known_by(actor)) {
        throw ProtocolViolation("blind flip by a participant who knows the decoy layout");
      }
    }
    for (std::size_t i = 0; i < travel_.size(); ++i) {
      if (!mask.bit(i)) continue;
      auto& q = travel_[i];
      if (q.decoy) {
        q.decoy->flipped = !q.decoy->flipped;
      } else {
        flips_.set(q.data_index, !flips_.bit(q.data_index));
      }
    }
  }

  /// Bell-type measurement of both registers; yields the XOR of all encodings.
  Key joint_measure(ParticipantId actor) {
    if (consumed_) throw ProtocolViolation("sequence pair already measured");
    if (home_holder_ != actor || travel_holder_ != actor) {
      throw ProtocolViolation("joint measurement requires holding both halves");
    }
    if (!knows_descriptor(actor)) throw ProtocolViolation("joint measurement requires the initial state");
    consumed_ = true;
    return flips_;
  }

 private:
  SequencePair() = default;

  void require_travel_holder(ParticipantId actor, const char* what) const {
    if (consumed_) throw ProtocolViolation("sequence pair already measured");
    if (travel_holder_ != actor) {
      throw ProtocolViolation(std::string("participant ") + std::to_string(actor) +
                              " cannot " + what + " without holding the travel half");
    }
  }

  ParticipantId owner_ = 0;
  Key flips_;
  std::uint64_t descriptor_ = 0;
  ParticipantId home_holder_ = 0;
  ParticipantId travel_holder_ = 0;
  std::vector<ParticipantId> descriptor_holders_;
  std::vector<Particle> travel_;
  bool consumed_ = false;
};

}  // namespace mqka
