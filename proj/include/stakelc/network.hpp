/*
   Copyright 2026 The stakelc Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// Synchronous network with bounded delay plus the small interface actors use
// to talk to the simulation (sending, submitting transactions, logging).

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <stakelc/chain.hpp>
#include <stakelc/contract.hpp>
#include <stakelc/messages.hpp>

namespace stakelc {

using ActorId = std::string;

//! Providers are addressed by their key, so a client can reach any provider
//! it learns about from contract records.
inline ActorId provider_actor_id(const PublicKey& pk) { return "dp-" + pk.hex().substr(0, 12); }

//! A response the client hands to a watcher for review.
struct Forward {
    SignedResponse response;
};

//! Untrusted relay notice that a contract call landed in `block` with the
//! given receipt. Clients confirm it with a regular check on the receipt.
struct TxNotice {
    BlockNumber block{0};
    Bytes call_payload;
    Receipt receipt;
};

using Message = std::variant<Query, SignedResponse, Forward, Alert, TxNotice>;

std::string_view message_kind(const Message& m);
//! Digest of the message's canonical bytes, used in event logs.
Digest message_digest(const Message& m);

struct Envelope {
    Tick sent{0};
    Tick deliver_at{0};
    std::uint64_t seq{0};
    ActorId from;
    ActorId to;
    Message message;
};

//! Per-edge delays are drawn once, uniformly in [1, delta], from a seeded
//! generator, so delivery order is a pure function of the seed.
class Network {
  public:
    Network(std::uint64_t seed, std::uint64_t delta);

    [[nodiscard]] std::uint64_t delta() const noexcept { return delta_; }
    std::uint64_t delay(const ActorId& from, const ActorId& to);
    void send(Tick now, ActorId from, ActorId to, Message message);
    //! Everything due at `now`, in send order. Counts late deliveries.
    std::vector<Envelope> deliver(Tick now);

    [[nodiscard]] std::size_t pending() const noexcept { return queue_.size(); }
    [[nodiscard]] std::uint64_t late_deliveries() const noexcept { return late_; }
    [[nodiscard]] std::uint64_t max_delay() const noexcept { return max_delay_; }

  private:
    std::mt19937_64 rng_;
    std::uint64_t delta_;
    std::map<std::pair<ActorId, ActorId>, std::uint64_t> delays_;
    std::map<std::pair<Tick, std::uint64_t>, Envelope> queue_;
    std::uint64_t seq_{0};
    std::uint64_t late_{0};
    std::uint64_t max_delay_{0};
};

//! Where a contract call ended up. Full nodes index this while blocks are built.
struct CallRecord {
    BlockNumber block{0};
    Receipt receipt;
    Digest receipt_tx;
    std::optional<Digest> slash_record_tx;
};

using CallIndex = std::map<Digest, CallRecord>;

//! Read access for full nodes (providers and watchers).
struct FullNodeView {
    const Chain& chain;
    const Contract& contract;
    const CallIndex& calls;
};

class Context {
  public:
    virtual ~Context() = default;

    [[nodiscard]] virtual Tick now() const = 0;
    virtual void send(const ActorId& from, const ActorId& to, Message message) = 0;
    //! Queues a contract call for the block built this tick; returns its tx id.
    virtual Digest submit(const ActorId& from, const ContractCall& call) = 0;
    virtual void log(const ActorId& actor, std::string_view event, const Digest& digest, std::string detail) = 0;
};

}  // namespace stakelc
