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

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <stakelc/network.hpp>

namespace stakelc {

enum class ProviderStrategy : std::uint8_t { kHonest, kWrongHash, kUnfinalizedHash, kUnresponsive, kExitScam };

//! Which queries an adversarial strategy applies to. kInsuredOnly answers
//! uninsured queries honestly and misbehaves only when a policy is named.
enum class StrategyScope : std::uint8_t { kAny, kInsuredOnly };

std::string_view to_string(ProviderStrategy s);
std::string_view to_string(StrategyScope s);
std::optional<ProviderStrategy> parse_strategy(std::string_view text);
std::optional<StrategyScope> parse_scope(std::string_view text);
const std::vector<ProviderStrategy>& all_strategies();

//! Honest answer: the finalized header at the queried height with an
//! inclusion proof for h_s. nullopt when the block is not final yet or does
//! not contain the state.
std::optional<SignedResponse> honest_response(const Query& query, const Chain& chain, const KeyPair& keys);

//! A header at `number` whose root commits to h_s alone. The proof checks
//! out locally; only the finalized chain exposes the lie.
SignedResponse forged_response(const Query& query, BlockNumber number, const Chain& chain, const KeyPair& keys);

//! Stateless response rule for one strategy (ExitScam behaves as WrongHash
//! here; its follow-up withdrawal lives in DataProvider).
std::optional<SignedResponse> provider_respond(ProviderStrategy strategy, const Query& query, const Chain& chain,
                                               const KeyPair& keys);

class DataProvider {
  public:
    DataProvider(ActorId id, KeyPair keys, ProviderStrategy strategy, StrategyScope scope = StrategyScope::kAny);

    [[nodiscard]] const ActorId& id() const noexcept { return id_; }
    [[nodiscard]] const KeyPair& keys() const noexcept { return keys_; }
    [[nodiscard]] const PublicKey& public_key() const noexcept { return keys_.public_key; }
    [[nodiscard]] ProviderStrategy strategy() const noexcept { return strategy_; }
    [[nodiscard]] StrategyScope scope() const noexcept { return scope_; }
    //! Number of false statements signed so far.
    [[nodiscard]] std::uint64_t lies() const noexcept { return lies_; }
    [[nodiscard]] std::optional<Tick> first_lie_tick() const noexcept { return first_lie_; }

    void on_query(const Query& query, const ActorId& from, const FullNodeView& node, Context& ctx);

  private:
    ActorId id_;
    KeyPair keys_;
    ProviderStrategy strategy_;
    StrategyScope scope_;
    std::uint64_t lies_{0};
    std::optional<Tick> first_lie_;
    bool gone_{false};
};

enum class VerdictKind : std::uint8_t { kOk, kDispute, kProviderInactive, kDeferred, kUnverifiable };
std::string_view to_string(VerdictKind v);

struct WatcherVerdict {
    VerdictKind kind{VerdictKind::kOk};
    std::optional<SlashCall> evidence;          // kDispute
    std::optional<SlashEvent> prior_slash;      // kProviderInactive
};

//! Full-node review of one forwarded response.
WatcherVerdict watcher_check(const SignedResponse& response, const PublicKey& watcher, const FullNodeView& node);

//! Builds an alert around a recorded slash. nullopt until the block holding
//! the slash record is final.
std::optional<Alert> make_alert(AlertKind kind, const SlashEvent& event, std::uint64_t query_id,
                                const FullNodeView& node);

class Watcher {
  public:
    Watcher(ActorId id, KeyPair keys);

    [[nodiscard]] const ActorId& id() const noexcept { return id_; }
    [[nodiscard]] const PublicKey& public_key() const noexcept { return keys_.public_key; }
    [[nodiscard]] std::uint64_t disputes() const noexcept { return disputes_; }
    [[nodiscard]] std::uint64_t alerts_sent() const noexcept { return alerts_sent_; }

    void on_forward(const SignedResponse& response, const ActorId& client, const FullNodeView& node, Context& ctx);
    //! Retries deferred reviews, follows submitted slashes and releases alerts.
    void on_tick(const FullNodeView& node, Context& ctx);

  private:
    struct Review {
        SignedResponse response;
        ActorId client;
    };
    struct InFlight {
        Digest slash_tx;
        Review review;
    };
    struct PendingAlert {
        AlertKind kind;
        PublicKey provider;
        std::uint64_t query_id;
        ActorId client;
    };

    void act(const Review& review, const WatcherVerdict& verdict, const FullNodeView& node, Context& ctx);
    void queue_alert(AlertKind kind, const Review& review);

    ActorId id_;
    KeyPair keys_;
    std::vector<Review> deferred_;
    std::vector<InFlight> in_flight_;
    std::vector<PendingAlert> alerts_;
    std::uint64_t disputes_{0};
    std::uint64_t alerts_sent_{0};
};

}  // namespace stakelc
