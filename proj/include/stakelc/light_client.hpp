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

// Light client state machines. An economic check queries enough staked
// providers, forwards every response to the watchers and accepts once the
// challenge period has passed without a verified alert. An insured check buys
// a policy, confirms the purchase receipt with an economic check, then
// accepts the insured answer as soon as it verifies and keeps listening for
// the compensation path.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <stakelc/network.hpp>
#include <stakelc/pricing.hpp>

namespace stakelc {

enum class Protocol : std::uint8_t { kEco, kIns };
std::string_view to_string(Protocol p);
std::optional<Protocol> parse_protocol(std::string_view text);

struct ClientConfig {
    Protocol protocol{Protocol::kEco};
    //! T_cp for economic target checks; the post-acceptance listening window
    //! for insured checks.
    std::uint64_t challenge_period{0};
    //! Challenge period of the purchase-receipt check. Defaults to challenge_period.
    std::optional<std::uint64_t> receipt_challenge_period;
    //! Communication allowance in the coverage bound. Zero means 4 * delta.
    std::uint64_t delta_comm{0};
    std::uint64_t delta_comp{1};
    //! Explicit coverage window; must not undercut the computed bound.
    std::optional<std::uint64_t> coverage_duration;
    //! Follow register/withdraw receipts instead of re-bootstrapping each epoch.
    bool track_provider_set{false};
    Wei set_update_value{wei_per_eth()};

    [[nodiscard]] std::uint64_t receipt_period() const noexcept {
        return receipt_challenge_period.value_or(challenge_period);
    }
};

//! Chain and network constants every client knows.
struct ProtocolTiming {
    std::uint64_t delta{1};
    std::uint64_t finality_blocks{8};
    std::uint64_t update_epoch_blocks{32};
};

//! Coverage window the client buys: the explicit override or the bound built
//! from finality, both challenge periods and the communication allowances.
std::uint64_t coverage_duration_for(const ClientConfig& config, const ProtocolTiming& timing);

struct Candidate {
    PublicKey provider;
    Wei backing;
};

//! Greedy by descending backing, ties broken by key; the last allocation is
//! trimmed to the remainder. Throws kNoEligibleProviders.
std::vector<Allocation> select_providers(std::vector<Candidate> candidates, const Wei& required);

//! Overlapping checks share one policy, which must cover their sum.
Wei required_coverage(std::span<const Wei> overlapping_values);

//! Provider record as the client sees it.
struct KnownProvider {
    PublicKey public_key;
    Wei stake;
    Wei attributable;
    std::uint64_t joined_epoch{0};
    BlockNumber joined_block{0};
    std::optional<std::uint64_t> withdraw_epoch;
    bool slashed{false};

    //! Compact snapshot encoding kept between checks.
    [[nodiscard]] Bytes encode() const;
};

struct SetEntry {
    PublicKey public_key;
    Wei stake;

    friend bool operator==(const SetEntry&, const SetEntry&) = default;
};

//! Trusted, expensive reads of finalized state. Each call is one heavy check.
class HeavyCheckOracle {
  public:
    HeavyCheckOracle(const Chain& chain, const Contract& contract) : chain_(chain), contract_(contract) {}

    [[nodiscard]] std::vector<KnownProvider> provider_set() const;
    //! The alert's slash record sits in a finalized block and names the offender.
    [[nodiscard]] bool slash_recorded(const Alert& alert) const;
    [[nodiscard]] std::optional<Digest> finalized_hash(BlockNumber n) const;

  private:
    const Chain& chain_;
    const Contract& contract_;
};

struct Target {
    BlockNumber block_number{0};
    Digest state_hash;
};

enum class CheckKind : std::uint8_t { kTarget, kInsuranceReceipt, kSetUpdate };
enum class CheckPhase : std::uint8_t { kWaiting, kBuying, kQuerying, kChallenge, kListening, kDone, kFailed };
std::string_view to_string(CheckKind k);
std::string_view to_string(CheckPhase p);

struct Check {
    std::uint64_t id{0};
    CheckKind kind{CheckKind::kTarget};
    Protocol protocol{Protocol::kEco};
    Target target;
    Wei value;
    Tick not_before{0};
    std::uint64_t challenge_period{0};
    CheckPhase phase{CheckPhase::kWaiting};
    std::optional<std::uint64_t> parent;

    // Current query round.
    std::uint64_t query_id{0};
    Tick query_tick{0};
    std::vector<Allocation> selected;
    std::map<PublicKey, SignedResponse> responses;
    Tick last_response{0};
    Tick last_forward{0};
    std::set<PublicKey> excluded;
    std::uint64_t rounds{0};

    // Insured checks.
    std::optional<Digest> buy_tx;
    std::vector<Allocation> buy_allocations;
    std::uint64_t coverage_duration{0};
    std::optional<TxNotice> receipt_notice;
    std::optional<std::uint64_t> receipt_check;
    std::optional<InsuranceId> policy;
    std::set<InsuranceId> policies;  // every confirmed purchase
    BlockNumber policy_start{0};
    std::uint64_t purchases{0};
    bool refreshed{false};

    // Set-update checks.
    std::optional<TxNotice> notice;

    // Result.
    bool accepted{false};
    Tick accepted_at{0};
    std::optional<Digest> accepted_hash;
    std::uint64_t signatures{0};
    Wei compensation;
    std::set<Digest> compensated_by;
    Tick listen_until{0};
    std::string failure;
};

struct ClientEvent {
    enum class Kind : std::uint8_t { kAccepted, kFailed, kFinished } kind;
    Check check;
};

class LightClient {
  public:
    LightClient(ActorId id, KeyPair keys, ClientConfig config, ProtocolTiming timing,
                pricing::PricingParams pricing, std::vector<ActorId> watchers);

    [[nodiscard]] const ActorId& id() const noexcept { return id_; }
    [[nodiscard]] const PublicKey& public_key() const noexcept { return keys_.public_key; }
    [[nodiscard]] const ClientConfig& config() const noexcept { return config_; }

    //! Starts a check of `target`, querying no earlier than `not_before`.
    std::uint64_t start_check(const Target& target, const Wei& value, Tick not_before, Context& ctx);

    void on_message(const Envelope& env, Context& ctx, const HeavyCheckOracle& oracle);
    void on_tick(Context& ctx, const HeavyCheckOracle& oracle);
    //! Back online after being away since `offline_since`. A fully missed
    //! update epoch forces a fresh bootstrap.
    void resume(Tick offline_since, Context& ctx, const HeavyCheckOracle& oracle);

    std::vector<ClientEvent> drain_events();

    [[nodiscard]] std::uint64_t heavy_checks() const noexcept { return heavy_checks_; }
    [[nodiscard]] std::uint64_t signature_verifications() const noexcept { return signature_verifications_; }
    [[nodiscard]] bool bootstrapped() const noexcept { return bootstrapped_; }
    [[nodiscard]] const std::vector<KnownProvider>& known_providers() const noexcept { return known_; }
    //! Providers expected to serve `epoch`: registered at least two epochs
    //! earlier, no withdrawal requested by then, not slashed.
    [[nodiscard]] std::vector<SetEntry> predicted_set(std::uint64_t epoch) const;
    //! Bytes of persistent state kept between checks.
    [[nodiscard]] std::size_t snapshot_bytes() const;
    [[nodiscard]] const Check* check(std::uint64_t id) const;
    [[nodiscard]] const std::map<std::uint64_t, Check>& checks() const noexcept { return checks_; }
    [[nodiscard]] std::uint64_t coverage_duration() const noexcept { return coverage_duration_; }

  private:
    [[nodiscard]] std::uint64_t epoch_of(Tick t) const noexcept { return t / timing_.update_epoch_blocks; }
    void bootstrap(Context& ctx, const HeavyCheckOracle& oracle);
    void ensure_set(Context& ctx, const HeavyCheckOracle& oracle);
    std::vector<Candidate> candidates(const Check& c, bool attributable) const;
    KnownProvider* latest(const PublicKey& pk);

    Check& spawn(CheckKind kind, const Target& target, const Wei& value, Tick not_before,
                 std::uint64_t challenge_period, std::optional<std::uint64_t> parent);
    void start_round(Check& c, Context& ctx, const HeavyCheckOracle& oracle);
    void send_queries(Check& c, Context& ctx);
    void buy(Check& c, Context& ctx, const HeavyCheckOracle& oracle);
    void start_insured_query(Check& c, Context& ctx, const HeavyCheckOracle& oracle);
    void restart(Check& c, Context& ctx, const HeavyCheckOracle& oracle, std::string_view why);
    void evaluate(Check& c, Context& ctx, const HeavyCheckOracle& oracle);
    void accept(Check& c, Context& ctx, const HeavyCheckOracle& oracle);
    void fail(Check& c, Context& ctx, std::string why);
    void child_done(Check& child, Context& ctx, const HeavyCheckOracle& oracle);

    void on_response(const SignedResponse& r, Context& ctx, const HeavyCheckOracle& oracle);
    void on_alert(const Alert& a, Context& ctx, const HeavyCheckOracle& oracle);
    void on_notice(const TxNotice& n, Context& ctx);
    void tick_check(Check& c, Context& ctx, const HeavyCheckOracle& oracle);

    ActorId id_;
    KeyPair keys_;
    ClientConfig config_;
    ProtocolTiming timing_;
    pricing::PricingParams pricing_;
    std::vector<ActorId> watchers_;
    std::uint64_t coverage_duration_{0};

    std::vector<KnownProvider> known_;
    bool bootstrapped_{false};
    std::uint64_t snapshot_epoch_{0};
    std::set<Digest> verified_slashes_;

    std::map<std::uint64_t, Check> checks_;
    std::map<std::uint64_t, std::uint64_t> query_to_check_;
    std::uint64_t next_check_id_{1};
    std::uint64_t next_query_id_{1};

    std::uint64_t heavy_checks_{0};
    std::uint64_t signature_verifications_{0};
    std::vector<ClientEvent> events_;
};

}  // namespace stakelc
