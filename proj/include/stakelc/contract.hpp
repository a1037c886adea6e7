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

// The on-chain registry / slashing / insurance contract, modelled as a
// deterministic state machine. Calls are executed in transaction order while
// a block is built; process_block_boundary() runs once after every block.
//
// Update epochs are `update_epoch_blocks` long; block b belongs to epoch
// b / update_epoch_blocks. A withdrawal requested in epoch i releases the
// stake at the last block of epoch i + 1, or at the first later epoch end at
// which no open policy still locks part of the stake.

#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include <stakelc/chain.hpp>
#include <stakelc/messages.hpp>
#include <stakelc/money.hpp>
#include <stakelc/pricing.hpp>

namespace stakelc {

enum class ProviderStatus : std::uint8_t { kActive = 0, kLeaving = 1, kExited = 2, kSlashed = 3 };
std::string_view to_string(ProviderStatus s);

struct ProviderRecord {
    std::uint64_t record_id{0};
    PublicKey public_key;
    Wei stake;
    Wei locked;
    //! Premium income, paid out together with the stake on exit.
    Wei rewards;
    ProviderStatus status{ProviderStatus::kActive};
    std::uint64_t joined_epoch{0};
    BlockNumber joined_block{0};
    std::optional<std::uint64_t> withdraw_requested_epoch;
    std::optional<BlockNumber> withdraw_requested_block;
    std::optional<BlockNumber> released_block;
    std::optional<BlockNumber> slashed_block;

    [[nodiscard]] Wei attributable() const { return stake - locked; }
};

struct Allocation {
    PublicKey provider;
    Wei amount;
};

enum class PolicyState : std::uint8_t { kOpen = 0, kClaimed = 1, kExpired = 2 };

struct PolicyAllocation {
    PublicKey provider;
    std::uint64_t record_id{0};
    Wei amount;
    bool locked{true};  // still counted in the provider's `locked`
    bool claimed{false};
};

struct InsurancePolicy {
    InsuranceId id{0};
    PublicKey buyer;
    std::vector<PolicyAllocation> allocations;
    Wei coverage_value;
    BlockNumber start_block{0};
    std::uint64_t duration{0};
    PolicyState state{PolicyState::kOpen};
    Wei premium_paid;
    Wei paid_out;

    [[nodiscard]] BlockNumber last_covered_block() const noexcept { return start_block + duration; }
    //! Boundary processing of this block expires the policy.
    [[nodiscard]] BlockNumber expiry_block() const noexcept { return start_block + duration + 1; }
};

struct SlashEvent {
    PublicKey provider;
    Signature offending_signature;
    ResponseClaim claim;
    Wei slashed_amount;
    std::optional<InsuranceId> insurance_id;  // set only when a claim was paid
    PublicKey beneficiary;
    Wei payout;
    PublicKey submitter;
    Wei bounty;
    Wei burned;
    BlockNumber recorded_in_block{0};

    [[nodiscard]] BlockNumber block_number() const noexcept { return claim.block_number; }
    [[nodiscard]] Bytes encode() const;
    static SlashEvent decode(ByteView bytes);
};

struct ContractConfig {
    Wei min_stake{wei_per_eth()};
    std::uint64_t update_epoch_blocks{32};  // B_u
    std::uint64_t max_challenge_period{16};  // maxT_cp
    std::uint64_t gas_buy_insurance{200'000};
    std::uint64_t max_coverage_duration{1'000'000};
    std::uint32_t bounty_bps{500};
    //! Finality depth and network delay the accountability bound is checked against.
    std::uint64_t finality_blocks{8};
    std::uint64_t delta_ticks{1};

    //! Enforces update_epoch_blocks >= max_challenge_period + finality_blocks + 2 * delta_ticks.
    void validate() const;
};

// Contract calls, carried as transaction payloads.

struct RegisterCall {
    PublicKey provider;
    Wei stake;
};
struct WithdrawCall {
    PublicKey provider;
};
struct BuyInsuranceCall {
    PublicKey buyer;
    std::vector<Allocation> allocations;
    Wei coverage_value;
    std::uint64_t duration{0};
};
struct SlashCall {
    PublicKey submitter;
    PublicKey provider;
    ResponseClaim claim;
    Signature signature;
};

using ContractCall = std::variant<RegisterCall, WithdrawCall, BuyInsuranceCall, SlashCall>;

Bytes encode_call(const ContractCall& call);
//! nullopt when the payload is not a contract call.
std::optional<ContractCall> decode_call(ByteView payload);

enum class RevertReason : std::uint8_t {
    kNone = 0,
    kInsufficientAttributableStake,
    kInactiveProvider,
    kCoverageExceedsAllocations,
    kDurationTooLong,
    kInsufficientFunds,
    kMalformed,
    kBelowMinStake,
    kDuplicateProvider,
    kNotActive,
};

enum class RejectReason : std::uint8_t {
    kSignatureInvalid = 1,
    kBlockNotYetFinal,
    kHashMatchesFinalized,
    kAlreadySlashed,
    kUnknownProvider,
    kProviderExited,
};

enum class ClaimStatus : std::uint8_t {
    kNotRequested = 0,
    kPaid,
    kPolicyNotOpen,
    kNotAllocated,
    kUnknownPolicy,
    kAlreadyClaimed,
};

std::string_view to_string(RevertReason r);
std::string_view to_string(RejectReason r);
std::string_view to_string(ClaimStatus c);

struct BuyOutcome {
    std::optional<InsuranceId> id;
    RevertReason revert{RevertReason::kNone};
    Wei premium;
    Wei gas;

    [[nodiscard]] bool ok() const noexcept { return id.has_value(); }
};

struct SlashOutcome {
    std::optional<SlashEvent> event;
    std::optional<RejectReason> rejected;
    ClaimStatus claim{ClaimStatus::kNotRequested};

    [[nodiscard]] bool ok() const noexcept { return event.has_value(); }
};

enum class ReceiptStatus : std::uint8_t { kOk = 0, kReverted = 1, kRejected = 2 };

//! Outcome of one contract call, recorded as its own transaction right after
//! the call so light clients can check it like any other target state.
struct Receipt {
    Digest call_id;
    MsgTag call{MsgTag::kRegister};
    ReceiptStatus status{ReceiptStatus::kOk};
    std::uint8_t reason{0};
    std::optional<InsuranceId> insurance_id;

    [[nodiscard]] Bytes encode() const;
    static Receipt decode(ByteView bytes);

    friend bool operator==(const Receipt&, const Receipt&) = default;
};

struct Effect {
    enum class Kind : std::uint8_t { kPolicyExpired, kProviderExited } kind;
    std::optional<InsuranceId> policy;
    std::optional<PublicKey> provider;
    Wei amount;
};

struct ProviderSetEntry {
    PublicKey public_key;
    Wei stake;
    Wei attributable;
    ProviderStatus status{ProviderStatus::kActive};
    std::uint64_t joined_epoch{0};
    std::optional<std::uint64_t> withdraw_epoch;

    friend bool operator==(const ProviderSetEntry&, const ProviderSetEntry&) = default;
};

struct ExecutedCall {
    Receipt receipt;
    std::optional<SlashEvent> slash_event;
};

class Contract {
  public:
    Contract(ContractConfig config, pricing::PricingParams pricing);

    [[nodiscard]] const ContractConfig& config() const noexcept { return config_; }
    [[nodiscard]] const pricing::PricingParams& pricing() const noexcept { return pricing_; }

    [[nodiscard]] std::uint64_t epoch_of(BlockNumber b) const noexcept { return b / config_.update_epoch_blocks; }
    [[nodiscard]] BlockNumber last_block_of_epoch(std::uint64_t epoch) const noexcept {
        return (epoch + 1) * config_.update_epoch_blocks - 1;
    }
    [[nodiscard]] bool is_epoch_end(BlockNumber b) const noexcept { return (b + 1) % config_.update_epoch_blocks == 0; }

    // External accounts (clients, watchers, providers' free balances).
    void mint(const PublicKey& account, const Wei& amount);
    [[nodiscard]] Wei balance(const PublicKey& account) const;

    //! Throws kBelowMinStake, kDuplicateProvider or kInsufficientFunds.
    void register_provider(const PublicKey& pk, const Wei& stake, BlockNumber block);
    //! Throws kNotActive.
    void request_withdraw(const PublicKey& pk, BlockNumber block);
    BuyOutcome buy_insurance(const BuyInsuranceCall& call, BlockNumber block);
    SlashOutcome slash(const SlashCall& call, BlockNumber block, const Chain& chain);
    std::vector<Effect> process_block_boundary(BlockNumber block);

    //! Decodes and runs a call transaction; failures become receipts.
    ExecutedCall execute(const Transaction& tx, BlockNumber block, const Chain& chain);

    //! Providers with stake in the contract (Active or Leaving) for the
    //! current epoch, or the predicted set for the next one (current members
    //! minus those whose release lands at the end of the current epoch).
    //! Throws kEpochTooFar outside [current, current + 1].
    [[nodiscard]] std::vector<ProviderSetEntry> active_set(std::uint64_t epoch, BlockNumber now) const;
    //! Static per-epoch set a long-lived client derives from requests that
    //! are at least one full epoch old: registered in epoch <= e - 2 and no
    //! withdrawal requested in epoch <= e - 2. Slashed providers are excluded.
    [[nodiscard]] std::vector<ProviderSetEntry> settled_set(std::uint64_t epoch) const;
    [[nodiscard]] std::optional<BlockNumber> scheduled_release_block(const PublicKey& pk) const;

    [[nodiscard]] const ProviderRecord* find_provider(const PublicKey& pk) const;
    [[nodiscard]] const std::vector<ProviderRecord>& records() const noexcept { return records_; }
    [[nodiscard]] const InsurancePolicy* policy(InsuranceId id) const;
    [[nodiscard]] const std::map<InsuranceId, InsurancePolicy>& policies() const noexcept { return policies_; }
    [[nodiscard]] const std::vector<SlashEvent>& slash_events() const noexcept { return slash_events_; }
    //! Most recent slash of this public key, if any.
    [[nodiscard]] const SlashEvent* last_slash_of(const PublicKey& pk) const;

    [[nodiscard]] const Wei& burned() const noexcept { return burned_; }
    [[nodiscard]] const Wei& gas_collected() const noexcept { return gas_collected_; }
    [[nodiscard]] const Wei& minted() const noexcept { return minted_; }
    //! Sum of every wei the contract tracks; equals minted() at all times.
    [[nodiscard]] Wei total_value() const;
    //! locked <= stake for every record.
    [[nodiscard]] bool no_overload() const;
    //! Canonical byte encoding of the full state.
    [[nodiscard]] Bytes serialize() const;

  private:
    ProviderRecord* find_mut(const PublicKey& pk);
    [[nodiscard]] bool has_locked_allocation(std::uint64_t record_id) const;
    [[nodiscard]] BlockNumber release_block_of(const ProviderRecord& rec) const;
    void debit(const PublicKey& account, const Wei& amount);
    void credit(const PublicKey& account, const Wei& amount);
    static ProviderSetEntry entry_of(const ProviderRecord& rec);

    ContractConfig config_;
    pricing::PricingParams pricing_;
    std::vector<ProviderRecord> records_;
    std::map<PublicKey, std::size_t> latest_;
    std::map<InsuranceId, InsurancePolicy> policies_;
    InsuranceId next_policy_id_{1};
    std::vector<SlashEvent> slash_events_;
    std::map<PublicKey, Wei> accounts_;
    Wei burned_;
    Wei gas_collected_;
    Wei minted_;
};

}  // namespace stakelc
