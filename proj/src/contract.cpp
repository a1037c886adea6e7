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

#include <stakelc/contract.hpp>

#include <algorithm>
#include <set>
#include <string>

#include <stakelc/errors.hpp>

namespace stakelc {

std::string_view to_string(ProviderStatus s) {
    switch (s) {
        case ProviderStatus::kActive: return "active";
        case ProviderStatus::kLeaving: return "leaving";
        case ProviderStatus::kExited: return "exited";
        case ProviderStatus::kSlashed: return "slashed";
    }
    return "unknown";
}

std::string_view to_string(RevertReason r) {
    switch (r) {
        case RevertReason::kNone: return "None";
        case RevertReason::kInsufficientAttributableStake: return "InsufficientAttributableStake";
        case RevertReason::kInactiveProvider: return "InactiveProvider";
        case RevertReason::kCoverageExceedsAllocations: return "CoverageExceedsAllocations";
        case RevertReason::kDurationTooLong: return "DurationTooLong";
        case RevertReason::kInsufficientFunds: return "InsufficientFunds";
        case RevertReason::kMalformed: return "Malformed";
        case RevertReason::kBelowMinStake: return "BelowMinStake";
        case RevertReason::kDuplicateProvider: return "DuplicateProvider";
        case RevertReason::kNotActive: return "NotActive";
    }
    return "Unknown";
}

std::string_view to_string(RejectReason r) {
    switch (r) {
        case RejectReason::kSignatureInvalid: return "SignatureInvalid";
        case RejectReason::kBlockNotYetFinal: return "BlockNotYetFinal";
        case RejectReason::kHashMatchesFinalized: return "HashMatchesFinalized";
        case RejectReason::kAlreadySlashed: return "AlreadySlashed";
        case RejectReason::kUnknownProvider: return "UnknownProvider";
        case RejectReason::kProviderExited: return "ProviderExited";
    }
    return "Unknown";
}

std::string_view to_string(ClaimStatus c) {
    switch (c) {
        case ClaimStatus::kNotRequested: return "NotRequested";
        case ClaimStatus::kPaid: return "Paid";
        case ClaimStatus::kPolicyNotOpen: return "PolicyNotOpen";
        case ClaimStatus::kNotAllocated: return "NotAllocated";
        case ClaimStatus::kUnknownPolicy: return "UnknownPolicy";
        case ClaimStatus::kAlreadyClaimed: return "AlreadyClaimed";
    }
    return "Unknown";
}

void ContractConfig::validate() const {
    if (update_epoch_blocks == 0) throw Error(Errc::kConfigInvalid, "update_epoch_blocks must be positive");
    if (delta_ticks == 0) throw Error(Errc::kConfigInvalid, "delta_ticks must be at least 1");
    if (min_stake <= 0) throw Error(Errc::kConfigInvalid, "min_stake must be positive");
    if (bounty_bps > 10'000) throw Error(Errc::kConfigInvalid, "bounty_bps must be at most 10000");
    const auto bound = max_challenge_period + finality_blocks + 2 * delta_ticks;
    if (update_epoch_blocks < bound) {
        throw Error(Errc::kConfigInvalid,
                    "update_epoch_blocks (" + std::to_string(update_epoch_blocks) +
                        ") must be >= max_challenge_period + finality_blocks + 2*delta (" + std::to_string(bound) +
                        ")");
    }
}

// ---------------------------------------------------------------------------
// Encodings

Bytes SlashEvent::encode() const {
    ByteWriter w;
    w.tag(MsgTag::kSlashRecord).fixed(provider.view()).fixed(offending_signature.view()).var(claim.encode());
    encode_wei(w, slashed_amount);
    w.u8(insurance_id ? 1 : 0).u64(insurance_id.value_or(0));
    w.fixed(beneficiary.view());
    encode_wei(w, payout);
    w.fixed(submitter.view());
    encode_wei(w, bounty);
    encode_wei(w, burned);
    w.u64(recorded_in_block);
    return std::move(w).take();
}

SlashEvent SlashEvent::decode(ByteView bytes) {
    ByteReader r(bytes);
    if (r.tag() != MsgTag::kSlashRecord) throw Error(Errc::kDecodeError, "not a slash record");
    SlashEvent e;
    e.provider = PublicKey::from(r.fixed(PublicKey::kSize));
    e.offending_signature = Signature::from(r.fixed(Signature::kSize));
    e.claim = ResponseClaim::decode(r.var());
    e.slashed_amount = decode_wei(r);
    const bool has_id = r.u8() != 0;
    const auto id = r.u64();
    if (has_id) e.insurance_id = id;
    e.beneficiary = PublicKey::from(r.fixed(PublicKey::kSize));
    e.payout = decode_wei(r);
    e.submitter = PublicKey::from(r.fixed(PublicKey::kSize));
    e.bounty = decode_wei(r);
    e.burned = decode_wei(r);
    e.recorded_in_block = r.u64();
    r.expect_done();
    return e;
}

Bytes Receipt::encode() const {
    ByteWriter w;
    w.tag(MsgTag::kReceipt).fixed(call_id.view()).u8(static_cast<std::uint8_t>(call));
    w.u8(static_cast<std::uint8_t>(status)).u8(reason).u8(insurance_id ? 1 : 0).u64(insurance_id.value_or(0));
    return std::move(w).take();
}

Receipt Receipt::decode(ByteView bytes) {
    ByteReader r(bytes);
    if (r.tag() != MsgTag::kReceipt) throw Error(Errc::kDecodeError, "not a receipt");
    Receipt rc;
    rc.call_id = Digest::from(r.fixed(Digest::kSize));
    rc.call = static_cast<MsgTag>(r.u8());
    rc.status = static_cast<ReceiptStatus>(r.u8());
    rc.reason = r.u8();
    const bool has_id = r.u8() != 0;
    const auto id = r.u64();
    if (has_id) rc.insurance_id = id;
    r.expect_done();
    return rc;
}

Bytes encode_call(const ContractCall& call) {
    ByteWriter w;
    std::visit(
        [&w](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, RegisterCall>) {
                w.tag(MsgTag::kRegister).fixed(c.provider.view());
                encode_wei(w, c.stake);
            } else if constexpr (std::is_same_v<T, WithdrawCall>) {
                w.tag(MsgTag::kWithdraw).fixed(c.provider.view());
            } else if constexpr (std::is_same_v<T, BuyInsuranceCall>) {
                w.tag(MsgTag::kBuyInsurance).fixed(c.buyer.view());
                w.u32(static_cast<std::uint32_t>(c.allocations.size()));
                for (const auto& a : c.allocations) {
                    w.fixed(a.provider.view());
                    encode_wei(w, a.amount);
                }
                encode_wei(w, c.coverage_value);
                w.u64(c.duration);
            } else {
                w.tag(MsgTag::kSlash).fixed(c.submitter.view()).fixed(c.provider.view());
                w.var(c.claim.encode()).fixed(c.signature.view());
            }
        },
        call);
    return std::move(w).take();
}

std::optional<ContractCall> decode_call(ByteView payload) {
    if (payload.empty()) return std::nullopt;
    ByteReader r(payload);
    const auto tag = r.tag();
    switch (tag) {
        case MsgTag::kRegister: {
            RegisterCall c;
            c.provider = PublicKey::from(r.fixed(PublicKey::kSize));
            c.stake = decode_wei(r);
            r.expect_done();
            return c;
        }
        case MsgTag::kWithdraw: {
            WithdrawCall c;
            c.provider = PublicKey::from(r.fixed(PublicKey::kSize));
            r.expect_done();
            return c;
        }
        case MsgTag::kBuyInsurance: {
            BuyInsuranceCall c;
            c.buyer = PublicKey::from(r.fixed(PublicKey::kSize));
            const auto n = r.u32();
            if (n > 1024) throw Error(Errc::kDecodeError, "too many allocations");
            for (std::uint32_t i = 0; i < n; ++i) {
                Allocation a;
                a.provider = PublicKey::from(r.fixed(PublicKey::kSize));
                a.amount = decode_wei(r);
                c.allocations.push_back(std::move(a));
            }
            c.coverage_value = decode_wei(r);
            c.duration = r.u64();
            r.expect_done();
            return c;
        }
        case MsgTag::kSlash: {
            SlashCall c;
            c.submitter = PublicKey::from(r.fixed(PublicKey::kSize));
            c.provider = PublicKey::from(r.fixed(PublicKey::kSize));
            c.claim = ResponseClaim::decode(r.var());
            c.signature = Signature::from(r.fixed(Signature::kSize));
            r.expect_done();
            return c;
        }
        default: return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// State machine

Contract::Contract(ContractConfig config, pricing::PricingParams pricing)
    : config_(std::move(config)), pricing_(std::move(pricing)) {
    config_.validate();
    pricing_.validate();
}

void Contract::mint(const PublicKey& account, const Wei& amount) {
    accounts_[account] += amount;
    minted_ += amount;
}

Wei Contract::balance(const PublicKey& account) const {
    const auto it = accounts_.find(account);
    return it == accounts_.end() ? Wei{0} : it->second;
}

void Contract::debit(const PublicKey& account, const Wei& amount) {
    auto& bal = accounts_[account];
    if (bal < amount) throw Error(Errc::kInsufficientFunds, "insufficient balance for " + account.hex());
    bal -= amount;
}

void Contract::credit(const PublicKey& account, const Wei& amount) { accounts_[account] += amount; }

ProviderRecord* Contract::find_mut(const PublicKey& pk) {
    const auto it = latest_.find(pk);
    return it == latest_.end() ? nullptr : &records_[it->second];
}

const ProviderRecord* Contract::find_provider(const PublicKey& pk) const {
    const auto it = latest_.find(pk);
    return it == latest_.end() ? nullptr : &records_[it->second];
}

const InsurancePolicy* Contract::policy(InsuranceId id) const {
    const auto it = policies_.find(id);
    return it == policies_.end() ? nullptr : &it->second;
}

const SlashEvent* Contract::last_slash_of(const PublicKey& pk) const {
    for (auto it = slash_events_.rbegin(); it != slash_events_.rend(); ++it) {
        if (it->provider == pk) return &*it;
    }
    return nullptr;
}

void Contract::register_provider(const PublicKey& pk, const Wei& stake, BlockNumber block) {
    if (stake < config_.min_stake) {
        throw Error(Errc::kBelowMinStake, "stake below minimum");
    }
    if (const auto* rec = find_provider(pk);
        rec && (rec->status == ProviderStatus::kActive || rec->status == ProviderStatus::kLeaving)) {
        throw Error(Errc::kDuplicateProvider, "provider already registered");
    }
    debit(pk, stake);
    ProviderRecord rec;
    rec.record_id = records_.size();
    rec.public_key = pk;
    rec.stake = stake;
    rec.status = ProviderStatus::kActive;
    rec.joined_epoch = epoch_of(block);
    rec.joined_block = block;
    latest_[pk] = records_.size();
    records_.push_back(std::move(rec));
}

void Contract::request_withdraw(const PublicKey& pk, BlockNumber block) {
    auto* rec = find_mut(pk);
    if (!rec || rec->status != ProviderStatus::kActive) {
        throw Error(Errc::kNotActive, "provider is not active");
    }
    rec->status = ProviderStatus::kLeaving;
    rec->withdraw_requested_epoch = epoch_of(block);
    rec->withdraw_requested_block = block;
}

BuyOutcome Contract::buy_insurance(const BuyInsuranceCall& call, BlockNumber block) {
    BuyOutcome out;
    out.gas = Wei(config_.gas_buy_insurance) * pricing_.gas_price_wei;
    out.premium = pricing::premium(pricing_, call.duration, call.coverage_value);

    if (balance(call.buyer) < out.gas) {
        out.revert = RevertReason::kInsufficientFunds;
        out.gas = 0;
        return out;
    }
    // Gas is consumed whether or not the purchase goes through.
    debit(call.buyer, out.gas);
    gas_collected_ += out.gas;

    auto revert = [&out](RevertReason why) {
        out.revert = why;
        out.premium = 0;
        return out;
    };

    if (call.duration == 0 || call.allocations.empty() || call.coverage_value < 0) {
        return revert(RevertReason::kMalformed);
    }
    if (call.duration > config_.max_coverage_duration) return revert(RevertReason::kDurationTooLong);

    std::set<PublicKey> seen;
    Wei total = 0;
    for (const auto& a : call.allocations) {
        if (a.amount <= 0 || !seen.insert(a.provider).second) return revert(RevertReason::kMalformed);
        total += a.amount;
    }
    if (total < call.coverage_value) return revert(RevertReason::kCoverageExceedsAllocations);

    for (const auto& a : call.allocations) {
        const auto* rec = find_provider(a.provider);
        if (!rec || rec->status != ProviderStatus::kActive) return revert(RevertReason::kInactiveProvider);
        if (a.amount > rec->attributable()) return revert(RevertReason::kInsufficientAttributableStake);
    }
    if (balance(call.buyer) < out.premium) return revert(RevertReason::kInsufficientFunds);

    debit(call.buyer, out.premium);

    InsurancePolicy pol;
    pol.id = next_policy_id_++;
    pol.buyer = call.buyer;
    pol.coverage_value = call.coverage_value;
    pol.start_block = block;
    pol.duration = call.duration;
    pol.premium_paid = out.premium;

    // Premium is shared pro rata to the allocated amounts; the rounding
    // remainder goes to the first allocation.
    Wei distributed = 0;
    for (const auto& a : call.allocations) {
        auto* rec = find_mut(a.provider);
        rec->locked += a.amount;
        const Wei share = out.premium * a.amount / total;
        rec->rewards += share;
        distributed += share;
        pol.allocations.push_back(PolicyAllocation{a.provider, rec->record_id, a.amount, true, false});
    }
    find_mut(call.allocations.front().provider)->rewards += out.premium - distributed;

    out.id = pol.id;
    policies_.emplace(pol.id, std::move(pol));
    return out;
}

SlashOutcome Contract::slash(const SlashCall& call, BlockNumber block, const Chain& chain) {
    SlashOutcome out;
    auto* rec = find_mut(call.provider);
    if (!rec) {
        out.rejected = RejectReason::kUnknownProvider;
        return out;
    }
    if (!verify(call.provider, call.claim.encode(), call.signature)) {
        out.rejected = RejectReason::kSignatureInvalid;
        return out;
    }
    if (rec->status == ProviderStatus::kSlashed) {
        out.rejected = RejectReason::kAlreadySlashed;
        return out;
    }
    if (rec->status == ProviderStatus::kExited) {
        out.rejected = RejectReason::kProviderExited;
        return out;
    }
    const auto n = call.claim.block_number;
    if (!chain.contains(n) || !chain.is_finalized(n)) {
        out.rejected = RejectReason::kBlockNotYetFinal;
        return out;
    }
    if (*chain.finalized_block_hash(n) == call.claim.block_hash) {
        out.rejected = RejectReason::kHashMatchesFinalized;
        return out;
    }

    SlashEvent ev;
    ev.provider = call.provider;
    ev.offending_signature = call.signature;
    ev.claim = call.claim;
    ev.slashed_amount = rec->stake;
    ev.submitter = call.submitter;
    ev.recorded_in_block = block;

    // Claim against the policy named in the signed payload.
    if (call.claim.insurance_id) {
        auto it = policies_.find(*call.claim.insurance_id);
        if (it == policies_.end()) {
            out.claim = ClaimStatus::kUnknownPolicy;
        } else {
            auto& pol = it->second;
            auto alloc = std::find_if(pol.allocations.begin(), pol.allocations.end(),
                                      [&](const PolicyAllocation& a) { return a.record_id == rec->record_id; });
            if (pol.state == PolicyState::kExpired || block > pol.last_covered_block()) {
                out.claim = ClaimStatus::kPolicyNotOpen;
            } else if (alloc == pol.allocations.end() || !alloc->locked) {
                out.claim = ClaimStatus::kNotAllocated;
            } else if (alloc->claimed || pol.paid_out >= pol.coverage_value) {
                out.claim = ClaimStatus::kAlreadyClaimed;
            } else {
                // Coverage is owed in full; a second allocated liar tops up
                // whatever the first stake could not cover.
                out.claim = ClaimStatus::kPaid;
                alloc->claimed = true;
                ev.insurance_id = pol.id;
                ev.beneficiary = pol.buyer;
                ev.payout = std::min<Wei>(pol.coverage_value - pol.paid_out, ev.slashed_amount);
                pol.paid_out += ev.payout;
                pol.state = PolicyState::kClaimed;
            }
        }
    }

    const Wei remainder = ev.slashed_amount - ev.payout;
    ev.bounty = std::min<Wei>(remainder, ev.slashed_amount * config_.bounty_bps / 10'000);
    ev.burned = remainder - ev.bounty;

    if (ev.payout > 0) credit(ev.beneficiary, ev.payout);
    if (ev.bounty > 0) credit(ev.submitter, ev.bounty);
    burned_ += ev.burned;

    // The whole stake is gone, so every lock on it goes too.
    rec->stake = 0;
    rec->locked = 0;
    rec->status = ProviderStatus::kSlashed;
    rec->slashed_block = block;
    for (auto& [id, pol] : policies_) {
        for (auto& a : pol.allocations) {
            if (a.record_id == rec->record_id) a.locked = false;
        }
    }

    slash_events_.push_back(ev);
    out.event = std::move(ev);
    return out;
}

bool Contract::has_locked_allocation(std::uint64_t record_id) const {
    for (const auto& [id, pol] : policies_) {
        if (pol.state == PolicyState::kExpired) continue;
        for (const auto& a : pol.allocations) {
            if (a.record_id == record_id && a.locked) return true;
        }
    }
    return false;
}

BlockNumber Contract::release_block_of(const ProviderRecord& rec) const {
    BlockNumber release = last_block_of_epoch(*rec.withdraw_requested_epoch + 1);
    for (const auto& [id, pol] : policies_) {
        if (pol.state == PolicyState::kExpired) continue;
        for (const auto& a : pol.allocations) {
            if (a.record_id == rec.record_id && a.locked) {
                release = std::max(release, last_block_of_epoch(epoch_of(pol.expiry_block())));
            }
        }
    }
    return release;
}

std::optional<BlockNumber> Contract::scheduled_release_block(const PublicKey& pk) const {
    const auto* rec = find_provider(pk);
    if (!rec) return std::nullopt;
    if (rec->status == ProviderStatus::kExited) return rec->released_block;
    if (rec->status != ProviderStatus::kLeaving) return std::nullopt;
    return release_block_of(*rec);
}

std::vector<Effect> Contract::process_block_boundary(BlockNumber block) {
    std::vector<Effect> effects;

    // Expiries first, so a withdrawal due on this block sees the released locks.
    for (auto& [id, pol] : policies_) {
        if (pol.state == PolicyState::kExpired || pol.expiry_block() > block) continue;
        bool released_any = false;
        Wei released = 0;
        for (auto& a : pol.allocations) {
            if (!a.locked) continue;
            auto& rec = records_[a.record_id];
            rec.locked -= a.amount;
            released += a.amount;
            a.locked = false;
            released_any = true;
        }
        const bool was_open = pol.state == PolicyState::kOpen;
        if (was_open) pol.state = PolicyState::kExpired;
        if (was_open || released_any) {
            effects.push_back({Effect::Kind::kPolicyExpired, pol.id, std::nullopt, released});
        }
    }

    if (is_epoch_end(block)) {
        const auto epoch = epoch_of(block);
        for (auto& rec : records_) {
            if (rec.status != ProviderStatus::kLeaving) continue;
            if (epoch < *rec.withdraw_requested_epoch + 1) continue;
            if (has_locked_allocation(rec.record_id)) continue;
            const Wei payout = rec.stake + rec.rewards;
            credit(rec.public_key, payout);
            rec.stake = 0;
            rec.rewards = 0;
            rec.status = ProviderStatus::kExited;
            rec.released_block = block;
            effects.push_back({Effect::Kind::kProviderExited, std::nullopt, rec.public_key, payout});
        }
    }
    return effects;
}

ExecutedCall Contract::execute(const Transaction& tx, BlockNumber block, const Chain& chain) {
    ExecutedCall out;
    out.receipt.call_id = tx.id;
    std::optional<ContractCall> call;
    try {
        call = decode_call(tx.payload);
    } catch (const Error&) {
        call.reset();
    }
    if (!call) {
        out.receipt.status = ReceiptStatus::kReverted;
        out.receipt.reason = static_cast<std::uint8_t>(RevertReason::kMalformed);
        return out;
    }

    auto reverted = [&out](RevertReason why) {
        out.receipt.status = ReceiptStatus::kReverted;
        out.receipt.reason = static_cast<std::uint8_t>(why);
    };

    if (const auto* c = std::get_if<RegisterCall>(&*call)) {
        out.receipt.call = MsgTag::kRegister;
        try {
            register_provider(c->provider, c->stake, block);
        } catch (const Error& e) {
            switch (e.code()) {
                case Errc::kBelowMinStake: reverted(RevertReason::kBelowMinStake); break;
                case Errc::kDuplicateProvider: reverted(RevertReason::kDuplicateProvider); break;
                default: reverted(RevertReason::kInsufficientFunds); break;
            }
        }
    } else if (const auto* c = std::get_if<WithdrawCall>(&*call)) {
        out.receipt.call = MsgTag::kWithdraw;
        try {
            request_withdraw(c->provider, block);
        } catch (const Error&) {
            reverted(RevertReason::kNotActive);
        }
    } else if (const auto* c = std::get_if<BuyInsuranceCall>(&*call)) {
        out.receipt.call = MsgTag::kBuyInsurance;
        const auto res = buy_insurance(*c, block);
        if (res.ok()) {
            out.receipt.insurance_id = res.id;
        } else {
            reverted(res.revert);
        }
    } else if (const auto* c = std::get_if<SlashCall>(&*call)) {
        out.receipt.call = MsgTag::kSlash;
        auto res = slash(*c, block, chain);
        if (res.ok()) {
            out.receipt.insurance_id = res.event->insurance_id;
            out.receipt.reason = static_cast<std::uint8_t>(res.claim);
            out.slash_event = std::move(res.event);
        } else {
            out.receipt.status = ReceiptStatus::kRejected;
            out.receipt.reason = static_cast<std::uint8_t>(*res.rejected);
        }
    }
    return out;
}

ProviderSetEntry Contract::entry_of(const ProviderRecord& rec) {
    return ProviderSetEntry{rec.public_key, rec.stake, rec.attributable(), rec.status, rec.joined_epoch,
                            rec.withdraw_requested_epoch};
}

std::vector<ProviderSetEntry> Contract::active_set(std::uint64_t epoch, BlockNumber now) const {
    const auto current = epoch_of(now);
    if (epoch > current + 1) throw Error(Errc::kEpochTooFar, "epoch is more than one ahead of the chain");
    if (epoch < current) throw Error(Errc::kEpochTooFar, "past epochs are not retained");
    std::vector<ProviderSetEntry> out;
    for (const auto& rec : records_) {
        if (rec.status != ProviderStatus::kActive && rec.status != ProviderStatus::kLeaving) continue;
        if (epoch == current + 1 && rec.status == ProviderStatus::kLeaving &&
            release_block_of(rec) <= last_block_of_epoch(current)) {
            continue;
        }
        out.push_back(entry_of(rec));
    }
    return out;
}

std::vector<ProviderSetEntry> Contract::settled_set(std::uint64_t epoch) const {
    std::vector<ProviderSetEntry> out;
    for (const auto& rec : records_) {
        if (rec.status == ProviderStatus::kSlashed) continue;
        if (rec.joined_epoch + 2 > epoch) continue;
        if (rec.withdraw_requested_epoch && *rec.withdraw_requested_epoch + 2 <= epoch) continue;
        out.push_back(entry_of(rec));
    }
    return out;
}

Wei Contract::total_value() const {
    Wei total = burned_ + gas_collected_;
    for (const auto& [pk, bal] : accounts_) total += bal;
    for (const auto& rec : records_) total += rec.stake + rec.rewards;
    return total;
}

bool Contract::no_overload() const {
    return std::all_of(records_.begin(), records_.end(),
                       [](const ProviderRecord& r) { return r.locked >= 0 && r.locked <= r.stake; });
}

Bytes Contract::serialize() const {
    ByteWriter w;
    w.tag(MsgTag::kContractState).u64(records_.size());
    for (const auto& r : records_) {
        w.u64(r.record_id).fixed(r.public_key.view());
        encode_wei(w, r.stake);
        encode_wei(w, r.locked);
        encode_wei(w, r.rewards);
        w.u8(static_cast<std::uint8_t>(r.status)).u64(r.joined_epoch).u64(r.joined_block);
        w.u64(r.withdraw_requested_block.value_or(~0ULL)).u64(r.released_block.value_or(~0ULL));
        w.u64(r.slashed_block.value_or(~0ULL));
    }
    w.u64(policies_.size());
    for (const auto& [id, p] : policies_) {
        w.u64(id).fixed(p.buyer.view());
        encode_wei(w, p.coverage_value);
        w.u64(p.start_block).u64(p.duration).u8(static_cast<std::uint8_t>(p.state));
        encode_wei(w, p.premium_paid);
        encode_wei(w, p.paid_out);
        w.u32(static_cast<std::uint32_t>(p.allocations.size()));
        for (const auto& a : p.allocations) {
            w.fixed(a.provider.view()).u64(a.record_id);
            encode_wei(w, a.amount);
            w.u8(a.locked ? 1 : 0).u8(a.claimed ? 1 : 0);
        }
    }
    w.u64(slash_events_.size());
    for (const auto& e : slash_events_) w.var(e.encode());
    w.u64(accounts_.size());
    for (const auto& [pk, bal] : accounts_) {
        w.fixed(pk.view());
        encode_wei(w, bal);
    }
    encode_wei(w, burned_);
    encode_wei(w, gas_collected_);
    encode_wei(w, minted_);
    return std::move(w).take();
}

}  // namespace stakelc
