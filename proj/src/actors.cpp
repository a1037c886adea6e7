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

#include <stakelc/actors.hpp>

#include <array>
#include <string>

namespace stakelc {

std::string_view to_string(ProviderStrategy s) {
    switch (s) {
        case ProviderStrategy::kHonest: return "honest";
        case ProviderStrategy::kWrongHash: return "wrong_hash";
        case ProviderStrategy::kUnfinalizedHash: return "unfinalized_hash";
        case ProviderStrategy::kUnresponsive: return "unresponsive";
        case ProviderStrategy::kExitScam: return "exit_scam";
    }
    return "unknown";
}

std::string_view to_string(StrategyScope s) { return s == StrategyScope::kAny ? "any" : "insured"; }

std::optional<ProviderStrategy> parse_strategy(std::string_view text) {
    for (auto s : all_strategies()) {
        if (to_string(s) == text) return s;
    }
    return std::nullopt;
}

std::optional<StrategyScope> parse_scope(std::string_view text) {
    if (text == "any") return StrategyScope::kAny;
    if (text == "insured") return StrategyScope::kInsuredOnly;
    return std::nullopt;
}

const std::vector<ProviderStrategy>& all_strategies() {
    static const std::vector<ProviderStrategy> all{ProviderStrategy::kHonest, ProviderStrategy::kWrongHash,
                                                   ProviderStrategy::kUnfinalizedHash, ProviderStrategy::kUnresponsive,
                                                   ProviderStrategy::kExitScam};
    return all;
}

std::string_view to_string(VerdictKind v) {
    switch (v) {
        case VerdictKind::kOk: return "ok";
        case VerdictKind::kDispute: return "dispute";
        case VerdictKind::kProviderInactive: return "provider_inactive";
        case VerdictKind::kDeferred: return "deferred";
        case VerdictKind::kUnverifiable: return "unverifiable";
    }
    return "unknown";
}

std::optional<SignedResponse> honest_response(const Query& query, const Chain& chain, const KeyPair& keys) {
    const auto n = query.payload.block_number;
    if (!chain.is_finalized(n)) return std::nullopt;
    const auto& block = chain.block(n);
    if (!chain.find_transaction(n, query.payload.state_hash)) return std::nullopt;
    ResponseClaim claim{n, block.hash, query.payload.state_hash, query.payload.insurance_id};
    return make_response(query.query_id, std::move(claim), block.header,
                         chain.inclusion_proof(n, query.payload.state_hash), keys);
}

SignedResponse forged_response(const Query& query, BlockNumber number, const Chain& chain, const KeyPair& keys) {
    BlockHeader header;
    header.number = number;
    if (chain.contains(number)) {
        header.parent_hash = chain.block(number).header.parent_hash;
    } else if (number == chain.tip_height() + 1) {
        header.parent_hash = chain.tip().hash;
    }
    // A decoy second leaf keeps the forged root away from any real block.
    ByteWriter decoy;
    decoy.fixed(keys.public_key.view()).u64(number);
    const std::array<Digest, 2> leaves{query.payload.state_hash, tagged_hash(0x7f, decoy.bytes())};
    header.transactions_root = merkle_root(std::span<const Digest>(leaves));
    ResponseClaim claim{number, header.hash(), query.payload.state_hash, query.payload.insurance_id};
    return make_response(query.query_id, std::move(claim), header, merkle_prove(std::span<const Digest>(leaves), 0),
                         keys);
}

std::optional<SignedResponse> provider_respond(ProviderStrategy strategy, const Query& query, const Chain& chain,
                                               const KeyPair& keys) {
    switch (strategy) {
        case ProviderStrategy::kHonest: return honest_response(query, chain, keys);
        case ProviderStrategy::kWrongHash:
        case ProviderStrategy::kExitScam: return forged_response(query, query.payload.block_number, chain, keys);
        case ProviderStrategy::kUnfinalizedHash: return forged_response(query, chain.tip_height() + 1, chain, keys);
        case ProviderStrategy::kUnresponsive: return std::nullopt;
    }
    return std::nullopt;
}

DataProvider::DataProvider(ActorId id, KeyPair keys, ProviderStrategy strategy, StrategyScope scope)
    : id_(std::move(id)), keys_(keys), strategy_(strategy), scope_(scope) {}

void DataProvider::on_query(const Query& query, const ActorId& from, const FullNodeView& node, Context& ctx) {
    if (gone_ || !query.signature_valid()) return;
    auto effective = strategy_;
    if (scope_ == StrategyScope::kInsuredOnly && !query.payload.insurance_id) effective = ProviderStrategy::kHonest;

    if (effective == ProviderStrategy::kHonest) {
        const auto* rec = node.contract.find_provider(keys_.public_key);
        if (!rec || rec->status != ProviderStatus::kActive) return;
    }
    auto response = provider_respond(effective, query, node.chain, keys_);
    if (!response) {
        ctx.log(id_, "silent", sha256(query.payload.encode()), "query " + std::to_string(query.query_id));
        return;
    }
    if (effective != ProviderStrategy::kHonest) {
        ++lies_;
        if (!first_lie_) first_lie_ = ctx.now();
        ctx.log(id_, "signed_false", sha256(response->claim.encode()), std::string(to_string(effective)));
    }
    ctx.send(id_, from, std::move(*response));

    if (effective == ProviderStrategy::kExitScam) {
        ctx.submit(id_, WithdrawCall{keys_.public_key});
        ctx.log(id_, "withdraw_requested", sha256(keys_.public_key.view()), "exit scam");
        gone_ = true;
    }
}

WatcherVerdict watcher_check(const SignedResponse& response, const PublicKey& watcher, const FullNodeView& node) {
    WatcherVerdict v;
    if (!response.signature_valid()) {
        v.kind = VerdictKind::kUnverifiable;
        return v;
    }
    const auto* rec = node.contract.find_provider(response.provider);
    if (!rec) {
        v.kind = VerdictKind::kUnverifiable;
        return v;
    }
    if (rec->status == ProviderStatus::kSlashed) {
        v.kind = VerdictKind::kProviderInactive;
        if (const auto* ev = node.contract.last_slash_of(response.provider)) v.prior_slash = *ev;
        return v;
    }
    const auto n = response.claim.block_number;
    if (!node.chain.is_finalized(n)) {
        v.kind = VerdictKind::kDeferred;
        return v;
    }
    if (*node.chain.finalized_block_hash(n) == response.claim.block_hash) {
        v.kind = VerdictKind::kOk;
        return v;
    }
    v.kind = VerdictKind::kDispute;
    v.evidence = SlashCall{watcher, response.provider, response.claim, response.signature};
    return v;
}

std::optional<Alert> make_alert(AlertKind kind, const SlashEvent& event, std::uint64_t query_id,
                                const FullNodeView& node) {
    const auto block = event.recorded_in_block;
    if (!node.chain.is_finalized(block)) return std::nullopt;
    Alert a;
    a.kind = kind;
    a.offending = event.provider;
    a.query_id = query_id;
    a.slash_event_block = block;
    a.slash_record = event.encode();
    a.slash_event_inclusion_proof = node.chain.inclusion_proof(block, sha256(a.slash_record));
    return a;
}

Watcher::Watcher(ActorId id, KeyPair keys) : id_(std::move(id)), keys_(keys) {}

void Watcher::on_forward(const SignedResponse& response, const ActorId& client, const FullNodeView& node,
                         Context& ctx) {
    const auto verdict = watcher_check(response, keys_.public_key, node);
    ctx.log(id_, "verdict", sha256(response.claim.encode()), std::string(to_string(verdict.kind)));
    act(Review{response, client}, verdict, node, ctx);
}

void Watcher::act(const Review& review, const WatcherVerdict& verdict, const FullNodeView&, Context& ctx) {
    switch (verdict.kind) {
        case VerdictKind::kOk:
        case VerdictKind::kUnverifiable: break;
        case VerdictKind::kDeferred: deferred_.push_back(review); break;
        case VerdictKind::kDispute: {
            const auto tx = ctx.submit(id_, *verdict.evidence);
            ++disputes_;
            ctx.log(id_, "slash_submitted", tx, review.response.provider.hex());
            in_flight_.push_back(InFlight{tx, review});
            break;
        }
        case VerdictKind::kProviderInactive: queue_alert(AlertKind::kProviderInactive, review); break;
    }
}

void Watcher::queue_alert(AlertKind kind, const Review& review) {
    alerts_.push_back(PendingAlert{kind, review.response.provider, review.response.query_id, review.client});
}

void Watcher::on_tick(const FullNodeView& node, Context& ctx) {
    auto deferred = std::move(deferred_);
    deferred_.clear();
    for (auto& review : deferred) {
        const auto verdict = watcher_check(review.response, keys_.public_key, node);
        if (verdict.kind != VerdictKind::kDeferred) {
            ctx.log(id_, "verdict", sha256(review.response.claim.encode()), std::string(to_string(verdict.kind)));
        }
        act(review, verdict, node, ctx);
    }

    std::vector<InFlight> still_waiting;
    for (auto& f : in_flight_) {
        const auto it = node.calls.find(f.slash_tx);
        if (it == node.calls.end()) {
            still_waiting.push_back(std::move(f));
            continue;
        }
        const auto& receipt = it->second.receipt;
        if (receipt.status == ReceiptStatus::kOk) {
            queue_alert(AlertKind::kProviderSlashed, f.review);
        } else if (receipt.reason == static_cast<std::uint8_t>(RejectReason::kAlreadySlashed)) {
            queue_alert(AlertKind::kProviderInactive, f.review);
        } else if (receipt.reason == static_cast<std::uint8_t>(RejectReason::kBlockNotYetFinal)) {
            deferred_.push_back(std::move(f.review));
        } else {
            ctx.log(id_, "slash_rejected", f.slash_tx,
                    std::string(to_string(static_cast<RejectReason>(receipt.reason))));
        }
    }
    in_flight_ = std::move(still_waiting);

    std::vector<PendingAlert> unsent;
    for (auto& p : alerts_) {
        const auto* ev = node.contract.last_slash_of(p.provider);
        auto alert = ev ? make_alert(p.kind, *ev, p.query_id, node) : std::nullopt;
        if (!alert) {
            unsent.push_back(std::move(p));
            continue;
        }
        ++alerts_sent_;
        ctx.log(id_, "alert_sent", sha256(alert->encode()), p.provider.hex());
        ctx.send(id_, p.client, std::move(*alert));
    }
    alerts_ = std::move(unsent);
}

}  // namespace stakelc
