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

#include <stakelc/light_client.hpp>

#include <algorithm>
#include <iterator>

#include <stakelc/errors.hpp>

namespace stakelc {

namespace {

    constexpr std::uint64_t kMaxRounds = 32;
    constexpr std::uint64_t kMaxPurchases = 16;

    void encode_compact(ByteWriter& w, const Wei& amount) {
        Bytes digits;
        boost::multiprecision::export_bits(amount, std::back_inserter(digits), 8);
        while (digits.size() > 1 && digits.front() == 0) digits.erase(digits.begin());
        w.u8(static_cast<std::uint8_t>(digits.size())).fixed(digits);
    }

    bool contains_provider(const std::vector<Allocation>& allocations, const PublicKey& pk) {
        return std::any_of(allocations.begin(), allocations.end(),
                           [&](const Allocation& a) { return a.provider == pk; });
    }

}  // namespace

std::string_view to_string(Protocol p) { return p == Protocol::kEco ? "eco" : "ins"; }

std::optional<Protocol> parse_protocol(std::string_view text) {
    if (text == "eco") return Protocol::kEco;
    if (text == "ins") return Protocol::kIns;
    return std::nullopt;
}

std::string_view to_string(CheckKind k) {
    switch (k) {
        case CheckKind::kTarget: return "target";
        case CheckKind::kInsuranceReceipt: return "insurance_receipt";
        case CheckKind::kSetUpdate: return "set_update";
    }
    return "unknown";
}

std::string_view to_string(CheckPhase p) {
    switch (p) {
        case CheckPhase::kWaiting: return "waiting";
        case CheckPhase::kBuying: return "buying";
        case CheckPhase::kQuerying: return "querying";
        case CheckPhase::kChallenge: return "challenge";
        case CheckPhase::kListening: return "listening";
        case CheckPhase::kDone: return "done";
        case CheckPhase::kFailed: return "failed";
    }
    return "unknown";
}

std::uint64_t coverage_duration_for(const ClientConfig& config, const ProtocolTiming& timing) {
    if (config.coverage_duration) return *config.coverage_duration;
    pricing::CoverageInputs in;
    in.t_fin = timing.finality_blocks;
    in.challenge_periods = {config.receipt_period(), config.challenge_period};
    in.delta_comm = config.delta_comm != 0 ? config.delta_comm : 4 * timing.delta;
    in.delta_comp = config.delta_comp;
    return pricing::min_coverage_duration(in);
}

std::vector<Allocation> select_providers(std::vector<Candidate> candidates, const Wei& required) {
    if (required <= 0) throw Error(Errc::kConfigInvalid, "required backing must be positive");
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.backing != b.backing) return a.backing > b.backing;
        return a.provider < b.provider;
    });
    std::vector<Allocation> out;
    Wei remaining = required;
    for (const auto& c : candidates) {
        if (c.backing <= 0) continue;
        const Wei take = std::min(c.backing, remaining);
        out.push_back(Allocation{c.provider, take});
        remaining -= take;
        if (remaining == 0) return out;
    }
    throw Error(Errc::kNoEligibleProviders, "attributable stake below the required backing");
}

Wei required_coverage(std::span<const Wei> overlapping_values) {
    Wei total = 0;
    for (const auto& v : overlapping_values) total += v;
    return total;
}

Bytes KnownProvider::encode() const {
    ByteWriter w;
    w.fixed(public_key.view());
    encode_compact(w, stake);
    encode_compact(w, attributable);
    w.u64(joined_epoch).u64(withdraw_epoch.value_or(~0ULL)).u8(slashed ? 1 : 0);
    return std::move(w).take();
}

std::vector<KnownProvider> HeavyCheckOracle::provider_set() const {
    std::vector<KnownProvider> out;
    for (const auto& rec : contract_.records()) {
        if (rec.status != ProviderStatus::kActive && rec.status != ProviderStatus::kLeaving) continue;
        out.push_back(KnownProvider{rec.public_key, rec.stake, rec.attributable(), rec.joined_epoch, rec.joined_block,
                                    rec.withdraw_requested_epoch, false});
    }
    return out;
}

bool HeavyCheckOracle::slash_recorded(const Alert& alert) const {
    if (!alert.slash_event_block) return false;
    const auto block = *alert.slash_event_block;
    if (!chain_.is_finalized(block)) return false;
    const auto& root = chain_.block(block).header.transactions_root;
    if (!merkle_verify(root, sha256(alert.slash_record).view(), alert.slash_event_inclusion_proof)) return false;
    try {
        return SlashEvent::decode(alert.slash_record).provider == alert.offending;
    } catch (const Error&) {
        return false;
    }
}

std::optional<Digest> HeavyCheckOracle::finalized_hash(BlockNumber n) const {
    if (!chain_.contains(n)) return std::nullopt;
    return chain_.finalized_block_hash(n);
}

LightClient::LightClient(ActorId id, KeyPair keys, ClientConfig config, ProtocolTiming timing,
                         pricing::PricingParams pricing, std::vector<ActorId> watchers)
    : id_(std::move(id)),
      keys_(keys),
      config_(std::move(config)),
      timing_(timing),
      pricing_(std::move(pricing)),
      watchers_(std::move(watchers)) {
    coverage_duration_ = coverage_duration_for(config_, timing_);
}

std::uint64_t LightClient::start_check(const Target& target, const Wei& value, Tick not_before, Context& ctx) {
    auto& c = spawn(CheckKind::kTarget, target, value, not_before, config_.challenge_period, std::nullopt);
    c.protocol = config_.protocol;
    ctx.log(id_, "check_started", target.state_hash,
            "check " + std::to_string(c.id) + " " + std::string(to_string(c.protocol)) + " block " +
                std::to_string(target.block_number) + " value " + to_string(value));
    return c.id;
}

Check& LightClient::spawn(CheckKind kind, const Target& target, const Wei& value, Tick not_before,
                          std::uint64_t challenge_period, std::optional<std::uint64_t> parent) {
    Check c;
    c.id = next_check_id_++;
    c.kind = kind;
    c.target = target;
    c.value = value;
    c.not_before = not_before;
    c.challenge_period = challenge_period;
    c.parent = parent;
    return checks_.emplace(c.id, std::move(c)).first->second;
}

const Check* LightClient::check(std::uint64_t id) const {
    const auto it = checks_.find(id);
    return it == checks_.end() ? nullptr : &it->second;
}

std::vector<ClientEvent> LightClient::drain_events() {
    std::vector<ClientEvent> out;
    out.swap(events_);
    return out;
}

void LightClient::bootstrap(Context& ctx, const HeavyCheckOracle& oracle) {
    known_ = oracle.provider_set();
    ++heavy_checks_;
    bootstrapped_ = true;
    snapshot_epoch_ = epoch_of(ctx.now());
    ctx.log(id_, "heavy_check", Digest{}, "bootstrap " + std::to_string(known_.size()) + " providers");
}

void LightClient::ensure_set(Context& ctx, const HeavyCheckOracle& oracle) {
    if (!bootstrapped_ || (!config_.track_provider_set && epoch_of(ctx.now()) != snapshot_epoch_)) {
        bootstrap(ctx, oracle);
    }
}

KnownProvider* LightClient::latest(const PublicKey& pk) {
    for (auto it = known_.rbegin(); it != known_.rend(); ++it) {
        if (it->public_key == pk) return &*it;
    }
    return nullptr;
}

std::vector<Candidate> LightClient::candidates(const Check& c, bool attributable) const {
    std::vector<Candidate> out;
    for (const auto& k : known_) {
        if (k.slashed || k.withdraw_epoch || c.excluded.count(k.public_key)) continue;
        out.push_back(Candidate{k.public_key, attributable ? k.attributable : k.stake});
    }
    return out;
}

std::vector<SetEntry> LightClient::predicted_set(std::uint64_t epoch) const {
    std::vector<SetEntry> out;
    for (const auto& k : known_) {
        if (k.slashed || k.joined_epoch + 2 > epoch) continue;
        if (k.withdraw_epoch && *k.withdraw_epoch + 2 <= epoch) continue;
        out.push_back(SetEntry{k.public_key, k.stake});
    }
    std::sort(out.begin(), out.end(),
              [](const SetEntry& a, const SetEntry& b) { return a.public_key < b.public_key; });
    return out;
}

std::size_t LightClient::snapshot_bytes() const {
    std::size_t total = 16;  // snapshot epoch and counters
    for (const auto& k : known_) total += k.encode().size();
    return total;
}

void LightClient::start_round(Check& c, Context& ctx, const HeavyCheckOracle& oracle) {
    if (++c.rounds > kMaxRounds) {
        fail(c, ctx, "round limit");
        return;
    }
    ensure_set(ctx, oracle);
    try {
        c.selected = select_providers(candidates(c, false), c.value);
    } catch (const Error& e) {
        fail(c, ctx, std::string(to_string(e.code())));
        return;
    }
    send_queries(c, ctx);
}

void LightClient::send_queries(Check& c, Context& ctx) {
    c.query_id = next_query_id_++;
    query_to_check_[c.query_id] = c.id;
    c.responses.clear();
    c.query_tick = ctx.now();
    QueryPayload payload{c.target.block_number, c.target.state_hash, std::nullopt};
    if (c.kind == CheckKind::kTarget && c.protocol == Protocol::kIns) payload.insurance_id = c.policy;
    const auto query = make_query(c.query_id, payload, keys_);
    for (const auto& a : c.selected) ctx.send(id_, provider_actor_id(a.provider), query);
    c.phase = CheckPhase::kQuerying;
    ctx.log(id_, "query_sent", sha256(payload.encode()),
            "check " + std::to_string(c.id) + " providers " + std::to_string(c.selected.size()));
}

void LightClient::buy(Check& c, Context& ctx, const HeavyCheckOracle& oracle) {
    if (++c.purchases > kMaxPurchases) {
        fail(c, ctx, "purchase limit");
        return;
    }
    ensure_set(ctx, oracle);
    std::vector<Allocation> allocations;
    try {
        allocations = select_providers(candidates(c, true), c.value);
    } catch (const Error& e) {
        if (c.refreshed || e.code() != Errc::kNoEligibleProviders) {
            fail(c, ctx, std::string(to_string(e.code())));
            return;
        }
        // Attributable stakes may be stale; one fresh read before giving up.
        c.refreshed = true;
        bootstrap(ctx, oracle);
        try {
            allocations = select_providers(candidates(c, true), c.value);
        } catch (const Error& again) {
            fail(c, ctx, std::string(to_string(again.code())));
            return;
        }
    }
    const BuyInsuranceCall call{keys_.public_key, allocations, c.value, coverage_duration_};
    c.buy_tx = ctx.submit(id_, call);
    c.buy_allocations = std::move(allocations);
    c.coverage_duration = coverage_duration_;
    c.policy.reset();
    c.receipt_notice.reset();
    c.receipt_check.reset();
    c.selected.clear();
    c.responses.clear();
    c.phase = CheckPhase::kBuying;
    ctx.log(id_, "insurance_bought", *c.buy_tx,
            "check " + std::to_string(c.id) + " providers " + std::to_string(c.buy_allocations.size()) +
                " duration " + std::to_string(coverage_duration_));
}

void LightClient::start_insured_query(Check& c, Context& ctx, const HeavyCheckOracle& oracle) {
    for (const auto& a : c.buy_allocations) {
        const auto* k = latest(a.provider);
        if (!k || k->slashed || c.excluded.count(a.provider)) {
            restart(c, ctx, oracle, "insured provider dropped");
            return;
        }
    }
    // Leave room for a dispute to land while the policy is still open.
    if (ctx.now() + 3 * timing_.delta + 1 > c.policy_start + coverage_duration_) {
        restart(c, ctx, oracle, "coverage too short");
        return;
    }
    if (++c.rounds > kMaxRounds) {
        fail(c, ctx, "round limit");
        return;
    }
    c.selected = c.buy_allocations;
    send_queries(c, ctx);
}

void LightClient::restart(Check& c, Context& ctx, const HeavyCheckOracle& oracle, std::string_view why) {
    ctx.log(id_, "restart", c.target.state_hash, "check " + std::to_string(c.id) + " " + std::string(why));
    if (c.kind == CheckKind::kTarget && c.protocol == Protocol::kIns) {
        buy(c, ctx, oracle);
    } else {
        start_round(c, ctx, oracle);
    }
}

void LightClient::evaluate(Check& c, Context& ctx, const HeavyCheckOracle& oracle) {
    const bool insured = c.kind == CheckKind::kTarget && c.protocol == Protocol::kIns;
    const std::optional<InsuranceId> expected_id = insured ? c.policy : std::nullopt;
    std::vector<PublicKey> bad;
    for (const auto& [pk, r] : c.responses) {
        ++signature_verifications_;
        const bool ok = r.signature_valid() && r.claim.block_number == c.target.block_number &&
                        r.claim.state_hash == c.target.state_hash && r.claim.insurance_id == expected_id &&
                        r.proof_valid();
        if (!ok) bad.push_back(pk);
    }
    if (!bad.empty()) {
        for (const auto& pk : bad) {
            c.excluded.insert(pk);
            ctx.log(id_, "invalid_response", sha256(c.responses.at(pk).claim.encode()), pk.hex());
        }
        restart(c, ctx, oracle, "invalid response");
        return;
    }
    const auto& first = c.responses.begin()->second.claim.block_hash;
    const bool agree = std::all_of(c.responses.begin(), c.responses.end(),
                                   [&](const auto& kv) { return kv.second.claim.block_hash == first; });
    if (!agree) {
        ++heavy_checks_;
        const auto truth = oracle.finalized_hash(c.target.block_number);
        ctx.log(id_, "heavy_check", truth.value_or(Digest{}), "disagreement at block " +
                                                                  std::to_string(c.target.block_number));
        for (const auto& [pk, r] : c.responses) {
            if (!truth || r.claim.block_hash != *truth) c.excluded.insert(pk);
        }
        restart(c, ctx, oracle, "disagreeing responses");
        return;
    }
    c.signatures = c.responses.size();
    c.accepted_hash = first;
    accept(c, ctx, oracle);
}

void LightClient::accept(Check& c, Context& ctx, const HeavyCheckOracle& oracle) {
    c.accepted = true;
    c.accepted_at = ctx.now();
    ctx.log(id_, "accepted", *c.accepted_hash,
            "check " + std::to_string(c.id) + " " + std::string(to_string(c.kind)) + " signatures " +
                std::to_string(c.signatures));
    if (c.kind == CheckKind::kTarget && c.protocol == Protocol::kIns) {
        c.phase = CheckPhase::kListening;
        c.listen_until = ctx.now() + config_.challenge_period;
        events_.push_back(ClientEvent{ClientEvent::Kind::kAccepted, c});
        return;
    }
    c.phase = CheckPhase::kDone;
    events_.push_back(ClientEvent{ClientEvent::Kind::kAccepted, c});

    if (c.kind == CheckKind::kSetUpdate && c.notice && c.notice->receipt.status == ReceiptStatus::kOk) {
        const auto& n = *c.notice;
        std::optional<ContractCall> call;
        try {
            call = decode_call(n.call_payload);
        } catch (const Error&) {
        }
        if (const auto* reg = call ? std::get_if<RegisterCall>(&*call) : nullptr) {
            const bool known = std::any_of(known_.begin(), known_.end(), [&](const KnownProvider& k) {
                return k.public_key == reg->provider && k.joined_block == n.block;
            });
            if (!known) {
                known_.push_back(KnownProvider{reg->provider, reg->stake, reg->stake, epoch_of(n.block), n.block,
                                               std::nullopt, false});
            }
        } else if (const auto* wd = call ? std::get_if<WithdrawCall>(&*call) : nullptr) {
            if (auto* k = latest(wd->provider); k && !k->withdraw_epoch) k->withdraw_epoch = epoch_of(n.block);
        }
    }
    if (c.parent) child_done(c, ctx, oracle);
}

void LightClient::fail(Check& c, Context& ctx, std::string why) {
    c.phase = CheckPhase::kFailed;
    c.failure = std::move(why);
    ctx.log(id_, "check_failed", c.target.state_hash, "check " + std::to_string(c.id) + " " + c.failure);
    events_.push_back(ClientEvent{ClientEvent::Kind::kFailed, c});
    if (c.parent) {
        // The parent cannot proceed without this check's answer.
        auto& parent = checks_.at(*c.parent);
        if (parent.receipt_check == c.id) fail(parent, ctx, "receipt check failed");
    }
}

void LightClient::child_done(Check& child, Context& ctx, const HeavyCheckOracle& oracle) {
    auto& parent = checks_.at(*child.parent);
    if (parent.phase != CheckPhase::kBuying || parent.receipt_check != child.id || !parent.receipt_notice) return;
    const auto& receipt = parent.receipt_notice->receipt;
    if (receipt.status != ReceiptStatus::kOk || !receipt.insurance_id) {
        ctx.log(id_, "insurance_reverted", receipt.call_id,
                std::string(to_string(static_cast<RevertReason>(receipt.reason))));
        bootstrap(ctx, oracle);
        buy(parent, ctx, oracle);
        return;
    }
    parent.policy = receipt.insurance_id;
    parent.policies.insert(*receipt.insurance_id);
    parent.policy_start = parent.receipt_notice->block;
    for (const auto& a : parent.buy_allocations) {
        if (auto* k = latest(a.provider)) k->attributable = k->attributable > a.amount ? Wei(k->attributable - a.amount) : Wei(0);
    }
    ctx.log(id_, "insurance_confirmed", receipt.call_id, "policy " + std::to_string(*parent.policy));
    start_insured_query(parent, ctx, oracle);
}

void LightClient::on_message(const Envelope& env, Context& ctx, const HeavyCheckOracle& oracle) {
    if (const auto* r = std::get_if<SignedResponse>(&env.message)) {
        on_response(*r, ctx, oracle);
    } else if (const auto* a = std::get_if<Alert>(&env.message)) {
        on_alert(*a, ctx, oracle);
    } else if (const auto* n = std::get_if<TxNotice>(&env.message)) {
        on_notice(*n, ctx);
    }
}

void LightClient::on_response(const SignedResponse& r, Context& ctx, const HeavyCheckOracle& oracle) {
    const auto it = query_to_check_.find(r.query_id);
    if (it == query_to_check_.end()) return;
    auto& c = checks_.at(it->second);
    if (c.query_id != r.query_id || c.phase != CheckPhase::kQuerying) {
        ctx.log(id_, "late_response", sha256(r.claim.encode()), r.provider.hex());
        return;
    }
    if (!contains_provider(c.selected, r.provider) || c.responses.count(r.provider)) return;
    for (const auto& w : watchers_) ctx.send(id_, w, Forward{r});
    c.responses.emplace(r.provider, r);
    c.last_response = ctx.now();
    c.last_forward = ctx.now();
    ctx.log(id_, "response_forwarded", sha256(r.claim.encode()), r.provider.hex());
    if (c.responses.size() < c.selected.size()) return;
    if (c.kind == CheckKind::kTarget && c.protocol == Protocol::kIns) {
        evaluate(c, ctx, oracle);
    } else {
        c.phase = CheckPhase::kChallenge;
    }
}

void LightClient::on_alert(const Alert& a, Context& ctx, const HeavyCheckOracle& oracle) {
    SlashEvent ev;
    try {
        ev = SlashEvent::decode(a.slash_record);
    } catch (const Error&) {
        ctx.log(id_, "alert_rejected", sha256(a.encode()), "undecodable record");
        return;
    }
    const auto record_digest = sha256(a.slash_record);
    if (ev.provider != a.offending) {
        ctx.log(id_, "alert_rejected", record_digest, "offender mismatch");
        return;
    }
    if (!verified_slashes_.count(record_digest)) {
        ++heavy_checks_;
        if (!oracle.slash_recorded(a)) {
            ctx.log(id_, "alert_rejected", record_digest, "slash not on chain");
            return;
        }
        verified_slashes_.insert(record_digest);
        ctx.log(id_, "heavy_check", record_digest, "slash record confirmed");
    }
    if (auto* k = latest(a.offending)) k->slashed = true;

    std::vector<std::uint64_t> ids;
    for (const auto& [id, c] : checks_) ids.push_back(id);
    for (auto id : ids) {
        auto& c = checks_.at(id);
        if (ev.insurance_id && c.policies.count(*ev.insurance_id) && ev.beneficiary == keys_.public_key &&
            c.compensated_by.insert(record_digest).second) {
            c.compensation += ev.payout;
            ctx.log(id_, "compensated", record_digest, "check " + std::to_string(c.id) + " " + to_string(ev.payout));
        }
        const bool involved = contains_provider(c.selected, a.offending);
        if (!involved) continue;
        if (c.phase == CheckPhase::kQuerying || c.phase == CheckPhase::kChallenge) {
            c.excluded.insert(a.offending);
            ctx.log(id_, "alert_verified", record_digest, "check " + std::to_string(c.id));
            restart(c, ctx, oracle, "alert");
        } else if (c.phase == CheckPhase::kDone && c.accepted) {
            ctx.log(id_, "late_alert", record_digest, "check " + std::to_string(c.id));
        }
    }
}

void LightClient::on_notice(const TxNotice& n, Context& ctx) {
    const auto call_id = sha256(n.call_payload);
    if (n.receipt.call_id != call_id) {
        ctx.log(id_, "notice_ignored", call_id, "receipt does not match call");
        return;
    }
    const Target target{n.block, sha256(n.receipt.encode())};
    const Tick ready = n.block + timing_.finality_blocks + 1;

    for (auto& [id, c] : checks_) {
        if (c.phase == CheckPhase::kBuying && c.buy_tx == call_id && !c.receipt_check) {
            const auto parent_id = c.id;
            const auto value = c.value;
            c.receipt_notice = n;
            auto& child = spawn(CheckKind::kInsuranceReceipt, target, value, ready, config_.receipt_period(), parent_id);
            checks_.at(parent_id).receipt_check = child.id;
            ctx.log(id_, "receipt_check_started", target.state_hash, "check " + std::to_string(child.id));
            return;
        }
    }
    if (!config_.track_provider_set) return;
    std::optional<ContractCall> call;
    try {
        call = decode_call(n.call_payload);
    } catch (const Error&) {
        return;
    }
    if (!call || !(std::holds_alternative<RegisterCall>(*call) || std::holds_alternative<WithdrawCall>(*call))) return;
    auto& child = spawn(CheckKind::kSetUpdate, target, config_.set_update_value, ready, config_.challenge_period,
                        std::nullopt);
    child.notice = n;
    ctx.log(id_, "set_update_check_started", target.state_hash, "check " + std::to_string(child.id));
}

void LightClient::on_tick(Context& ctx, const HeavyCheckOracle& oracle) {
    if (!bootstrapped_) bootstrap(ctx, oracle);
    std::vector<std::uint64_t> ids;
    for (const auto& [id, c] : checks_) {
        if (c.phase != CheckPhase::kDone && c.phase != CheckPhase::kFailed) ids.push_back(id);
    }
    for (auto id : ids) tick_check(checks_.at(id), ctx, oracle);
}

void LightClient::tick_check(Check& c, Context& ctx, const HeavyCheckOracle& oracle) {
    const auto now = ctx.now();
    switch (c.phase) {
        case CheckPhase::kWaiting:
            if (now < c.not_before) return;
            if (c.kind == CheckKind::kTarget && c.protocol == Protocol::kIns) {
                buy(c, ctx, oracle);
            } else {
                start_round(c, ctx, oracle);
            }
            return;
        case CheckPhase::kQuerying:
            if (now < c.query_tick + 2 * timing_.delta || c.responses.size() >= c.selected.size()) return;
            for (const auto& a : c.selected) {
                if (!c.responses.count(a.provider)) {
                    c.excluded.insert(a.provider);
                    ctx.log(id_, "timeout", c.target.state_hash, a.provider.hex());
                }
            }
            restart(c, ctx, oracle, "timeout");
            return;
        case CheckPhase::kChallenge:
            if (now >= c.last_forward + c.challenge_period) evaluate(c, ctx, oracle);
            return;
        case CheckPhase::kListening:
            if (now < c.listen_until) return;
            c.phase = CheckPhase::kDone;
            ctx.log(id_, "listening_done", c.target.state_hash,
                    "check " + std::to_string(c.id) + " compensation " + to_string(c.compensation));
            events_.push_back(ClientEvent{ClientEvent::Kind::kFinished, c});
            return;
        case CheckPhase::kBuying:
        case CheckPhase::kDone:
        case CheckPhase::kFailed: return;
    }
}

void LightClient::resume(Tick offline_since, Context& ctx, const HeavyCheckOracle& oracle) {
    const auto b_u = timing_.update_epoch_blocks;
    const auto first_full = (offline_since + b_u - 1) / b_u;
    const bool missed_epoch = (first_full + 1) * b_u - 1 < ctx.now();
    ctx.log(id_, "online", Digest{}, missed_epoch ? "missed an update epoch" : "short absence");
    if (missed_epoch) bootstrap(ctx, oracle);
}

}  // namespace stakelc
