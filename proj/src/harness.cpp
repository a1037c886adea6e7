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

#include <stakelc/harness.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include <stakelc/errors.hpp>

namespace stakelc {

using json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kProviderKeyBase = 1'000;
constexpr std::uint64_t kWatcherKeyBase = 2'000;
constexpr std::uint64_t kClientKeyBase = 3'000;

KeyPair actor_keys(std::uint64_t seed, std::uint64_t base, std::size_t index) {
    return keygen(seed * 1'000'003ULL + base + index);
}

bool overlaps(const std::vector<OfflineWindow>& windows, Tick t) {
    return std::any_of(windows.begin(), windows.end(), [t](const auto& w) { return w.from <= t && t < w.to; });
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

ContractConfig ScenarioConfig::contract_config() const {
    ContractConfig c;
    c.min_stake = min_stake;
    c.update_epoch_blocks = update_epoch_blocks;
    c.max_challenge_period = max_challenge_period;
    c.gas_buy_insurance = pricing.gas_units;
    c.max_coverage_duration = max_coverage_duration;
    c.bounty_bps = bounty_bps;
    c.finality_blocks = chain.finality_blocks();
    c.delta_ticks = delta_ticks;
    return c;
}

ProtocolTiming ScenarioConfig::timing() const {
    return ProtocolTiming{delta_ticks, chain.finality_blocks(), update_epoch_blocks};
}

void ScenarioConfig::validate() const {
    auto bad = [](const std::string& what) { throw Error(Errc::kConfigInvalid, what); };
    if (chain.slots_per_epoch == 0 || chain.finality_depth_epochs == 0) bad("finality depth must be positive");
    if (delta_ticks == 0) bad("delta_ticks must be at least 1");
    if (total_ticks == 0) bad("total_ticks must be positive");
    if (watchers == 0) bad("at least one watcher is required");
    if (providers.empty()) bad("at least one provider is required");
    contract_config().validate();
    pricing.validate();
    for (std::size_t i = 0; i < providers.size(); ++i) {
        const auto& p = providers[i];
        if (p.stake < min_stake) bad("provider " + std::to_string(i) + " stake is below min_stake");
        if (!p.genesis && p.schedule.empty()) bad("provider " + std::to_string(i) + " never registers");
        for (const auto& a : p.schedule) {
            if (a.at == 0 || a.at > total_ticks) bad("provider " + std::to_string(i) + " action outside the run");
        }
    }
    const auto t = timing();
    for (std::size_t i = 0; i < clients.size(); ++i) {
        const auto& c = clients[i];
        const auto name = "client " + std::to_string(i);
        if (c.config.challenge_period > max_challenge_period) bad(name + " challenge_period exceeds max_challenge_period");
        if (c.config.receipt_period() > max_challenge_period) {
            bad(name + " receipt_challenge_period exceeds max_challenge_period");
        }
        if (c.config.protocol == Protocol::kIns) {
            const auto bound = pricing::min_coverage_duration(pricing::CoverageInputs{
                t.finality_blocks,
                {c.config.receipt_period(), c.config.challenge_period},
                c.config.delta_comm == 0 ? 4 * delta_ticks : c.config.delta_comm,
                c.config.delta_comp});
            if (c.config.coverage_duration && *c.config.coverage_duration < bound) {
                bad(name + " coverage_duration is below the coverage bound " + std::to_string(bound));
            }
            if (coverage_duration_for(c.config, t) > max_coverage_duration) {
                bad(name + " coverage duration exceeds max_coverage_duration");
            }
        }
        if (c.balance < 0) bad(name + " balance is negative");
        for (const auto& chk : c.checks) {
            if (chk.at == 0 || chk.at > total_ticks) bad(name + " check outside the run");
            if (chk.value <= 0) bad(name + " check value must be positive");
        }
        for (const auto& w : c.offline) {
            if (w.from == 0 || w.to <= w.from) bad(name + " offline window is empty or starts at genesis");
        }
    }
}

// ---------------------------------------------------------------------------
// Scenario files

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
    throw Error(Errc::kParseError, "line " + std::to_string(line) + ": " + what);
}

std::uint64_t parse_u64(std::string_view text, std::size_t line, std::string_view key) {
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        parse_fail(line, "expected an unsigned integer for " + std::string(key));
    }
    return v;
}

Rational parse_rational(std::string_view text, std::size_t line, std::string_view key) {
    try {
        return parse_decimal(text);
    } catch (const Error&) {
        parse_fail(line, "expected a decimal for " + std::string(key));
    }
}

Wei parse_eth(std::string_view text, std::size_t line, std::string_view key) {
    const auto r = parse_rational(text, line, key) * Rational(wei_per_eth());
    if (boost::multiprecision::denominator(r) != 1) parse_fail(line, std::string(key) + " has sub-wei precision");
    return boost::multiprecision::numerator(r);
}

bool parse_bool(std::string_view text, std::size_t line, std::string_view key) {
    if (text == "yes" || text == "true" || text == "1") return true;
    if (text == "no" || text == "false" || text == "0") return false;
    parse_fail(line, "expected yes or no for " + std::string(key));
}

std::vector<std::pair<std::string_view, std::string_view>> fields_of(std::string_view text, std::size_t line) {
    std::vector<std::pair<std::string_view, std::string_view>> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
        if (pos >= text.size()) break;
        auto end = text.find_first_of(" \t", pos);
        if (end == std::string_view::npos) end = text.size();
        const auto token = text.substr(pos, end - pos);
        const auto eq = token.find('=');
        if (eq == std::string_view::npos || eq == 0) parse_fail(line, "field '" + std::string(token) + "' is not key=value");
        out.emplace_back(token.substr(0, eq), token.substr(eq + 1));
        pos = end;
    }
    return out;
}

ProviderSpec parse_provider(std::string_view text, std::size_t line) {
    ProviderSpec p;
    bool has_stake = false;
    for (const auto& [k, v] : fields_of(text, line)) {
        if (k == "stake") {
            p.stake = parse_eth(v, line, k);
            has_stake = true;
        } else if (k == "strategy") {
            const auto s = parse_strategy(v);
            if (!s) parse_fail(line, "unknown strategy '" + std::string(v) + "'");
            p.strategy = *s;
        } else if (k == "scope") {
            const auto s = parse_scope(v);
            if (!s) parse_fail(line, "unknown scope '" + std::string(v) + "'");
            p.scope = *s;
        } else if (k == "genesis") {
            p.genesis = parse_bool(v, line, k);
        } else if (k == "register") {
            p.schedule.push_back({ProviderAction::Kind::kRegister, parse_u64(v, line, k)});
        } else if (k == "withdraw") {
            p.schedule.push_back({ProviderAction::Kind::kWithdraw, parse_u64(v, line, k)});
        } else {
            parse_fail(line, "unknown provider field '" + std::string(k) + "'");
        }
    }
    if (!has_stake) parse_fail(line, "provider needs stake");
    std::stable_sort(p.schedule.begin(), p.schedule.end(), [](const auto& a, const auto& b) { return a.at < b.at; });
    return p;
}

ClientSpec parse_client(std::string_view text, std::size_t line) {
    ClientSpec c;
    for (const auto& [k, v] : fields_of(text, line)) {
        if (k == "protocol") {
            const auto p = parse_protocol(v);
            if (!p) parse_fail(line, "unknown protocol '" + std::string(v) + "'");
            c.config.protocol = *p;
        } else if (k == "challenge_period") {
            c.config.challenge_period = parse_u64(v, line, k);
        } else if (k == "receipt_challenge_period") {
            c.config.receipt_challenge_period = parse_u64(v, line, k);
        } else if (k == "delta_comm") {
            c.config.delta_comm = parse_u64(v, line, k);
        } else if (k == "delta_comp") {
            c.config.delta_comp = parse_u64(v, line, k);
        } else if (k == "coverage_duration") {
            c.config.coverage_duration = parse_u64(v, line, k);
        } else if (k == "track_set") {
            c.config.track_provider_set = parse_bool(v, line, k);
        } else if (k == "set_update_value") {
            c.config.set_update_value = parse_eth(v, line, k);
        } else if (k == "balance") {
            c.balance = parse_eth(v, line, k);
        } else if (k == "check") {
            const auto at = v.find('@');
            if (at == std::string_view::npos) parse_fail(line, "check must be value@tick");
            c.checks.push_back({parse_u64(v.substr(at + 1), line, k), parse_eth(v.substr(0, at), line, k)});
        } else if (k == "offline") {
            const auto dash = v.find('-');
            if (dash == std::string_view::npos) parse_fail(line, "offline must be from-to");
            c.offline.push_back({parse_u64(v.substr(0, dash), line, k), parse_u64(v.substr(dash + 1), line, k)});
        } else {
            parse_fail(line, "unknown client field '" + std::string(k) + "'");
        }
    }
    std::stable_sort(c.checks.begin(), c.checks.end(), [](const auto& a, const auto& b) { return a.at < b.at; });
    return c;
}

}  // namespace

ScenarioConfig parse_scenario(std::string_view text) {
    ScenarioConfig cfg;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) parse_fail(line_no, "expected key = value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (value.empty()) parse_fail(line_no, "missing value for " + std::string(key));

        if (key == "name") {
            cfg.name = std::string(value);
        } else if (key == "seed") {
            cfg.seed = parse_u64(value, line_no, key);
        } else if (key == "slots_per_epoch") {
            cfg.chain.slots_per_epoch = parse_u64(value, line_no, key);
        } else if (key == "finality_depth_epochs") {
            cfg.chain.finality_depth_epochs = parse_u64(value, line_no, key);
        } else if (key == "update_epoch_blocks") {
            cfg.update_epoch_blocks = parse_u64(value, line_no, key);
        } else if (key == "max_challenge_period") {
            cfg.max_challenge_period = parse_u64(value, line_no, key);
        } else if (key == "delta_ticks") {
            cfg.delta_ticks = parse_u64(value, line_no, key);
        } else if (key == "min_stake") {
            cfg.min_stake = parse_eth(value, line_no, key);
        } else if (key == "bounty_bps") {
            const auto v = parse_u64(value, line_no, key);
            if (v > 10'000) parse_fail(line_no, "bounty_bps above 10000");
            cfg.bounty_bps = static_cast<std::uint32_t>(v);
        } else if (key == "max_coverage_duration") {
            cfg.max_coverage_duration = parse_u64(value, line_no, key);
        } else if (key == "watchers") {
            cfg.watchers = parse_u64(value, line_no, key);
        } else if (key == "total_ticks") {
            cfg.total_ticks = parse_u64(value, line_no, key);
        } else if (key == "apy") {
            cfg.pricing.apy = parse_rational(value, line_no, key);
        } else if (key == "blocks_per_year") {
            cfg.pricing.blocks_per_year = parse_u64(value, line_no, key);
        } else if (key == "utilization") {
            cfg.pricing.utilization = parse_rational(value, line_no, key);
        } else if (key == "eth_price_usd") {
            cfg.pricing.eth_price_usd = parse_rational(value, line_no, key);
        } else if (key == "gas_price_gwei") {
            const auto r = parse_rational(value, line_no, key) * Rational(wei_per_gwei());
            if (boost::multiprecision::denominator(r) != 1) parse_fail(line_no, "gas_price_gwei has sub-wei precision");
            cfg.pricing.gas_price_wei = boost::multiprecision::numerator(r);
        } else if (key == "gas_units") {
            cfg.pricing.gas_units = parse_u64(value, line_no, key);
        } else if (key == "provider") {
            cfg.providers.push_back(parse_provider(value, line_no));
        } else if (key == "client") {
            cfg.clients.push_back(parse_client(value, line_no));
        } else {
            parse_fail(line_no, "unknown key '" + std::string(key) + "'");
        }
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::kParseError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

// ---------------------------------------------------------------------------
// Event log and metrics

void EventLog::append(Tick tick, std::string_view actor, std::string_view event, const Digest& digest,
                      std::string_view detail) {
    json j;
    j["tick"] = tick;
    j["actor"] = actor;
    j["event"] = event;
    j["digest"] = digest.hex();
    j["detail"] = detail;
    lines_.push_back(j.dump());
}

std::string EventLog::text() const {
    std::string out;
    for (const auto& l : lines_) {
        out += l;
        out += '\n';
    }
    return out;
}

std::string Metrics::to_json() const {
    json j;
    j["ok"] = ok();
    j["violations"] = violations;
    j["slashes"] = slashes;
    j["honest_slashes"] = honest_slashes;
    j["provider_lies"] = provider_lies;
    j["conservation_ok"] = conservation_ok;
    j["no_overload_ok"] = no_overload_ok;
    j["late_deliveries"] = late_deliveries;
    j["max_delivery_delay"] = max_delivery_delay;
    j["prediction_checks"] = prediction_checks;
    j["prediction_mismatches"] = prediction_mismatches;
    j["minted_wei"] = to_string(minted);
    j["burned_wei"] = to_string(burned);
    j["utilization_samples"] = utilization.size();
    j["utilization_mean"] =
        utilization.empty() ? std::string("0") : format_fixed(pricing::average_utilization(utilization), 6);
    json cs = json::array();
    for (const auto& c : clients) {
        json x;
        x["id"] = c.id;
        x["protocol"] = to_string(c.protocol);
        x["accepted"] = c.accepted;
        x["failed"] = c.failed;
        x["compensated"] = c.compensated;
        x["incorrect_acceptances"] = c.incorrect_acceptances;
        x["false_insured_acceptances"] = c.false_insured_acceptances;
        x["signature_verifications"] = c.signature_verifications;
        x["heavy_checks"] = c.heavy_checks;
        x["purchases"] = c.purchases;
        x["premium_paid_wei"] = to_string(c.premium_paid);
        x["gas_paid_wei"] = to_string(c.gas_paid);
        x["compensation_received_wei"] = to_string(c.compensation_received);
        x["initial_balance_wei"] = to_string(c.initial_balance);
        x["final_balance_wei"] = to_string(c.final_balance);
        x["value_lost_wei"] = to_string(c.value_lost);
        cs.push_back(std::move(x));
    }
    j["clients"] = std::move(cs);
    json ks = json::array();
    for (const auto& r : checks) {
        json x;
        x["client"] = r.client;
        x["check"] = r.check_id;
        x["kind"] = to_string(r.kind);
        x["protocol"] = to_string(r.protocol);
        x["block"] = r.block_number;
        x["value_wei"] = to_string(r.value);
        x["accepted"] = r.accepted;
        x["correct"] = r.correct;
        x["finished"] = r.finished;
        x["query_tick"] = r.query_tick;
        x["last_response_tick"] = r.last_response_tick;
        x["last_forward_tick"] = r.last_forward_tick;
        x["accepted_at"] = r.accepted_at;
        x["signatures"] = r.signatures;
        x["rounds"] = r.rounds;
        x["purchases"] = r.purchases;
        x["compensation_wei"] = to_string(r.compensation);
        x["failure"] = r.failure;
        ks.push_back(std::move(x));
    }
    j["checks"] = std::move(ks);
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// Simulation

Simulation::Simulation(ScenarioConfig config)
    : config_((config.validate(), std::move(config))),
      timing_(config_.timing()),
      chain_(config_.chain),
      contract_(config_.contract_config(), config_.pricing),
      network_(config_.seed, config_.delta_ticks) {
    std::vector<ActorId> watcher_ids;
    for (std::size_t i = 0; i < config_.watchers; ++i) {
        watchers_.emplace_back("watcher-" + std::to_string(i), actor_keys(config_.seed, kWatcherKeyBase, i));
        watcher_ids.push_back(watchers_.back().id());
        watcher_index_[watchers_.back().id()] = i;
    }
    for (std::size_t i = 0; i < config_.providers.size(); ++i) {
        const auto& spec = config_.providers[i];
        const auto keys = actor_keys(config_.seed, kProviderKeyBase, i);
        providers_.emplace_back(provider_actor_id(keys.public_key), keys, spec.strategy, spec.scope);
        provider_index_[providers_.back().id()] = i;
        const auto registrations =
            std::count_if(spec.schedule.begin(), spec.schedule.end(),
                          [](const auto& a) { return a.kind == ProviderAction::Kind::kRegister; }) +
            (spec.genesis ? 1 : 0);
        contract_.mint(keys.public_key, spec.stake * registrations);
        if (spec.genesis) contract_.register_provider(keys.public_key, spec.stake, 0);
    }
    for (std::size_t i = 0; i < config_.clients.size(); ++i) {
        const auto& spec = config_.clients[i];
        const auto keys = actor_keys(config_.seed, kClientKeyBase, i);
        clients_.emplace_back("client-" + std::to_string(i), keys, spec.config, timing_, config_.pricing,
                              watcher_ids);
        client_index_[clients_.back().id()] = i;
        client_state_.emplace_back();
        contract_.mint(keys.public_key, spec.balance);
        ClientMetrics m;
        m.id = clients_.back().id();
        m.protocol = spec.config.protocol;
        m.initial_balance = spec.balance;
        metrics_.clients.push_back(std::move(m));
    }
    log("sim", "genesis", chain_.tip().hash,
        config_.name + " providers " + std::to_string(providers_.size()) + " clients " +
            std::to_string(clients_.size()));
}

Simulation::~Simulation() = default;

void Simulation::send(const ActorId& from, const ActorId& to, Message message) {
    network_.send(now_, from, to, std::move(message));
}

Digest Simulation::submit(const ActorId& from, const ContractCall& call) {
    auto tx = Transaction::make(encode_call(call));
    const auto id = tx.id;
    pool_.push_back(PoolEntry{from, std::move(tx), true});
    return id;
}

void Simulation::log(const ActorId& actor, std::string_view event, const Digest& digest, std::string detail) {
    log_.append(now_, actor, event, digest, detail);
}

void Simulation::violation(std::string name, const std::string& detail) {
    log("sim", "violation", Digest{}, name + ": " + detail);
    if (std::find(metrics_.violations.begin(), metrics_.violations.end(), name) == metrics_.violations.end()) {
        metrics_.violations.push_back(std::move(name));
    }
}

void Simulation::dispatch(const Envelope& env) {
    const FullNodeView view{chain_, contract_, calls_};
    if (const auto p = provider_index_.find(env.to); p != provider_index_.end()) {
        if (const auto* q = std::get_if<Query>(&env.message)) providers_[p->second].on_query(*q, env.from, view, *this);
        return;
    }
    if (const auto w = watcher_index_.find(env.to); w != watcher_index_.end()) {
        if (const auto* f = std::get_if<Forward>(&env.message)) {
            watchers_[w->second].on_forward(f->response, env.from, view, *this);
        }
        return;
    }
    if (const auto c = client_index_.find(env.to); c != client_index_.end()) {
        auto& state = client_state_[c->second];
        if (!state.online) {
            state.mailbox.push_back(env);
            return;
        }
        const HeavyCheckOracle oracle(chain_, contract_);
        clients_[c->second].on_message(env, *this, oracle);
    }
}

void Simulation::run_handlers() {
    for (std::size_t i = 0; i < providers_.size(); ++i) {
        for (const auto& a : config_.providers[i].schedule) {
            if (a.at != now_) continue;
            const auto& pk = providers_[i].public_key();
            if (a.kind == ProviderAction::Kind::kRegister) {
                const auto tx = submit(providers_[i].id(), RegisterCall{pk, config_.providers[i].stake});
                log(providers_[i].id(), "register_submitted", tx, to_string(config_.providers[i].stake));
            } else {
                const auto tx = submit(providers_[i].id(), WithdrawCall{pk});
                log(providers_[i].id(), "withdraw_submitted", tx, "");
            }
        }
    }

    const HeavyCheckOracle oracle(chain_, contract_);
    for (std::size_t i = 0; i < clients_.size(); ++i) {
        auto& state = client_state_[i];
        const bool offline = overlaps(config_.clients[i].offline, now_);
        if (offline && state.online) {
            state.online = false;
            state.offline_since = now_;
            log(clients_[i].id(), "offline", Digest{}, "");
        } else if (!offline && !state.online) {
            state.online = true;
            state.online_since = now_;
            clients_[i].resume(state.offline_since, *this, oracle);
            auto mailbox = std::move(state.mailbox);
            state.mailbox.clear();
            for (const auto& env : mailbox) clients_[i].on_message(env, *this, oracle);
        }
        for (const auto& chk : config_.clients[i].checks) {
            if (chk.at != now_) continue;
            ByteWriter transfer;
            transfer.tag(MsgTag::kUserTransfer).str(clients_[i].id()).u64(now_).u64(user_tx_counter_++);
            auto tx = Transaction::make(std::move(transfer).take());
            const auto id = tx.id;
            pool_.push_back(PoolEntry{clients_[i].id(), std::move(tx), false});
            clients_[i].start_check(Target{now_, id}, chk.value, now_ + timing_.finality_blocks + 1, *this);
        }
    }

    const FullNodeView view{chain_, contract_, calls_};
    for (auto& w : watchers_) w.on_tick(view, *this);
    for (std::size_t i = 0; i < clients_.size(); ++i) {
        if (client_state_[i].online) clients_[i].on_tick(*this, oracle);
    }
}

void Simulation::build_block() {
    struct Included {
        ActorId from;
        Bytes payload;
        Receipt receipt;
    };
    std::vector<Transaction> txs;
    std::vector<Included> included;
    auto pool = std::move(pool_);
    pool_.clear();
    for (auto& entry : pool) {
        if (!entry.contract_call) {
            log("chain", "tx_included", entry.tx.id, "transfer from " + entry.from);
            txs.push_back(std::move(entry.tx));
            continue;
        }
        const auto client = client_index_.find(entry.from);
        std::optional<Wei> before;
        if (client != client_index_.end()) before = contract_.balance(clients_[client->second].public_key());

        auto executed = contract_.execute(entry.tx, now_, chain_);
        const auto receipt_tx = Transaction::make(executed.receipt.encode());
        CallRecord record{now_, executed.receipt, receipt_tx.id, std::nullopt};

        if (before) {
            auto& m = metrics_.clients[client->second];
            const Wei spent = *before - contract_.balance(clients_[client->second].public_key());
            if (executed.receipt.call == MsgTag::kBuyInsurance) {
                Wei premium = 0;
                if (executed.receipt.insurance_id) {
                    premium = contract_.policy(*executed.receipt.insurance_id)->premium_paid;
                    ++m.purchases;
                }
                m.premium_paid += premium;
                m.gas_paid += spent - premium;
            }
        }

        const auto call_id = entry.tx.id;
        const auto payload = entry.tx.payload;
        const bool ok = executed.receipt.status == ReceiptStatus::kOk;
        std::string detail = std::string(ok ? "ok" : "failed") + " reason " + std::to_string(executed.receipt.reason);
        log("chain", "tx_included", entry.tx.id, detail);
        txs.push_back(std::move(entry.tx));
        txs.push_back(receipt_tx);
        if (executed.slash_event) {
            const auto& ev = *executed.slash_event;
            auto rec_tx = Transaction::make(ev.encode());
            record.slash_record_tx = rec_tx.id;
            ++metrics_.slashes;
            const auto it = std::find_if(providers_.begin(), providers_.end(),
                                         [&](const DataProvider& p) { return p.public_key() == ev.provider; });
            if (it != providers_.end() && it->lies() == 0) {
                ++metrics_.honest_slashes;
                violation("honest_slashed", it->id());
            }
            log("contract", "slashed", rec_tx.id,
                ev.provider.hex() + " payout " + to_string(ev.payout) + " bounty " + to_string(ev.bounty));
            txs.push_back(std::move(rec_tx));
        }
        calls_[call_id] = record;
        included.push_back(Included{entry.from, payload, executed.receipt});
    }
    chain_.append_block(std::move(txs));

    for (const auto& inc : included) {
        const TxNotice notice{now_, inc.payload, inc.receipt};
        if (inc.receipt.call == MsgTag::kBuyInsurance) {
            if (client_index_.count(inc.from)) send("relay", inc.from, notice);
        } else if (inc.receipt.call == MsgTag::kRegister || inc.receipt.call == MsgTag::kWithdraw) {
            for (const auto& c : clients_) {
                if (c.config().track_provider_set) send("relay", c.id(), notice);
            }
        }
    }

    for (const auto& effect : contract_.process_block_boundary(now_)) {
        if (effect.kind == Effect::Kind::kPolicyExpired) {
            log("contract", "policy_expired", Digest{}, std::to_string(effect.policy.value_or(0)));
        } else {
            log("contract", "provider_exited", effect.provider ? sha256(effect.provider->view()) : Digest{},
                "payout " + to_string(effect.amount));
        }
    }
}

void Simulation::check_invariants() {
    if (contract_.total_value() != contract_.minted()) {
        metrics_.conservation_ok = false;
        violation("conservation", "total value " + to_string(contract_.total_value()) + " minted " +
                                      to_string(contract_.minted()));
    }
    if (!contract_.no_overload()) {
        metrics_.no_overload_ok = false;
        violation("no_overload", "locked exceeds stake");
    }
    std::vector<pricing::ProviderLoad> loads;
    for (const auto& r : contract_.records()) {
        if ((r.status == ProviderStatus::kActive || r.status == ProviderStatus::kLeaving) && r.stake > 0) {
            loads.push_back({r.stake, r.locked});
        }
    }
    if (!loads.empty()) metrics_.utilization.push_back(pricing::utilization_at_block(loads));
}

void Simulation::collect_client_events() {
    for (std::size_t i = 0; i < clients_.size(); ++i) {
        auto& m = metrics_.clients[i];
        for (auto& ev : clients_[i].drain_events()) {
            const auto& c = ev.check;
            const auto key = std::make_pair(i, c.id);
            auto it = report_index_.find(key);
            if (it == report_index_.end()) {
                CheckReport r;
                r.client = clients_[i].id();
                r.check_id = c.id;
                r.kind = c.kind;
                r.protocol = c.kind == CheckKind::kTarget ? c.protocol : Protocol::kEco;
                r.block_number = c.target.block_number;
                r.value = c.value;
                metrics_.checks.push_back(std::move(r));
                it = report_index_.emplace(key, metrics_.checks.size() - 1).first;
            }
            auto& r = metrics_.checks[it->second];
            r.query_tick = c.query_tick;
            r.last_response_tick = c.last_response;
            r.last_forward_tick = c.last_forward;
            r.rounds = c.rounds;
            r.purchases = c.purchases;
            r.compensation = c.compensation;
            switch (ev.kind) {
                case ClientEvent::Kind::kAccepted: {
                    ++m.accepted;
                    r.accepted = true;
                    r.accepted_at = c.accepted_at;
                    r.signatures = c.signatures;
                    const auto n = c.target.block_number;
                    r.correct = chain_.contains(n) && c.accepted_hash && *c.accepted_hash == chain_.block(n).hash &&
                                chain_.find_transaction(n, c.target.state_hash).has_value();
                    if (r.correct) break;
                    if (r.protocol == Protocol::kEco) {
                        ++m.incorrect_acceptances;
                        violation("eco_safety", r.client + " check " + std::to_string(c.id) + " block " +
                                                    std::to_string(n));
                    } else {
                        ++m.false_insured_acceptances;
                        m.value_lost += c.value;
                        open_false_acceptances_.push_back(it->second);
                        log("sim", "false_insured_acceptance", c.accepted_hash.value_or(Digest{}),
                            r.client + " check " + std::to_string(c.id));
                    }
                    break;
                }
                case ClientEvent::Kind::kFinished:
                    r.finished = true;
                    if (c.compensation > 0) ++m.compensated;
                    m.compensation_received += c.compensation;
                    if (!r.correct) {
                        std::erase(open_false_acceptances_, it->second);
                        if (c.compensation < c.value) {
                            violation("ins_protection", r.client + " check " + std::to_string(c.id) +
                                                            " compensation " + to_string(c.compensation));
                        }
                    }
                    break;
                case ClientEvent::Kind::kFailed:
                    ++m.failed;
                    r.failure = c.failure;
                    break;
            }
        }
    }
}

void Simulation::check_prediction() {
    if (!contract_.is_epoch_end(now_)) return;
    const auto e = contract_.epoch_of(now_) + 1;
    if (e < 2) return;
    const auto b_u = config_.update_epoch_blocks;
    for (std::size_t i = 0; i < clients_.size(); ++i) {
        const auto& client = clients_[i];
        const auto& state = client_state_[i];
        if (!client.config().track_provider_set || !client.bootstrapped() || !state.online) continue;
        if (state.online_since > (e - 2) * b_u) continue;
        auto predicted = client.predicted_set(e);
        std::vector<SetEntry> realized;
        for (const auto& s : contract_.settled_set(e)) realized.push_back(SetEntry{s.public_key, s.stake});
        auto by_key = [](const SetEntry& a, const SetEntry& b) { return a.public_key < b.public_key; };
        std::sort(predicted.begin(), predicted.end(), by_key);
        std::sort(realized.begin(), realized.end(), by_key);
        ++metrics_.prediction_checks;
        if (predicted != realized) {
            ++metrics_.prediction_mismatches;
            violation("provider_set_prediction", client.id() + " epoch " + std::to_string(e) + " predicted " +
                                                     std::to_string(predicted.size()) + " realized " +
                                                     std::to_string(realized.size()));
        }
    }
}

void Simulation::step() {
    ++now_;
    for (const auto& env : network_.deliver(now_)) {
        log(env.to, "recv", message_digest(env.message), std::string(message_kind(env.message)) + " from " + env.from);
        dispatch(env);
    }
    run_handlers();
    build_block();
    check_invariants();
    collect_client_events();
    check_prediction();
}

void Simulation::finish() {
    if (finished_) return;
    finished_ = true;
    for (std::size_t i = 0; i < clients_.size(); ++i) {
        auto& m = metrics_.clients[i];
        m.final_balance = contract_.balance(clients_[i].public_key());
        m.signature_verifications = clients_[i].signature_verifications();
        m.heavy_checks = clients_[i].heavy_checks();
        if (m.protocol != Protocol::kIns) continue;
        // Net loss counts the value of any false data accepted under cover.
        const Wei loss = m.initial_balance - m.final_balance + m.value_lost;
        if (loss > m.premium_paid + m.gas_paid) {
            violation("ins_net_loss", m.id + " loss " + to_string(loss));
        }
    }
    for (auto idx : open_false_acceptances_) {
        violation("ins_protection", metrics_.checks[idx].client + " check " +
                                        std::to_string(metrics_.checks[idx].check_id) + " still listening at end");
    }
    for (const auto& p : providers_) metrics_.provider_lies += p.lies();
    metrics_.late_deliveries = network_.late_deliveries();
    metrics_.max_delivery_delay = network_.max_delay();
    metrics_.minted = contract_.minted();
    metrics_.burned = contract_.burned();
    log("sim", "finished", sha256(contract_.serialize()),
        metrics_.violations.empty() ? "ok" : std::to_string(metrics_.violations.size()) + " violations");
}

ScenarioResult Simulation::run() {
    while (now_ < config_.total_ticks) step();
    finish();
    return ScenarioResult{metrics_, log_};
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
    Simulation sim(config);
    return sim.run();
}

// ---------------------------------------------------------------------------
// Sweeps

std::uint64_t compliant_challenge_period(const ChainParams& chain, std::uint64_t delta) {
    return chain.finality_blocks() + 2 * delta + 1;
}

ScenarioConfig sweep_scenario(ProviderStrategy strategy, StrategyScope scope, std::uint64_t delta,
                              std::uint64_t challenge_period, Protocol protocol, std::uint64_t seed) {
    ScenarioConfig cfg;
    cfg.name = std::string(to_string(strategy)) + "-" + std::string(to_string(scope)) + "-d" + std::to_string(delta) +
               "-cp" + std::to_string(challenge_period) + "-" + std::string(to_string(protocol));
    cfg.seed = seed;
    cfg.chain = ChainParams{4, 2};
    cfg.delta_ticks = delta;
    const auto t_fin = cfg.chain.finality_blocks();
    cfg.max_challenge_period = std::max(challenge_period, compliant_challenge_period(cfg.chain, delta));
    cfg.update_epoch_blocks = cfg.max_challenge_period + t_fin + 2 * delta;
    const auto eth = wei_per_eth();
    cfg.providers.push_back(ProviderSpec{Wei(40) * eth, strategy, scope, true, {}});
    cfg.providers.push_back(ProviderSpec{Wei(32) * eth, ProviderStrategy::kHonest, StrategyScope::kAny, true, {}});
    cfg.providers.push_back(ProviderSpec{Wei(32) * eth, ProviderStrategy::kHonest, StrategyScope::kAny, true, {}});
    ClientSpec client;
    client.config.protocol = protocol;
    client.config.challenge_period = challenge_period;
    client.checks.push_back(CheckSpec{5, Wei(10) * eth});
    cfg.clients.push_back(std::move(client));
    cfg.total_ticks = 5 + 6 * (t_fin + 6 * delta + 2 * cfg.max_challenge_period + 4);
    return cfg;
}

std::size_t SweepReport::violating_cells() const {
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(), [](const SweepCell& c) { return !c.metrics.ok(); }));
}

std::string SweepReport::to_json() const {
    json out = json::array();
    for (const auto& c : cells) {
        json x;
        x["strategy"] = to_string(c.strategy);
        x["scope"] = to_string(c.scope);
        x["delta"] = c.delta;
        x["challenge_period"] = c.challenge_period;
        x["protocol"] = to_string(c.protocol);
        x["ok"] = c.metrics.ok();
        x["violations"] = c.metrics.violations;
        x["slashes"] = c.metrics.slashes;
        std::uint64_t incorrect = 0, false_insured = 0, accepted = 0;
        for (const auto& m : c.metrics.clients) {
            incorrect += m.incorrect_acceptances;
            false_insured += m.false_insured_acceptances;
            accepted += m.accepted;
        }
        x["accepted"] = accepted;
        x["incorrect_acceptances"] = incorrect;
        x["false_insured_acceptances"] = false_insured;
        out.push_back(std::move(x));
    }
    return out.dump(2);
}

SweepReport sweep(const SweepSpec& spec) {
    SweepReport report;
    for (auto strategy : spec.strategies) {
        for (auto scope : spec.scopes) {
            for (auto delta : spec.deltas) {
                std::vector<std::uint64_t> periods;
                if (spec.challenge_periods) {
                    periods = *spec.challenge_periods;
                } else {
                    for (auto slack : spec.challenge_slack) {
                        periods.push_back(compliant_challenge_period(ChainParams{4, 2}, delta) + slack);
                    }
                }
                for (auto period : periods) {
                    for (auto protocol : spec.protocols) {
                        auto cfg = sweep_scenario(strategy, scope, delta, period, protocol, spec.seed);
                        SweepCell cell{strategy, scope, delta, period, protocol, run_scenario(cfg).metrics};
                        report.cells.push_back(std::move(cell));
                    }
                }
            }
        }
    }
    return report;
}

}  // namespace stakelc
