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

// Deterministic discrete-event harness. Each tick runs, in order: message
// deliveries, actor handlers, the transaction pool, block construction (the
// contract executes calls as they are included) and contract boundary
// processing. Invariants are checked after every block.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <string>
#include <string_view>
#include <vector>

#include <stakelc/actors.hpp>
#include <stakelc/light_client.hpp>

namespace stakelc {

struct ProviderAction {
    enum class Kind : std::uint8_t { kRegister, kWithdraw } kind{Kind::kRegister};
    Tick at{0};
};

struct ProviderSpec {
    Wei stake;
    ProviderStrategy strategy{ProviderStrategy::kHonest};
    StrategyScope scope{StrategyScope::kAny};
    //! Registered in the genesis state; otherwise only through `schedule`.
    bool genesis{true};
    std::vector<ProviderAction> schedule;
};

struct CheckSpec {
    Tick at{0};
    Wei value;
};

//! Client is unreachable for ticks in [from, to).
struct OfflineWindow {
    Tick from{0};
    Tick to{0};
};

struct ClientSpec {
    ClientConfig config;
    Wei balance{Wei(100) * wei_per_eth()};
    std::vector<CheckSpec> checks;
    std::vector<OfflineWindow> offline;
};

struct ScenarioConfig {
    std::string name{"scenario"};
    std::uint64_t seed{1};
    ChainParams chain;
    std::uint64_t update_epoch_blocks{24};
    std::uint64_t max_challenge_period{12};
    std::uint64_t delta_ticks{1};
    Wei min_stake{wei_per_eth()};
    std::uint32_t bounty_bps{500};
    std::uint64_t max_coverage_duration{1'000'000};
    std::uint64_t watchers{1};
    std::uint64_t total_ticks{200};
    pricing::PricingParams pricing;
    std::vector<ProviderSpec> providers;
    std::vector<ClientSpec> clients;

    [[nodiscard]] ContractConfig contract_config() const;
    [[nodiscard]] ProtocolTiming timing() const;
    //! Throws kConfigInvalid naming the violated constraint.
    void validate() const;
};

//! Key = value lines; `provider` and `client` lines carry space-separated
//! key=value fields and may repeat. Throws kParseError or kConfigInvalid.
ScenarioConfig parse_scenario(std::string_view text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

//! Append-only JSON-lines record of everything that happened.
class EventLog {
  public:
    void append(Tick tick, std::string_view actor, std::string_view event, const Digest& digest,
                std::string_view detail);
    [[nodiscard]] const std::vector<std::string>& lines() const noexcept { return lines_; }
    [[nodiscard]] std::string text() const;
    [[nodiscard]] std::size_t size() const noexcept { return lines_.size(); }

  private:
    std::vector<std::string> lines_;
};

struct CheckReport {
    ActorId client;
    std::uint64_t check_id{0};
    CheckKind kind{CheckKind::kTarget};
    Protocol protocol{Protocol::kEco};
    BlockNumber block_number{0};
    Wei value;
    bool accepted{false};
    bool correct{false};
    bool finished{false};
    Tick query_tick{0};
    Tick last_response_tick{0};
    Tick last_forward_tick{0};
    Tick accepted_at{0};
    std::uint64_t signatures{0};
    std::uint64_t rounds{0};
    std::uint64_t purchases{0};
    Wei compensation;
    std::string failure;
};

struct ClientMetrics {
    ActorId id;
    Protocol protocol{Protocol::kEco};
    std::uint64_t accepted{0};
    std::uint64_t failed{0};
    std::uint64_t compensated{0};
    std::uint64_t incorrect_acceptances{0};
    std::uint64_t false_insured_acceptances{0};
    std::uint64_t signature_verifications{0};
    std::uint64_t heavy_checks{0};
    std::uint64_t purchases{0};
    Wei premium_paid;
    Wei gas_paid;
    Wei compensation_received;
    Wei initial_balance;
    Wei final_balance;
    Wei value_lost;  // value of false data accepted under insurance
};

struct Metrics {
    std::vector<ClientMetrics> clients;
    std::vector<CheckReport> checks;
    std::uint64_t slashes{0};
    std::uint64_t honest_slashes{0};
    std::uint64_t provider_lies{0};
    std::vector<Rational> utilization;
    bool conservation_ok{true};
    bool no_overload_ok{true};
    std::uint64_t late_deliveries{0};
    std::uint64_t max_delivery_delay{0};
    std::uint64_t prediction_checks{0};
    std::uint64_t prediction_mismatches{0};
    Wei minted;
    Wei burned;
    //! Names of violated invariants, in the order first seen.
    std::vector<std::string> violations;

    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
    [[nodiscard]] std::string to_json() const;
};

struct ScenarioResult {
    Metrics metrics;
    EventLog log;
};

class Simulation final : private Context {
  public:
    explicit Simulation(ScenarioConfig config);
    ~Simulation() override;

    Simulation(const Simulation&) = delete;
    Simulation& operator=(const Simulation&) = delete;

    //! Advances one tick.
    void step();
    //! Runs until total_ticks and closes the books.
    ScenarioResult run();

    [[nodiscard]] Tick now() const override { return now_; }
    [[nodiscard]] const ScenarioConfig& config() const noexcept { return config_; }
    [[nodiscard]] const Chain& chain() const noexcept { return chain_; }
    [[nodiscard]] const Contract& contract() const noexcept { return contract_; }
    [[nodiscard]] const std::vector<DataProvider>& providers() const noexcept { return providers_; }
    [[nodiscard]] const std::vector<Watcher>& watchers() const noexcept { return watchers_; }
    [[nodiscard]] const std::vector<LightClient>& clients() const noexcept { return clients_; }
    [[nodiscard]] const Metrics& metrics() const noexcept { return metrics_; }
    [[nodiscard]] const EventLog& log() const noexcept { return log_; }

  private:
    struct PoolEntry {
        ActorId from;
        Transaction tx;
        bool contract_call{false};
    };
    struct ClientState {
        bool online{true};
        Tick offline_since{0};
        Tick online_since{0};
        std::vector<Envelope> mailbox;
    };

    void send(const ActorId& from, const ActorId& to, Message message) override;
    Digest submit(const ActorId& from, const ContractCall& call) override;
    void log(const ActorId& actor, std::string_view event, const Digest& digest, std::string detail) override;

    void violation(std::string name, const std::string& detail);
    void dispatch(const Envelope& env);
    void run_handlers();
    void build_block();
    void check_invariants();
    void collect_client_events();
    void check_prediction();
    void finish();

    ScenarioConfig config_;
    ProtocolTiming timing_;
    Chain chain_;
    Contract contract_;
    Network network_;
    CallIndex calls_;
    std::vector<DataProvider> providers_;
    std::vector<Watcher> watchers_;
    std::vector<LightClient> clients_;
    std::vector<ClientState> client_state_;
    std::vector<PoolEntry> pool_;
    std::map<ActorId, std::size_t> provider_index_;
    std::map<ActorId, std::size_t> watcher_index_;
    std::map<ActorId, std::size_t> client_index_;
    std::map<std::pair<std::size_t, std::uint64_t>, std::size_t> report_index_;
    std::vector<std::size_t> open_false_acceptances_;
    std::uint64_t user_tx_counter_{0};
    Tick now_{0};
    bool finished_{false};
    EventLog log_;
    Metrics metrics_;
};

ScenarioResult run_scenario(const ScenarioConfig& config);

//! Smallest challenge period for which an alert always beats acceptance.
std::uint64_t compliant_challenge_period(const ChainParams& chain, std::uint64_t delta);

struct SweepSpec {
    std::vector<ProviderStrategy> strategies;
    std::vector<StrategyScope> scopes{StrategyScope::kAny};
    std::vector<std::uint64_t> deltas{1};
    //! Extra ticks added to the compliant challenge period, one cell each.
    std::vector<std::uint64_t> challenge_slack{0};
    //! Fixed challenge periods; replaces the compliant values when set.
    std::optional<std::vector<std::uint64_t>> challenge_periods;
    std::vector<Protocol> protocols{Protocol::kEco};
    std::uint64_t seed{1};
};

struct SweepCell {
    ProviderStrategy strategy{ProviderStrategy::kHonest};
    StrategyScope scope{StrategyScope::kAny};
    std::uint64_t delta{1};
    std::uint64_t challenge_period{0};
    Protocol protocol{Protocol::kEco};
    Metrics metrics;
};

struct SweepReport {
    std::vector<SweepCell> cells;

    [[nodiscard]] std::size_t violating_cells() const;
    [[nodiscard]] std::string to_json() const;
};

//! Desk-scale cell: one adversary with the largest stake, two honest
//! providers, one client checking 10 ETH, one watcher.
ScenarioConfig sweep_scenario(ProviderStrategy strategy, StrategyScope scope, std::uint64_t delta,
                              std::uint64_t challenge_period, Protocol protocol, std::uint64_t seed);
SweepReport sweep(const SweepSpec& spec);

}  // namespace stakelc
