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

#include <stakelc/cli.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <stakelc/errors.hpp>
#include <stakelc/harness.hpp>
#include <stakelc/reports.hpp>

namespace stakelc {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct PriceFlags {
    std::string apy{"0.06"};
    std::string utilization{"0.75"};
    std::string eth_usd{"3200"};
    std::string gas_gwei{"9.377"};
    std::uint64_t gas_units{200'000};
    std::uint64_t blocks_per_year{2'628'000};

    void attach(CLI::App* cmd) {
        cmd->add_option("--apy", apy, "Staking yield as a fraction")->capture_default_str();
        cmd->add_option("--utilization", utilization, "Assumed stake utilization")->capture_default_str();
        cmd->add_option("--eth-usd", eth_usd, "ETH price in USD")->capture_default_str();
        cmd->add_option("--gas-gwei", gas_gwei, "Gas price in gwei")->capture_default_str();
        cmd->add_option("--gas-units", gas_units, "Gas used by a purchase")->capture_default_str();
        cmd->add_option("--blocks-per-year", blocks_per_year, "Blocks per year")->capture_default_str();
    }

    [[nodiscard]] pricing::PricingParams params() const {
        pricing::PricingParams p;
        p.apy = parse_decimal(apy);
        p.utilization = parse_decimal(utilization);
        p.eth_price_usd = parse_decimal(eth_usd);
        const auto gas = parse_decimal(gas_gwei) * Rational(wei_per_gwei());
        if (boost::multiprecision::denominator(gas) != 1) {
            throw Error(Errc::kParseError, "--gas-gwei has sub-wei precision");
        }
        p.gas_price_wei = boost::multiprecision::numerator(gas);
        p.gas_units = gas_units;
        p.blocks_per_year = blocks_per_year;
        p.validate();
        return p;
    }
};

template <class T, class Parse>
std::vector<T> split_list(const std::string& text, Parse parse) {
    std::vector<T> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find(',', pos);
        if (end == std::string::npos) end = text.size();
        if (end > pos) out.push_back(parse(text.substr(pos, end - pos)));
        pos = end + 1;
    }
    return out;
}

std::uint64_t to_u64(const std::string& s) {
    try {
        std::size_t used = 0;
        const auto v = std::stoull(s, &used);
        if (used != s.size()) throw Error(Errc::kParseError, "bad integer '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw Error(Errc::kParseError, "bad integer '" + s + "'");
    }
}

void write_or_print(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(Errc::kConfigInvalid, "cannot write " + path);
    f << text;
    out << "wrote " << path << '\n';
}

int cmd_run(const std::string& scenario, const std::string& out_dir, std::ostream& out, std::ostream& err) {
    const auto cfg = load_scenario(scenario);
    const auto result = run_scenario(cfg);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream(std::filesystem::path(out_dir) / "metrics.json", std::ios::binary) << result.metrics.to_json()
                                                                                         << '\n';
        std::ofstream(std::filesystem::path(out_dir) / "events.jsonl", std::ios::binary) << result.log.text();
    }
    std::uint64_t accepted = 0;
    for (const auto& c : result.metrics.clients) accepted += c.accepted;
    out << cfg.name << ": ticks " << cfg.total_ticks << ", accepted " << accepted << ", slashes "
        << result.metrics.slashes << ", events " << result.log.size() << '\n';
    if (!result.metrics.ok()) {
        for (const auto& v : result.metrics.violations) err << "invariant violated: " << v << '\n';
        return kExitViolation;
    }
    return kExitOk;
}

int cmd_price(const std::string& value, std::uint64_t duration, const PriceFlags& flags, std::ostream& out) {
    const auto params = flags.params();
    const auto v = eth_to_wei(value);
    const auto cost = pricing::total_cost_usd(params, duration, v);
    out << "premium_eth " << format_eth(cost.premium_wei, 6) << '\n'
        << "premium_usd " << format_usd(cost.premium_usd) << '\n'
        << "gas_eth " << format_eth(cost.gas_wei, 6) << '\n'
        << "gas_usd " << format_usd(cost.gas_usd) << '\n'
        << "total_usd " << format_usd(cost.total_usd) << '\n';
    return kExitOk;
}

int cmd_sweep(const std::string& strategies, const std::string& scopes, const std::string& deltas,
              const std::string& protocols, const std::string& periods, std::uint64_t seed, const std::string& path,
              std::ostream& out, std::ostream& err) {
    SweepSpec spec;
    spec.seed = seed;
    if (strategies == "all") {
        spec.strategies = all_strategies();
    } else {
        spec.strategies = split_list<ProviderStrategy>(strategies, [](const std::string& s) {
            const auto v = parse_strategy(s);
            if (!v) throw Error(Errc::kParseError, "unknown strategy '" + s + "'");
            return *v;
        });
    }
    spec.scopes = split_list<StrategyScope>(scopes, [](const std::string& s) {
        const auto v = parse_scope(s);
        if (!v) throw Error(Errc::kParseError, "unknown scope '" + s + "'");
        return *v;
    });
    spec.deltas = split_list<std::uint64_t>(deltas, to_u64);
    spec.protocols = split_list<Protocol>(protocols, [](const std::string& s) {
        const auto v = parse_protocol(s);
        if (!v) throw Error(Errc::kParseError, "unknown protocol '" + s + "'");
        return *v;
    });
    if (!periods.empty()) spec.challenge_periods = split_list<std::uint64_t>(periods, to_u64);
    const auto report = sweep(spec);
    write_or_print(path, report.to_json() + "\n", out);
    out << "cells " << report.cells.size() << ", violating " << report.violating_cells() << '\n';
    if (report.violating_cells() > 0) {
        std::set<std::string> names;
        for (const auto& cell : report.cells) names.insert(cell.metrics.violations.begin(), cell.metrics.violations.end());
        for (const auto& n : names) err << "invariant violated: " << n << '\n';
        return kExitViolation;
    }
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stake-backed light client simulator and insurance pricing"};
    app.require_subcommand(1);

    std::string scenario;
    std::string out_dir;
    auto* run = app.add_subcommand("run", "Run a scenario file");
    run->add_option("scenario", scenario, "Scenario file")->required();
    run->add_option("--out", out_dir, "Directory for metrics.json and events.jsonl");

    std::string value;
    std::uint64_t duration = 0;
    PriceFlags price_flags;
    auto* price = app.add_subcommand("price", "Quote an insurance premium");
    price->add_option("--value", value, "Covered value in ETH")->required();
    price->add_option("--duration", duration, "Coverage duration in blocks")->required();
    price_flags.attach(price);

    std::string table_out;
    std::uint64_t table_duration = 1500;
    PriceFlags table_flags;
    auto* table = app.add_subcommand("table3", "Cost and computation per covered value");
    table->add_option("--out", table_out, "CSV output path (stdout when empty)");
    table->add_option("--duration", table_duration, "Coverage and challenge period in blocks")->capture_default_str();
    table_flags.attach(table);

    std::string fig_out;
    std::string fig_durations{"300,1500,7200,50400"};
    std::string fig_values{"1,10,32,100,160,320,1000"};
    PriceFlags fig_flags;
    auto* fig = app.add_subcommand("fig1", "Insurance cost over covered value and duration");
    fig->add_option("--out", fig_out, "CSV output path (stdout when empty)");
    fig->add_option("--durations", fig_durations, "Comma-separated durations in blocks")->capture_default_str();
    fig->add_option("--values", fig_values, "Comma-separated values in ETH")->capture_default_str();
    fig_flags.attach(fig);

    std::string sw_strategies{"all"};
    std::string sw_scopes{"any,insured"};
    std::string sw_deltas{"1,2,4"};
    std::string sw_protocols{"eco"};
    std::string sw_periods;
    std::uint64_t sw_seed = 1;
    std::string sw_out;
    auto* sw = app.add_subcommand("sweep", "Run adversary strategies across timing parameters");
    sw->add_option("--strategies", sw_strategies, "Comma-separated strategies or 'all'")->capture_default_str();
    sw->add_option("--scopes", sw_scopes, "Comma-separated scopes")->capture_default_str();
    sw->add_option("--deltas", sw_deltas, "Comma-separated network delays")->capture_default_str();
    sw->add_option("--protocols", sw_protocols, "Comma-separated protocols")->capture_default_str();
    sw->add_option("--challenge-periods", sw_periods, "Fixed challenge periods; compliant minimum when empty");
    sw->add_option("--seed", sw_seed, "Seed")->capture_default_str();
    sw->add_option("--out", sw_out, "JSON report path (stdout when empty)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*run) return cmd_run(scenario, out_dir, out, err);
        if (*price) return cmd_price(value, duration, price_flags, out);
        if (*table) {
            const auto values = table3_values();
            const auto rows = table3(table_flags.params(), values, table_duration);
            write_or_print(table_out, table3_csv(rows), out);
            return kExitOk;
        }
        if (*fig) {
            const auto durations = split_list<std::uint64_t>(fig_durations, to_u64);
            const auto values = split_list<Wei>(fig_values, [](const std::string& s) { return eth_to_wei(s); });
            write_or_print(fig_out, fig1_csv(fig1(fig_flags.params(), durations, values)), out);
            return kExitOk;
        }
        if (*sw) {
            return cmd_sweep(sw_strategies, sw_scopes, sw_deltas, sw_protocols, sw_periods, sw_seed, sw_out, out,
                             err);
        }
    } catch (const Error& e) {
        err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace stakelc
