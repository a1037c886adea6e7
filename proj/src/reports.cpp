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

#include <stakelc/reports.hpp>

#include <sstream>

#include <stakelc/errors.hpp>

namespace stakelc {

ScenarioConfig table3_scenario(const Wei& value, const pricing::PricingParams& params,
                               std::uint64_t challenge_period) {
    ScenarioConfig cfg;
    cfg.name = "table3-" + format_eth(value, 0);
    cfg.seed = 3;
    cfg.chain = ChainParams{32, 2};
    cfg.delta_ticks = 1;
    cfg.max_challenge_period = challenge_period;
    cfg.update_epoch_blocks = challenge_period + cfg.chain.finality_blocks() + 2 * cfg.delta_ticks;
    cfg.pricing = params;
    for (int i = 0; i < 10; ++i) {
        cfg.providers.push_back(ProviderSpec{Wei(32) * wei_per_eth(), ProviderStrategy::kHonest, StrategyScope::kAny,
                                             true, {}});
    }
    for (auto protocol : {Protocol::kEco, Protocol::kIns}) {
        ClientSpec c;
        c.config.protocol = protocol;
        c.config.challenge_period = challenge_period;
        c.checks.push_back(CheckSpec{1, value});
        cfg.clients.push_back(std::move(c));
    }
    const auto t_fin = cfg.chain.finality_blocks();
    // Insured path: finality wait, receipt finality, receipt challenge, listening window.
    cfg.total_ticks = 2 * t_fin + 2 * challenge_period + 16 * cfg.delta_ticks + 16;
    return cfg;
}

std::vector<Wei> table3_values() {
    std::vector<Wei> out;
    for (int eth : {10, 32, 160, 320}) out.push_back(Wei(eth) * wei_per_eth());
    return out;
}

std::vector<ReportRow> table3(const pricing::PricingParams& params, std::span<const Wei> values,
                              std::uint64_t t_cov) {
    std::vector<ReportRow> rows;
    for (const auto& v : values) {
        ReportRow row;
        row.covered_value = v;
        const auto cost = pricing::total_cost_usd(params, t_cov, v);
        row.premium_usd = cost.premium_usd;
        row.gas_usd = cost.gas_usd;
        row.total_usd = cost.total_usd;

        const auto result = run_scenario(table3_scenario(v, params, t_cov));
        if (!result.metrics.ok()) {
            throw Error(Errc::kConfigInvalid, "table3 run violated " + result.metrics.violations.front());
        }
        for (const auto& r : result.metrics.checks) {
            if (r.kind != CheckKind::kTarget || !r.accepted) continue;
            if (r.protocol == Protocol::kEco) {
                row.signature_count = r.signatures;
                row.latency_ticks = r.accepted_at - r.last_forward_tick;
            } else {
                row.insured_signature_count = r.signatures;
                row.insured_latency_ticks = r.accepted_at - r.last_response_tick;
            }
        }
        row.provider_count = row.insured_signature_count;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_usd(const Rational& usd) { return format_fixed(usd, 2); }

std::string table3_csv(std::span<const ReportRow> rows) {
    std::ostringstream out;
    out << "value_eth,provider_count,premium_usd,gas_usd,total_usd,eco_signatures,ins_signatures,"
           "eco_latency_ticks,ins_latency_ticks\n";
    for (const auto& r : rows) {
        out << format_eth(r.covered_value, 0) << ',' << r.provider_count << ',' << format_usd(r.premium_usd) << ','
            << format_usd(r.gas_usd) << ',' << format_usd(r.total_usd) << ',' << r.signature_count << ','
            << r.insured_signature_count << ',' << r.latency_ticks << ',' << r.insured_latency_ticks << '\n';
    }
    return out.str();
}

std::vector<Fig1Point> fig1(const pricing::PricingParams& params, std::span<const std::uint64_t> durations,
                            std::span<const Wei> values) {
    std::vector<Fig1Point> out;
    for (auto d : durations) {
        for (const auto& v : values) {
            const auto cost = pricing::total_cost_usd(params, d, v);
            out.push_back(Fig1Point{v, d, cost.premium_usd, cost.gas_usd, cost.total_usd});
        }
    }
    return out;
}

std::string fig1_csv(std::span<const Fig1Point> points) {
    std::ostringstream out;
    out << "value_eth,duration_blocks,premium_usd,gas_usd,total_usd\n";
    for (const auto& p : points) {
        out << format_decimal(wei_to_eth(p.value), 6) << ',' << p.duration << ',' << format_fixed(p.premium_usd, 4)
            << ',' << format_fixed(p.gas_usd, 4) << ',' << format_fixed(p.total_usd, 4) << '\n';
    }
    return out.str();
}

}  // namespace stakelc
