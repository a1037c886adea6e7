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

#include <stakelc/pricing.hpp>

#include <numeric>

#include <stakelc/errors.hpp>

namespace stakelc::pricing {

void PricingParams::validate() const {
    if (apy < 0) throw Error(Errc::kConfigInvalid, "apy must be non-negative");
    if (blocks_per_year == 0) throw Error(Errc::kConfigInvalid, "blocks_per_year must be positive");
    if (utilization <= 0 || utilization > 1) throw Error(Errc::kConfigInvalid, "utilization must lie in (0, 1]");
    if (eth_price_usd < 0) throw Error(Errc::kConfigInvalid, "eth price must be non-negative");
    if (gas_price_wei < 0) throw Error(Errc::kConfigInvalid, "gas price must be non-negative");
}

Rational utilization_at_block(std::span<const ProviderLoad> providers) {
    if (providers.empty()) throw Error(Errc::kNoProviders, "utilization needs at least one provider");
    Wei locked = 0;
    Wei stake = 0;
    for (const auto& p : providers) {
        locked += p.locked;
        stake += p.stake;
    }
    if (stake <= 0) throw Error(Errc::kNoProviders, "total stake is zero");
    return Rational(locked, stake);
}

Rational average_utilization(std::span<const Rational> per_block) {
    if (per_block.empty()) throw Error(Errc::kEmptySeries, "utilization series is empty");
    Rational sum = 0;
    for (const auto& u : per_block) sum += u;
    return sum / Rational(per_block.size());
}

Rational unit_cost(const PricingParams& params) {
    if (params.utilization <= 0) throw Error(Errc::kZeroUtilization, "utilization must be positive");
    if (params.blocks_per_year == 0) throw Error(Errc::kConfigInvalid, "blocks_per_year must be positive");
    return params.apy / (Rational(params.blocks_per_year) * params.utilization);
}

Wei premium(const PricingParams& params, std::uint64_t t_cov, const Wei& v_cov) {
    return ceil_to_wei(unit_cost(params) * Rational(t_cov) * Rational(v_cov));
}

std::uint64_t min_coverage_duration(const CoverageInputs& inputs) {
    const auto cps = std::accumulate(inputs.challenge_periods.begin(), inputs.challenge_periods.end(), std::uint64_t{0});
    return inputs.t_fin + cps + inputs.delta_comm + inputs.delta_comp;
}

std::uint64_t seconds_to_blocks(std::uint64_t seconds, std::uint64_t block_seconds) {
    return (seconds + block_seconds - 1) / block_seconds;
}

Wei gas_cost_wei(const PricingParams& params) { return Wei(params.gas_units) * params.gas_price_wei; }

Rational wei_to_usd(const PricingParams& params, const Wei& amount) {
    return Rational(amount, wei_per_eth()) * params.eth_price_usd;
}

CostBreakdown total_cost_usd(const PricingParams& params, std::uint64_t t_cov, const Wei& v_cov) {
    CostBreakdown out;
    out.premium_wei = premium(params, t_cov, v_cov);
    out.gas_wei = gas_cost_wei(params);
    out.premium_usd = wei_to_usd(params, out.premium_wei);
    out.gas_usd = wei_to_usd(params, out.gas_wei);
    out.total_usd = out.premium_usd + out.gas_usd;
    return out;
}

}  // namespace stakelc::pricing
