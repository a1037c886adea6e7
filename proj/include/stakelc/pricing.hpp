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

// Insurance pricing. The unit cost of locking one wei of stake for one block
// is apy / (blocks_per_year * utilization); a policy covering `v_cov` for
// `t_cov` blocks costs unit_cost * t_cov * v_cov, rounded up to whole wei.
// All intermediate values are exact rationals.

#include <cstdint>
#include <span>
#include <vector>

#include <stakelc/money.hpp>

namespace stakelc::pricing {

struct PricingParams {
    Rational apy{6, 100};
    std::uint64_t blocks_per_year{2'628'000};  // 12 s blocks
    //! Configured market utilization used for quotes; never the measured one.
    Rational utilization{3, 4};
    Rational eth_price_usd{3200};
    Wei gas_price_wei{9'377'000'000};
    std::uint64_t gas_units{200'000};

    //! Throws kConfigInvalid.
    void validate() const;
};

struct CoverageInputs {
    std::uint64_t t_fin{0};
    //! T_cp^0 (insurance transaction check) followed by one entry per insured check.
    std::vector<std::uint64_t> challenge_periods;
    std::uint64_t delta_comm{0};
    std::uint64_t delta_comp{0};
};

struct ProviderLoad {
    Wei stake;
    Wei locked;
};

//! Σ locked / Σ stake over the providers active at one block. Throws kNoProviders.
Rational utilization_at_block(std::span<const ProviderLoad> providers);
//! Arithmetic mean. Throws kEmptySeries.
Rational average_utilization(std::span<const Rational> per_block);

//! ETH per (ETH * block). Throws kZeroUtilization.
Rational unit_cost(const PricingParams& params);
Wei premium(const PricingParams& params, std::uint64_t t_cov, const Wei& v_cov);

//! Lower bound on the coverage window: t_fin + Σ T_cp^i + Δ_comm + Δ_comp.
std::uint64_t min_coverage_duration(const CoverageInputs& inputs);
std::uint64_t seconds_to_blocks(std::uint64_t seconds, std::uint64_t block_seconds = 12);

Wei gas_cost_wei(const PricingParams& params);

struct CostBreakdown {
    Wei premium_wei;
    Wei gas_wei;
    Rational premium_usd;
    Rational gas_usd;
    Rational total_usd;
};

CostBreakdown total_cost_usd(const PricingParams& params, std::uint64_t t_cov, const Wei& v_cov);

//! Rational USD value of a wei amount at the configured ETH price.
Rational wei_to_usd(const PricingParams& params, const Wei& amount);

}  // namespace stakelc::pricing
