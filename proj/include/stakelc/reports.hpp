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

// Cost and computation reports built from the pricing engine and from
// mainnet-scale simulation runs.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <stakelc/harness.hpp>

namespace stakelc {

struct ReportRow {
    Wei covered_value;
    std::uint64_t provider_count{0};
    Rational premium_usd;
    Rational gas_usd;
    Rational total_usd;
    //! Signatures verified by the economic check.
    std::uint64_t signature_count{0};
    //! Signatures verified by the insured target check.
    std::uint64_t insured_signature_count{0};
    //! Ticks from forwarding to acceptance, economic check.
    std::uint64_t latency_ticks{0};
    //! Ticks from the last insured response to acceptance.
    std::uint64_t insured_latency_ticks{0};
};

//! Mainnet-like run: 32-slot epochs, two-epoch finality, unit delay, ten
//! 32 ETH providers, one economic and one insured client checking `value`.
ScenarioConfig table3_scenario(const Wei& value, const pricing::PricingParams& params,
                               std::uint64_t challenge_period = 1500);

//! Costs are quoted at `t_cov` blocks; computation and latency come from
//! simulation runs with challenge period `t_cov`.
std::vector<ReportRow> table3(const pricing::PricingParams& params, std::span<const Wei> values,
                              std::uint64_t t_cov = 1500);
std::vector<Wei> table3_values();
std::string table3_csv(std::span<const ReportRow> rows);

struct Fig1Point {
    Wei value;
    std::uint64_t duration{0};
    Rational premium_usd;
    Rational gas_usd;
    Rational total_usd;
};

std::vector<Fig1Point> fig1(const pricing::PricingParams& params, std::span<const std::uint64_t> durations,
                            std::span<const Wei> values);
std::string fig1_csv(std::span<const Fig1Point> points);

//! USD rounded half-up to cents.
std::string format_usd(const Rational& usd);

}  // namespace stakelc
