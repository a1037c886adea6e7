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

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include <stakelc/errors.hpp>
#include <stakelc/harness.hpp>
#include <stakelc/light_client.hpp>

namespace stakelc {
namespace {

Wei eth(int n) { return Wei(n) * wei_per_eth(); }

std::vector<Candidate> uniform(int count, int stake_eth) {
    std::vector<Candidate> out;
    for (int i = 0; i < count; ++i) out.push_back(Candidate{keygen(100 + i).public_key, eth(stake_eth)});
    return out;
}

TEST(SelectProviders, CoversValueWithFewestEqualProviders) {
    const auto picked = select_providers(uniform(10, 32), eth(160));
    EXPECT_EQ(picked.size(), 5u);
    const auto trimmed = select_providers(uniform(10, 32), eth(10));
    ASSERT_EQ(trimmed.size(), 1u);
    EXPECT_EQ(trimmed[0].amount, eth(10));
    EXPECT_EQ(select_providers(uniform(10, 32), eth(320)).size(), 10u);
}

TEST(SelectProviders, ThrowsWhenStakeIsShort) {
    try {
        (void)select_providers(uniform(2, 32), eth(65));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::kNoEligibleProviders);
    }
}

TEST(SelectProvidersProperty, AllocationsSumToRequiredAndRespectBacking) {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 300; ++round) {
        std::vector<Candidate> cands;
        Wei total = 0;
        const auto n = 1 + rng() % 12;
        for (std::uint64_t i = 0; i < n; ++i) {
            const Wei backing = Wei(rng() % 50) * wei_per_eth() + rng() % 1000;
            cands.push_back(Candidate{keygen(rng()).public_key, backing});
            total += backing;
        }
        if (total == 0) continue;
        const Wei required = 1 + Wei(rng()) % total;
        const auto picked = select_providers(cands, required);
        Wei sum = 0;
        for (const auto& a : picked) {
            const auto it = std::find_if(cands.begin(), cands.end(),
                                         [&](const Candidate& c) { return c.provider == a.provider; });
            ASSERT_NE(it, cands.end());
            EXPECT_LE(a.amount, it->backing);
            EXPECT_GT(a.amount, 0);
            sum += a.amount;
        }
        EXPECT_EQ(sum, required);
        // Greedy by backing: no unpicked candidate backs more than a fully used pick.
        for (std::size_t i = 0; i + 1 < picked.size(); ++i) {
            const auto it = std::find_if(cands.begin(), cands.end(),
                                         [&](const Candidate& c) { return c.provider == picked[i].provider; });
            EXPECT_EQ(picked[i].amount, it->backing);
        }
    }
}

TEST(RequiredCoverage, SumsOverlappingChecks) {
    const std::vector<Wei> values{eth(10), eth(32), Wei(7)};
    EXPECT_EQ(required_coverage(values), eth(42) + 7);
    EXPECT_EQ(required_coverage({}), 0);
}

TEST(CoverageDuration, BoundOrOverride) {
    ClientConfig cfg;
    cfg.protocol = Protocol::kIns;
    cfg.challenge_period = 20;
    cfg.receipt_challenge_period = 15;
    const ProtocolTiming timing{2, 8, 60};
    // T_fin + both challenge periods + 4 * delta + delta_comp.
    EXPECT_EQ(coverage_duration_for(cfg, timing), 8u + 15u + 20u + 8u + 1u);
    cfg.delta_comm = 3;
    EXPECT_EQ(coverage_duration_for(cfg, timing), 8u + 15u + 20u + 3u + 1u);
    cfg.coverage_duration = 500;
    EXPECT_EQ(coverage_duration_for(cfg, timing), 500u);
}

TEST(KnownProvider, SnapshotEntryIsCompact) {
    KnownProvider p{keygen(1).public_key, eth(320), eth(300), 4, 100, 9, false};
    EXPECT_LT(p.encode().size(), 100u);
}

TEST(Protocol, NamesRoundTrip) {
    EXPECT_EQ(parse_protocol(to_string(Protocol::kEco)), Protocol::kEco);
    EXPECT_EQ(parse_protocol(to_string(Protocol::kIns)), Protocol::kIns);
    EXPECT_FALSE(parse_protocol("trusted").has_value());
}

constexpr const char* kTracking = R"(
slots_per_epoch = 4
finality_depth_epochs = 2
delta_ticks = 2
max_challenge_period = 13
update_epoch_blocks = 25
total_ticks = 200
provider = stake=32 strategy=honest
provider = stake=32 strategy=honest
client = protocol=eco challenge_period=13 track_set=yes check=10@10 check=10@160
)";

TEST(LightClient, BootstrapsOnceWhileOnline) {
    const auto r = run_scenario(parse_scenario(kTracking));
    ASSERT_TRUE(r.metrics.ok());
    ASSERT_EQ(r.metrics.clients.size(), 1u);
    EXPECT_EQ(r.metrics.clients[0].heavy_checks, 1u);
    EXPECT_EQ(r.metrics.clients[0].accepted, 2u);
}

TEST(LightClient, MissedEpochForcesOneMoreBootstrap) {
    const auto online = run_scenario(parse_scenario(kTracking));
    // Offline across two full update epochs.
    const auto away = run_scenario(parse_scenario(std::string(kTracking) + "client = protocol=eco challenge_period=13 "
                                                                           "track_set=yes check=10@10 check=10@160 "
                                                                           "offline=40-110\n"));
    ASSERT_TRUE(away.metrics.ok());
    ASSERT_EQ(away.metrics.clients.size(), 2u);
    EXPECT_EQ(away.metrics.clients[1].heavy_checks, online.metrics.clients[0].heavy_checks + 1);
    EXPECT_EQ(away.metrics.clients[1].accepted, 2u);
}

TEST(LightClient, SnapshotStaysSmall) {
    Simulation sim(parse_scenario(kTracking));
    (void)sim.run();
    const auto& client = sim.clients().at(0);
    ASSERT_TRUE(client.bootstrapped());
    ASSERT_FALSE(client.known_providers().empty());
    EXPECT_LT(client.snapshot_bytes(), 100u * client.known_providers().size() + 100u);
}

TEST(LightClient, SignatureCountMatchesSelection) {
    auto cfg = parse_scenario(kTracking);
    cfg.providers.assign(10, ProviderSpec{eth(32)});
    cfg.clients[0].checks = {CheckSpec{10, eth(160)}};
    const auto r = run_scenario(cfg);
    ASSERT_TRUE(r.metrics.ok());
    const auto it = std::find_if(r.metrics.checks.begin(), r.metrics.checks.end(),
                                 [](const CheckReport& c) { return c.kind == CheckKind::kTarget; });
    ASSERT_NE(it, r.metrics.checks.end());
    EXPECT_TRUE(it->accepted);
    EXPECT_TRUE(it->correct);
    EXPECT_EQ(it->signatures, 5u);
}

}  // namespace
}  // namespace stakelc
