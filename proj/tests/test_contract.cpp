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

#include <random>

#include <gtest/gtest.h>

#include <stakelc/contract.hpp>
#include <stakelc/errors.hpp>

namespace stakelc {
namespace {

Wei eth(int n) { return Wei(n) * wei_per_eth(); }

ContractConfig desk_config() {
    ContractConfig c;
    c.update_epoch_blocks = 20;
    c.max_challenge_period = 10;
    c.finality_blocks = 8;
    c.delta_ticks = 1;
    return c;
}

struct Fixture {
    Chain chain{ChainParams{4, 2}};
    Contract contract{desk_config(), pricing::PricingParams{}};
    KeyPair p1 = keygen(101);
    KeyPair p2 = keygen(102);
    KeyPair buyer = keygen(201);
    KeyPair watcher = keygen(301);

    Fixture() {
        contract.mint(p1.public_key, eth(40));
        contract.mint(p2.public_key, eth(32));
        contract.mint(buyer.public_key, eth(5));
        contract.register_provider(p1.public_key, eth(40), 0);
        contract.register_provider(p2.public_key, eth(32), 0);
    }

    void advance_to(BlockNumber n) {
        while (chain.tip_height() < n) {
            chain.append_block({});
            contract.process_block_boundary(chain.tip_height());
        }
    }

    SlashCall false_claim(const KeyPair& provider, BlockNumber n, std::optional<InsuranceId> id = std::nullopt) {
        ResponseClaim claim{n, sha256(Bytes{0xde, 0xad}), sha256(Bytes{0x01}), id};
        return SlashCall{watcher.public_key, provider.public_key, claim, sign(provider.secret_key, claim.encode())};
    }

    BuyOutcome buy(const Wei& value, std::uint64_t duration, BlockNumber block) {
        return contract.buy_insurance(
            BuyInsuranceCall{buyer.public_key, {{p1.public_key, value}}, value, duration}, block);
    }
};

TEST(ContractConfig, EpochBoundNamesTheConstraint) {
    auto c = desk_config();
    c.update_epoch_blocks = 19;
    try {
        c.validate();
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::kConfigInvalid);
        EXPECT_NE(std::string(e.what()).find("max_challenge_period + finality_blocks + 2*delta"), std::string::npos);
    }
    c.update_epoch_blocks = 20;
    EXPECT_NO_THROW(c.validate());
}

TEST(Register, MinimumStakeAndDuplicates) {
    Fixture f;
    const auto k = keygen(9);
    f.contract.mint(k.public_key, eth(10));
    try {
        f.contract.register_provider(k.public_key, Wei(1), 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::kBelowMinStake);
    }
    try {
        f.contract.register_provider(f.p1.public_key, eth(1), 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::kDuplicateProvider);
    }
}

TEST(Buy, ChargesPremiumAndGasAndLocksStake) {
    Fixture f;
    const auto before = f.contract.balance(f.buyer.public_key);
    const auto out = f.contract.buy_insurance(
        BuyInsuranceCall{f.buyer.public_key, {{f.p1.public_key, eth(6)}, {f.p2.public_key, eth(4)}}, eth(10), 1500},
        3);
    ASSERT_TRUE(out.ok());
    const auto premium = pricing::premium(pricing::PricingParams{}, 1500, eth(10));
    EXPECT_EQ(out.premium, premium);
    EXPECT_EQ(out.gas, Wei(200'000) * Wei(9'377'000'000ULL));
    EXPECT_EQ(before - f.contract.balance(f.buyer.public_key), premium + out.gas);
    EXPECT_EQ(f.contract.find_provider(f.p1.public_key)->locked, eth(6));
    EXPECT_EQ(f.contract.find_provider(f.p2.public_key)->locked, eth(4));
    EXPECT_EQ(f.contract.find_provider(f.p1.public_key)->rewards + f.contract.find_provider(f.p2.public_key)->rewards,
              premium);
    EXPECT_EQ(f.contract.find_provider(f.p2.public_key)->rewards, premium * 4 / 10);
    const auto* pol = f.contract.policy(*out.id);
    EXPECT_EQ(pol->state, PolicyState::kOpen);
    EXPECT_EQ(pol->last_covered_block(), 1503u);
    EXPECT_EQ(f.contract.total_value(), f.contract.minted());
}

TEST(Buy, RevertReasons) {
    Fixture f;
    auto call = [&](std::vector<Allocation> a, const Wei& v, std::uint64_t d) {
        return f.contract.buy_insurance(BuyInsuranceCall{f.buyer.public_key, std::move(a), v, d}, 2).revert;
    };
    EXPECT_EQ(call({{f.p1.public_key, eth(41)}}, eth(41), 10), RevertReason::kInsufficientAttributableStake);
    EXPECT_EQ(call({{f.p1.public_key, eth(5)}}, eth(6), 10), RevertReason::kCoverageExceedsAllocations);
    EXPECT_EQ(call({{f.p1.public_key, eth(5)}}, eth(5), 2'000'000), RevertReason::kDurationTooLong);
    EXPECT_EQ(call({{f.p1.public_key, eth(5)}, {f.p1.public_key, eth(5)}}, eth(5), 10), RevertReason::kMalformed);
    EXPECT_EQ(call({{keygen(77).public_key, eth(5)}}, eth(5), 10), RevertReason::kInactiveProvider);
    // Gas was charged on each of the five reverts above.
    EXPECT_EQ(f.contract.balance(f.buyer.public_key), eth(5) - Wei(5) * pricing::gas_cost_wei({}));
    // Enough for gas but not for the premium.
    const auto thin = keygen(98);
    f.contract.mint(thin.public_key, pricing::gas_cost_wei({}) + 1);
    const auto out = f.contract.buy_insurance(BuyInsuranceCall{thin.public_key, {{f.p1.public_key, eth(5)}}, eth(5), 10}, 2);
    EXPECT_EQ(out.revert, RevertReason::kInsufficientFunds);
    EXPECT_EQ(f.contract.balance(thin.public_key), Wei(1));
    EXPECT_EQ(f.contract.total_value(), f.contract.minted());
}

TEST(Buy, BrokeBuyerPaysNoGas) {
    Fixture f;
    const auto pauper = keygen(999);
    f.contract.mint(pauper.public_key, Wei(10));
    const auto out = f.contract.buy_insurance(
        BuyInsuranceCall{pauper.public_key, {{f.p1.public_key, eth(1)}}, eth(1), 10}, 1);
    EXPECT_EQ(out.revert, RevertReason::kInsufficientFunds);
    EXPECT_EQ(out.gas, 0);
    EXPECT_EQ(f.contract.balance(pauper.public_key), Wei(10));
}

TEST(Slash, RejectionReasons) {
    Fixture f;
    f.advance_to(3);
    auto bad_sig = f.false_claim(f.p1, 1);
    bad_sig.signature.data[0] ^= 1;
    EXPECT_EQ(f.contract.slash(bad_sig, 3, f.chain).rejected, RejectReason::kSignatureInvalid);
    EXPECT_EQ(f.contract.slash(f.false_claim(f.p1, 1), 3, f.chain).rejected, RejectReason::kBlockNotYetFinal);
    EXPECT_EQ(f.contract.slash(f.false_claim(keygen(5), 1), 3, f.chain).rejected, RejectReason::kUnknownProvider);
    f.advance_to(12);
    ResponseClaim true_claim{2, f.chain.block(2).hash, sha256(Bytes{0x01}), std::nullopt};
    const SlashCall honest{f.watcher.public_key, f.p1.public_key, true_claim,
                           sign(f.p1.secret_key, true_claim.encode())};
    EXPECT_EQ(f.contract.slash(honest, 12, f.chain).rejected, RejectReason::kHashMatchesFinalized);
    ASSERT_TRUE(f.contract.slash(f.false_claim(f.p1, 2), 12, f.chain).ok());
    EXPECT_EQ(f.contract.slash(f.false_claim(f.p1, 3), 12, f.chain).rejected, RejectReason::kAlreadySlashed);
}

TEST(Slash, UninsuredSplitsBountyAndBurn) {
    Fixture f;
    f.advance_to(12);
    const auto out = f.contract.slash(f.false_claim(f.p1, 2), 12, f.chain);
    ASSERT_TRUE(out.ok());
    EXPECT_EQ(out.claim, ClaimStatus::kNotRequested);
    EXPECT_EQ(out.event->slashed_amount, eth(40));
    EXPECT_EQ(out.event->bounty, eth(2));  // 5% of 40
    EXPECT_EQ(out.event->burned, eth(38));
    EXPECT_EQ(f.contract.balance(f.watcher.public_key), eth(2));
    EXPECT_EQ(f.contract.find_provider(f.p1.public_key)->status, ProviderStatus::kSlashed);
    EXPECT_EQ(f.contract.total_value(), f.contract.minted());
}

TEST(Slash, InsuredClaimPaysCoverageToBuyer) {
    Fixture f;
    const auto bought = f.buy(eth(10), 100, 1);
    ASSERT_TRUE(bought.ok());
    f.advance_to(12);
    const auto before = f.contract.balance(f.buyer.public_key);
    const auto out = f.contract.slash(f.false_claim(f.p1, 2, bought.id), 12, f.chain);
    ASSERT_TRUE(out.ok());
    EXPECT_EQ(out.claim, ClaimStatus::kPaid);
    EXPECT_EQ(out.event->payout, eth(10));
    EXPECT_EQ(out.event->beneficiary, f.buyer.public_key);
    EXPECT_EQ(out.event->bounty, eth(2));
    EXPECT_EQ(out.event->burned, eth(28));
    EXPECT_EQ(f.contract.balance(f.buyer.public_key) - before, eth(10));
    EXPECT_EQ(f.contract.policy(*bought.id)->state, PolicyState::kClaimed);
    EXPECT_EQ(f.contract.total_value(), f.contract.minted());
}

TEST(Slash, ClaimStatuses) {
    Fixture f;
    const auto bought = f.buy(eth(10), 5, 1);
    ASSERT_TRUE(bought.ok());
    f.advance_to(12);
    // Policy covered blocks 1..6 and has expired.
    EXPECT_EQ(f.contract.slash(f.false_claim(f.p1, 2, bought.id), 12, f.chain).claim, ClaimStatus::kPolicyNotOpen);

    Fixture g;
    const auto other = g.buy(eth(10), 100, 1);
    g.advance_to(12);
    EXPECT_EQ(g.contract.slash(g.false_claim(g.p2, 2, other.id), 12, g.chain).claim, ClaimStatus::kNotAllocated);

    Fixture h;
    h.advance_to(12);
    EXPECT_EQ(h.contract.slash(h.false_claim(h.p1, 2, InsuranceId{42}), 12, h.chain).claim,
              ClaimStatus::kUnknownPolicy);
}

TEST(Slash, SecondAllocatedLiarTopsUpShortfall) {
    Fixture f;
    const auto small = keygen(103);
    f.contract.mint(small.public_key, eth(2));
    f.contract.register_provider(small.public_key, eth(2), 0);
    const auto bought = f.contract.buy_insurance(
        BuyInsuranceCall{f.buyer.public_key, {{small.public_key, eth(2)}, {f.p2.public_key, eth(3)}}, eth(5), 100},
        1);
    ASSERT_TRUE(bought.ok());
    f.advance_to(12);
    const auto first = f.contract.slash(f.false_claim(small, 2, bought.id), 12, f.chain);
    EXPECT_EQ(first.event->payout, eth(2));
    const auto second = f.contract.slash(f.false_claim(f.p2, 2, bought.id), 12, f.chain);
    EXPECT_EQ(second.claim, ClaimStatus::kPaid);
    EXPECT_EQ(second.event->payout, eth(3));
    EXPECT_EQ(f.contract.policy(*bought.id)->paid_out, eth(5));
}

TEST(Withdraw, ReleasedAtEndOfFollowingEpoch) {
    Fixture f;
    f.advance_to(24);  // epoch 1
    f.contract.request_withdraw(f.p2.public_key, 25);
    EXPECT_EQ(f.contract.scheduled_release_block(f.p2.public_key), 59u);  // last block of epoch 2
    f.advance_to(58);
    EXPECT_EQ(f.contract.find_provider(f.p2.public_key)->status, ProviderStatus::kLeaving);
    f.advance_to(59);
    EXPECT_EQ(f.contract.find_provider(f.p2.public_key)->status, ProviderStatus::kExited);
    EXPECT_EQ(f.contract.balance(f.p2.public_key), eth(32));
}

TEST(Withdraw, OpenPolicyDefersRelease) {
    Fixture f;
    const auto bought = f.buy(eth(10), 60, 2);
    ASSERT_TRUE(bought.ok());
    f.contract.request_withdraw(f.p1.public_key, 3);
    // Expiry at block 63 lies in epoch 3, whose last block is 79.
    EXPECT_EQ(f.contract.scheduled_release_block(f.p1.public_key), 79u);
    f.advance_to(39);
    EXPECT_EQ(f.contract.find_provider(f.p1.public_key)->status, ProviderStatus::kLeaving);
    f.advance_to(79);
    EXPECT_EQ(f.contract.find_provider(f.p1.public_key)->status, ProviderStatus::kExited);
    EXPECT_EQ(f.contract.balance(f.p1.public_key), eth(40) + bought.premium);
}

TEST(Withdraw, LeavingProviderCannotSellCover) {
    Fixture f;
    f.contract.request_withdraw(f.p1.public_key, 1);
    EXPECT_EQ(f.buy(eth(1), 10, 2).revert, RevertReason::kInactiveProvider);
    try {
        f.contract.request_withdraw(f.p1.public_key, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::kNotActive);
    }
}

TEST(ProviderSets, SettledSetLagsTwoEpochs) {
    Fixture f;
    const auto late = keygen(104);
    f.contract.mint(late.public_key, eth(8));
    f.advance_to(25);
    f.contract.register_provider(late.public_key, eth(8), 25);  // epoch 1
    f.contract.request_withdraw(f.p2.public_key, 26);          // epoch 1
    EXPECT_EQ(f.contract.settled_set(2).size(), 2u);            // p1, p2
    const auto e3 = f.contract.settled_set(3);
    ASSERT_EQ(e3.size(), 2u);                                   // p1, late
    EXPECT_TRUE(std::any_of(e3.begin(), e3.end(), [&](const auto& s) { return s.public_key == late.public_key; }));
    EXPECT_EQ(f.contract.active_set(2, 25).size(), 3u);         // p2 still bonded until block 59
    try {
        (void)f.contract.active_set(4, 25);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::kEpochTooFar);
    }
}

TEST(Execute, ReceiptsForEachCallKind) {
    Fixture f;
    const auto reg = Transaction::make(encode_call(RegisterCall{keygen(55).public_key, eth(1)}));
    const auto r1 = f.contract.execute(reg, 1, f.chain);
    EXPECT_EQ(r1.receipt.status, ReceiptStatus::kReverted);
    EXPECT_EQ(r1.receipt.reason, static_cast<std::uint8_t>(RevertReason::kInsufficientFunds));

    const auto wd = Transaction::make(encode_call(WithdrawCall{f.p2.public_key}));
    EXPECT_EQ(f.contract.execute(wd, 1, f.chain).receipt.status, ReceiptStatus::kOk);

    const auto garbage = Transaction::make(Bytes{0xff, 0x00});
    EXPECT_EQ(f.contract.execute(garbage, 1, f.chain).receipt.reason,
              static_cast<std::uint8_t>(RevertReason::kMalformed));

    f.advance_to(12);
    const auto sl = Transaction::make(encode_call(f.false_claim(f.p1, 2)));
    const auto r3 = f.contract.execute(sl, 12, f.chain);
    EXPECT_EQ(r3.receipt.status, ReceiptStatus::kOk);
    ASSERT_TRUE(r3.slash_event.has_value());
    EXPECT_EQ(SlashEvent::decode(r3.slash_event->encode()).slashed_amount, eth(40));
    EXPECT_EQ(Receipt::decode(r3.receipt.encode()), r3.receipt);
}

TEST(Encoding, CallsRoundTrip) {
    Fixture f;
    const std::vector<ContractCall> calls{
        RegisterCall{f.p1.public_key, eth(3)}, WithdrawCall{f.p2.public_key},
        BuyInsuranceCall{f.buyer.public_key, {{f.p1.public_key, eth(1)}, {f.p2.public_key, eth(2)}}, eth(3), 77},
        f.false_claim(f.p1, 4, InsuranceId{9})};
    for (const auto& c : calls) {
        const auto bytes = encode_call(c);
        const auto back = decode_call(bytes);
        ASSERT_TRUE(back.has_value());
        EXPECT_EQ(encode_call(*back), bytes);
    }
}

// Randomized buy/expire/claim schedules; locked never exceeds stake and no
// wei appears or disappears.
TEST(ContractProperty, NoOverloadAndConservation) {
    std::mt19937_64 rng(2024);
    for (int run = 0; run < 100; ++run) {
        Chain chain(ChainParams{2, 1});
        ContractConfig cfg = desk_config();
        cfg.finality_blocks = 2;
        cfg.max_challenge_period = 4;
        cfg.update_epoch_blocks = 8;
        Contract c(cfg, pricing::PricingParams{});
        std::vector<KeyPair> providers;
        for (int i = 0; i < 4; ++i) {
            providers.push_back(keygen(1000 + i));
            c.mint(providers.back().public_key, eth(10));
            c.register_provider(providers.back().public_key, eth(2 + static_cast<int>(rng() % 8)), 0);
        }
        const auto buyer = keygen(7);
        c.mint(buyer.public_key, eth(100));
        std::vector<InsuranceId> ids;
        for (BlockNumber b = 1; b <= 60; ++b) {
            chain.append_block({});
            const auto& p = providers[rng() % providers.size()];
            switch (rng() % 4) {
                case 0:
                case 1: {
                    const Wei amount = Wei(1 + rng() % 5) * wei_per_eth();
                    const auto out = c.buy_insurance(BuyInsuranceCall{buyer.public_key, {{p.public_key, amount}},
                                                                      amount, 1 + rng() % 12},
                                                     b);
                    if (out.ok()) ids.push_back(*out.id);
                    break;
                }
                case 2:
                    if (!ids.empty() && b > 3) {
                        ResponseClaim claim{b - 3, sha256(Bytes{1}), sha256(Bytes{2}), ids[rng() % ids.size()]};
                        (void)c.slash(SlashCall{buyer.public_key, p.public_key, claim, sign(p.secret_key, claim.encode())},
                                      b, chain);
                    }
                    break;
                default:
                    if (const auto* r = c.find_provider(p.public_key); r && r->status == ProviderStatus::kActive &&
                                                                        rng() % 4 == 0) {
                        c.request_withdraw(p.public_key, b);
                    }
                    break;
            }
            c.process_block_boundary(b);
            ASSERT_TRUE(c.no_overload()) << "run " << run << " block " << b;
            ASSERT_EQ(c.total_value(), c.minted()) << "run " << run << " block " << b;
        }
    }
}

}  // namespace
}  // namespace stakelc
