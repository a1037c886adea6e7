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

#include <optional>
#include <vector>

#include <stakelc/crypto.hpp>
#include <stakelc/money.hpp>

namespace stakelc {

struct Transaction {
    Digest id;  // sha256(payload)
    Bytes payload;
    Wei value{0};

    static Transaction make(Bytes payload, Wei value = 0);
};

struct BlockHeader {
    BlockNumber number{0};
    Digest parent_hash;
    Digest transactions_root;

    //! tag || be64(number) || parent_hash || transactions_root
    [[nodiscard]] Bytes encode() const;
    [[nodiscard]] Digest hash() const { return sha256(encode()); }
};

struct Block {
    BlockHeader header;
    std::vector<Transaction> transactions;
    Digest hash;

    [[nodiscard]] BlockNumber number() const noexcept { return header.number; }
    [[nodiscard]] std::vector<Digest> tx_ids() const;
};

struct ChainParams {
    std::uint64_t slots_per_epoch{4};
    std::uint64_t finality_depth_epochs{2};

    //! T_fin expressed in blocks.
    [[nodiscard]] std::uint64_t finality_blocks() const noexcept { return slots_per_epoch * finality_depth_epochs; }
};

//! Root used for blocks without transactions (commits to a zero leaf count).
const Digest& empty_transactions_root();

//! Single finalizing sequence of blocks; one block per simulation tick.
class Chain {
  public:
    explicit Chain(ChainParams params = {});

    const Block& append_block(std::vector<Transaction> transactions);

    [[nodiscard]] const ChainParams& params() const noexcept { return params_; }
    [[nodiscard]] BlockNumber tip_height() const noexcept { return blocks_.back().number(); }
    [[nodiscard]] const Block& tip() const noexcept { return blocks_.back(); }
    //! Throws kUnknownHeight.
    [[nodiscard]] const Block& block(BlockNumber n) const;
    [[nodiscard]] bool contains(BlockNumber n) const noexcept { return n < blocks_.size(); }
    [[nodiscard]] bool is_finalized(BlockNumber n) const noexcept;
    //! Latest finalized height, if any block is final yet.
    [[nodiscard]] std::optional<BlockNumber> finalized_height() const noexcept;

    //! nullopt means NotYetFinal. Throws kUnknownHeight when n is past the tip.
    [[nodiscard]] std::optional<Digest> finalized_block_hash(BlockNumber n) const;

    [[nodiscard]] std::optional<std::size_t> find_transaction(BlockNumber n, const Digest& tx_id) const;
    //! Throws kTxNotInBlock (or kUnknownHeight).
    [[nodiscard]] MerkleProof inclusion_proof(BlockNumber n, const Digest& tx_id) const;

  private:
    ChainParams params_;
    std::vector<Block> blocks_;
};

}  // namespace stakelc
