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

#include <stakelc/chain.hpp>

#include <string>

#include <stakelc/errors.hpp>

namespace stakelc {

Transaction Transaction::make(Bytes payload, Wei value) {
    Transaction tx;
    tx.id = sha256(payload);
    tx.payload = std::move(payload);
    tx.value = std::move(value);
    return tx;
}

Bytes BlockHeader::encode() const {
    ByteWriter w;
    w.tag(MsgTag::kBlockHeader).u64(number).fixed(parent_hash.view()).fixed(transactions_root.view());
    return std::move(w).take();
}

std::vector<Digest> Block::tx_ids() const {
    std::vector<Digest> ids;
    ids.reserve(transactions.size());
    for (const auto& tx : transactions) ids.push_back(tx.id);
    return ids;
}

const Digest& empty_transactions_root() {
    static const Digest root = [] {
        ByteWriter w;
        w.u8(0x02).u64(0);
        return sha256(w.bytes());
    }();
    return root;
}

namespace {

    Digest transactions_root_of(const std::vector<Transaction>& txs) {
        if (txs.empty()) return empty_transactions_root();
        std::vector<Digest> ids;
        ids.reserve(txs.size());
        for (const auto& tx : txs) ids.push_back(tx.id);
        return merkle_root(ids);
    }

}  // namespace

Chain::Chain(ChainParams params) : params_(params) {
    if (params_.slots_per_epoch == 0 || params_.finality_depth_epochs == 0) {
        throw Error(Errc::kConfigInvalid, "slots_per_epoch and finality_depth_epochs must be positive");
    }
    Block genesis;
    genesis.header.number = 0;
    genesis.header.transactions_root = empty_transactions_root();
    genesis.hash = genesis.header.hash();
    blocks_.push_back(std::move(genesis));
}

const Block& Chain::append_block(std::vector<Transaction> transactions) {
    Block b;
    b.header.number = tip_height() + 1;
    b.header.parent_hash = tip().hash;
    b.header.transactions_root = transactions_root_of(transactions);
    b.transactions = std::move(transactions);
    b.hash = b.header.hash();
    blocks_.push_back(std::move(b));
    return blocks_.back();
}

const Block& Chain::block(BlockNumber n) const {
    if (!contains(n)) {
        throw Error(Errc::kUnknownHeight, "block " + std::to_string(n) + " is past the tip");
    }
    return blocks_[n];
}

bool Chain::is_finalized(BlockNumber n) const noexcept {
    return contains(n) && tip_height() - n >= params_.finality_blocks();
}

std::optional<BlockNumber> Chain::finalized_height() const noexcept {
    if (tip_height() < params_.finality_blocks()) return std::nullopt;
    return tip_height() - params_.finality_blocks();
}

std::optional<Digest> Chain::finalized_block_hash(BlockNumber n) const {
    const auto& b = block(n);
    if (!is_finalized(n)) return std::nullopt;
    return b.hash;
}

std::optional<std::size_t> Chain::find_transaction(BlockNumber n, const Digest& tx_id) const {
    const auto& txs = block(n).transactions;
    for (std::size_t i = 0; i < txs.size(); ++i) {
        if (txs[i].id == tx_id) return i;
    }
    return std::nullopt;
}

MerkleProof Chain::inclusion_proof(BlockNumber n, const Digest& tx_id) const {
    const auto idx = find_transaction(n, tx_id);
    if (!idx) {
        throw Error(Errc::kTxNotInBlock, "transaction " + tx_id.hex() + " not in block " + std::to_string(n));
    }
    const auto ids = block(n).tx_ids();
    return merkle_prove(ids, *idx);
}

}  // namespace stakelc
