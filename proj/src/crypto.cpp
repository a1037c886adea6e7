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

#include <stakelc/crypto.hpp>

#include <sodium.h>

#include <bit>
#include <stdexcept>

#include <stakelc/errors.hpp>

namespace stakelc {

namespace {

    constexpr std::uint8_t kLeafTag = 0x00;
    constexpr std::uint8_t kNodeTag = 0x01;
    constexpr std::uint8_t kRootTag = 0x02;
    constexpr std::uint8_t kPadTag = 0x03;

    void ensure_sodium() {
        static const bool ready = [] { return sodium_init() >= 0; }();
        if (!ready) {
            throw std::runtime_error("libsodium initialisation failed");
        }
    }

    Digest leaf_hash(ByteView leaf) { return tagged_hash(kLeafTag, leaf); }

    Digest node_hash(const Digest& left, const Digest& right) {
        ByteWriter w;
        w.u8(kNodeTag).fixed(left.view()).fixed(right.view());
        return sha256(w.bytes());
    }

    const Digest& pad_node() {
        static const Digest pad = tagged_hash(kPadTag, {});
        return pad;
    }

    Digest wrap_root(std::uint64_t count, const Digest& top) {
        ByteWriter w;
        w.u8(kRootTag).u64(count).fixed(top.view());
        return sha256(w.bytes());
    }

    // Bottom level padded to a power of two.
    std::vector<Digest> leaf_level(std::vector<Digest> hashed) {
        const std::size_t width = std::size_t{1} << merkle_depth(hashed.size());
        hashed.resize(width, pad_node());
        return hashed;
    }

    std::vector<Digest> next_level(const std::vector<Digest>& level) {
        std::vector<Digest> up;
        up.reserve(level.size() / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
            up.push_back(node_hash(level[i], level[i + 1]));
        }
        return up;
    }

    Digest root_of(std::vector<Digest> hashed) {
        if (hashed.empty()) {
            throw Error(Errc::kEmptyLeaves, "merkle tree needs at least one leaf");
        }
        const auto count = hashed.size();
        auto level = leaf_level(std::move(hashed));
        while (level.size() > 1) level = next_level(level);
        return wrap_root(count, level.front());
    }

    MerkleProof prove_of(std::vector<Digest> hashed, std::uint64_t index) {
        if (index >= hashed.size()) {
            throw Error(Errc::kIndexOutOfRange, "merkle leaf index out of range");
        }
        MerkleProof proof{index, hashed.size(), {}};
        auto level = leaf_level(std::move(hashed));
        std::uint64_t pos = index;
        while (level.size() > 1) {
            proof.siblings.push_back(level[pos ^ 1]);
            level = next_level(level);
            pos >>= 1;
        }
        return proof;
    }

    std::vector<Digest> hash_leaves(std::span<const Bytes> leaves) {
        std::vector<Digest> out;
        out.reserve(leaves.size());
        for (const auto& l : leaves) out.push_back(leaf_hash(l));
        return out;
    }

    std::vector<Digest> hash_leaves(std::span<const Digest> leaves) {
        std::vector<Digest> out;
        out.reserve(leaves.size());
        for (const auto& l : leaves) out.push_back(leaf_hash(l.view()));
        return out;
    }

}  // namespace

Digest sha256(ByteView data) {
    ensure_sodium();
    Digest out;
    crypto_hash_sha256(out.data.data(), data.data(), data.size());
    return out;
}

Digest tagged_hash(std::uint8_t tag, ByteView data) {
    ensure_sodium();
    crypto_hash_sha256_state st;
    crypto_hash_sha256_init(&st);
    crypto_hash_sha256_update(&st, &tag, 1);
    crypto_hash_sha256_update(&st, data.data(), data.size());
    Digest out;
    crypto_hash_sha256_final(&st, out.data.data());
    return out;
}

KeyPair keygen(std::uint64_t seed) {
    ensure_sodium();
    ByteWriter w;
    w.tag(MsgTag::kKeySeed).u64(seed);
    const Digest ed_seed = sha256(w.bytes());
    KeyPair kp;
    crypto_sign_seed_keypair(kp.public_key.data.data(), kp.secret_key.data.data(), ed_seed.data.data());
    return kp;
}

Signature sign(const SecretKey& sk, ByteView message) {
    ensure_sodium();
    Signature sig;
    crypto_sign_detached(sig.data.data(), nullptr, message.data(), message.size(), sk.data.data());
    return sig;
}

bool verify(const PublicKey& pk, ByteView message, const Signature& sig) {
    ensure_sodium();
    return crypto_sign_verify_detached(sig.data.data(), message.data(), message.size(), pk.data.data()) == 0;
}

std::size_t merkle_depth(std::uint64_t leaf_count) {
    if (leaf_count <= 1) return 0;
    return static_cast<std::size_t>(std::bit_width(leaf_count - 1));
}

Digest merkle_root(std::span<const Bytes> leaves) { return root_of(hash_leaves(leaves)); }
Digest merkle_root(std::span<const Digest> leaves) { return root_of(hash_leaves(leaves)); }

MerkleProof merkle_prove(std::span<const Bytes> leaves, std::uint64_t index) {
    return prove_of(hash_leaves(leaves), index);
}

MerkleProof merkle_prove(std::span<const Digest> leaves, std::uint64_t index) {
    return prove_of(hash_leaves(leaves), index);
}

bool merkle_verify(const Digest& root, ByteView leaf, const MerkleProof& proof) {
    if (proof.leaf_count == 0 || proof.leaf_index >= proof.leaf_count) return false;
    if (proof.siblings.size() != merkle_depth(proof.leaf_count)) return false;
    Digest acc = leaf_hash(leaf);
    std::uint64_t pos = proof.leaf_index;
    for (const auto& sib : proof.siblings) {
        acc = (pos & 1) ? node_hash(sib, acc) : node_hash(acc, sib);
        pos >>= 1;
    }
    return wrap_root(proof.leaf_count, acc) == root;
}

void encode(ByteWriter& w, const MerkleProof& proof) {
    w.u64(proof.leaf_index).u64(proof.leaf_count).u32(static_cast<std::uint32_t>(proof.siblings.size()));
    for (const auto& s : proof.siblings) w.fixed(s.view());
}

MerkleProof decode_merkle_proof(ByteReader& r) {
    MerkleProof p;
    p.leaf_index = r.u64();
    p.leaf_count = r.u64();
    const auto n = r.u32();
    if (n > 64) {
        throw Error(Errc::kDecodeError, "merkle proof too deep");
    }
    p.siblings.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) p.siblings.push_back(Digest::from(r.fixed(Digest::kSize)));
    return p;
}

}  // namespace stakelc
