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

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <stakelc/bytes.hpp>

namespace stakelc {

//! Fixed-size byte blob; the tag parameter keeps digests, keys and
//! signatures from being mixed up.
template <std::size_t N, class Tag>
struct Blob {
    static constexpr std::size_t kSize = N;
    std::array<std::uint8_t, N> data{};

    [[nodiscard]] ByteView view() const noexcept { return {data.data(), data.size()}; }
    [[nodiscard]] std::string hex() const { return to_hex(view()); }
    [[nodiscard]] bool is_zero() const noexcept {
        return std::all_of(data.begin(), data.end(), [](auto b) { return b == 0; });
    }

    static Blob from(ByteView bytes);

    friend auto operator<=>(const Blob&, const Blob&) = default;
    friend bool operator==(const Blob&, const Blob&) = default;
};

template <std::size_t N, class Tag>
Blob<N, Tag> Blob<N, Tag>::from(ByteView bytes) {
    Blob out;
    if (bytes.size() != N) {
        throw std::invalid_argument("blob size mismatch");
    }
    std::copy(bytes.begin(), bytes.end(), out.data.begin());
    return out;
}

struct DigestTag {};
struct PublicKeyTag {};
struct SecretKeyTag {};
struct SignatureTag {};

using Digest = Blob<32, DigestTag>;
using PublicKey = Blob<32, PublicKeyTag>;
using SecretKey = Blob<64, SecretKeyTag>;
using Signature = Blob<64, SignatureTag>;

struct KeyPair {
    SecretKey secret_key;
    PublicKey public_key;
};

Digest sha256(ByteView data);
//! sha256(tag || data).
Digest tagged_hash(std::uint8_t tag, ByteView data);

//! Deterministic: the Ed25519 seed is derived from the 64-bit seed.
KeyPair keygen(std::uint64_t seed);
Signature sign(const SecretKey& sk, ByteView message);
bool verify(const PublicKey& pk, ByteView message, const Signature& sig);

// Merkle trees. Leaves are hashed as H(0x00 || leaf), interior nodes as
// H(0x01 || left || right); the level is padded to a power of two with a fixed
// placeholder and the root is H(0x02 || be64(leaf_count) || top), so every
// proof has exactly ceil(log2(leaf_count)) siblings and the count is bound.

struct MerkleProof {
    std::uint64_t leaf_index{0};
    std::uint64_t leaf_count{0};
    std::vector<Digest> siblings;

    friend bool operator==(const MerkleProof&, const MerkleProof&) = default;
};

Digest merkle_root(std::span<const Bytes> leaves);
Digest merkle_root(std::span<const Digest> leaves);
MerkleProof merkle_prove(std::span<const Bytes> leaves, std::uint64_t index);
MerkleProof merkle_prove(std::span<const Digest> leaves, std::uint64_t index);
bool merkle_verify(const Digest& root, ByteView leaf, const MerkleProof& proof);

//! Number of siblings in a proof over `leaf_count` leaves.
std::size_t merkle_depth(std::uint64_t leaf_count);

void encode(ByteWriter& w, const MerkleProof& proof);
MerkleProof decode_merkle_proof(ByteReader& r);

}  // namespace stakelc
