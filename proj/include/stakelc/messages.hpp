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

// Protocol messages exchanged between light clients, data providers and
// watchers. Everything that is signed goes through the canonical encoders
// here so signatures and dispute evidence are portable.

#include <cstdint>
#include <optional>

#include <stakelc/chain.hpp>
#include <stakelc/crypto.hpp>

namespace stakelc {

using InsuranceId = std::uint64_t;

//! What a data provider attests to. Wire layout (bit-exact):
//!   tag(1) || n_B(8) || h_B(32) || h_s(32) [|| ID_ins(8) iff tag == insured]
struct ResponseClaim {
    BlockNumber block_number{0};
    Digest block_hash;
    Digest state_hash;
    std::optional<InsuranceId> insurance_id;

    [[nodiscard]] Bytes encode() const;
    static ResponseClaim decode(ByteView bytes);

    friend bool operator==(const ResponseClaim&, const ResponseClaim&) = default;
};

//! tag(1) || n_B(8) || h_s(32) [|| ID_ins(8)]
struct QueryPayload {
    BlockNumber block_number{0};
    Digest state_hash;
    std::optional<InsuranceId> insurance_id;

    [[nodiscard]] Bytes encode() const;
};

struct Query {
    std::uint64_t query_id{0};  // transport correlation, not signed
    QueryPayload payload;
    PublicKey client;
    Signature client_signature;

    [[nodiscard]] bool signature_valid() const { return verify(client, payload.encode(), client_signature); }
};

Query make_query(std::uint64_t query_id, QueryPayload payload, const KeyPair& client);

struct SignedResponse {
    std::uint64_t query_id{0};
    ResponseClaim claim;
    //! Header fields needed to recompute h_B and check the inclusion proof.
    Digest parent_hash;
    Digest transactions_root;
    MerkleProof inclusion_proof;
    PublicKey provider;
    Signature signature;

    [[nodiscard]] bool signature_valid() const { return verify(provider, claim.encode(), signature); }
    //! h_B matches the carried header and the proof places h_s under its root.
    [[nodiscard]] bool proof_valid() const;
    [[nodiscard]] Bytes encode() const;
};

SignedResponse make_response(std::uint64_t query_id, ResponseClaim claim, const BlockHeader& header,
                             MerkleProof proof, const KeyPair& provider);

enum class AlertKind : std::uint8_t { kProviderSlashed = 1, kProviderInactive = 2 };

struct Alert {
    AlertKind kind{AlertKind::kProviderSlashed};
    PublicKey offending;
    std::uint64_t query_id{0};
    //! Encoded slash record and its inclusion proof, when a slash exists.
    std::optional<BlockNumber> slash_event_block;
    Bytes slash_record;
    MerkleProof slash_event_inclusion_proof;

    [[nodiscard]] Bytes encode() const;
};

}  // namespace stakelc
