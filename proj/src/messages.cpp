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

#include <stakelc/messages.hpp>

#include <stakelc/errors.hpp>

namespace stakelc {

Bytes ResponseClaim::encode() const {
    ByteWriter w;
    w.tag(insurance_id ? MsgTag::kResponseInsured : MsgTag::kResponseEco)
        .u64(block_number)
        .fixed(block_hash.view())
        .fixed(state_hash.view());
    if (insurance_id) w.u64(*insurance_id);
    return std::move(w).take();
}

ResponseClaim ResponseClaim::decode(ByteView bytes) {
    ByteReader r(bytes);
    ResponseClaim c;
    const auto tag = r.tag();
    if (tag != MsgTag::kResponseEco && tag != MsgTag::kResponseInsured) {
        throw Error(Errc::kDecodeError, "not a response payload");
    }
    c.block_number = r.u64();
    c.block_hash = Digest::from(r.fixed(Digest::kSize));
    c.state_hash = Digest::from(r.fixed(Digest::kSize));
    if (tag == MsgTag::kResponseInsured) c.insurance_id = r.u64();
    r.expect_done();
    return c;
}

Bytes QueryPayload::encode() const {
    ByteWriter w;
    w.tag(insurance_id ? MsgTag::kQueryInsured : MsgTag::kQueryEco).u64(block_number).fixed(state_hash.view());
    if (insurance_id) w.u64(*insurance_id);
    return std::move(w).take();
}

Query make_query(std::uint64_t query_id, QueryPayload payload, const KeyPair& client) {
    Query q;
    q.query_id = query_id;
    q.payload = std::move(payload);
    q.client = client.public_key;
    q.client_signature = sign(client.secret_key, q.payload.encode());
    return q;
}

bool SignedResponse::proof_valid() const {
    const BlockHeader header{claim.block_number, parent_hash, transactions_root};
    if (header.hash() != claim.block_hash) return false;
    return merkle_verify(transactions_root, claim.state_hash.view(), inclusion_proof);
}

Bytes SignedResponse::encode() const {
    ByteWriter w;
    w.u64(query_id).var(claim.encode()).fixed(parent_hash.view()).fixed(transactions_root.view());
    stakelc::encode(w, inclusion_proof);
    w.fixed(provider.view()).fixed(signature.view());
    return std::move(w).take();
}

SignedResponse make_response(std::uint64_t query_id, ResponseClaim claim, const BlockHeader& header,
                             MerkleProof proof, const KeyPair& provider) {
    SignedResponse r;
    r.query_id = query_id;
    r.claim = std::move(claim);
    r.parent_hash = header.parent_hash;
    r.transactions_root = header.transactions_root;
    r.inclusion_proof = std::move(proof);
    r.provider = provider.public_key;
    r.signature = sign(provider.secret_key, r.claim.encode());
    return r;
}

Bytes Alert::encode() const {
    ByteWriter w;
    w.u8(static_cast<std::uint8_t>(kind)).fixed(offending.view()).u64(query_id);
    w.u8(slash_event_block ? 1 : 0);
    if (slash_event_block) {
        w.u64(*slash_event_block).var(slash_record);
        stakelc::encode(w, slash_event_inclusion_proof);
    }
    return std::move(w).take();
}

}  // namespace stakelc
