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

#include <stakelc/network.hpp>

#include <stakelc/errors.hpp>

namespace stakelc {

std::string_view message_kind(const Message& m) {
    struct {
        std::string_view operator()(const Query&) const { return "query"; }
        std::string_view operator()(const SignedResponse&) const { return "response"; }
        std::string_view operator()(const Forward&) const { return "forward"; }
        std::string_view operator()(const Alert&) const { return "alert"; }
        std::string_view operator()(const TxNotice&) const { return "tx_notice"; }
    } kind;
    return std::visit(kind, m);
}

Digest message_digest(const Message& m) {
    struct {
        Bytes operator()(const Query& q) const { return q.payload.encode(); }
        Bytes operator()(const SignedResponse& r) const { return r.encode(); }
        Bytes operator()(const Forward& f) const { return f.response.encode(); }
        Bytes operator()(const Alert& a) const { return a.encode(); }
        Bytes operator()(const TxNotice& n) const { return n.receipt.encode(); }
    } bytes;
    return sha256(std::visit(bytes, m));
}

Network::Network(std::uint64_t seed, std::uint64_t delta) : rng_(seed), delta_(delta) {
    if (delta_ == 0) throw Error(Errc::kConfigInvalid, "delta_ticks must be at least 1");
}

std::uint64_t Network::delay(const ActorId& from, const ActorId& to) {
    auto key = std::make_pair(from, to);
    auto it = delays_.find(key);
    if (it == delays_.end()) {
        // Plain modulo keeps the draw identical across standard libraries.
        it = delays_.emplace(std::move(key), 1 + rng_() % delta_).first;
    }
    return it->second;
}

void Network::send(Tick now, ActorId from, ActorId to, Message message) {
    const auto d = delay(from, to);
    Envelope env{now, now + d, seq_++, std::move(from), std::move(to), std::move(message)};
    queue_.emplace(std::make_pair(env.deliver_at, env.seq), std::move(env));
}

std::vector<Envelope> Network::deliver(Tick now) {
    std::vector<Envelope> out;
    while (!queue_.empty() && queue_.begin()->first.first <= now) {
        auto node = queue_.extract(queue_.begin());
        auto& env = node.mapped();
        if (env.deliver_at < now) ++late_;
        max_delay_ = std::max(max_delay_, now - env.sent);
        out.push_back(std::move(env));
    }
    return out;
}

}  // namespace stakelc
