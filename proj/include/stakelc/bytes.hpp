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

// Canonical wire encoding shared by every signed or recorded payload:
// big-endian fixed-width integers, u32 length-prefixed byte strings and a
// one-byte message tag in front of each top-level message.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stakelc {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

enum class MsgTag : std::uint8_t {
    kResponseEco = 0x01,
    kResponseInsured = 0x02,
    kQueryEco = 0x03,
    kQueryInsured = 0x04,
    kBlockHeader = 0x10,
    kRegister = 0x20,
    kWithdraw = 0x21,
    kBuyInsurance = 0x22,
    kSlash = 0x23,
    kReceipt = 0x30,
    kSlashRecord = 0x31,
    kUserTransfer = 0x40,
    kKeySeed = 0x50,
    kContractState = 0x60,
};

class ByteWriter {
  public:
    ByteWriter& tag(MsgTag t) { return u8(static_cast<std::uint8_t>(t)); }
    ByteWriter& u8(std::uint8_t v) {
        out_.push_back(v);
        return *this;
    }
    ByteWriter& u32(std::uint32_t v);
    ByteWriter& u64(std::uint64_t v);
    //! Raw bytes with no length prefix; only for fixed-width fields.
    ByteWriter& fixed(ByteView v) {
        out_.insert(out_.end(), v.begin(), v.end());
        return *this;
    }
    //! u32 length prefix followed by the bytes.
    ByteWriter& var(ByteView v);
    ByteWriter& str(std::string_view s);

    [[nodiscard]] const Bytes& bytes() const& { return out_; }
    [[nodiscard]] Bytes take() && { return std::move(out_); }

  private:
    Bytes out_;
};

class ByteReader {
  public:
    explicit ByteReader(ByteView in) : in_(in) {}

    std::uint8_t u8();
    std::uint32_t u32();
    std::uint64_t u64();
    ByteView fixed(std::size_t n);
    Bytes var();
    std::string str();
    MsgTag tag() { return static_cast<MsgTag>(u8()); }

    [[nodiscard]] bool done() const noexcept { return pos_ == in_.size(); }
    [[nodiscard]] std::size_t remaining() const noexcept { return in_.size() - pos_; }
    //! Throws kDecodeError unless every byte was consumed.
    void expect_done() const;

  private:
    void need(std::size_t n) const;

    ByteView in_;
    std::size_t pos_{0};
};

std::string to_hex(ByteView bytes);
Bytes from_hex(std::string_view hex);

}  // namespace stakelc
