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

#include <stakelc/bytes.hpp>

#include <limits>

#include <stakelc/errors.hpp>

namespace stakelc {

std::string_view to_string(Errc code) {
    switch (code) {
        case Errc::kEmptyLeaves: return "EmptyLeaves";
        case Errc::kIndexOutOfRange: return "IndexOutOfRange";
        case Errc::kUnknownHeight: return "UnknownHeight";
        case Errc::kTxNotInBlock: return "TxNotInBlock";
        case Errc::kBelowMinStake: return "BelowMinStake";
        case Errc::kDuplicateProvider: return "DuplicateProvider";
        case Errc::kNotActive: return "NotActive";
        case Errc::kEpochTooFar: return "EpochTooFar";
        case Errc::kNoProviders: return "NoProviders";
        case Errc::kEmptySeries: return "EmptySeries";
        case Errc::kZeroUtilization: return "ZeroUtilization";
        case Errc::kNoEligibleProviders: return "NoEligibleProviders";
        case Errc::kConfigInvalid: return "ConfigInvalid";
        case Errc::kParseError: return "ParseError";
        case Errc::kDecodeError: return "DecodeError";
        case Errc::kInsufficientFunds: return "InsufficientFunds";
    }
    return "Unknown";
}

ByteWriter& ByteWriter::u32(std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) {
        out_.push_back(static_cast<std::uint8_t>(v >> shift));
    }
    return *this;
}

ByteWriter& ByteWriter::u64(std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) {
        out_.push_back(static_cast<std::uint8_t>(v >> shift));
    }
    return *this;
}

ByteWriter& ByteWriter::var(ByteView v) {
    if (v.size() > std::numeric_limits<std::uint32_t>::max()) {
        throw Error(Errc::kDecodeError, "byte string too long for u32 prefix");
    }
    u32(static_cast<std::uint32_t>(v.size()));
    return fixed(v);
}

ByteWriter& ByteWriter::str(std::string_view s) {
    return var({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()});
}

void ByteReader::need(std::size_t n) const {
    if (remaining() < n) {
        throw Error(Errc::kDecodeError, "truncated input");
    }
}

std::uint8_t ByteReader::u8() {
    need(1);
    return in_[pos_++];
}

std::uint32_t ByteReader::u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | in_[pos_++];
    return v;
}

std::uint64_t ByteReader::u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | in_[pos_++];
    return v;
}

ByteView ByteReader::fixed(std::size_t n) {
    need(n);
    ByteView out = in_.subspan(pos_, n);
    pos_ += n;
    return out;
}

Bytes ByteReader::var() {
    const auto n = u32();
    auto v = fixed(n);
    return {v.begin(), v.end()};
}

std::string ByteReader::str() {
    auto b = var();
    return {b.begin(), b.end()};
}

void ByteReader::expect_done() const {
    if (!done()) {
        throw Error(Errc::kDecodeError, "trailing bytes");
    }
}

std::string to_hex(ByteView bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0x0f]);
    }
    return out;
}

Bytes from_hex(std::string_view hex) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    if (hex.size() % 2 != 0) {
        throw Error(Errc::kParseError, "odd-length hex string");
    }
    Bytes out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        const int hi = nibble(hex[i]);
        const int lo = nibble(hex[i + 1]);
        if (hi < 0 || lo < 0) {
            throw Error(Errc::kParseError, "invalid hex digit");
        }
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

}  // namespace stakelc
