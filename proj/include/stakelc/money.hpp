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

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include <stakelc/bytes.hpp>

namespace stakelc {

//! Exact integer amount in wei. Ledger math never leaves integers.
using Wei = boost::multiprecision::cpp_int;
//! Exact rational used by the pricing engine.
using Rational = boost::multiprecision::cpp_rational;

using BlockNumber = std::uint64_t;
using Tick = std::uint64_t;

inline const Wei& wei_per_eth() {
    static const Wei v{"1000000000000000000"};
    return v;
}
inline const Wei& wei_per_gwei() {
    static const Wei v{1'000'000'000};
    return v;
}

//! Parses a non-negative decimal literal such as "0.06" or "9.377".
Rational parse_decimal(std::string_view text);

//! "32" -> 32 * 10^18. Throws kParseError when the value is not a whole wei.
Wei eth_to_wei(std::string_view eth);
Wei eth_to_wei(const Rational& eth);

Wei ceil_to_wei(const Rational& amount);
Rational wei_to_eth(const Wei& wei);

//! Decimal rendering rounded half away from zero to `decimals` places.
std::string format_fixed(const Rational& value, int decimals);
//! Shortest exact decimal form when one exists, else `fallback_decimals` places.
std::string format_decimal(const Rational& value, int fallback_decimals = 12);
std::string format_eth(const Wei& wei, int decimals = 6);
std::string to_string(const Wei& wei);

//! Amounts on the wire are 32-byte big-endian unsigned integers.
void encode_wei(ByteWriter& w, const Wei& amount);
Wei decode_wei(ByteReader& r);

}  // namespace stakelc
