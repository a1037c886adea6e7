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

#include <stakelc/money.hpp>

#include <cctype>

#include <stakelc/errors.hpp>

namespace stakelc {

namespace mp = boost::multiprecision;

Rational parse_decimal(std::string_view text) {
    if (text.empty()) {
        throw Error(Errc::kParseError, "empty decimal");
    }
    Wei whole = 0;
    Wei scale = 1;
    bool seen_dot = false;
    bool seen_digit = false;
    for (char c : text) {
        if (c == '.') {
            if (seen_dot) throw Error(Errc::kParseError, "malformed decimal: " + std::string(text));
            seen_dot = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw Error(Errc::kParseError, "malformed decimal: " + std::string(text));
        }
        seen_digit = true;
        whole = whole * 10 + (c - '0');
        if (seen_dot) scale *= 10;
    }
    if (!seen_digit) {
        throw Error(Errc::kParseError, "malformed decimal: " + std::string(text));
    }
    return Rational(whole, scale);
}

Wei eth_to_wei(const Rational& eth) {
    const Rational wei = eth * Rational(wei_per_eth());
    if (mp::denominator(wei) != 1) {
        throw Error(Errc::kParseError, "amount is not a whole number of wei");
    }
    return mp::numerator(wei);
}

Wei eth_to_wei(std::string_view eth) { return eth_to_wei(parse_decimal(eth)); }

Wei ceil_to_wei(const Rational& amount) {
    const Wei num = mp::numerator(amount);
    const Wei den = mp::denominator(amount);
    Wei q = num / den;
    if (num % den != 0 && num > 0) q += 1;
    return q;
}

Rational wei_to_eth(const Wei& wei) { return Rational(wei, wei_per_eth()); }

std::string format_fixed(const Rational& value, int decimals) {
    const bool negative = value < 0;
    const Rational mag = negative ? Rational(-value) : value;
    Wei scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    const Rational scaled = mag * Rational(scale);
    const Wei num = mp::numerator(scaled);
    const Wei den = mp::denominator(scaled);
    Wei q = num / den;
    if ((num % den) * 2 >= den) q += 1;  // half away from zero

    std::string digits = q.str();
    if (decimals > 0) {
        if (digits.size() <= static_cast<std::size_t>(decimals)) {
            digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
        }
        digits.insert(digits.size() - static_cast<std::size_t>(decimals), 1, '.');
    }
    if (negative && q != 0) digits.insert(0, 1, '-');
    return digits;
}

std::string format_decimal(const Rational& value, int fallback_decimals) {
    // Terminates iff the reduced denominator has only factors 2 and 5.
    Wei den = mp::denominator(value);
    int twos = 0, fives = 0;
    while (den % 2 == 0) { den /= 2; ++twos; }
    while (den % 5 == 0) { den /= 5; ++fives; }
    if (den != 1) return format_fixed(value, fallback_decimals);
    return format_fixed(value, std::max(twos, fives));
}

std::string format_eth(const Wei& wei, int decimals) { return format_fixed(wei_to_eth(wei), decimals); }

std::string to_string(const Wei& wei) { return wei.str(); }

void encode_wei(ByteWriter& w, const Wei& amount) {
    if (amount < 0) {
        throw Error(Errc::kDecodeError, "negative amount on the wire");
    }
    std::array<std::uint8_t, 32> buf{};
    Wei v = amount;
    for (int i = 31; i >= 0; --i) {
        buf[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(static_cast<unsigned>(v & 0xff));
        v >>= 8;
    }
    if (v != 0) {
        throw Error(Errc::kDecodeError, "amount exceeds 256 bits");
    }
    w.fixed(buf);
}

Wei decode_wei(ByteReader& r) {
    Wei v = 0;
    for (auto b : r.fixed(32)) v = (v << 8) | b;
    return v;
}

}  // namespace stakelc
