// pegkit - parsing expression grammar engine with JSON and glob front-ends
// See README.md for details

#ifndef PEGKIT_UTF8_HPP
#define PEGKIT_UTF8_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pegkit::utf8 {

struct decoded
{
	char32_t code_point;
	std::size_t length;
};

/// Decodes one well-formed UTF-8 sequence at `at` (no overlongs, no surrogates, at most U+10FFFF).
[[nodiscard]] inline std::optional<decoded> decode(std::string_view s, std::size_t at = 0)
{
	if (at >= s.size())
		return std::nullopt;
	auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[at + i]); };
	unsigned char const b0 = byte(0);
	if (b0 < 0x80)
		return decoded{b0, 1};

	std::size_t len = 0;
	unsigned char lo = 0x80;
	unsigned char hi = 0xBF;
	char32_t cp = 0;
	if (b0 >= 0xC2 && b0 <= 0xDF) {
		len = 2;
		cp = b0 & 0x1F;
	} else if (b0 >= 0xE0 && b0 <= 0xEF) {
		len = 3;
		cp = b0 & 0x0F;
		if (b0 == 0xE0) lo = 0xA0;
		if (b0 == 0xED) hi = 0x9F;
	} else if (b0 >= 0xF0 && b0 <= 0xF4) {
		len = 4;
		cp = b0 & 0x07;
		if (b0 == 0xF0) lo = 0x90;
		if (b0 == 0xF4) hi = 0x8F;
	} else {
		return std::nullopt;
	}
	if (s.size() - at < len)
		return std::nullopt;
	for (std::size_t i = 1; i < len; ++i) {
		unsigned char const b = byte(i);
		if (b < (i == 1 ? lo : 0x80) || b > (i == 1 ? hi : 0xBF))
			return std::nullopt;
		cp = (cp << 6) | (b & 0x3F);
	}
	return decoded{cp, len};
}

/// Offset of the first byte that does not start a well-formed sequence, if any.
[[nodiscard]] inline std::optional<std::size_t> first_invalid(std::string_view s)
{
	std::size_t i = 0;
	while (i < s.size()) {
		if (static_cast<unsigned char>(s[i]) < 0x80) {
			++i;
			continue;
		}
		auto const d = decode(s, i);
		if (!d)
			return i;
		i += d->length;
	}
	return std::nullopt;
}

inline void encode(char32_t cp, std::string& out)
{
	if (cp < 0x80) {
		out.push_back(static_cast<char>(cp));
	} else if (cp < 0x800) {
		out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
		out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
	} else if (cp < 0x10000) {
		out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
		out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
		out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
	} else {
		out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
		out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
		out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
		out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
	}
}

[[nodiscard]] inline std::string encode(char32_t cp)
{
	std::string out;
	encode(cp, out);
	return out;
}

} // namespace pegkit::utf8

#endif // PEGKIT_UTF8_HPP
