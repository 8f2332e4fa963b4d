// pegkit - parsing expression grammar engine with JSON and glob front-ends
// See README.md for details

#ifndef PEGKIT_CHARSET_HPP
#define PEGKIT_CHARSET_HPP

#include <bitset>
#include <cstdint>
#include <string>
#include <string_view>

namespace pegkit {

/// Membership function over single byte values.
class charset
{
	std::bitset<256> bits_;

public:
	constexpr charset() noexcept = default;

	[[nodiscard]] static charset none() noexcept { return charset{}; }
	[[nodiscard]] static charset all() noexcept { charset cs; cs.bits_.set(); return cs; }

	[[nodiscard]] static charset range(unsigned char lo, unsigned char hi) noexcept
	{
		charset cs;
		for (unsigned c = lo; c <= hi; ++c)
			cs.bits_.set(c);
		return cs;
	}

	[[nodiscard]] static charset of(std::string_view chars) noexcept
	{
		charset cs;
		for (char c : chars)
			cs.bits_.set(static_cast<unsigned char>(c));
		return cs;
	}

	[[nodiscard]] bool contains(unsigned char c) const noexcept { return bits_.test(c); }
	[[nodiscard]] bool empty() const noexcept { return bits_.none(); }
	[[nodiscard]] bool full() const noexcept { return bits_.all(); }
	[[nodiscard]] std::size_t size() const noexcept { return bits_.count(); }
	[[nodiscard]] bool disjoint(charset const& other) const noexcept { return (bits_ & other.bits_).none(); }

	charset& insert(unsigned char c) noexcept { bits_.set(c); return *this; }
	charset& erase(unsigned char c) noexcept { bits_.reset(c); return *this; }

	[[nodiscard]] charset operator~() const noexcept { charset cs; cs.bits_ = ~bits_; return cs; }
	charset& operator|=(charset const& other) noexcept { bits_ |= other.bits_; return *this; }
	charset& operator&=(charset const& other) noexcept { bits_ &= other.bits_; return *this; }
	charset& operator-=(charset const& other) noexcept { bits_ &= ~other.bits_; return *this; }
	[[nodiscard]] friend charset operator|(charset a, charset const& b) noexcept { return a |= b; }
	[[nodiscard]] friend charset operator&(charset a, charset const& b) noexcept { return a &= b; }
	[[nodiscard]] friend charset operator-(charset a, charset const& b) noexcept { return a -= b; }
	[[nodiscard]] friend bool operator==(charset const&, charset const&) = default;

	// Renders as a bracket expression, negated when that is shorter.
	[[nodiscard]] std::string to_string() const
	{
		if (full())
			return ".";
		bool const negate = size() > 128;
		std::bitset<256> const shown = negate ? ~bits_ : bits_;
		std::string out = negate ? "[^" : "[";
		for (unsigned c = 0; c < 256; ++c) {
			if (!shown.test(c))
				continue;
			unsigned end = c;
			while (end + 1 < 256 && shown.test(end + 1))
				++end;
			append_char(out, c);
			if (end > c + 1)
				out.push_back('-');
			if (end > c)
				append_char(out, end);
			c = end;
		}
		out.push_back(']');
		return out;
	}

private:
	static void append_char(std::string& out, unsigned c)
	{
		static constexpr char hex[] = "0123456789ABCDEF";
		if (c >= 0x21 && c < 0x7F && c != ']' && c != '\\' && c != '-' && c != '^') {
			out.push_back(static_cast<char>(c));
		} else {
			out += "\\x";
			out.push_back(hex[c >> 4]);
			out.push_back(hex[c & 0xF]);
		}
	}
};

} // namespace pegkit

#endif // PEGKIT_CHARSET_HPP
