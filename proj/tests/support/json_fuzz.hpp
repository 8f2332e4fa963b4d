// Random JSON documents paired with the value they denote, plus byte-level mutations.

#ifndef PEGKIT_TESTS_JSON_FUZZ_HPP
#define PEGKIT_TESTS_JSON_FUZZ_HPP

#include <pegkit/utf8.hpp>
#include <pegkit/value.hpp>

#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>

namespace json_fuzz {

using pegkit::value;

struct sample
{
	std::string text;
	value expected;
};

class generator
{
public:
	explicit generator(std::uint64_t seed) : rng_{seed} {}

	sample document()
	{
		sample s;
		s.expected = emit(s.text, pick(0, 4));
		space(s.text);
		return s;
	}

	// Applies one to three random byte edits; the result may or may not still be valid.
	std::string mutate(std::string text)
	{
		static constexpr char alphabet[] = "{}[],:\"\\ 0123456789-+.eEtrufalsnbu\x01\x1f";
		int const edits = pick(1, 3);
		for (int i = 0; i < edits; ++i) {
			std::size_t const at = text.empty() ? 0 : static_cast<std::size_t>(pick(0, static_cast<int>(text.size()) - 1));
			char const c = alphabet[pick(0, sizeof alphabet - 2)];
			switch (pick(0, 2)) {
				case 0: if (!text.empty()) text.erase(at, 1); break;
				case 1: text.insert(text.begin() + static_cast<std::ptrdiff_t>(at), c); break;
				default: if (!text.empty()) text[at] = c; break;
			}
		}
		return text;
	}

	int pick(int lo, int hi) { return std::uniform_int_distribution<int>{lo, hi}(rng_); }

private:
	void space(std::string& out)
	{
		static constexpr char ws[] = " \t\n\r";
		if (pick(0, 3) == 0)
			for (int n = pick(1, 3); n > 0; --n)
				out.push_back(ws[pick(0, 3)]);
	}

	value emit(std::string& out, int depth)
	{
		space(out);
		int const kind = depth <= 0 ? pick(0, 4) : pick(0, 6);
		switch (kind) {
			case 0: out += "null"; return value{pegkit::null};
			case 1: {
				bool const b = pick(0, 1) == 1;
				out += b ? "true" : "false";
				return value{b};
			}
			case 2:
			case 3: return number(out);
			case 4: return string(out);
			case 5: {
				out.push_back('[');
				value::list items;
				int const n = pick(0, 4);
				for (int i = 0; i < n; ++i) {
					if (i > 0)
						out.push_back(',');
					items.push_back(emit(out, depth - 1));
					space(out);
				}
				if (n == 0)
					space(out);
				out.push_back(']');
				return value{std::move(items)};
			}
			default: {
				out.push_back('{');
				value::map members;
				int const n = pick(0, 4);
				for (int i = 0; i < n; ++i) {
					if (i > 0)
						out.push_back(',');
					space(out);
					value key = string(out);
					space(out);
					out.push_back(':');
					value v = emit(out, depth - 1);
					space(out);
					members.insert_or_assign(key.as_text(), std::move(v));
				}
				if (n == 0)
					space(out);
				out.push_back('}');
				return value{std::move(members)};
			}
		}
	}

	value number(std::string& out)
	{
		std::string t;
		if (pick(0, 2) == 0)
			t.push_back('-');
		if (pick(0, 3) == 0) {
			t.push_back('0');
		} else {
			t.push_back(static_cast<char>('1' + pick(0, 8)));
			for (int n = pick(0, 12); n > 0; --n)
				t.push_back(static_cast<char>('0' + pick(0, 9)));
		}
		if (pick(0, 2) == 0) {
			t.push_back('.');
			for (int n = pick(1, 6); n > 0; --n)
				t.push_back(static_cast<char>('0' + pick(0, 9)));
		}
		if (pick(0, 3) == 0) {
			t.push_back("eE"[pick(0, 1)]);
			if (int const s = pick(0, 2); s > 0)
				t.push_back("+-"[s - 1]);
			for (int n = pick(1, 3); n > 0; --n)
				t.push_back(static_cast<char>('0' + pick(0, 9)));
		}
		out += t;
		return value{std::strtod(t.c_str(), nullptr)};
	}

	value string(std::string& out)
	{
		static constexpr char32_t pool[] = {U'a', U'b', U'Z', U'0', U' ', U'"', U'\\', U'/', U'\b', U'\f', U'\n',
			U'\r', U'\t', 0x01, 0x1F, 0x7F, U'é', 0x4E2D, 0xFFFD, 0x1D11E, 0x1F600, 0x10FFFF};
		std::string decoded;
		out.push_back('"');
		for (int n = pick(0, 8); n > 0; --n) {
			char32_t const cp = pool[pick(0, sizeof pool / sizeof pool[0] - 1)];
			pegkit::utf8::encode(cp, decoded);
			int const form = pick(0, 2);
			bool const must_escape = cp < 0x20 || cp == U'"' || cp == U'\\';
			if (form == 0 && !must_escape) {
				pegkit::utf8::encode(cp, out);
			} else if (form == 1 && short_escape(cp) != 0) {
				out.push_back('\\');
				out.push_back(short_escape(cp));
			} else if (cp >= 0x10000) {
				char32_t const v = cp - 0x10000;
				hex_escape(0xD800 + (v >> 10), out);
				hex_escape(0xDC00 + (v & 0x3FF), out);
			} else {
				hex_escape(cp, out);
			}
		}
		out.push_back('"');
		return value{std::move(decoded)};
	}

	static char short_escape(char32_t cp)
	{
		switch (cp) {
			case U'"': return '"';
			case U'\\': return '\\';
			case U'/': return '/';
			case U'\b': return 'b';
			case U'\f': return 'f';
			case U'\n': return 'n';
			case U'\r': return 'r';
			case U'\t': return 't';
			default: return 0;
		}
	}

	void hex_escape(char32_t unit, std::string& out)
	{
		char buf[8];
		std::snprintf(buf, sizeof buf, pick(0, 1) ? "\\u%04X" : "\\u%04x", static_cast<unsigned>(unit));
		out += buf;
	}

	std::mt19937_64 rng_;
};

} // namespace json_fuzz

#endif // PEGKIT_TESTS_JSON_FUZZ_HPP
