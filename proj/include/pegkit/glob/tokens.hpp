// pegkit - parsing expression grammar engine with JSON and glob front-ends
// See README.md for details

#ifndef PEGKIT_GLOB_TOKENS_HPP
#define PEGKIT_GLOB_TOKENS_HPP

#include <pegkit/utf8.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pegkit::glob {

class invalid_glob : public std::invalid_argument
{
public:
	invalid_glob(std::string const& what, std::size_t offset)
		: std::invalid_argument{what + " at offset " + std::to_string(offset)}, offset_{offset} {}

	[[nodiscard]] std::size_t offset() const noexcept { return offset_; }

private:
	std::size_t offset_;
};

enum class token_kind : std::uint8_t { literal, ques, char_class, star, globstar, brace, separator };

struct class_range
{
	char32_t lo;
	char32_t hi;

	friend bool operator==(class_range, class_range) = default;
};

struct token;
using token_seq = std::vector<token>;

struct token
{
	token_kind kind{token_kind::literal};
	char32_t code_point{0};          // literal
	std::vector<class_range> ranges; // char_class
	bool negated{false};             // char_class
	std::vector<token_seq> branches; // brace
	std::size_t offset{0};           // position in the pattern text
	std::string source;              // pattern text this token came from

	[[nodiscard]] bool is_word_part() const noexcept
	{
		return kind == token_kind::literal || kind == token_kind::ques || kind == token_kind::char_class;
	}

	[[nodiscard]] bool class_contains(char32_t cp) const
	{
		if (cp == U'/')
			return false;
		bool in = false;
		for (auto const& r : ranges)
			in = in || (cp >= r.lo && cp <= r.hi);
		return in != negated;
	}
};

namespace detail {

class tokenizer
{
public:
	explicit tokenizer(std::string_view src) : src_{src} {}

	token_seq run()
	{
		token_seq out = sequence(0);
		if (pos_ != src_.size())
			throw invalid_glob{"unexpected character", pos_};
		return out;
	}

private:
	char32_t code_point()
	{
		auto const d = utf8::decode(src_, pos_);
		if (!d)
			throw invalid_glob{"ill-formed UTF-8", pos_};
		pos_ += d->length;
		return d->code_point;
	}

	token make(token_kind kind, std::size_t start)
	{
		token t;
		t.kind = kind;
		t.offset = start;
		t.source = std::string{src_.substr(start, pos_ - start)};
		return t;
	}

	token_seq sequence(int depth)
	{
		token_seq out;
		while (pos_ < src_.size()) {
			char const c = src_[pos_];
			if (depth > 0 && (c == ',' || c == '}'))
				break;
			std::size_t const start = pos_;
			switch (c) {
				case '\\': {
					if (++pos_ == src_.size())
						throw invalid_glob{"dangling escape", start};
					char32_t const cp = code_point();
					token t = make(cp == U'/' ? token_kind::separator : token_kind::literal, start);
					t.code_point = cp;
					out.push_back(std::move(t));
					break;
				}
				case '/':
					++pos_;
					out.push_back(make(token_kind::separator, start));
					break;
				case '*': {
					while (pos_ < src_.size() && src_[pos_] == '*')
						++pos_;
					if (pos_ - start > 2)
						throw invalid_glob{"more than two consecutive stars", start};
					out.push_back(make(pos_ - start == 2 ? token_kind::globstar : token_kind::star, start));
					break;
				}
				case '?':
					++pos_;
					out.push_back(make(token_kind::ques, start));
					break;
				case '[': out.push_back(char_class()); break;
				case '{': out.push_back(brace(depth)); break;
				default: {
					char32_t const cp = code_point();
					token t = make(token_kind::literal, start);
					t.code_point = cp;
					out.push_back(std::move(t));
				}
			}
		}
		return out;
	}

	char32_t class_item(std::size_t open)
	{
		if (src_[pos_] == '\\') {
			if (++pos_ == src_.size())
				throw invalid_glob{"unclosed [", open};
		}
		return code_point();
	}

	token char_class()
	{
		std::size_t const open = pos_++;
		token t;
		t.kind = token_kind::char_class;
		if (pos_ < src_.size() && src_[pos_] == '!') {
			t.negated = true;
			++pos_;
		}
		for (;;) {
			if (pos_ >= src_.size())
				throw invalid_glob{"unclosed [", open};
			if (src_[pos_] == ']') {
				++pos_;
				break;
			}
			std::size_t const item = pos_;
			char32_t const lo = class_item(open);
			char32_t hi = lo;
			if (pos_ + 1 < src_.size() && src_[pos_] == '-' && src_[pos_ + 1] != ']') {
				++pos_;
				hi = class_item(open);
				if (hi < lo)
					throw invalid_glob{"reversed range in []", item};
			}
			t.ranges.push_back({lo, hi});
		}
		t.offset = open;
		t.source = std::string{src_.substr(open, pos_ - open)};
		return t;
	}

	token brace(int depth)
	{
		std::size_t const open = pos_++;
		token t;
		t.kind = token_kind::brace;
		t.branches.push_back(sequence(depth + 1));
		while (pos_ < src_.size() && src_[pos_] == ',') {
			++pos_;
			t.branches.push_back(sequence(depth + 1));
		}
		if (pos_ >= src_.size() || src_[pos_] != '}')
			throw invalid_glob{"unmatched {", open};
		++pos_;
		if (t.branches.size() < 2)
			throw invalid_glob{"{} needs at least two branches", open};
		t.offset = open;
		t.source = std::string{src_.substr(open, pos_ - open)};
		return t;
	}

	std::string_view src_;
	std::size_t pos_{0};
};

// What can sit next to a token once braces are expanded.
enum edge_bits : unsigned { boundary = 1, sep = 2, other = 4, can_be_empty = 8 };

inline unsigned edge(std::span<token const> seq, bool from_end);

inline unsigned token_edge(token const& t, bool from_end)
{
	switch (t.kind) {
		case token_kind::separator: return sep;
		case token_kind::brace: {
			unsigned m = 0;
			for (auto const& b : t.branches)
				m |= edge(b, from_end);
			return m;
		}
		default: return other;
	}
}

inline unsigned edge(std::span<token const> seq, bool from_end)
{
	unsigned mask = 0;
	for (std::size_t k = 0; k < seq.size(); ++k) {
		unsigned const m = token_edge(seq[from_end ? seq.size() - 1 - k : k], from_end);
		mask |= m & ~can_be_empty;
		if (!(m & can_be_empty))
			return mask;
	}
	return mask | can_be_empty;
}

inline unsigned resolve(unsigned m, unsigned outside) { return (m & can_be_empty) ? ((m & ~can_be_empty) | outside) : m; }

// Every ** must touch only separators or the pattern ends, in every brace expansion.
inline void check_globstars(std::span<token const> seq, unsigned left, unsigned right)
{
	for (std::size_t i = 0; i < seq.size(); ++i) {
		token const& t = seq[i];
		if (t.kind != token_kind::globstar && t.kind != token_kind::brace)
			continue;
		unsigned const l = resolve(edge(seq.first(i), true), left);
		unsigned const r = resolve(edge(seq.subspan(i + 1), false), right);
		if (t.kind == token_kind::globstar && ((l | r) & other))
			throw invalid_glob{"** must be delimited by / or the pattern ends", t.offset};
		if (t.kind == token_kind::brace)
			for (auto const& b : t.branches)
				check_globstars(b, l, r);
	}
}

} // namespace detail

/// Splits a glob into tokens, rejecting every construct outside the supported syntax.
[[nodiscard]] inline token_seq tokenize(std::string_view pattern)
{
	token_seq out = detail::tokenizer{pattern}.run();
	detail::check_globstars(out, detail::boundary, detail::boundary);
	return out;
}

/// Glob text that tokenizes back to `seq`.
[[nodiscard]] inline std::string to_text(std::span<token const> seq)
{
	std::string out;
	for (auto const& t : seq)
		out += t.source;
	return out;
}

/// All brace-free token sequences `seq` stands for, in left-to-right Cartesian order.
[[nodiscard]] inline std::vector<token_seq> expand(std::span<token const> seq)
{
	std::vector<token_seq> acc{token_seq{}};
	for (auto const& t : seq) {
		if (t.kind != token_kind::brace) {
			for (auto& a : acc)
				a.push_back(t);
			continue;
		}
		std::vector<token_seq> options;
		for (auto const& b : t.branches)
			for (auto& e : expand(b))
				options.push_back(std::move(e));
		std::vector<token_seq> next;
		next.reserve(acc.size() * options.size());
		for (auto const& a : acc) {
			for (auto const& o : options) {
				token_seq s = a;
				s.insert(s.end(), o.begin(), o.end());
				next.push_back(std::move(s));
			}
		}
		acc = std::move(next);
	}
	return acc;
}

/// Expanded branch texts of one brace token.
[[nodiscard]] inline std::vector<std::string> expand_braces(token const& brace)
{
	std::vector<std::string> out;
	for (auto const& s : expand(std::span<token const>{&brace, 1}))
		out.push_back(to_text(s));
	return out;
}

/// Expanded branch texts of a brace written as text, for example "{ab,c{d,e}}".
[[nodiscard]] inline std::vector<std::string> expand_braces(std::string_view brace_text)
{
	token_seq const t = tokenize(brace_text);
	if (t.size() != 1 || t[0].kind != token_kind::brace)
		throw std::invalid_argument{"expected a single {...} group: " + std::string{brace_text}};
	return expand_braces(t[0]);
}

/// The code point a Word must start with, when it is fixed.
[[nodiscard]] inline std::optional<char32_t> get_first(std::span<token const> word)
{
	if (!word.empty() && word.front().kind == token_kind::literal)
		return word.front().code_point;
	return std::nullopt;
}

} // namespace pegkit::glob

#endif // PEGKIT_GLOB_TOKENS_HPP
