// pegkit - parsing expression grammar engine with JSON and glob front-ends
// See README.md for details

#ifndef PEGKIT_PATTERN_HPP
#define PEGKIT_PATTERN_HPP

#include <pegkit/charset.hpp>
#include <pegkit/value.hpp>

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pegkit {

enum class node_kind : std::uint8_t
{
	literal, char_set, any, sequence, choice,
	repeat_at_least, repeat_at_most, and_predicate, not_predicate,
	rule_ref, capture
};

enum class capture_kind : std::uint8_t
{
	simple,       // {p}
	group,        // {: p :} or {:name: p :}
	table,        // {| p |}
	fold,         // p ~> f
	function,     // p -> f
	constant,     // p -> value
	match_time,   // p => f
	substitution  // {~ p ~}
};

struct node;
using pattern = std::shared_ptr<node const>;

/// One PEG expression. Immutable once built; subtrees are shared freely.
struct node
{
	node_kind kind{node_kind::literal};
	capture_kind capture{capture_kind::simple};
	std::string text;         // literal bytes, rule name, or capture/group name
	std::string callback;     // callback id for fold, function and match-time captures
	charset set;
	std::size_t count{0};     // any: byte count; repeat: bound
	std::vector<pattern> children;
	value constant;
};

class pattern_error : public std::invalid_argument
{
public:
	using std::invalid_argument::invalid_argument;
};

namespace detail {

inline pattern make(node n) { return std::make_shared<node const>(std::move(n)); }

inline pattern make_nary(node_kind kind, std::vector<pattern> children)
{
	if (children.empty())
		throw pattern_error("sequence and choice need at least one child");
	if (children.size() == 1)
		return std::move(children.front());
	node n;
	n.kind = kind;
	n.children.reserve(children.size());
	for (auto& child : children) {
		// flatten nested nodes of the same kind; semantics are associative
		if (child->kind == kind)
			n.children.insert(n.children.end(), child->children.begin(), child->children.end());
		else
			n.children.push_back(std::move(child));
	}
	return make(std::move(n));
}

inline pattern make_capture(capture_kind kind, pattern child, std::string name = {}, std::string callback = {})
{
	node n;
	n.kind = node_kind::capture;
	n.capture = kind;
	n.text = std::move(name);
	n.callback = std::move(callback);
	n.children.push_back(std::move(child));
	return make(std::move(n));
}

} // namespace detail

[[nodiscard]] inline pattern lit(std::string_view text)
{
	node n;
	n.kind = node_kind::literal;
	n.text = std::string{text};
	return detail::make(std::move(n));
}

[[nodiscard]] inline pattern empty() { return lit(""); }

[[nodiscard]] inline pattern set(charset cs)
{
	node n;
	n.kind = node_kind::char_set;
	n.set = cs;
	return detail::make(std::move(n));
}

[[nodiscard]] inline pattern set(std::string_view chars) { return set(charset::of(chars)); }
[[nodiscard]] inline pattern range(unsigned char lo, unsigned char hi) { return set(charset::range(lo, hi)); }

[[nodiscard]] inline pattern any(std::size_t count = 1)
{
	node n;
	n.kind = node_kind::any;
	n.count = count;
	return detail::make(std::move(n));
}

[[nodiscard]] inline pattern seq(std::vector<pattern> children) { return detail::make_nary(node_kind::sequence, std::move(children)); }
[[nodiscard]] inline pattern choice(std::vector<pattern> children) { return detail::make_nary(node_kind::choice, std::move(children)); }

[[nodiscard]] inline pattern at_least(pattern p, std::size_t n)
{
	node r;
	r.kind = node_kind::repeat_at_least;
	r.count = n;
	r.children.push_back(std::move(p));
	return detail::make(std::move(r));
}

[[nodiscard]] inline pattern at_most(pattern p, std::size_t n)
{
	node r;
	r.kind = node_kind::repeat_at_most;
	r.count = n;
	r.children.push_back(std::move(p));
	return detail::make(std::move(r));
}

[[nodiscard]] inline pattern star(pattern p) { return at_least(std::move(p), 0); }
[[nodiscard]] inline pattern plus(pattern p) { return at_least(std::move(p), 1); }
[[nodiscard]] inline pattern opt(pattern p) { return at_most(std::move(p), 1); }

[[nodiscard]] inline pattern and_(pattern p)
{
	node n;
	n.kind = node_kind::and_predicate;
	n.children.push_back(std::move(p));
	return detail::make(std::move(n));
}

[[nodiscard]] inline pattern not_(pattern p)
{
	node n;
	n.kind = node_kind::not_predicate;
	n.children.push_back(std::move(p));
	return detail::make(std::move(n));
}

[[nodiscard]] inline pattern eof() { return not_(any()); }

[[nodiscard]] inline pattern ref(std::string_view rule)
{
	node n;
	n.kind = node_kind::rule_ref;
	n.text = std::string{rule};
	return detail::make(std::move(n));
}

namespace cap {

[[nodiscard]] inline pattern simple(pattern p) { return detail::make_capture(capture_kind::simple, std::move(p)); }
[[nodiscard]] inline pattern group(pattern p) { return detail::make_capture(capture_kind::group, std::move(p)); }
[[nodiscard]] inline pattern table(pattern p) { return detail::make_capture(capture_kind::table, std::move(p)); }
[[nodiscard]] inline pattern substitution(pattern p) { return detail::make_capture(capture_kind::substitution, std::move(p)); }

[[nodiscard]] inline pattern named(std::string_view name, pattern p)
{
	if (name.empty())
		throw pattern_error("group name must not be empty");
	return detail::make_capture(capture_kind::group, std::move(p), std::string{name});
}

[[nodiscard]] inline pattern fold(pattern p, std::string_view callback) { return detail::make_capture(capture_kind::fold, std::move(p), {}, std::string{callback}); }
[[nodiscard]] inline pattern function(pattern p, std::string_view callback) { return detail::make_capture(capture_kind::function, std::move(p), {}, std::string{callback}); }
[[nodiscard]] inline pattern match_time(pattern p, std::string_view callback) { return detail::make_capture(capture_kind::match_time, std::move(p), {}, std::string{callback}); }

[[nodiscard]] inline pattern constant(pattern p, value v)
{
	node n;
	n.kind = node_kind::capture;
	n.capture = capture_kind::constant;
	n.constant = std::move(v);
	n.children.push_back(std::move(p));
	return detail::make(std::move(n));
}

} // namespace cap

namespace detail {

inline std::string quote_literal(std::string_view s)
{
	static constexpr char hex[] = "0123456789ABCDEF";
	std::string out = "'";
	for (char ch : s) {
		auto const c = static_cast<unsigned char>(ch);
		if (c >= 0x20 && c < 0x7F && c != '\'' && c != '\\') {
			out.push_back(ch);
		} else {
			out += "\\x";
			out.push_back(hex[c >> 4]);
			out.push_back(hex[c & 0xF]);
		}
	}
	out.push_back('\'');
	return out;
}

// Precedence: 0 choice, 1 sequence, 2 prefix/suffix operand.
inline std::string render(node const& n, int context)
{
	auto wrap = [context](std::string s, int own) { return own < context ? "(" + s + ")" : s; };
	switch (n.kind) {
		case node_kind::literal: return quote_literal(n.text);
		case node_kind::char_set: return n.set.to_string();
		case node_kind::any: return n.count == 1 ? std::string{"."} : ".^" + std::to_string(n.count);
		case node_kind::rule_ref: return n.text;
		case node_kind::sequence: {
			std::string out;
			for (std::size_t i = 0; i < n.children.size(); ++i)
				out += (i ? " " : "") + render(*n.children[i], 2);
			return wrap(std::move(out), 1);
		}
		case node_kind::choice: {
			std::string out;
			for (std::size_t i = 0; i < n.children.size(); ++i)
				out += (i ? " / " : "") + render(*n.children[i], 1);
			return wrap(std::move(out), 0);
		}
		case node_kind::repeat_at_least: {
			std::string const inner = render(*n.children[0], 3);
			if (n.count == 0) return inner + "*";
			if (n.count == 1) return inner + "+";
			return inner + "^+" + std::to_string(n.count);
		}
		case node_kind::repeat_at_most: {
			std::string const inner = render(*n.children[0], 3);
			return n.count == 1 ? inner + "?" : inner + "^-" + std::to_string(n.count);
		}
		case node_kind::and_predicate: return "&" + render(*n.children[0], 3);
		case node_kind::not_predicate: return "!" + render(*n.children[0], 3);
		case node_kind::capture: {
			node const& child = *n.children[0];
			switch (n.capture) {
				case capture_kind::simple: return "{ " + render(child, 0) + " }";
				case capture_kind::group: return n.text.empty() ? "{: " + render(child, 0) + " :}" : "{:" + n.text + ": " + render(child, 0) + " :}";
				case capture_kind::table: return "{| " + render(child, 0) + " |}";
				case capture_kind::substitution: return "{~ " + render(child, 0) + " ~}";
				case capture_kind::fold: return wrap(render(child, 2) + " ~> " + n.callback, 1);
				case capture_kind::function: return wrap(render(child, 2) + " -> " + n.callback, 1);
				case capture_kind::match_time: return wrap(render(child, 2) + " => " + n.callback, 1);
				case capture_kind::constant: return wrap(render(child, 2) + " -> <" + to_debug_string(n.constant) + ">", 1);
			}
			break;
		}
	}
	return "?";
}

} // namespace detail

/// Stable textual rendering in a re-like notation.
[[nodiscard]] inline std::string to_string(pattern const& p) { return detail::render(*p, 0); }

} // namespace pegkit

#endif // PEGKIT_PATTERN_HPP
