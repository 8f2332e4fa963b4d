// pegkit - parsing expression grammar engine with JSON and glob front-ends
// See README.md for details

#ifndef PEGKIT_JSON_HPP
#define PEGKIT_JSON_HPP

#include <pegkit/match.hpp>
#include <pegkit/utf8.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pegkit::json {

using json_value = value;

/// Selects how objects and strings are built. The four combinations are the
/// configurations compared in benchmarks.
struct ablation_config
{
	bool table_construction{true}; // collect pairs, then build the object once
	bool substitution{true};       // decode strings through one substitution buffer

	[[nodiscard]] static constexpr ablation_config fullopt() { return {true, true}; }
	[[nodiscard]] static constexpr ablation_config nomtab() { return {false, true}; }
	[[nodiscard]] static constexpr ablation_config nosubst() { return {true, false}; }
	[[nodiscard]] static constexpr ablation_config noopt() { return {false, false}; }

	[[nodiscard]] constexpr std::string_view name() const
	{
		if (table_construction)
			return substitution ? "fullopt" : "nosubst";
		return substitution ? "nomtab" : "noopt";
	}

	[[nodiscard]] static std::optional<ablation_config> from_name(std::string_view name)
	{
		for (auto const cfg : all())
			if (cfg.name() == name)
				return cfg;
		return std::nullopt;
	}

	[[nodiscard]] static constexpr std::array<ablation_config, 4> all() { return {fullopt(), nomtab(), nosubst(), noopt()}; }

	friend constexpr bool operator==(ablation_config, ablation_config) = default;
};

class parse_error : public std::runtime_error
{
public:
	explicit parse_error(std::size_t offset)
		: std::runtime_error{"invalid JSON at byte offset " + std::to_string(offset)}, offset_{offset} {}

	[[nodiscard]] std::size_t offset() const noexcept { return offset_; }

private:
	std::size_t offset_;
};

/// Decodes the character after a backslash. Only `" \ / b f n r t` are valid.
[[nodiscard]] inline std::string decode_escape(char tag)
{
	switch (tag) {
		case '"': return "\"";
		case '\\': return "\\";
		case '/': return "/";
		case 'b': return "\b";
		case 'f': return "\f";
		case 'n': return "\n";
		case 'r': return "\r";
		case 't': return "\t";
		default: throw std::invalid_argument{std::string{"not a JSON escape: "} + tag};
	}
}

namespace detail {

inline char32_t parse_hex4(std::string_view hex)
{
	unsigned v = 0;
	auto const [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), v, 16);
	if (hex.size() != 4 || ec != std::errc{} || ptr != hex.data() + hex.size())
		throw std::invalid_argument{"expected four hex digits: " + std::string{hex}};
	return static_cast<char32_t>(v);
}

} // namespace detail

/// UTF-8 for a `\uXXXX` escape, or for a surrogate pair when `low` is given.
[[nodiscard]] inline std::string decode_unicode_escape(std::string_view hex4, std::optional<std::string_view> low = std::nullopt)
{
	char32_t const hi = detail::parse_hex4(hex4);
	bool const is_high = hi >= 0xD800 && hi <= 0xDBFF;
	if (!low) {
		if (hi >= 0xD800 && hi <= 0xDFFF)
			throw std::invalid_argument{"unpaired surrogate \\u" + std::string{hex4}};
		return utf8::encode(hi);
	}
	char32_t const lo = detail::parse_hex4(*low);
	if (!is_high || lo < 0xDC00 || lo > 0xDFFF)
		throw std::invalid_argument{"invalid surrogate pair \\u" + std::string{hex4} + "\\u" + std::string{*low}};
	return utf8::encode(0x10000 + ((hi - 0xD800) << 10) + (lo - 0xDC00));
}

/// Builds an object from a flat key, value, key, value... list. Later duplicates win.
[[nodiscard]] inline json_value make_table(std::span<value> flat)
{
	if (flat.size() % 2 != 0)
		throw contract_violation{"make_table needs an even number of values"};
	value::map res;
	res.reserve(flat.size() / 2);
	for (std::size_t i = 0; i < flat.size(); i += 2) {
		if (!flat[i].is_text())
			throw contract_violation{"make_table keys must be text"};
		res.insert_or_assign(std::move(flat[i].as_text()), std::move(flat[i + 1]));
	}
	return value{std::move(res)};
}

[[nodiscard]] inline double to_number(std::string_view text)
{
	double d = 0;
	auto const [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
	if (ec == std::errc::result_out_of_range)
		return std::strtod(std::string{text}.c_str(), nullptr);
	if (ec != std::errc{} || ptr != text.data() + text.size())
		throw std::invalid_argument{"not a number: " + std::string{text}};
	return d;
}

[[nodiscard]] inline callback_registry const& callbacks()
{
	static callback_registry const reg = [] {
		callback_registry r;
		r.add_function("tonumber", [](std::span<value> args, std::vector<value>& out) {
			out.emplace_back(to_number(args[0].as_text()));
		});
		r.add_function("str_esc", [](std::span<value> args, std::vector<value>& out) {
			out.emplace_back(decode_escape(args[0].as_text()[0]));
		});
		r.add_function("proc_uesc", [](std::span<value> args, std::vector<value>& out) {
			out.emplace_back(decode_unicode_escape(args[0].as_text()));
		});
		r.add_function("surrogate", [](std::span<value> args, std::vector<value>& out) {
			out.emplace_back(decode_unicode_escape(args[0].as_text(), std::string_view{args[1].as_text()}));
		});
		r.add_function("make_table", [](std::span<value> args, std::vector<value>& out) {
			out.push_back(make_table(args[0].as_list()));
		});
		r.add_function("new_table", [](std::span<value>, std::vector<value>& out) { out.emplace_back(value::map{}); });
		r.add_fold("add_prop", [](value t, std::span<value> kv) {
			t.as_map().insert_or_assign(std::move(kv[0].as_text()), std::move(kv[1]));
			return t;
		});
		r.add_function("fast_merge", [](std::span<value> args, std::vector<value>& out) {
			auto& parts = args[0].as_list();
			std::size_t total = 0;
			for (auto const& p : parts)
				total += p.as_text().size();
			std::string merged;
			merged.reserve(total);
			for (auto const& p : parts)
				merged += p.as_text();
			out.emplace_back(std::move(merged));
		});
		return r;
	}();
	return reg;
}

[[nodiscard]] inline grammar build_grammar(ablation_config cfg)
{
	auto const ws = ref("__");
	auto const hex = set(charset::range('0', '9') | charset::range('a', 'f') | charset::range('A', 'F'));
	auto const digit = range('0', '9');
	auto const digits = plus(digit);

	grammar g;
	g.start = "doc";
	g.add("doc", seq({ref("JSON"), ws, eof()}));
	g.add("JSON", seq({ws, choice({ref("Number"), ref("Object"), ref("Array"), ref("String"), ref("True"), ref("False"), ref("Null")})}));

	auto const pair = seq({ref("String"), ws, lit(":"), ref("JSON")});
	if (cfg.table_construction) {
		g.add("Object", cap::function(cap::table(seq({
			lit("{"),
			choice({seq({pair, ws, star(seq({lit(","), cap::group(pair), ws}))}), ws}),
			lit("}"),
		})), "make_table"));
	} else {
		g.add("Object", cap::fold(seq({
			cap::function(lit("{"), "new_table"),
			choice({seq({cap::group(pair), ws, star(seq({lit(","), cap::group(pair), ws}))}), ws}),
			lit("}"),
		}), "add_prop"));
	}

	g.add("Array", cap::table(seq({
		lit("["),
		choice({seq({cap::group(ref("JSON")), ws, star(seq({lit(","), cap::group(ref("JSON")), ws}))}), ws}),
		lit("]"),
	})));

	auto const plain = plus(set(~(charset::of("\"\\") | charset::range(0x00, 0x1F))));
	auto const hex4 = seq({hex, hex, hex, hex});
	auto const high = seq({set("dD"), set("89aAbB"), hex, hex});
	auto const low = seq({set("dD"), set("cdefCDEF"), hex, hex});
	auto const not_surrogate = not_(seq({set("dD"), set("89abcdefABCDEF")}));
	auto const escaped = cap::function(set("bfnrt"), "str_esc");
	auto const pair_escape = cap::function(seq({cap::simple(high), lit("\\u"), cap::simple(low)}), "surrogate");
	auto const bmp_escape = seq({not_surrogate, cap::function(cap::simple(hex4), "proc_uesc")});

	if (cfg.substitution) {
		g.add("String", seq({ws, lit("\""), cap::substitution(ref("StringBody")), lit("\"")}));
		g.add("StringBody", star(choice({plain, plus(ref("Escape"))})));
		g.add("Escape", seq({cap::constant(lit("\\"), value{""}), choice({set("\"\\/"), escaped, ref("UnicodeEscape")})}));
		g.add("UnicodeEscape", seq({cap::constant(lit("u"), value{""}), choice({pair_escape, bmp_escape})}));
	} else {
		g.add("String", seq({ws, lit("\""), cap::function(cap::table(ref("StringBody")), "fast_merge"), lit("\"")}));
		g.add("StringBody", star(choice({cap::simple(plain), plus(ref("Escape"))})));
		g.add("Escape", seq({lit("\\"), choice({cap::simple(set("\"\\/")), escaped, ref("UnicodeEscape")})}));
		g.add("UnicodeEscape", seq({lit("u"), choice({pair_escape, bmp_escape})}));
	}

	g.add("Number", cap::function(seq({opt(ref("Minus")), ref("IntPart"), opt(ref("FractPart")), opt(ref("ExpPart"))}), "tonumber"));
	g.add("Minus", lit("-"));
	g.add("IntPart", choice({lit("0"), seq({range('1', '9'), star(digit)})}));
	g.add("FractPart", seq({lit("."), digits}));
	g.add("ExpPart", seq({set("eE"), opt(set("+-")), digits}));
	g.add("True", cap::constant(lit("true"), value{true}));
	g.add("False", cap::constant(lit("false"), value{false}));
	g.add("Null", cap::constant(lit("null"), value{null}));
	g.add("__", star(set(" \t\n\r")));
	return g;
}

/// Compiled grammar for `cfg`, built once and shared.
[[nodiscard]] inline program const& compiled(ablation_config cfg)
{
	static std::array<program, 4> const programs = [] {
		std::array<program, 4> p;
		auto const cfgs = ablation_config::all();
		for (std::size_t i = 0; i < cfgs.size(); ++i)
			p[i] = compile(build_grammar(cfgs[i]), callbacks());
		return p;
	}();
	auto const cfgs = ablation_config::all();
	return programs[static_cast<std::size_t>(std::find(cfgs.begin(), cfgs.end(), cfg) - cfgs.begin())];
}

/// Parses a complete document. Throws parse_error with the furthest failure offset,
/// or with the offset of the first ill-formed UTF-8 byte.
[[nodiscard]] inline json_value parse(std::string_view text, ablation_config cfg = ablation_config::fullopt(), match_options const& options = {})
{
	auto outcome = match(compiled(cfg), text, 0, options);
	if (!outcome.success)
		throw parse_error{outcome.furthest};
	// outside strings the grammar admits ASCII only, so this checks string contents
	if (auto const bad = utf8::first_invalid(text))
		throw parse_error{*bad};
	return std::move(outcome.values.front());
}

namespace detail {

inline void write_string(std::string_view s, std::string& out)
{
	static constexpr char hexdig[] = "0123456789abcdef";
	out.push_back('"');
	for (char ch : s) {
		auto const c = static_cast<unsigned char>(ch);
		switch (ch) {
			case '"': out += "\\\""; break;
			case '\\': out += "\\\\"; break;
			case '\b': out += "\\b"; break;
			case '\f': out += "\\f"; break;
			case '\n': out += "\\n"; break;
			case '\r': out += "\\r"; break;
			case '\t': out += "\\t"; break;
			default:
				if (c < 0x20) {
					out += "\\u00";
					out.push_back(hexdig[c >> 4]);
					out.push_back(hexdig[c & 0xF]);
				} else {
					out.push_back(ch);
				}
		}
	}
	out.push_back('"');
}

inline void write_number(double d, std::string& out)
{
	if (std::isnan(d))
		throw std::invalid_argument{"NaN has no JSON form"};
	if (std::isinf(d))
		out += d < 0 ? "-1e999" : "1e999";
	else
		out += format_number(d);
}

} // namespace detail

/// Canonical text: no whitespace, object keys in byte order, shortest round-trip numbers.
[[nodiscard]] inline std::string serialize(json_value const& root)
{
	struct frame
	{
		json_value const* v;
		std::vector<std::pair<std::string const*, json_value const*>> members; // sorted, for objects
		std::size_t next{0};
	};
	std::string out;
	std::vector<frame> stack;
	auto open = [&](json_value const& v) {
		if (v.is_null()) {
			out += "null";
		} else if (v.is_boolean()) {
			out += v.as_boolean() ? "true" : "false";
		} else if (v.is_number()) {
			detail::write_number(v.as_number(), out);
		} else if (v.is_text()) {
			detail::write_string(v.as_text(), out);
		} else if (v.is_list()) {
			out.push_back('[');
			stack.push_back({&v, {}, 0});
		} else {
			out.push_back('{');
			frame f{&v, {}, 0};
			for (auto const& [k, child] : v.as_map())
				f.members.emplace_back(&k, &child);
			std::sort(f.members.begin(), f.members.end(), [](auto const& a, auto const& b) { return *a.first < *b.first; });
			stack.push_back(std::move(f));
		}
	};
	open(root);
	while (!stack.empty()) {
		frame& top = stack.back();
		std::size_t const i = top.next++;
		if (top.v->is_list()) {
			auto const& items = top.v->as_list();
			if (i == items.size()) {
				out.push_back(']');
				stack.pop_back();
				continue;
			}
			if (i > 0)
				out.push_back(',');
			open(items[i]);
		} else {
			if (i == top.members.size()) {
				out.push_back('}');
				stack.pop_back();
				continue;
			}
			if (i > 0)
				out.push_back(',');
			auto const [key, child] = top.members[i];
			detail::write_string(*key, out);
			out.push_back(':');
			open(*child);
		}
	}
	return out;
}

} // namespace pegkit::json

#endif // PEGKIT_JSON_HPP
