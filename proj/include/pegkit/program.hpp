// pegkit - parsing expression grammar engine with JSON and glob front-ends
// See README.md for details

#ifndef PEGKIT_PROGRAM_HPP
#define PEGKIT_PROGRAM_HPP

#include <pegkit/callbacks.hpp>
#include <pegkit/charset.hpp>
#include <pegkit/grammar.hpp>
#include <pegkit/pattern.hpp>

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pegkit {

class grammar_error : public std::invalid_argument
{
	validation_report report_;

public:
	explicit grammar_error(validation_report report)
		: std::invalid_argument{"invalid grammar: " + report.to_string()}, report_{std::move(report)} {}

	[[nodiscard]] validation_report const& report() const noexcept { return report_; }
};

enum class opcode : std::uint8_t
{
	any,            // consume `arg` bytes
	byte,           // consume byte `arg`
	set,            // consume one byte in sets[arg]
	string,         // consume strings[arg]
	test_set,       // peek one byte in sets[arg], else jump to target
	span,           // consume bytes in sets[arg] greedily
	choice,         // push backtrack entry resuming at target
	commit,         // pop backtrack entry, jump to target
	partial_commit, // refresh top backtrack entry, jump to target (loop back edge)
	back_commit,    // pop backtrack entry restoring its position, jump to target
	fail_twice,     // pop backtrack entry and fail
	fail,
	call,
	jump,
	ret,
	open_capture,
	close_capture,
	end
};

struct instruction
{
	opcode op;
	std::uint32_t arg{0};
	std::int32_t target{-1};
};

struct capture_spec
{
	capture_kind kind;
	std::string name;
	value constant;
	function_callback function;
	fold_callback fold;
	match_time_callback match_time;
};

/// Grammar lowered to a flat instruction sequence for the matching machine.
struct program
{
	std::vector<instruction> code;
	std::vector<charset> sets;
	std::vector<std::string> strings;
	std::vector<capture_spec> captures;
	std::map<std::string, std::int32_t, std::less<>> rule_entry;
};

namespace detail {

struct first_info
{
	charset chars;
	bool nullable{false}; // may succeed without consuming, or cannot tell
};

class program_builder
{
public:
	program_builder(grammar const& g, callback_registry const& callbacks) : g_{g}, callbacks_{callbacks} {}

	program build()
	{
		emit(opcode::call);
		call_sites_.push_back({0, g_.start});
		emit(opcode::end);
		for (auto const& [name, body] : g_.rules) {
			prog_.rule_entry.emplace(name, here());
			gen(*body, true);
			emit(opcode::ret);
		}
		for (auto const& [pc, rule] : call_sites_)
			prog_.code[pc].target = prog_.rule_entry.find(rule)->second;
		return std::move(prog_);
	}

private:
	struct call_site
	{
		std::size_t pc;
		std::string rule;
	};

	[[nodiscard]] std::int32_t here() const { return static_cast<std::int32_t>(prog_.code.size()); }

	std::size_t emit(opcode op, std::uint32_t arg = 0, std::int32_t target = -1)
	{
		prog_.code.push_back({op, arg, target});
		return prog_.code.size() - 1;
	}

	void patch(std::size_t pc) { prog_.code[pc].target = here(); }

	std::uint32_t add_set(charset const& cs)
	{
		prog_.sets.push_back(cs);
		return static_cast<std::uint32_t>(prog_.sets.size() - 1);
	}

	first_info first(node const& n)
	{
		switch (n.kind) {
			case node_kind::literal:
				if (n.text.empty())
					return {{}, true};
				return {charset{}.insert(static_cast<unsigned char>(n.text[0])), false};
			case node_kind::char_set: return {n.set, false};
			case node_kind::any: return {charset::all(), n.count == 0};
			case node_kind::sequence: {
				first_info acc;
				for (auto const& c : n.children) {
					first_info const f = first(*c);
					acc.chars |= f.chars;
					if (!f.nullable)
						return acc;
				}
				acc.nullable = true;
				return acc;
			}
			case node_kind::choice: {
				first_info acc;
				for (auto const& c : n.children) {
					first_info const f = first(*c);
					acc.chars |= f.chars;
					acc.nullable = acc.nullable || f.nullable;
				}
				return acc;
			}
			case node_kind::repeat_at_least: {
				first_info f = first(*n.children[0]);
				f.nullable = f.nullable || n.count == 0;
				return f;
			}
			case node_kind::repeat_at_most: {
				first_info f = first(*n.children[0]);
				f.nullable = true;
				return f;
			}
			case node_kind::and_predicate:
			case node_kind::not_predicate: return {charset::all(), true};
			case node_kind::rule_ref: {
				if (auto const it = first_memo_.find(n.text); it != first_memo_.end())
					return it->second;
				if (!first_busy_.insert(n.text).second)
					return {charset::all(), true};
				first_info const f = first(**g_.find(n.text));
				first_busy_.erase(n.text);
				first_memo_.emplace(n.text, f);
				return f;
			}
			case node_kind::capture:
				if (n.capture == capture_kind::match_time)
					return {charset::all(), true};
				return first(*n.children[0]);
		}
		return {charset::all(), true};
	}

	void gen(node const& n, bool tail)
	{
		switch (n.kind) {
			case node_kind::literal:
				if (n.text.size() == 1) {
					emit(opcode::byte, static_cast<unsigned char>(n.text[0]));
				} else if (!n.text.empty()) {
					prog_.strings.push_back(n.text);
					emit(opcode::string, static_cast<std::uint32_t>(prog_.strings.size() - 1));
				}
				break;
			case node_kind::char_set: emit(opcode::set, add_set(n.set)); break;
			case node_kind::any:
				if (n.count > 0)
					emit(opcode::any, static_cast<std::uint32_t>(n.count));
				break;
			case node_kind::sequence:
				for (std::size_t i = 0; i < n.children.size(); ++i)
					gen(*n.children[i], tail && i + 1 == n.children.size());
				break;
			case node_kind::choice: gen_choice(n, tail); break;
			case node_kind::repeat_at_least: {
				node const& body = *n.children[0];
				for (std::size_t i = 0; i < n.count; ++i)
					gen(body, false);
				if (body.kind == node_kind::char_set) {
					emit(opcode::span, add_set(body.set));
				} else {
					std::int32_t const loop = here();
					std::size_t const entry = emit(opcode::choice);
					gen(body, false);
					emit(opcode::partial_commit, 0, loop + 1);
					patch(entry);
				}
				break;
			}
			case node_kind::repeat_at_most: {
				std::vector<std::size_t> exits;
				for (std::size_t i = 0; i < n.count; ++i) {
					exits.push_back(emit(opcode::choice));
					gen(*n.children[0], false);
					emit(opcode::commit, 0, here() + 1);
				}
				for (auto pc : exits)
					patch(pc);
				break;
			}
			case node_kind::and_predicate: {
				std::size_t const entry = emit(opcode::choice);
				gen(*n.children[0], false);
				std::size_t const ok = emit(opcode::back_commit);
				patch(entry);
				emit(opcode::fail);
				patch(ok);
				break;
			}
			case node_kind::not_predicate: {
				std::size_t const entry = emit(opcode::choice);
				gen(*n.children[0], false);
				emit(opcode::fail_twice);
				patch(entry);
				break;
			}
			case node_kind::rule_ref:
				call_sites_.push_back({emit(tail ? opcode::jump : opcode::call), n.text});
				break;
			case node_kind::capture: {
				auto const index = static_cast<std::uint32_t>(prog_.captures.size());
				prog_.captures.push_back(make_capture_spec(n));
				emit(opcode::open_capture, index);
				gen(*n.children[0], false);
				emit(opcode::close_capture, index);
				break;
			}
		}
	}

	// Alternatives whose first bytes cannot overlap any later alternative are guarded by a
	// test instead of a backtrack entry, which keeps calls in their final position as jumps.
	void gen_choice(node const& n, bool tail)
	{
		std::vector<first_info> firsts;
		firsts.reserve(n.children.size());
		for (auto const& c : n.children)
			firsts.push_back(first(*c));

		std::vector<std::size_t> to_end;
		for (std::size_t i = 0; i < n.children.size(); ++i) {
			node const& alt = *n.children[i];
			if (i + 1 == n.children.size()) {
				gen(alt, tail);
				break;
			}
			first_info rest;
			for (std::size_t j = i + 1; j < n.children.size(); ++j) {
				rest.chars |= firsts[j].chars;
				rest.nullable = rest.nullable || firsts[j].nullable;
			}
			if (!firsts[i].nullable && !rest.nullable && firsts[i].chars.disjoint(rest.chars)) {
				std::size_t const test = emit(opcode::test_set, add_set(firsts[i].chars));
				gen(alt, tail);
				to_end.push_back(emit(tail ? opcode::ret : opcode::jump));
				patch(test);
			} else {
				std::size_t const entry = emit(opcode::choice);
				gen(alt, false);
				to_end.push_back(emit(opcode::commit));
				patch(entry);
			}
		}
		for (auto pc : to_end)
			if (prog_.code[pc].op != opcode::ret)
				patch(pc);
	}

	capture_spec make_capture_spec(node const& n) const
	{
		capture_spec spec{n.capture, n.text, n.constant, {}, {}, {}};
		if (n.callback.empty())
			return spec;
		auto const* entry = callbacks_.find(n.callback);
		if (n.capture == capture_kind::function)
			spec.function = std::get<function_callback>(*entry);
		else if (n.capture == capture_kind::fold)
			spec.fold = std::get<fold_callback>(*entry);
		else if (n.capture == capture_kind::match_time)
			spec.match_time = std::get<match_time_callback>(*entry);
		return spec;
	}

	grammar const& g_;
	callback_registry const& callbacks_;
	program prog_;
	std::vector<call_site> call_sites_;
	std::map<std::string, first_info, std::less<>> first_memo_;
	std::set<std::string, std::less<>> first_busy_;
};

} // namespace detail

/// Validates `g` against `callbacks` and lowers it. Throws grammar_error on any diagnosis.
[[nodiscard]] inline program compile(grammar const& g, callback_registry const& callbacks = {})
{
	validation_report report = validate_grammar(g, &callbacks);
	if (!report.ok())
		throw grammar_error{std::move(report)};
	return detail::program_builder{g, callbacks}.build();
}

} // namespace pegkit

#endif // PEGKIT_PROGRAM_HPP
