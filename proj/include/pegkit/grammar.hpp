// pegkit - parsing expression grammar engine with JSON and glob front-ends
// See README.md for details

#ifndef PEGKIT_GRAMMAR_HPP
#define PEGKIT_GRAMMAR_HPP

#include <pegkit/callbacks.hpp>
#include <pegkit/pattern.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pegkit {

/// Named rule set with a start rule.
struct grammar
{
	std::map<std::string, pattern, std::less<>> rules;
	std::string start;

	grammar() = default;
	grammar(std::string start_rule, std::map<std::string, pattern, std::less<>> r)
		: rules{std::move(r)}, start{std::move(start_rule)} {}

	grammar& add(std::string name, pattern body)
	{
		rules.insert_or_assign(std::move(name), std::move(body));
		return *this;
	}

	[[nodiscard]] pattern const* find(std::string_view name) const
	{
		auto const it = rules.find(name);
		return it == rules.end() ? nullptr : &it->second;
	}
};

enum class diagnosis_kind : std::uint8_t
{
	missing_start,
	unresolved_ref,
	left_recursion,
	unresolved_callback,
	callback_kind_mismatch
};

struct diagnosis
{
	diagnosis_kind kind;
	std::string rule;   // offending rule (or the start name for missing_start)
	std::string detail; // referenced name or callback id

	friend bool operator==(diagnosis const&, diagnosis const&) = default;
};

struct validation_report
{
	std::vector<diagnosis> problems;

	[[nodiscard]] bool ok() const noexcept { return problems.empty(); }

	[[nodiscard]] bool has(diagnosis_kind kind, std::string_view rule) const
	{
		return std::any_of(problems.begin(), problems.end(), [&](diagnosis const& d) { return d.kind == kind && d.rule == rule; });
	}

	[[nodiscard]] std::string to_string() const
	{
		std::string out;
		for (auto const& d : problems) {
			switch (d.kind) {
				case diagnosis_kind::missing_start: out += "start rule '" + d.rule + "' is not defined"; break;
				case diagnosis_kind::unresolved_ref: out += "rule '" + d.rule + "' refers to undefined rule '" + d.detail + "'"; break;
				case diagnosis_kind::left_recursion: out += "rule '" + d.rule + "' is left recursive"; break;
				case diagnosis_kind::unresolved_callback: out += "rule '" + d.rule + "' uses unregistered callback '" + d.detail + "'"; break;
				case diagnosis_kind::callback_kind_mismatch: out += "rule '" + d.rule + "' uses callback '" + d.detail + "' with the wrong capture kind"; break;
			}
			out += '\n';
		}
		return out;
	}
};

namespace detail {

class grammar_analysis
{
public:
	explicit grammar_analysis(grammar const& g) : g_{g}
	{
		// least fixed point of rule nullability
		for (bool changed = true; changed;) {
			changed = false;
			for (auto const& [name, body] : g_.rules) {
				if (!nullable_rules_.count(name) && nullable(*body)) {
					nullable_rules_.insert(name);
					changed = true;
				}
			}
		}
	}

	[[nodiscard]] bool nullable(node const& n) const
	{
		switch (n.kind) {
			case node_kind::literal: return n.text.empty();
			case node_kind::char_set: return false;
			case node_kind::any: return n.count == 0;
			case node_kind::sequence: return std::all_of(n.children.begin(), n.children.end(), [this](pattern const& c) { return nullable(*c); });
			case node_kind::choice: return std::any_of(n.children.begin(), n.children.end(), [this](pattern const& c) { return nullable(*c); });
			case node_kind::repeat_at_least: return n.count == 0 || nullable(*n.children[0]);
			case node_kind::repeat_at_most: return true;
			case node_kind::and_predicate:
			case node_kind::not_predicate: return true;
			case node_kind::rule_ref: return nullable_rules_.count(n.text) != 0;
			case node_kind::capture: return nullable(*n.children[0]);
		}
		return true;
	}

	// Rules that may be entered before any input is consumed.
	void leading_refs(node const& n, std::set<std::string>& out) const
	{
		switch (n.kind) {
			case node_kind::rule_ref: out.insert(n.text); break;
			case node_kind::sequence:
				for (auto const& c : n.children) {
					leading_refs(*c, out);
					if (!nullable(*c))
						break;
				}
				break;
			case node_kind::choice:
				for (auto const& c : n.children)
					leading_refs(*c, out);
				break;
			case node_kind::repeat_at_least:
			case node_kind::repeat_at_most:
			case node_kind::and_predicate:
			case node_kind::not_predicate:
			case node_kind::capture: leading_refs(*n.children[0], out); break;
			default: break;
		}
	}

private:
	grammar const& g_;
	std::set<std::string, std::less<>> nullable_rules_;
};

inline void collect_refs(node const& n, std::vector<node const*>& refs, std::vector<node const*>& captures)
{
	if (n.kind == node_kind::rule_ref)
		refs.push_back(&n);
	if (n.kind == node_kind::capture && !n.callback.empty())
		captures.push_back(&n);
	for (auto const& c : n.children)
		collect_refs(*c, refs, captures);
}

} // namespace detail

/// Checks start/reference resolution, left recursion and (when given) callback ids.
[[nodiscard]] inline validation_report validate_grammar(grammar const& g, callback_registry const* callbacks = nullptr)
{
	validation_report report;
	if (g.find(g.start) == nullptr)
		report.problems.push_back({diagnosis_kind::missing_start, g.start, {}});

	bool unresolved = false;
	for (auto const& [name, body] : g.rules) {
		std::vector<node const*> refs;
		std::vector<node const*> captures;
		detail::collect_refs(*body, refs, captures);
		for (auto const* r : refs) {
			if (g.find(r->text) == nullptr) {
				report.problems.push_back({diagnosis_kind::unresolved_ref, name, r->text});
				unresolved = true;
			}
		}
		if (callbacks == nullptr)
			continue;
		for (auto const* c : captures) {
			auto const* entry = callbacks->find(c->callback);
			if (entry == nullptr) {
				report.problems.push_back({diagnosis_kind::unresolved_callback, name, c->callback});
				continue;
			}
			bool const kind_ok =
				(c->capture == capture_kind::function && std::holds_alternative<function_callback>(*entry)) ||
				(c->capture == capture_kind::fold && std::holds_alternative<fold_callback>(*entry)) ||
				(c->capture == capture_kind::match_time && std::holds_alternative<match_time_callback>(*entry));
			if (!kind_ok)
				report.problems.push_back({diagnosis_kind::callback_kind_mismatch, name, c->callback});
		}
	}
	if (unresolved)
		return report;

	detail::grammar_analysis const analysis{g};
	std::map<std::string, std::set<std::string>> edges;
	for (auto const& [name, body] : g.rules)
		analysis.leading_refs(*body, edges[name]);

	for (auto const& [name, body] : g.rules) {
		// depth-first search for a path back to `name`
		std::set<std::string> seen;
		std::vector<std::string> todo(edges[name].begin(), edges[name].end());
		while (!todo.empty()) {
			std::string current = std::move(todo.back());
			todo.pop_back();
			if (current == name) {
				report.problems.push_back({diagnosis_kind::left_recursion, name, {}});
				break;
			}
			if (!seen.insert(current).second)
				continue;
			todo.insert(todo.end(), edges[current].begin(), edges[current].end());
		}
	}
	return report;
}

} // namespace pegkit

#endif // PEGKIT_GRAMMAR_HPP
