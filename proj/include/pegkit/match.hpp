// pegkit - parsing expression grammar engine with JSON and glob front-ends
// See README.md for details

#ifndef PEGKIT_MATCH_HPP
#define PEGKIT_MATCH_HPP

#include <pegkit/program.hpp>

#include <cstring>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pegkit {

/// Rule-call depth exceeded the configured bound.
class depth_limit_error : public std::runtime_error
{
public:
	explicit depth_limit_error(std::size_t limit)
		: std::runtime_error{"rule call depth limit of " + std::to_string(limit) + " exceeded"} {}
};

/// A callback or capture broke the engine's contract (bad position, bad substitution value).
class contract_violation : public std::logic_error
{
public:
	using std::logic_error::logic_error;
};

struct match_options
{
	std::size_t max_call_depth{200'000}; // non-tail rule calls
};

/// Positions are 0-based byte offsets. `end` is one past the last consumed byte, so a
/// match from offset 0 reports the consumed byte count; `one_based_end()` gives the
/// "length plus one" form used by LPeg.
struct match_outcome
{
	bool success{false};
	std::size_t end{0};
	std::vector<value> values;
	std::size_t furthest{0}; // furthest position at which an attempt failed

	[[nodiscard]] std::size_t one_based_end() const noexcept { return end + 1; }
	explicit operator bool() const noexcept { return success; }
};

namespace detail {

enum class log_kind : std::uint8_t { open, close, runtime };

struct log_entry
{
	std::uint32_t index; // capture spec, or runtime record for log_kind::runtime
	log_kind kind;
	std::size_t pos;
};

struct capture_item
{
	value v;
	std::string const* name; // set for named-group values
	std::uint32_t group;     // items produced by the same capture share a group
	std::size_t begin;
	std::size_t end;
};

struct runtime_record
{
	std::size_t begin;
	std::size_t end;
	std::vector<capture_item> items;
};

// Turns a balanced slice of the capture log into values, without native recursion.
class capture_evaluator
{
public:
	capture_evaluator(program const& prog, std::string_view subject, std::vector<runtime_record> const& runtime)
		: prog_{prog}, subject_{subject}, runtime_{runtime} {}

	std::vector<capture_item>& run(log_entry const* first, log_entry const* last)
	{
		for (; first != last; ++first) {
			switch (first->kind) {
				case log_kind::open:
					frames_.push_back({first->index, first->pos, items_.size()});
					if (prog_.captures[first->index].kind == capture_kind::substitution)
						subs_.push_back({std::string{}, first->pos});
					break;
				case log_kind::close: {
					frame const f = frames_.back();
					frames_.pop_back();
					bool const into_sub = in_substitution();
					capture_spec const& spec = prog_.captures[f.index];
					if (into_sub && spec.kind == capture_kind::constant) {
						substitution_state& st = subs_.back();
						if (append_replacement(st.out, spec.constant, f.begin, st.cursor))
							st.cursor = first->pos;
						items_.resize(f.first_item);
						break;
					}
					finish(f, first->pos);
					if (into_sub)
						absorb(f.first_item);
					break;
				}
				case log_kind::runtime: {
					runtime_record const& r = runtime_[first->index];
					std::uint32_t const g = next_group_++;
					std::size_t const first_item = items_.size();
					for (auto const& it : r.items)
						items_.push_back({it.v, it.name, g, r.begin, r.end});
					if (in_substitution())
						absorb(first_item);
					break;
				}
			}
		}
		return items_;
	}

	[[nodiscard]] std::vector<value> positional_values()
	{
		std::vector<value> out;
		out.reserve(items_.size());
		for (auto& it : items_)
			if (it.name == nullptr)
				out.push_back(std::move(it.v));
		return out;
	}

private:
	struct frame
	{
		std::uint32_t index;
		std::size_t begin;
		std::size_t first_item;
	};

	// Output built so far by an open substitution capture.
	struct substitution_state
	{
		std::string out;
		std::size_t cursor;
	};

	[[nodiscard]] bool in_substitution() const
	{
		return !frames_.empty() && prog_.captures[frames_.back().index].kind == capture_kind::substitution;
	}

	// Folds the values a direct child of the innermost substitution just produced into its output.
	void absorb(std::size_t first_item)
	{
		if (first_item < items_.size()) {
			capture_item const& it = items_[first_item];
			substitution_state& st = subs_.back();
			if (it.name == nullptr && append_replacement(st.out, it.v, it.begin, st.cursor))
				st.cursor = it.end;
		}
		items_.resize(first_item);
	}

	void push(value v, std::string const* name, std::uint32_t group, std::size_t begin, std::size_t end)
	{
		items_.push_back({std::move(v), name, group, begin, end});
	}

	void collect_positional(std::size_t first_item, std::vector<value>& out)
	{
		out.clear();
		for (std::size_t i = first_item; i < items_.size(); ++i)
			if (items_[i].name == nullptr)
				out.push_back(std::move(items_[i].v));
	}

	void finish(frame const& f, std::size_t end)
	{
		capture_spec const& spec = prog_.captures[f.index];
		std::uint32_t const g = next_group_++;
		std::string_view const matched = subject_.substr(f.begin, end - f.begin);
		switch (spec.kind) {
			case capture_kind::simple: {
				collect_positional(f.first_item, scratch_);
				items_.resize(f.first_item);
				push(value{std::string{matched}}, nullptr, g, f.begin, end);
				for (auto& v : scratch_)
					push(std::move(v), nullptr, g, f.begin, end);
				break;
			}
			case capture_kind::group: {
				collect_positional(f.first_item, scratch_);
				items_.resize(f.first_item);
				std::string const* name = spec.name.empty() ? nullptr : &spec.name;
				if (scratch_.empty())
					push(value{std::string{matched}}, name, g, f.begin, end);
				for (auto& v : scratch_)
					push(std::move(v), name, g, f.begin, end);
				break;
			}
			case capture_kind::table: {
				value::list positional;
				value::map named;
				bool has_named = false;
				for (std::size_t i = f.first_item; i < items_.size(); ++i) {
					auto& it = items_[i];
					if (it.name == nullptr) {
						positional.push_back(std::move(it.v));
					} else {
						// only the first value of a named group is stored
						if (i == f.first_item || items_[i - 1].group != it.group || items_[i - 1].name != it.name)
							named.insert_or_assign(*it.name, std::move(it.v));
						has_named = true;
					}
				}
				items_.resize(f.first_item);
				if (has_named) {
					for (std::size_t i = 0; i < positional.size(); ++i)
						named.insert_or_assign(std::to_string(i + 1), std::move(positional[i]));
					push(value{std::move(named)}, nullptr, g, f.begin, end);
				} else {
					push(value{std::move(positional)}, nullptr, g, f.begin, end);
				}
				break;
			}
			case capture_kind::fold: {
				std::optional<value> acc;
				std::size_t i = f.first_item;
				while (i < items_.size()) {
					std::size_t j = i;
					scratch_.clear();
					while (j < items_.size() && items_[j].group == items_[i].group) {
						if (items_[j].name == nullptr)
							scratch_.push_back(std::move(items_[j].v));
						++j;
					}
					i = j;
					if (scratch_.empty())
						continue;
					if (!acc)
						acc = std::move(scratch_.front());
					else
						acc = spec.fold(std::move(*acc), std::span<value>{scratch_});
				}
				items_.resize(f.first_item);
				if (acc)
					push(std::move(*acc), nullptr, g, f.begin, end);
				break;
			}
			case capture_kind::function: {
				collect_positional(f.first_item, scratch_);
				items_.resize(f.first_item);
				if (scratch_.empty())
					scratch_.emplace_back(std::string{matched});
				results_.clear();
				spec.function(std::span<value>{scratch_}, results_);
				for (auto& v : results_)
					push(std::move(v), nullptr, g, f.begin, end);
				break;
			}
			case capture_kind::constant:
				items_.resize(f.first_item);
				push(spec.constant, nullptr, g, f.begin, end);
				break;
			case capture_kind::substitution: {
				substitution_state st = std::move(subs_.back());
				subs_.pop_back();
				st.out.append(subject_.substr(st.cursor, end - st.cursor));
				items_.resize(f.first_item);
				push(value{std::move(st.out)}, nullptr, g, f.begin, end);
				break;
			}
			case capture_kind::match_time:
				throw contract_violation{"match-time capture reached the evaluator unresolved"};
		}
	}

	// Returns false when the original text should be kept.
	bool append_replacement(std::string& out, value const& v, std::size_t begin, std::size_t cursor)
	{
		if (v.is_null() || (v.is_boolean() && !v.as_boolean()))
			return false;
		if (!v.is_text() && !v.is_number())
			throw contract_violation{"substitution replacement must be text or a number"};
		out.append(subject_.substr(cursor, begin - cursor));
		if (v.is_text())
			out += v.as_text();
		else
			out += format_number(v.as_number());
		return true;
	}

	program const& prog_;
	std::string_view subject_;
	std::vector<runtime_record> const& runtime_;
	std::vector<frame> frames_;
	std::vector<substitution_state> subs_;
	std::vector<capture_item> items_;
	std::vector<value> scratch_;
	std::vector<value> results_;
	std::uint32_t next_group_{0};
};

class machine
{
public:
	machine(program const& prog, std::string_view subject, match_options const& options)
		: prog_{prog}, subject_{subject}, options_{options} {}

	match_outcome run(std::size_t start)
	{
		match_outcome outcome;
		if (start > subject_.size())
			return outcome;
		auto const& code = prog_.code;
		auto const* s = reinterpret_cast<unsigned char const*>(subject_.data());
		std::size_t const n = subject_.size();
		std::size_t pos = start;
		std::int32_t pc = 0;
		std::size_t furthest = start;
		stack_.reserve(64);

		for (;;) {
			instruction const& ins = code[static_cast<std::size_t>(pc)];
			switch (ins.op) {
				case opcode::any:
					if (n - pos >= ins.arg) { pos += ins.arg; ++pc; continue; }
					break;
				case opcode::byte:
					if (pos < n && s[pos] == ins.arg) { ++pos; ++pc; continue; }
					break;
				case opcode::set:
					if (pos < n && prog_.sets[ins.arg].contains(s[pos])) { ++pos; ++pc; continue; }
					break;
				case opcode::string: {
					std::string const& str = prog_.strings[ins.arg];
					if (n - pos >= str.size() && std::memcmp(s + pos, str.data(), str.size()) == 0) {
						pos += str.size();
						++pc;
						continue;
					}
					break;
				}
				case opcode::test_set:
					if (pos < n && prog_.sets[ins.arg].contains(s[pos])) {
						++pc;
					} else {
						furthest = std::max(furthest, pos);
						pc = ins.target;
					}
					continue;
				case opcode::span: {
					charset const& cs = prog_.sets[ins.arg];
					while (pos < n && cs.contains(s[pos]))
						++pos;
					++pc;
					continue;
				}
				case opcode::choice:
					stack_.push_back({ins.target, pos, log_.size()});
					++pc;
					continue;
				case opcode::commit:
					stack_.pop_back();
					pc = ins.target;
					continue;
				case opcode::partial_commit: {
					frame& top = stack_.back();
					if (top.pos == pos) {
						// an iteration that consumed nothing ends the loop
						pc = top.pc;
						stack_.pop_back();
					} else {
						top.pos = pos;
						top.log_size = log_.size();
						pc = ins.target;
					}
					continue;
				}
				case opcode::back_commit: {
					frame const top = stack_.back();
					stack_.pop_back();
					pos = top.pos;
					log_.resize(top.log_size);
					pc = ins.target;
					continue;
				}
				case opcode::fail_twice:
					pos = stack_.back().pos;
					stack_.pop_back();
					break;
				case opcode::fail: break;
				case opcode::call:
					if (depth_ >= options_.max_call_depth)
						throw depth_limit_error{options_.max_call_depth};
					++depth_;
					stack_.push_back({pc + 1, call_marker, 0});
					pc = ins.target;
					continue;
				case opcode::jump:
					pc = ins.target;
					continue;
				case opcode::ret:
					pc = stack_.back().pc;
					stack_.pop_back();
					--depth_;
					continue;
				case opcode::open_capture:
					log_.push_back({ins.arg, log_kind::open, pos});
					++pc;
					continue;
				case opcode::close_capture:
					if (prog_.captures[ins.arg].kind == capture_kind::match_time) {
						if (!run_match_time(ins.arg, pos))
							break;
					} else {
						log_.push_back({ins.arg, log_kind::close, pos});
					}
					++pc;
					continue;
				case opcode::end: {
					outcome.success = true;
					outcome.end = pos;
					outcome.furthest = std::max(furthest, pos);
					capture_evaluator eval{prog_, subject_, runtime_};
					eval.run(log_.data(), log_.data() + log_.size());
					outcome.values = eval.positional_values();
					return outcome;
				}
			}

			// failure: unwind to the most recent backtrack entry
			furthest = std::max(furthest, pos);
			for (;;) {
				if (stack_.empty()) {
					outcome.furthest = furthest;
					return outcome;
				}
				frame const top = stack_.back();
				stack_.pop_back();
				if (top.pos == call_marker) {
					--depth_;
					continue;
				}
				pos = top.pos;
				log_.resize(top.log_size);
				pc = top.pc;
				break;
			}
		}
	}

private:
	static constexpr std::size_t call_marker = std::numeric_limits<std::size_t>::max();

	struct frame
	{
		std::int32_t pc;
		std::size_t pos; // call_marker for return frames
		std::size_t log_size;
	};

	// Evaluates the capture's nested values now and lets the callback steer the match.
	bool run_match_time(std::uint32_t index, std::size_t& pos)
	{
		std::size_t open = log_.size();
		for (int level = 0; open-- > 0;) {
			if (log_[open].kind == log_kind::close) {
				++level;
			} else if (log_[open].kind == log_kind::open) {
				if (level == 0)
					break;
				--level;
			}
		}
		std::size_t const start = log_[open].pos;

		capture_evaluator eval{prog_, subject_, runtime_};
		std::vector<capture_item>& items = eval.run(log_.data() + open + 1, log_.data() + log_.size());
		std::vector<value> pending;
		std::map<std::string, value, std::less<>> named;
		for (auto const& it : items) {
			if (it.name == nullptr)
				pending.push_back(it.v);
			else
				named.emplace(*it.name, it.v);
		}

		match_time_context const ctx{subject_, start, pos, pending, &named};
		match_time_result result = prog_.captures[index].match_time(ctx);
		if (result.act == match_time_result::action::fail)
			return false;
		if (result.act == match_time_result::action::advance) {
			if (result.position < pos || result.position > subject_.size())
				throw contract_violation{"match-time callback returned position " + std::to_string(result.position) +
					" outside [" + std::to_string(pos) + ", " + std::to_string(subject_.size()) + "]"};
			pos = result.position;
		}

		runtime_record record{start, pos, {}};
		if (result.values) {
			for (auto& v : *result.values)
				record.items.push_back({std::move(v), nullptr, 0, start, pos});
		} else {
			record.items = std::move(items);
		}
		log_.resize(open);
		runtime_.push_back(std::move(record));
		log_.push_back({static_cast<std::uint32_t>(runtime_.size() - 1), log_kind::runtime, start});
		return true;
	}

	program const& prog_;
	std::string_view subject_;
	match_options const& options_;
	std::vector<frame> stack_;
	std::vector<log_entry> log_;
	std::vector<runtime_record> runtime_;
	std::size_t depth_{0};
};

} // namespace detail

/// Runs `prog` on `subject` from byte offset `start`.
[[nodiscard]] inline match_outcome match(program const& prog, std::string_view subject, std::size_t start = 0, match_options const& options = {})
{
	return detail::machine{prog, subject, options}.run(start);
}

} // namespace pegkit

#endif // PEGKIT_MATCH_HPP
