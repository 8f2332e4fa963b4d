// pegkit - parsing expression grammar engine with JSON and glob front-ends
// See README.md for details

#ifndef PEGKIT_CALLBACKS_HPP
#define PEGKIT_CALLBACKS_HPP

#include <pegkit/value.hpp>

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace pegkit {

/// Receives the values of the nested captures (or the matched text when there are none)
/// and appends its results to `out`. Arguments may be moved from.
using function_callback = std::function<void(std::span<value> args, std::vector<value>& out)>;

/// One step of a fold: combines the accumulator with the values of the next capture.
using fold_callback = std::function<value(value accumulator, std::span<value> args)>;

/// Everything a match-time callback can observe.
struct match_time_context
{
	std::string_view subject;
	std::size_t start{0};     // where the capture's pattern began
	std::size_t position{0};  // where the capture's pattern ended
	std::span<value const> pending;
	std::map<std::string, value, std::less<>> const* named{nullptr};

	[[nodiscard]] value const* lookup(std::string_view name) const
	{
		if (named == nullptr)
			return nullptr;
		auto const it = named->find(name);
		return it == named->end() ? nullptr : &it->second;
	}
};

struct match_time_result
{
	enum class action : std::uint8_t { fail, keep, advance };
	action act{action::fail};
	std::size_t position{0};
	std::optional<std::vector<value>> values; // replaces pending values when present

	[[nodiscard]] static match_time_result failure() { return {}; }
	[[nodiscard]] static match_time_result keep(std::optional<std::vector<value>> v = std::nullopt) { return {action::keep, 0, std::move(v)}; }
	[[nodiscard]] static match_time_result advance_to(std::size_t p, std::optional<std::vector<value>> v = std::nullopt) { return {action::advance, p, std::move(v)}; }
};

using match_time_callback = std::function<match_time_result(match_time_context const&)>;

/// Named callbacks that capture nodes refer to by id. Resolved when a grammar is compiled.
class callback_registry
{
public:
	using entry = std::variant<function_callback, fold_callback, match_time_callback>;

	callback_registry& add_function(std::string id, function_callback f) { entries_.insert_or_assign(std::move(id), entry{std::move(f)}); return *this; }
	callback_registry& add_fold(std::string id, fold_callback f) { entries_.insert_or_assign(std::move(id), entry{std::move(f)}); return *this; }
	callback_registry& add_match_time(std::string id, match_time_callback f) { entries_.insert_or_assign(std::move(id), entry{std::move(f)}); return *this; }

	[[nodiscard]] entry const* find(std::string_view id) const
	{
		auto const it = entries_.find(id);
		return it == entries_.end() ? nullptr : &it->second;
	}

private:
	std::map<std::string, entry, std::less<>> entries_;
};

} // namespace pegkit

#endif // PEGKIT_CALLBACKS_HPP
