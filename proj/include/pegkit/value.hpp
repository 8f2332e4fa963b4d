// pegkit - parsing expression grammar engine with JSON and glob front-ends
// See README.md for details

#ifndef PEGKIT_VALUE_HPP
#define PEGKIT_VALUE_HPP

#include <charconv>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace pegkit {

/// Explicit null marker. Stored like any other value, never represented by absence.
struct null_t
{
	friend constexpr bool operator==(null_t, null_t) noexcept { return true; }
};

inline constexpr null_t null{};

/// Owning pointer with value semantics; lets a recursive variant hold node-based containers.
template <class T>
class box
{
	std::unique_ptr<T> ptr_;

public:
	box() : ptr_{std::make_unique<T>()} {}
	box(std::in_place_t, T v) : ptr_{std::make_unique<T>(std::move(v))} {}
	box(box const& other) : ptr_{std::make_unique<T>(*other.ptr_)} {}
	box(box&& other) noexcept : ptr_{std::move(other.ptr_)} {}
	box& operator=(box const& other) { if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_); return *this; }
	box& operator=(box&& other) noexcept { ptr_ = std::move(other.ptr_); return *this; }
	~box() = default;

	[[nodiscard]] T& operator*() noexcept { return *ptr_; }
	[[nodiscard]] T const& operator*() const noexcept { return *ptr_; }
	[[nodiscard]] T* operator->() noexcept { return ptr_.get(); }
	[[nodiscard]] T const* operator->() const noexcept { return ptr_.get(); }
	friend bool operator==(box const& a, box const& b) { return *a.ptr_ == *b.ptr_; }
};

/// Semantic value produced by capture evaluation.
class value
{
public:
	using list = std::vector<value>;
	using map = std::unordered_map<std::string, value>;
	using storage = std::variant<null_t, bool, double, std::string, list, box<map>>;

	value() noexcept = default;
	value(null_t) noexcept {}
	value(bool b) noexcept : data_{b} {}
	value(double d) noexcept : data_{d} {}
	value(int i) noexcept : data_{static_cast<double>(i)} {}
	value(std::string s) noexcept : data_{std::move(s)} {}
	value(std::string_view s) : data_{std::string{s}} {}
	value(char const* s) : data_{std::string{s}} {}
	value(list l) noexcept : data_{std::move(l)} {}
	value(map m) : data_{box<map>{std::in_place, std::move(m)}} {}

	[[nodiscard]] bool is_null() const noexcept { return std::holds_alternative<null_t>(data_); }
	[[nodiscard]] bool is_boolean() const noexcept { return std::holds_alternative<bool>(data_); }
	[[nodiscard]] bool is_number() const noexcept { return std::holds_alternative<double>(data_); }
	[[nodiscard]] bool is_text() const noexcept { return std::holds_alternative<std::string>(data_); }
	[[nodiscard]] bool is_list() const noexcept { return std::holds_alternative<list>(data_); }
	[[nodiscard]] bool is_map() const noexcept { return std::holds_alternative<box<map>>(data_); }

	[[nodiscard]] bool as_boolean() const { return std::get<bool>(data_); }
	[[nodiscard]] double as_number() const { return std::get<double>(data_); }
	[[nodiscard]] std::string const& as_text() const { return std::get<std::string>(data_); }
	[[nodiscard]] std::string& as_text() { return std::get<std::string>(data_); }
	[[nodiscard]] list const& as_list() const { return std::get<list>(data_); }
	[[nodiscard]] list& as_list() { return std::get<list>(data_); }
	[[nodiscard]] map const& as_map() const { return *std::get<box<map>>(data_); }
	[[nodiscard]] map& as_map() { return *std::get<box<map>>(data_); }

	[[nodiscard]] storage const& data() const noexcept { return data_; }
	[[nodiscard]] storage& data() noexcept { return data_; }

	friend bool operator==(value const& a, value const& b) { return a.data_ == b.data_; }

private:
	storage data_;
};

/// Shortest decimal text that round-trips to the same double.
[[nodiscard]] inline std::string format_number(double d)
{
	char buf[32];
	auto const [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
	return std::string(buf, end);
}

/// Diagnostic rendering; maps are printed in unspecified order.
[[nodiscard]] inline std::string to_debug_string(value const& v)
{
	struct printer
	{
		std::string operator()(null_t) const { return "null"; }
		std::string operator()(bool b) const { return b ? "true" : "false"; }
		std::string operator()(double d) const { return format_number(d); }
		std::string operator()(std::string const& s) const { return '"' + s + '"'; }
		std::string operator()(value::list const& l) const
		{
			std::string out = "[";
			for (std::size_t i = 0; i < l.size(); ++i)
				out += (i ? "," : "") + to_debug_string(l[i]);
			return out + "]";
		}
		std::string operator()(box<value::map> const& b) const
		{
			auto const& m = *b;
			std::string out = "{";
			bool first = true;
			for (auto const& [k, v] : m) {
				out += (first ? "" : ",") + ('"' + k + "\":") + to_debug_string(v);
				first = false;
			}
			return out + "}";
		}
	};
	return std::visit(printer{}, v.data());
}

} // namespace pegkit

#endif // PEGKIT_VALUE_HPP
