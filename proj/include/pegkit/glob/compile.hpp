// pegkit - parsing expression grammar engine with JSON and glob front-ends
// See README.md for details

#ifndef PEGKIT_GLOB_COMPILE_HPP
#define PEGKIT_GLOB_COMPILE_HPP

#include <pegkit/glob/tokens.hpp>
#include <pegkit/match.hpp>

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pegkit::glob {

struct options
{
	bool brace_cut{true}; // split braced conditions at the next separator when allowed
};

/// Which translations fired while compiling one glob.
struct diagnostics
{
	std::size_t lookfor_opt{0};   // star searches that skip false starts
	std::size_t lookfor_plain{0}; // star searches without a fixed first character
	std::size_t to_seg_end{0};    // trailing stars turned into [^/]*
	std::size_t dseg{0};          // **/ searches
	std::size_t dsend{0};         // trailing ** turned into .*
	std::size_t brace_cut{0};     // braced conditions split at a separator
	std::size_t brace_no_cut{0};  // braced conditions carrying their whole tail

	[[nodiscard]] std::string to_string() const
	{
		return "lookfor_opt=" + std::to_string(lookfor_opt) + " lookfor_plain=" + std::to_string(lookfor_plain) +
			" to_seg_end=" + std::to_string(to_seg_end) + " dseg=" + std::to_string(dseg) + " dsend=" + std::to_string(dsend) +
			" brace_cut=" + std::to_string(brace_cut) + " brace_no_cut=" + std::to_string(brace_no_cut);
	}
};

/// A braced condition split as B1..Bn, P, Q where the tail is P followed by Q.
struct brace_cut
{
	std::vector<std::string> branches;
	std::string prefix;    // P: tail up to its first separator
	std::string remainder; // Q: the rest of the tail, starting at that separator

	friend bool operator==(brace_cut const&, brace_cut const&) = default;
};

/// Where a compiled token run has to stop.
enum class end_kind : std::uint8_t
{
	none,  // nothing appended
	eof,   // !.
	bound, // &'/' / !.
	slash  // &'/'
};

namespace detail {

inline charset const& not_slash()
{
	static charset const cs = ~charset::of("/");
	return cs;
}

inline pattern check_bnd()
{
	static pattern const p = choice({and_(lit("/")), eof()});
	return p;
}

// One well-formed UTF-8 code point other than '/'.
inline pattern one_char()
{
	static pattern const p = [] {
		auto const cont = range(0x80, 0xBF);
		return choice({
			set(charset::range(0x00, 0x7F) - charset::of("/")),
			seq({range(0xC2, 0xDF), cont}),
			seq({lit("\xE0"), range(0xA0, 0xBF), cont}),
			seq({set(charset::range(0xE1, 0xEC) | charset::range(0xEE, 0xEF)), cont, cont}),
			seq({lit("\xED"), range(0x80, 0x9F), cont}),
			seq({lit("\xF0"), range(0x90, 0xBF), cont, cont}),
			seq({range(0xF1, 0xF3), cont, cont, cont}),
			seq({lit("\xF4"), range(0x80, 0x8F), cont, cont}),
		});
	}();
	return p;
}

inline pattern end_pattern(end_kind end)
{
	switch (end) {
		case end_kind::eof: return eof();
		case end_kind::bound: return check_bnd();
		case end_kind::slash: return and_(lit("/"));
		case end_kind::none: break;
	}
	return nullptr;
}

class seq_builder
{
public:
	void text(std::string_view s) { text_ += s; }

	void add(pattern p)
	{
		if (!p)
			return;
		flush();
		parts_.push_back(std::move(p));
	}

	pattern build()
	{
		flush();
		return parts_.empty() ? empty() : seq(std::move(parts_));
	}

private:
	void flush()
	{
		if (!text_.empty())
			parts_.push_back(lit(text_));
		text_.clear();
	}

	std::vector<pattern> parts_;
	std::string text_;
};

// Index in `tail` where a cut may split it, given fully expanded branches.
inline std::optional<std::size_t> cut_index(std::span<token_seq const> branches, std::span<token const> tail)
{
	for (auto const& b : branches)
		for (auto const& t : b)
			if (t.kind == token_kind::separator || t.kind == token_kind::globstar || t.kind == token_kind::brace)
				return std::nullopt;
	for (std::size_t k = 0; k < tail.size(); ++k) {
		if (tail[k].kind == token_kind::separator)
			return k;
		if (tail[k].kind == token_kind::brace || tail[k].kind == token_kind::globstar)
			return std::nullopt;
	}
	return std::nullopt;
}

} // namespace detail

/// Decides whether a braced condition with the given expanded branches may be cut.
[[nodiscard]] inline std::optional<brace_cut> check_opt(std::vector<std::string> const& branches, std::string_view tail)
{
	std::vector<token_seq> tokens;
	tokens.reserve(branches.size());
	for (auto const& b : branches)
		tokens.push_back(tokenize(b));
	token_seq const t = tokenize(tail);
	auto const k = detail::cut_index(tokens, t);
	if (!k)
		return std::nullopt;
	std::size_t const at = t[*k].offset;
	return brace_cut{branches, std::string{tail.substr(0, at)}, std::string{tail.substr(at)}};
}

namespace detail {

// Scans "{..}{..}tail" and consumes the braces plus P when check_opt allows a cut,
// or everything otherwise.
inline program const& branch_scanner()
{
	static program const prog = [] {
		grammar g;
		g.start = "Branch";
		g.add("Branch", cap::match_time(plus(pegkit::ref("CondList")), "check_opt"));
		g.add("CondList", seq({lit("{"), pegkit::ref("Cond"), plus(seq({lit(","), pegkit::ref("Cond")})), lit("}")}));
		g.add("Cond", star(choice({seq({lit("\\"), any()}), pegkit::ref("Class"), pegkit::ref("CondList"), set(~charset::of(",{}\\["))})));
		g.add("Class", seq({lit("["), opt(lit("!")), star(choice({seq({lit("\\"), any()}), set(~charset::of("]"))})), lit("]")}));
		callback_registry reg;
		reg.add_match_time("check_opt", [](match_time_context const& ctx) {
			std::vector<std::string> branches;
			for (auto const& e : expand(tokenize(ctx.subject.substr(ctx.start, ctx.position - ctx.start))))
				branches.push_back(to_text(e));
			auto const cut = check_opt(branches, ctx.subject.substr(ctx.position));
			std::size_t const stop = cut ? ctx.position + cut->prefix.size() : ctx.subject.size();
			return match_time_result::advance_to(stop, std::vector<value>{});
		});
		return compile(g, reg);
	}();
	return prog;
}

} // namespace detail

class compiled_glob;

/// Translates glob tokens into grammar rules. One instance builds one glob.
class compiler
{
public:
	explicit compiler(options opts = {}) : options_{opts} {}

	/// Compiles `t` followed by the given end condition.
	pattern compile_rest(std::span<token const> t, end_kind end)
	{
		detail::seq_builder out;
		std::size_t i = 0;
		while (i < t.size()) {
			token const& tok = t[i];
			switch (tok.kind) {
				case token_kind::separator:
					out.text("/");
					++i;
					break;
				case token_kind::globstar: {
					auto const next = globstar(t, i, end, out);
					if (!next)
						return out.build();
					i = *next;
					break;
				}
				case token_kind::star: {
					std::size_t j = i;
					while (j < t.size() && t[j].kind == token_kind::star)
						++j;
					if (j == t.size() || t[j].kind == token_kind::separator) {
						out.add(star(set(detail::not_slash())));
						out.add(detail::check_bnd());
						++used_.to_seg_end;
						i = j;
						break;
					}
					detail::seq_builder target;
					auto const [next, done] = word(t, j, end, target, true);
					out.add(lookfor(target.build(), get_first(t.subspan(j))));
					if (done)
						return out.build();
					i = next;
					break;
				}
				default: {
					auto const [next, done] = word(t, i, end, out, false);
					if (done)
						return out.build();
					i = next;
				}
			}
		}
		out.add(detail::end_pattern(end));
		return out.build();
	}

	/// One segment (no separators or globstars); the caller supplies the boundary check.
	pattern compile_segment(std::span<token const> t) { return compile_rest(t, end_kind::none); }

	/// Lazy in-segment search for `target`, skipping bytes that cannot start it when `first` is known.
	pattern lookfor(pattern target, std::optional<char32_t> first)
	{
		std::string const name = "lookfor" + std::to_string(++rule_count_);
		if (first) {
			charset const skip = detail::not_slash() - charset::of(utf8::encode(*first).substr(0, 1));
			rules_.add(name, choice({std::move(target), seq({set(detail::not_slash()), star(set(skip)), pegkit::ref(name)})}));
			++used_.lookfor_opt;
		} else {
			rules_.add(name, choice({std::move(target), seq({set(detail::not_slash()), pegkit::ref(name)})}));
			++used_.lookfor_plain;
		}
		return pegkit::ref(name);
	}

	/// Ordered choice over each branch followed by the tail, or over each branch
	/// followed by P and then Q when `cut` gives the index of Q in `tail`.
	pattern concat_tail(std::vector<token_seq> const& branches, std::span<token const> tail, std::optional<std::size_t> cut, end_kind end)
	{
		std::vector<pattern> alternatives;
		alternatives.reserve(branches.size());
		std::span<token const> const joined_tail = cut ? tail.first(*cut) : tail;
		for (auto const& b : branches) {
			token_seq joined = b;
			joined.insert(joined.end(), joined_tail.begin(), joined_tail.end());
			alternatives.push_back(compile_rest(joined, cut ? end_kind::slash : end));
		}
		if (!cut) {
			++used_.brace_no_cut;
			return choice(std::move(alternatives));
		}
		++used_.brace_cut;
		return seq({choice(std::move(alternatives)), compile_rest(tail.subspan(*cut), end)});
	}

	pattern concat_tail(std::vector<std::string> const& branches, std::string_view tail, std::optional<brace_cut> const& cut, end_kind end = end_kind::eof)
	{
		std::vector<token_seq> tokens;
		for (auto const& b : branches)
			tokens.push_back(tokenize(b));
		std::string const whole = cut ? cut->prefix + cut->remainder : std::string{tail};
		token_seq const t = tokenize(whole);
		std::optional<std::size_t> at;
		if (cut) {
			auto const it = std::find_if(t.begin(), t.end(), [&](token const& x) { return x.offset == cut->prefix.size(); });
			at = static_cast<std::size_t>(it - t.begin());
		}
		return concat_tail(tokens, t, at, end);
	}

	[[nodiscard]] grammar const& rules() const noexcept { return rules_; }
	[[nodiscard]] diagnostics const& used() const noexcept { return used_; }
	[[nodiscard]] callback_registry const& callbacks() const noexcept { return callbacks_; }

	compiled_glob finish(std::string source, pattern root);

private:
	struct word_end
	{
		std::size_t next;
		bool done; // the word absorbed the rest of the tokens and the end condition
	};

	word_end word(std::span<token const> t, std::size_t j, end_kind end, detail::seq_builder& into, bool anchor)
	{
		std::size_t k = j;
		for (; k < t.size() && t[k].is_word_part(); ++k) {
			token const& tok = t[k];
			if (tok.kind == token_kind::literal)
				into.text(utf8::encode(tok.code_point));
			else if (tok.kind == token_kind::ques)
				into.add(detail::one_char());
			else
				into.add(char_class(tok));
		}
		if (k < t.size() && t[k].kind == token_kind::brace) {
			into.add(branch(t, k, end));
			return {t.size(), true};
		}
		if (anchor && (k == t.size() || t[k].kind == token_kind::separator))
			into.add(detail::check_bnd());
		return {k, false};
	}

	pattern branch(std::span<token const> t, std::size_t b, end_kind end)
	{
		std::size_t r = b;
		while (r < t.size() && t[r].kind == token_kind::brace)
			++r;
		auto const run = t.subspan(b, r - b);
		auto const tail = t.subspan(r);
		std::optional<std::size_t> cut;
		if (options_.brace_cut)
			cut = scan_cut(run, tail);
		return concat_tail(expand(run), tail, cut, end);
	}

	// Runs the match-time check over the braces and tail text; a consumed length
	// short of the whole text marks the cut.
	static std::optional<std::size_t> scan_cut(std::span<token const> run, std::span<token const> tail)
	{
		std::string const run_text = to_text(run);
		std::string const text = run_text + to_text(tail);
		auto const outcome = match(detail::branch_scanner(), text);
		if (!outcome.success || outcome.end == text.size())
			return std::nullopt;
		std::size_t consumed = run_text.size();
		for (std::size_t k = 0; k < tail.size(); ++k) {
			if (consumed == outcome.end)
				return k;
			consumed += tail[k].source.size();
		}
		return std::nullopt;
	}

	// Returns where to continue, or nothing when the globstar's search absorbed the rest.
	std::optional<std::size_t> globstar(std::span<token const> t, std::size_t i, end_kind end, detail::seq_builder& out)
	{
		auto const everything = star(any());
		if (i + 1 == t.size()) {
			out.add(everything);
			++used_.dsend;
			return std::nullopt;
		}
		std::size_t j = i + 2;
		while (j + 1 < t.size() && t[j].kind == token_kind::globstar && t[j + 1].kind == token_kind::separator)
			j += 2;
		if (j < t.size() && t[j].kind == token_kind::globstar) {
			out.add(everything);
			++used_.dsend;
			return std::nullopt;
		}
		auto const rest = t.subspan(j);
		auto const next_globstar = std::find_if(rest.begin(), rest.end(), [](token const& x) { return x.kind == token_kind::globstar; });
		auto const k = static_cast<std::size_t>(next_globstar - rest.begin());
		bool const whole = next_globstar == rest.end() ||
			std::any_of(rest.begin(), next_globstar, [](token const& x) { return x.kind == token_kind::brace; });
		++used_.dseg;
		if (whole) {
			out.add(dseg(compile_rest(rest, end)));
			return std::nullopt;
		}
		out.add(dseg(compile_rest(rest.first(k - 1), end_kind::bound)));
		return j + k - 1;
	}

	pattern dseg(pattern target)
	{
		std::string const name = "dseg" + std::to_string(++rule_count_);
		rules_.add(name, choice({std::move(target), seq({star(set(detail::not_slash())), lit("/"), pegkit::ref(name)})}));
		return pegkit::ref(name);
	}

	pattern char_class(token const& tok)
	{
		charset ascii;
		bool wide = tok.negated;
		for (char32_t c = 0; c < 0x80; ++c)
			if (tok.class_contains(c))
				ascii.insert(static_cast<unsigned char>(c));
		for (auto const& r : tok.ranges)
			wide = wide || r.hi >= 0x80;
		if (!wide)
			return set(ascii);
		std::string const id = "class" + std::to_string(++rule_count_);
		callbacks_.add_match_time(id, [tok](match_time_context const& ctx) {
			auto const d = utf8::decode(ctx.subject, ctx.position);
			if (!d || d->code_point < 0x80 || !tok.class_contains(d->code_point))
				return match_time_result::failure();
			return match_time_result::advance_to(ctx.position + d->length, std::vector<value>{});
		});
		auto const multibyte = cap::match_time(empty(), id);
		return ascii.empty() ? multibyte : choice({set(ascii), multibyte});
	}

	options options_;
	grammar rules_;
	callback_registry callbacks_;
	diagnostics used_;
	std::size_t rule_count_{0};
};

/// Immutable whole-path matcher.
class compiled_glob
{
public:
	compiled_glob(std::string source, grammar rules, program prog, diagnostics used)
		: source_{std::move(source)}, rules_{std::move(rules)}, program_{std::move(prog)}, used_{used} {}

	[[nodiscard]] bool matches(std::string_view path) const { return match(program_, path).success; }

	[[nodiscard]] std::string const& source() const noexcept { return source_; }
	[[nodiscard]] grammar const& rules() const noexcept { return rules_; }
	[[nodiscard]] pattern const& root() const { return *rules_.find(rules_.start); }
	[[nodiscard]] program const& compiled() const noexcept { return program_; }
	[[nodiscard]] diagnostics const& used_opt() const noexcept { return used_; }

	/// One `name <- body` line per rule, start rule first.
	[[nodiscard]] std::string explain() const
	{
		std::string out = rules_.start + " <- " + to_string(root()) + "\n";
		for (auto const& [name, body] : rules_.rules)
			if (name != rules_.start)
				out += name + " <- " + to_string(body) + "\n";
		return out;
	}

private:
	std::string source_;
	grammar rules_;
	program program_;
	diagnostics used_;
};

inline compiled_glob compiler::finish(std::string source, pattern root)
{
	rules_.start = "glob";
	rules_.add("glob", std::move(root));
	program prog = compile(rules_, callbacks_);
	return compiled_glob{std::move(source), std::move(rules_), std::move(prog), used_};
}

/// Compiles a whole-path matcher. Throws invalid_glob.
[[nodiscard]] inline compiled_glob compile_glob(std::string_view pattern_text, options opts = {})
{
	token_seq const tokens = tokenize(pattern_text);
	compiler c{opts};
	pattern root = c.compile_rest(tokens, end_kind::eof);
	return c.finish(std::string{pattern_text}, std::move(root));
}

[[nodiscard]] inline bool matches(compiled_glob const& g, std::string_view path) { return g.matches(path); }

} // namespace pegkit::glob

#endif // PEGKIT_GLOB_COMPILE_HPP
