#include <pegkit/glob.hpp>

#include "support/glob_corpus.hpp"
#include "support/glob_oracle.hpp"

#include <gtest/gtest.h>

#include <random>
#include <string>

namespace pg = pegkit::glob;

using glob_corpus::path_alphabet;
using glob_corpus::random_text;

namespace {

std::optional<pg::compiled_glob> try_compile(std::string const& p, pg::options opts = {})
{
	try {
		return pg::compile_glob(p, opts);
	} catch (pg::invalid_glob const&) {
		return std::nullopt;
	}
}

} // namespace

TEST(GlobDifferential, RandomPatternsAgreeWithOracle)
{
	auto const corpus = glob_corpus::make(10000, 20241016);
	std::size_t accepted = 0;
	std::string last;
	std::optional<pg::compiled_glob> g;
	for (auto const& [pattern, path] : corpus) {
		if (!g || pattern != last) {
			g = pg::compile_glob(pattern);
			last = pattern;
		}
		bool const want = oracle::matches(pattern, path);
		accepted += want;
		ASSERT_EQ(g->matches(path), want) << "pattern " << pattern << " path " << path;
	}
	EXPECT_GT(accepted, 100U);
}

TEST(GlobDifferential, PathsDerivedFromPatternsAgree)
{
	// Paths built by instantiating the pattern hit far more accepting cases than random text.
	std::mt19937_64 rng{7};
	std::size_t accepted = 0;
	for (int n = 0; n < 3000; ++n) {
		std::string const pattern = random_text(rng, "ab/*?{},", 12);
		auto const g = try_compile(pattern);
		if (!g)
			continue;
		std::string path;
		for (char c : pattern) {
			if (c == '*')
				path += random_text(rng, "ab", 3);
			else if (c == '?')
				path += 'b';
			else if (c != '{' && c != '}' && c != ',')
				path += c;
		}
		bool const want = oracle::matches(pattern, path);
		accepted += want;
		ASSERT_EQ(g->matches(path), want) << "pattern " << pattern << " path " << path;
	}
	EXPECT_GT(accepted, 300U);
}

TEST(GlobDifferential, BraceCutNeverChangesDecisions)
{
	std::mt19937_64 rng{99};
	std::size_t cut_fired = 0;
	for (int n = 0; n < 4000; ++n) {
		std::string pattern = random_text(rng, "ab/*{},", 12);
		if (n % 2 == 0)
			pattern = random_text(rng, "ab*", 3) + "{" + random_text(rng, "ab*", 2) + "," + random_text(rng, "ab*/", 2) + "}" +
				random_text(rng, "ab*/{},", 7);
		auto const on = try_compile(pattern, {.brace_cut = true});
		if (!on)
			continue;
		auto const off = pg::compile_glob(pattern, {.brace_cut = false});
		EXPECT_EQ(off.used_opt().brace_cut, 0U);
		cut_fired += on->used_opt().brace_cut > 0;
		for (int k = 0; k < 8; ++k) {
			std::string const path = random_text(rng, path_alphabet, 16);
			ASSERT_EQ(on->matches(path), off.matches(path)) << "pattern " << pattern << " path " << path;
		}
	}
	EXPECT_GT(cut_fired, 200U);
}

TEST(GlobDifferential, UnicodeAlphabet)
{
	std::mt19937_64 rng{3};
	std::vector<std::string> const pattern_parts{"a", "\xc3\xa9", "\xf0\x9f\x98\x80", "/", "*", "?", "[\xc3\xa0-\xc3\xbf]", "[!a]", "{a,\xc3\xa9}"};
	std::vector<std::string> const path_parts{"a", "\xc3\xa9", "\xc3\xa8", "\xf0\x9f\x98\x80", "/", "\xc3"};
	std::uniform_int_distribution<std::size_t> len{0, 6};
	for (int n = 0; n < 3000; ++n) {
		std::string pattern;
		for (std::size_t i = len(rng); i > 0; --i)
			pattern += pattern_parts[rng() % pattern_parts.size()];
		auto const g = try_compile(pattern);
		if (!g)
			continue;
		for (int k = 0; k < 4; ++k) {
			std::string path;
			for (std::size_t i = len(rng); i > 0; --i)
				path += path_parts[rng() % path_parts.size()];
			ASSERT_EQ(g->matches(path), oracle::matches(pattern, path)) << "pattern " << pattern << " path " << path;
		}
	}
}
