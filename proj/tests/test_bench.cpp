#include <pegkit/bench.hpp>
#include <pegkit/glob.hpp>

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <regex>
#include <sstream>

namespace pb = pegkit::bench;

TEST(Bench, WarmupThenTimedRuns)
{
	pb::counters count;
	std::size_t calls = 0;
	auto const r = pb::measure("unit", "count", "none", 100, [&] { ++calls; }, {.warmup = 3, .runs = 10}, &count);
	EXPECT_EQ(count.warmup_calls, 3U);
	EXPECT_EQ(count.timed_calls, 10U);
	EXPECT_EQ(calls, 13U);
	EXPECT_EQ(r.warmup_runs, 3U);
	EXPECT_EQ(r.timed_runs, 10U);
	EXPECT_LE(r.min_ms, r.median_ms);
	EXPECT_LE(r.median_ms, r.max_ms);

	pb::counters other;
	(void)pb::measure("unit", "count", "none", 0, [] {}, {.warmup = 0, .runs = 1}, &other);
	EXPECT_EQ(other.warmup_calls, 0U);
	EXPECT_EQ(other.timed_calls, 1U);
	EXPECT_THROW((void)pb::measure("unit", "x", "y", 0, [] {}, {.warmup = 1, .runs = 0}), std::invalid_argument);
}

TEST(Bench, MedianOfTimedRuns)
{
	EXPECT_DOUBLE_EQ(pb::median({3, 1, 2}), 2);
	EXPECT_DOUBLE_EQ(pb::median({4, 1, 2, 3}), 2.5);
	EXPECT_DOUBLE_EQ(pb::median({}), 0);
}

TEST(Bench, StressGenerators)
{
	auto const star = pb::gen_stress({pb::family::star_chain, 2, true});
	EXPECT_EQ(star.pattern, "a*a*b");
	EXPECT_EQ(star.subject, std::string(10000, 'a') + "b");
	EXPECT_EQ(pb::gen_stress({pb::family::star_chain, 2, false}).subject, std::string(10000, 'a'));
	auto const brace = pb::gen_stress({pb::family::brace_power, 2, false});
	EXPECT_EQ(brace.pattern, "{a,b}{a,b}/end");
	EXPECT_EQ(brace.subject, "aa/nope");
	auto const dseg = pb::gen_stress({pb::family::dseg_depth, 3, true});
	EXPECT_EQ(dseg.pattern, "**/a");
	EXPECT_EQ(dseg.subject, "x/x/x/a");
	EXPECT_EQ(pb::gen_stress({pb::family::dseg_depth, 3, false}).subject, "x/x/x/y");
	EXPECT_THROW((void)pb::gen_stress({pb::family::dseg_depth, 0, false}), std::invalid_argument);
}

TEST(Bench, StressGeneratedCasesMatchAsLabelled)
{
	for (auto f : {pb::family::star_chain, pb::family::dseg_depth, pb::family::brace_power}) {
		for (bool want : {true, false}) {
			auto const in = pb::gen_stress({f, 5, want});
			EXPECT_EQ(pegkit::glob::compile_glob(in.pattern).matches(in.subject), want) << pb::name(f);
		}
		EXPECT_EQ(pb::family_from_name(pb::name(f)), f);
	}
	EXPECT_THROW((void)pb::family_from_name("nope"), std::invalid_argument);
}

TEST(Bench, DefaultInputsAreUsable)
{
	auto const corpus = pb::synthetic_corpus();
	EXPECT_EQ(corpus.size(), 1000U);
	EXPECT_EQ(corpus, pb::synthetic_corpus());
	std::size_t hits = 0;
	for (auto const& p : pb::default_patterns()) {
		auto const g = pegkit::glob::compile_glob(p);
		for (auto const& path : corpus)
			hits += g.matches(path);
	}
	EXPECT_GT(hits, 0U);

	std::string const doc = pb::escape_heavy_json();
	EXPECT_GE(doc.size(), 1U << 20);
	EXPECT_EQ(doc, pb::escape_heavy_json());
	EXPECT_NO_THROW((void)pegkit::json::parse(doc));
	EXPECT_TRUE(nlohmann::json::accept(doc));
}

TEST(Bench, RecordsHaveFixedFields)
{
	pb::report r{"json", "doc", "fullopt", 3, 10, 1.5, 1.0, 2.0, 1000, 0.66};
	std::string const line = pb::to_records({r, r});
	std::istringstream in{line};
	auto const lines = pb::read_lines(in);
	ASSERT_EQ(lines.size(), 2U);
	auto const j = nlohmann::json::parse(lines[0]);
	std::vector<std::string> keys;
	for (auto const& [k, v] : j.items())
		keys.push_back(k);
	std::sort(keys.begin(), keys.end());
	EXPECT_EQ(keys, (std::vector<std::string>{"bytes", "case", "config", "max_ms", "mbps", "median_ms", "min_ms", "suite"}));
	EXPECT_EQ(j["config"], "fullopt");
	EXPECT_DOUBLE_EQ(j["median_ms"].get<double>(), 1.5);
	EXPECT_NE(pb::to_table({r}).find("fullopt"), std::string::npos);
}

TEST(Bench, ReadLinesStripsCarriageReturns)
{
	std::istringstream in{"a/b\r\n\nc\r\nd"};
	EXPECT_EQ(pb::read_lines(in), (std::vector<std::string>{"a/b", "c", "d"}));
}
