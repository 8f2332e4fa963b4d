#include <pegkit/cli.hpp>

#include "support/glob_oracle.hpp"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct result
{
	int code;
	std::string out;
	std::string err;
};

result run(std::vector<std::string> args, std::string const& input = "")
{
	args.insert(args.begin(), "pegkit");
	std::vector<char const*> argv;
	for (auto const& a : args)
		argv.push_back(a.c_str());
	std::istringstream in{input};
	std::ostringstream out;
	std::ostringstream err;
	int const code = pegkit::cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
	return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(std::string const& name, std::string const& content)
{
	auto const p = std::filesystem::temp_directory_path() / ("pegkit_cli_" + name);
	std::ofstream{p, std::ios::binary} << content;
	return p;
}

} // namespace

TEST(CliGlobMatch, Examples)
{
	auto const r = run({"glob", "match", "*.{ts,js}", "a.ts", "b.rs"});
	EXPECT_EQ(r.code, 1);
	EXPECT_EQ(r.out, "match\nnomatch\n");
	EXPECT_EQ(run({"glob", "match", "a**"}).code, 2);
	auto const one = run({"glob", "match", "*", "x"});
	EXPECT_EQ(one.code, 0);
	EXPECT_EQ(one.out, "match\n");
	EXPECT_EQ(run({"glob", "match", "{a,b}/x", "a/x", "--cut", "off"}).code, 0);
	EXPECT_EQ(run({"glob", "match", "x", "--cut", "maybe"}).code, 2);
}

TEST(CliGlobMatch, ExplainPrintsRulesFirst)
{
	auto const r = run({"glob", "match", "--explain", "**/*.c", "a/b.c"});
	EXPECT_EQ(r.code, 0);
	EXPECT_EQ(r.out.rfind("glob <- ", 0), 0U);
	EXPECT_NE(r.out.find("# used: "), std::string::npos);
	EXPECT_EQ(r.out.substr(r.out.size() - 6), "match\n");
}

TEST(CliGlobFilter, Examples)
{
	auto const r = run({"glob", "filter", "src/*.c"}, "src/a.c\nsrc/b.h\n");
	EXPECT_EQ(r.code, 0);
	EXPECT_EQ(r.out, "src/a.c\n");
	auto const all = run({"glob", "filter", "**"}, "a\r\nb/c\nd/e/f\n");
	EXPECT_EQ(all.out, "a\nb/c\nd/e/f\n");
	EXPECT_EQ(run({"glob", "filter", "{a}"}, "a\n").code, 2);
}

TEST(CliGlobFilter, AgreesWithMatch)
{
	auto const corpus = pegkit::bench::synthetic_corpus(200);
	std::string input;
	for (auto const& p : corpus)
		input += p + "\n";
	for (auto const& pattern : pegkit::bench::default_patterns()) {
		std::vector<std::string> args{"glob", "match", pattern};
		args.insert(args.end(), corpus.begin(), corpus.end());
		auto const m = run(args);
		std::istringstream verdicts{m.out};
		std::string expected;
		std::string line;
		for (auto const& p : corpus) {
			std::getline(verdicts, line);
			if (line == "match")
				expected += p + "\n";
			EXPECT_EQ(line == "match", oracle::matches(pattern, p)) << pattern << " " << p;
		}
		EXPECT_EQ(run({"glob", "filter", pattern}, input).out, expected) << pattern;
	}
}

TEST(CliJson, CanonicalAndErrors)
{
	auto const good = temp_file("good.json", R"({"b":[1,2.5,"x\n"],"a":null})");
	auto const r = run({"json", good.string(), "--canonical"});
	EXPECT_EQ(r.code, 0);
	EXPECT_EQ(r.out, "{\"a\":null,\"b\":[1,2.5,\"x\\n\"]}\n");
	for (auto const* cfg : {"fullopt", "nomtab", "nosubst", "noopt"}) {
		auto const each = run({"json", good.string(), "--canonical", "--ablation", cfg});
		EXPECT_EQ(each.code, 0);
		EXPECT_EQ(each.out, r.out) << cfg;
	}
	auto const bad = temp_file("bad.json", "1 2");
	for (auto const* cfg : {"fullopt", "nomtab", "nosubst", "noopt"}) {
		auto const each = run({"json", bad.string(), "--ablation", cfg});
		EXPECT_EQ(each.code, 1);
		EXPECT_NE(each.err.find("offset"), std::string::npos);
	}
	EXPECT_EQ(run({"json", "/nonexistent/pegkit.json"}).code, 2);
	EXPECT_EQ(run({"json", good.string(), "--ablation", "turbo"}).code, 2);
	EXPECT_EQ(run({"json", "-"}, "[true]").code, 0);
	std::filesystem::remove(good);
	std::filesystem::remove(bad);
}

TEST(CliStressGen, Examples)
{
	EXPECT_EQ(run({"stress-gen", "brace-power", "2"}).out, "{a,b}{a,b}/end\naa/nope\n");
	EXPECT_EQ(run({"stress-gen", "dseg-depth", "3", "--match"}).out, "**/a\nx/x/x/a\n");
	EXPECT_EQ(run({"stress-gen", "unknown", "3"}).code, 2);
	EXPECT_EQ(run({"stress-gen", "dseg-depth", "0"}).code, 2);
}

TEST(CliBench, RecordsSchema)
{
	auto const r = run({"bench", "stress", "--family", "brace-power", "--n", "4", "--warmup", "1", "--runs", "2", "--format", "records"});
	ASSERT_EQ(r.code, 0) << r.err;
	std::istringstream lines{r.out};
	auto const recs = pegkit::bench::read_lines(lines);
	ASSERT_EQ(recs.size(), 2U);
	for (auto const& line : recs) {
		auto const j = nlohmann::json::parse(line);
		EXPECT_EQ(j.size(), 8U);
		EXPECT_EQ(j["suite"], "stress");
		EXPECT_EQ(j["case"], "brace-power n=4 nomatch");
	}
	auto const table = run({"bench", "stress", "--family", "star-chain", "--n", "3", "--runs", "1", "--warmup", "0"});
	EXPECT_EQ(table.code, 0);
	EXPECT_NE(table.out.find("median_ms"), std::string::npos);
}

TEST(CliBench, JsonAndGlobSuites)
{
	auto const doc = temp_file("bench.json", R"([{"k":"é\n"}])");
	auto const j = run({"bench", "json", doc.string(), "--runs", "1", "--warmup", "0", "--format", "records"});
	ASSERT_EQ(j.code, 0) << j.err;
	std::istringstream jl{j.out};
	EXPECT_EQ(pegkit::bench::read_lines(jl).size(), 4U);
	auto const patterns = temp_file("patterns.txt", "**/*.c\r\n{a,b}/*\n");
	auto const paths = temp_file("paths.txt", "a/x.c\nb/y\n");
	auto const g = run({"bench", "glob", patterns.string(), paths.string(), "--runs", "1", "--warmup", "0", "--cut", "on", "--format", "records"});
	ASSERT_EQ(g.code, 0) << g.err;
	std::istringstream gl{g.out};
	EXPECT_EQ(pegkit::bench::read_lines(gl).size(), 2U);
	EXPECT_EQ(run({"bench", "json", "/nonexistent/x.json"}).code, 2);
	EXPECT_EQ(run({"bench", "glob", patterns.string()}).code, 2);
	EXPECT_EQ(run({"bench", "nope"}).code, 2);
	EXPECT_EQ(run({"bench", "json", doc.string(), "--runs", "0"}).code, 2);
	for (auto const& p : {doc, patterns, paths})
		std::filesystem::remove(p);
}

TEST(CliUsage, MissingSubcommand)
{
	EXPECT_EQ(run({}).code, 2);
	EXPECT_EQ(run({"glob"}).code, 2);
	EXPECT_EQ(run({"--help"}).code, 0);
}
