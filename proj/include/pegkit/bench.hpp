// pegkit - parsing expression grammar engine with JSON and glob front-ends
// See README.md for details

#ifndef PEGKIT_BENCH_HPP
#define PEGKIT_BENCH_HPP

#include <pegkit/json.hpp>

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <functional>
#include <iomanip>
#include <istream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pegkit::bench {

struct report
{
	std::string suite;
	std::string case_name;
	std::string config;
	std::size_t warmup_runs{0};
	std::size_t timed_runs{0};
	double median_ms{0};
	double min_ms{0};
	double max_ms{0};
	std::size_t bytes{0};
	double mbps{0};
};

/// Incremented by measure(); lets tests check the warmup discipline.
struct counters
{
	std::size_t warmup_calls{0};
	std::size_t timed_calls{0};
};

struct protocol
{
	std::size_t warmup{3};
	std::size_t runs{10};
};

[[nodiscard]] inline double median(std::vector<double> v)
{
	if (v.empty())
		return 0;
	std::sort(v.begin(), v.end());
	std::size_t const mid = v.size() / 2;
	return v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2;
}

/// Runs `body` `warmup` times untimed, then `runs` times timed.
template <class Body>
report measure(std::string suite, std::string case_name, std::string config, std::size_t bytes, Body&& body, protocol p = {}, counters* count = nullptr)
{
	if (p.runs == 0)
		throw std::invalid_argument{"runs must be at least 1"};
	for (std::size_t i = 0; i < p.warmup; ++i) {
		body();
		if (count)
			++count->warmup_calls;
	}
	std::vector<double> times;
	times.reserve(p.runs);
	for (std::size_t i = 0; i < p.runs; ++i) {
		auto const start = std::chrono::steady_clock::now();
		body();
		auto const stop = std::chrono::steady_clock::now();
		times.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
		if (count)
			++count->timed_calls;
	}
	report r{std::move(suite), std::move(case_name), std::move(config), p.warmup, p.runs};
	r.median_ms = median(times);
	r.min_ms = *std::min_element(times.begin(), times.end());
	r.max_ms = *std::max_element(times.begin(), times.end());
	r.bytes = bytes;
	r.mbps = r.median_ms > 0 ? (static_cast<double>(bytes) / 1e6) / (r.median_ms / 1e3) : 0;
	return r;
}

enum class family : std::uint8_t { star_chain, dseg_depth, brace_power };

struct stress_case
{
	family id{family::star_chain};
	std::size_t n{1};
	bool expect_match{false};
};

[[nodiscard]] inline std::string_view name(family f)
{
	switch (f) {
		case family::star_chain: return "star-chain";
		case family::dseg_depth: return "dseg-depth";
		case family::brace_power: return "brace-power";
	}
	return "?";
}

[[nodiscard]] inline family family_from_name(std::string_view s)
{
	for (auto f : {family::star_chain, family::dseg_depth, family::brace_power})
		if (name(f) == s)
			return f;
	throw std::invalid_argument{"unknown stress family: " + std::string{s}};
}

struct stress_input
{
	std::string pattern;
	std::string subject;
};

[[nodiscard]] inline stress_input gen_stress(stress_case c)
{
	if (c.n == 0)
		throw std::invalid_argument{"stress size must be at least 1"};
	stress_input out;
	switch (c.id) {
		case family::star_chain:
			for (std::size_t i = 0; i < c.n; ++i)
				out.pattern += "a*";
			out.pattern += "b";
			out.subject.assign(10000, 'a');
			if (c.expect_match)
				out.subject += 'b';
			break;
		case family::dseg_depth:
			out.pattern = "**/a";
			for (std::size_t i = 0; i < c.n; ++i)
				out.subject += "x/";
			out.subject += c.expect_match ? "a" : "y";
			break;
		case family::brace_power:
			for (std::size_t i = 0; i < c.n; ++i)
				out.pattern += "{a,b}";
			out.pattern += "/end";
			out.subject.assign(c.n, 'a');
			out.subject += c.expect_match ? "/end" : "/nope";
			break;
	}
	return out;
}

/// Benchmark globs in the style of a large editor code base.
[[nodiscard]] inline std::vector<std::string> default_patterns()
{
	return {
		"{src,extensions}/**/test/**/{fixtures,browser,common}/**/*.{ts,js}",
		"{extensions,src}/**/{media,images,icons}/**/*.{svg,png,gif,jpg}",
		"{.github,build,test}/**/{workflows,azure-pipelines,integration,smoke}/**/*.{yml,yaml,json}",
		"src/vs/{base,editor,platform,workbench}/test/{browser,common,node}/**/[a-z]*[tT]est.ts",
		"src/vs/workbench/{contrib,services}/**/*{Editor,Workspace,Terminal}*.ts",
		"{extensions,src}/**/{markdown,json,javascript,typescript}/**/*.{ts,json}",
		"**/{electron-sandbox,electron-main,browser,node}/**/{*[sS]ervice*,*[cC]ontroller*}.ts",
		"{src,extensions}/**/{common,browser,electron-sandbox}/**/*{[cC]ontribution,[sS]ervice}.ts",
		"src/vs/{base,platform,workbench}/**/{test,browser}/**/*{[mM]odel,[cC]ontroller}*.ts",
		"extensions/**/{browser,common,node}/{**/*[sS]ervice*,**/*[pP]rovider*}.ts",
	};
}

/// Deterministic source-tree listing of about `count` paths.
[[nodiscard]] inline std::vector<std::string> synthetic_corpus(std::size_t count = 1000, std::uint64_t seed = 1)
{
	static constexpr std::string_view roots[] = {"src/vs/base", "src/vs/editor", "src/vs/platform", "src/vs/workbench/contrib",
		"src/vs/workbench/services", "extensions/markdown", "extensions/json", "extensions/typescript", "build", "test", ".github"};
	static constexpr std::string_view dirs[] = {"browser", "common", "node", "test", "electron-sandbox", "electron-main", "media", "icons",
		"fixtures", "workflows", "smoke", "integration", "parts", "model", "services"};
	static constexpr std::string_view stems[] = {"editorService", "workspaceModel", "terminalController", "fileContribution",
		"searchProvider", "textModel", "configurationService", "viewController", "uriTest", "arrays", "index", "main", "logo"};
	static constexpr std::string_view exts[] = {"ts", "ts", "ts", "js", "json", "svg", "png", "yml", "md", "css"};
	std::mt19937_64 rng{seed};
	auto pick = [&rng](auto const& arr) { return arr[rng() % std::size(arr)]; };
	std::vector<std::string> out;
	out.reserve(count);
	for (std::size_t i = 0; i < count; ++i) {
		std::string path{pick(roots)};
		for (std::size_t depth = rng() % 4; depth > 0; --depth)
			path += "/" + std::string{pick(dirs)};
		path += "/" + std::string{pick(stems)};
		if (rng() % 3 == 0)
			path += ".test";
		path += "." + std::string{pick(exts)};
		out.push_back(std::move(path));
	}
	return out;
}

/// Deterministic JSON document of at least `bytes` bytes whose strings are dense with escapes.
[[nodiscard]] inline std::string escape_heavy_json(std::size_t bytes = 1 << 20, std::uint64_t seed = 1)
{
	static constexpr std::string_view pieces[] = {"plain text ", "\\n", "\\t", "\\\"", "\\\\", "\\/", "\\u00e9", "\\u4e2d",
		"\\ud83d\\ude00", "caf\xc3\xa9", "\\r\\b\\f", "x"};
	std::mt19937_64 rng{seed};
	std::string out = "[";
	std::size_t item = 0;
	while (out.size() < bytes) {
		if (item++)
			out += ',';
		out += R"({"id":)" + std::to_string(item) + R"(,"score":)" + std::to_string(static_cast<double>(rng() % 100000) / 7.0) +
			R"(,"ok":)" + (rng() % 2 ? "true" : "false") + R"(,"text":")";
		for (std::size_t k = 40 + rng() % 80; k > 0; --k)
			out += pieces[rng() % std::size(pieces)];
		out += R"(","tags":[")" + std::to_string(rng() % 10) + R"(\n",null]})";
	}
	out += ']';
	return out;
}

/// Splits newline-separated text, stripping a trailing CR from each line and dropping empty lines.
[[nodiscard]] inline std::vector<std::string> read_lines(std::istream& in)
{
	std::vector<std::string> out;
	std::string line;
	while (std::getline(in, line)) {
		if (!line.empty() && line.back() == '\r')
			line.pop_back();
		if (!line.empty())
			out.push_back(std::move(line));
	}
	return out;
}

/// One JSON object per line with the fields suite, case, config, median_ms, min_ms, max_ms, bytes, mbps.
[[nodiscard]] inline std::string to_records(std::vector<report> const& reports)
{
	std::string out;
	for (auto const& r : reports) {
		value::map m;
		m.insert_or_assign("suite", value{r.suite});
		m.insert_or_assign("case", value{r.case_name});
		m.insert_or_assign("config", value{r.config});
		m.insert_or_assign("median_ms", value{r.median_ms});
		m.insert_or_assign("min_ms", value{r.min_ms});
		m.insert_or_assign("max_ms", value{r.max_ms});
		m.insert_or_assign("bytes", value{static_cast<double>(r.bytes)});
		m.insert_or_assign("mbps", value{r.mbps});
		out += json::serialize(value{std::move(m)}) + "\n";
	}
	return out;
}

[[nodiscard]] inline std::string to_table(std::vector<report> const& reports)
{
	std::ostringstream os;
	os << std::left << std::setw(8) << "suite" << std::setw(44) << "case" << std::setw(10) << "config" << std::right << std::setw(12)
	   << "median_ms" << std::setw(12) << "min_ms" << std::setw(12) << "max_ms" << std::setw(10) << "MB/s" << "\n";
	os << std::fixed << std::setprecision(4);
	for (auto const& r : reports) {
		std::string const shown = r.case_name.size() > 42 ? r.case_name.substr(0, 39) + "..." : r.case_name;
		os << std::left << std::setw(8) << r.suite << std::setw(44) << shown << std::setw(10) << r.config << std::right << std::setw(12)
		   << r.median_ms << std::setw(12) << r.min_ms << std::setw(12) << r.max_ms << std::setw(10) << std::setprecision(2) << r.mbps
		   << std::setprecision(4) << "\n";
	}
	return os.str();
}

} // namespace pegkit::bench

#endif // PEGKIT_BENCH_HPP
