// pegkit - parsing expression grammar engine with JSON and glob front-ends
// See README.md for details

#ifndef PEGKIT_CLI_HPP
#define PEGKIT_CLI_HPP

#include <pegkit/bench.hpp>
#include <pegkit/glob.hpp>
#include <pegkit/json.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace pegkit::cli {

enum exit_code : int { success = 0, negative = 1, usage = 2 };

inline int glob_match(std::string const& pattern, std::vector<std::string> const& paths, bool explain, bool cut, std::ostream& out, std::ostream& err)
{
	std::optional<glob::compiled_glob> g;
	try {
		g = glob::compile_glob(pattern, {.brace_cut = cut});
	} catch (glob::invalid_glob const& e) {
		err << "invalid glob: " << e.what() << "\n";
		return usage;
	}
	if (explain)
		out << g->explain() << "# used: " << g->used_opt().to_string() << "\n";
	bool all = true;
	for (auto const& p : paths) {
		bool const hit = g->matches(p);
		all = all && hit;
		out << (hit ? "match" : "nomatch") << "\n";
	}
	return all ? success : negative;
}

inline int glob_filter(std::string const& pattern, std::istream& in, bool cut, std::ostream& out, std::ostream& err)
{
	std::optional<glob::compiled_glob> g;
	try {
		g = glob::compile_glob(pattern, {.brace_cut = cut});
	} catch (glob::invalid_glob const& e) {
		err << "invalid glob: " << e.what() << "\n";
		return usage;
	}
	for (auto const& p : bench::read_lines(in))
		if (g->matches(p))
			out << p << "\n";
	return success;
}

inline std::optional<std::string> read_file(std::string const& path, std::istream& in = std::cin)
{
	if (path == "-") {
		std::ostringstream ss;
		ss << in.rdbuf();
		return ss.str();
	}
	std::ifstream f{path, std::ios::binary};
	if (!f)
		return std::nullopt;
	std::ostringstream ss;
	ss << f.rdbuf();
	return ss.str();
}

inline int json_text(std::string_view text, std::string const& ablation, bool canonical, std::ostream& out, std::ostream& err)
{
	auto const cfg = json::ablation_config::from_name(ablation);
	if (!cfg) {
		err << "unknown ablation: " << ablation << "\n";
		return usage;
	}
	try {
		auto const v = json::parse(text, *cfg);
		if (canonical)
			out << json::serialize(v) << "\n";
		return success;
	} catch (json::parse_error const& e) {
		err << "parse error at offset " << e.offset() << "\n";
	} catch (depth_limit_error const& e) {
		err << e.what() << "\n";
	}
	return negative;
}

inline int json_file(std::string const& file, std::string const& ablation, bool canonical, std::istream& in, std::ostream& out, std::ostream& err)
{
	auto const text = read_file(file, in);
	if (!text) {
		err << "cannot read " << file << "\n";
		return usage;
	}
	return json_text(*text, ablation, canonical, out, err);
}

struct bench_args
{
	std::string suite{"json"};
	std::vector<std::string> inputs; // json: documents; glob: pattern file then path file
	std::vector<std::string> ablations;
	std::string family; // stress: one family, or all when empty
	std::size_t n{0};   // stress: size, or the family default when zero
	bool expect_match{false};
	std::vector<bool> cuts{true, false};
	bench::protocol protocol;
	bool records{false};
};

inline std::vector<bench::report> bench_json(bench_args const& a, std::ostream& err, bool& ok)
{
	std::vector<std::pair<std::string, std::string>> docs;
	if (a.inputs.empty())
		docs.emplace_back("escape-heavy-1MB", bench::escape_heavy_json());
	for (auto const& f : a.inputs) {
		auto text = read_file(f);
		if (!text) {
			err << "cannot read " << f << "\n";
			ok = false;
			return {};
		}
		docs.emplace_back(f, std::move(*text));
	}
	std::vector<json::ablation_config> cfgs;
	for (auto const& name : a.ablations) {
		auto const cfg = json::ablation_config::from_name(name);
		if (!cfg) {
			err << "unknown ablation: " << name << "\n";
			ok = false;
			return {};
		}
		cfgs.push_back(*cfg);
	}
	if (cfgs.empty()) {
		auto const all = json::ablation_config::all();
		cfgs.assign(all.begin(), all.end());
	}
	std::vector<bench::report> out;
	for (auto const& [name, text] : docs) {
		for (auto const cfg : cfgs) {
			(void)json::compiled(cfg);
			out.push_back(bench::measure("json", name, std::string{cfg.name()}, text.size(), [&] {
				try {
					(void)json::parse(text, cfg);
				} catch (json::parse_error const&) {
				}
			}, a.protocol));
		}
	}
	return out;
}

inline std::vector<bench::report> bench_glob(bench_args const& a, std::ostream& err, bool& ok)
{
	std::vector<std::string> patterns = bench::default_patterns();
	std::vector<std::string> paths = bench::synthetic_corpus();
	if (!a.inputs.empty()) {
		if (a.inputs.size() != 2) {
			err << "glob suite takes a pattern file and a path file\n";
			ok = false;
			return {};
		}
		std::ifstream pf{a.inputs[0]};
		std::ifstream cf{a.inputs[1]};
		if (!pf || !cf) {
			err << "cannot read glob inputs\n";
			ok = false;
			return {};
		}
		patterns = bench::read_lines(pf);
		paths = bench::read_lines(cf);
	}
	std::size_t bytes = 0;
	for (auto const& p : paths)
		bytes += p.size();
	std::vector<bench::report> out;
	for (auto const& pattern : patterns) {
		for (bool const cut : a.cuts) {
			std::optional<glob::compiled_glob> g;
			try {
				g = glob::compile_glob(pattern, {.brace_cut = cut});
			} catch (glob::invalid_glob const& e) {
				err << "invalid glob " << pattern << ": " << e.what() << "\n";
				ok = false;
				return {};
			}
			std::size_t sink = 0;
			out.push_back(bench::measure("glob", pattern, cut ? "cut-on" : "cut-off", bytes, [&] {
				for (auto const& p : paths)
					sink += g->matches(p);
			}, a.protocol));
		}
	}
	return out;
}

inline std::size_t default_stress_size(bench::family f)
{
	switch (f) {
		case bench::family::star_chain: return 20;
		case bench::family::dseg_depth: return 1000;
		case bench::family::brace_power: return 12;
	}
	return 1;
}

inline std::vector<bench::report> bench_stress(bench_args const& a, std::ostream& err, bool& ok)
{
	std::vector<bench::family> families{bench::family::star_chain, bench::family::dseg_depth, bench::family::brace_power};
	if (!a.family.empty()) {
		try {
			families = {bench::family_from_name(a.family)};
		} catch (std::invalid_argument const& e) {
			err << e.what() << "\n";
			ok = false;
			return {};
		}
	}
	std::vector<bench::report> out;
	for (auto const f : families) {
		bench::stress_case const c{f, a.n ? a.n : default_stress_size(f), a.expect_match};
		auto const in = bench::gen_stress(c);
		std::string const label = std::string{bench::name(f)} + " n=" + std::to_string(c.n) + (c.expect_match ? " match" : " nomatch");
		for (bool const cut : a.cuts) {
			auto const g = glob::compile_glob(in.pattern, {.brace_cut = cut});
			bool sink = false;
			out.push_back(bench::measure("stress", label, cut ? "cut-on" : "cut-off", in.subject.size(), [&] { sink = g.matches(in.subject); }, a.protocol));
		}
	}
	return out;
}

inline int bench_cmd(bench_args const& a, std::ostream& out, std::ostream& err)
{
	bool ok = true;
	std::vector<bench::report> reports;
	if (a.suite == "json")
		reports = bench_json(a, err, ok);
	else if (a.suite == "glob")
		reports = bench_glob(a, err, ok);
	else if (a.suite == "stress")
		reports = bench_stress(a, err, ok);
	else {
		err << "unknown suite: " << a.suite << "\n";
		return usage;
	}
	if (!ok)
		return usage;
	out << (a.records ? bench::to_records(reports) : bench::to_table(reports));
	return success;
}

inline int stress_gen(std::string const& family, std::size_t n, bool expect_match, std::ostream& out, std::ostream& err)
{
	try {
		auto const in = bench::gen_stress({bench::family_from_name(family), n, expect_match});
		out << in.pattern << "\n" << in.subject << "\n";
		return success;
	} catch (std::invalid_argument const& e) {
		err << e.what() << "\n";
		return usage;
	}
}

/// Parses the command line and dispatches. Returns the process exit code.
inline int run(int argc, char const* const* argv, std::istream& in, std::ostream& out, std::ostream& err)
{
	CLI::App app{"pegkit: PEG engine with JSON and glob front-ends"};
	app.name("pegkit");
	app.require_subcommand(1);

	std::string cut = "on";
	auto* glob = app.add_subcommand("glob", "Match paths against a glob");
	glob->require_subcommand(1);

	std::string pattern;
	std::vector<std::string> paths;
	bool explain = false;
	auto* match_cmd = glob->add_subcommand("match", "Print match or nomatch for each path");
	match_cmd->add_option("pattern", pattern, "Glob pattern")->required();
	match_cmd->add_option("paths", paths, "Paths to test");
	match_cmd->add_flag("--explain", explain, "Print the compiled rules first");
	match_cmd->add_option("--cut", cut, "Braced-condition cut")->check(CLI::IsMember({"on", "off"}));

	auto* filter_cmd = glob->add_subcommand("filter", "Echo the stdin paths that match");
	filter_cmd->add_option("pattern", pattern, "Glob pattern")->required();
	filter_cmd->add_option("--cut", cut, "Braced-condition cut")->check(CLI::IsMember({"on", "off"}));

	std::string file;
	std::string ablation = "fullopt";
	bool canonical = false;
	auto* json_cmd = app.add_subcommand("json", "Parse a JSON document (use - for stdin)");
	json_cmd->add_option("file", file, "JSON file")->required();
	json_cmd->add_option("--ablation", ablation, "fullopt, nomtab, nosubst or noopt");
	json_cmd->add_flag("--canonical", canonical, "Print the canonical form");

	bench_args b;
	std::string bench_cut = "both";
	std::string format = "table";
	auto* bench_cmd_ = app.add_subcommand("bench", "Time the json, glob or stress suite");
	bench_cmd_->add_option("suite", b.suite, "json, glob or stress")->check(CLI::IsMember({"json", "glob", "stress"}));
	bench_cmd_->add_option("inputs", b.inputs, "json: documents; glob: pattern file and path file");
	bench_cmd_->add_option("--ablation", b.ablations, "Restrict the json suite to these configs");
	bench_cmd_->add_option("--family", b.family, "Restrict the stress suite to one family");
	bench_cmd_->add_option("--n", b.n, "Stress size");
	bench_cmd_->add_flag("--match", b.expect_match, "Stress subjects that match");
	bench_cmd_->add_option("--warmup", b.protocol.warmup, "Untimed runs")->capture_default_str();
	bench_cmd_->add_option("--runs", b.protocol.runs, "Timed runs")->capture_default_str()->check(CLI::PositiveNumber);
	bench_cmd_->add_option("--cut", bench_cut, "on, off or both")->check(CLI::IsMember({"on", "off", "both"}));
	bench_cmd_->add_option("--format", format, "table or records")->check(CLI::IsMember({"table", "records"}));

	std::string family;
	std::size_t n = 1;
	bool expect_match = false;
	auto* stress_cmd = app.add_subcommand("stress-gen", "Print a stress pattern and subject");
	stress_cmd->add_option("family", family, "star-chain, dseg-depth or brace-power")->required();
	stress_cmd->add_option("n", n, "Size")->required()->check(CLI::PositiveNumber);
	stress_cmd->add_flag("--match", expect_match, "Subject that matches");

	try {
		app.parse(argc, argv);
	} catch (CLI::ParseError const& e) {
		int const code = app.exit(e, out, err);
		return code == 0 ? success : usage;
	}

	if (match_cmd->parsed())
		return glob_match(pattern, paths, explain, cut == "on", out, err);
	if (filter_cmd->parsed())
		return glob_filter(pattern, in, cut == "on", out, err);
	if (json_cmd->parsed())
		return json_file(file, ablation, canonical, in, out, err);
	if (bench_cmd_->parsed()) {
		if (bench_cut != "both")
			b.cuts = {bench_cut == "on"};
		else if (b.suite == "stress" && !b.family.empty() && b.family != "brace-power")
			b.cuts = {true};
		b.records = format == "records";
		return bench_cmd(b, out, err);
	}
	if (stress_cmd->parsed())
		return stress_gen(family, n, expect_match, out, err);
	return usage;
}

} // namespace pegkit::cli

#endif // PEGKIT_CLI_HPP
