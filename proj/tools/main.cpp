// threadlens command-line front end.
//
//   threadlens <analysis> --posts P --comments C --out DIR [thresholds...]
//   threadlens synth [--config CFG] [--seed N] --out DIR
//
// Exit status: 0 success, 1 I/O failure, 2 bad arguments.

#include <charconv>
#include <chrono>
#include <cstdio>
#include <limits>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "threadlens/pipeline.hpp"
#include "threadlens/synth.hpp"

namespace tl = threadlens;
using nlohmann::json;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;

struct RunArgs {
  std::string posts;
  std::string comments;
  std::string out;
  std::string window_start = "0";
  std::string window_end;
  unsigned shards = 1;
  tl::AnalysisOptions options;
};

// Accepts epoch seconds or an ISO calendar date (YYYY-MM-DD, 00:00 UTC).
std::optional<tl::UnixSeconds> parse_time(const std::string& text) {
  if (text.empty()) return std::nullopt;
  int y = 0;
  unsigned m = 0, d = 0;
  char tail = 0;
  if (text.size() == 10 && std::sscanf(text.c_str(), "%4d-%2u-%2u%c", &y, &m, &d, &tail) == 3) {
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!ymd.ok()) return std::nullopt;
    return std::chrono::sys_days(ymd).time_since_epoch() / std::chrono::seconds(1);
  }
  tl::UnixSeconds v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

std::string check_time(const std::string& text) {
  return parse_time(text) ? std::string() : "expected epoch seconds or YYYY-MM-DD, got '" + text + "'";
}

void add_io_flags(CLI::App& cmd, RunArgs& args) {
  cmd.add_option("--posts", args.posts, "Posts NDJSON file")->required()->check(CLI::ExistingFile);
  cmd.add_option("--comments", args.comments, "Comments NDJSON file")->required()->check(CLI::ExistingFile);
  cmd.add_option("--out", args.out, "Output directory")->required();
  cmd.add_option("--window-start", args.window_start, "Window start, inclusive (epoch s or YYYY-MM-DD)")
      ->check(check_time, "TIME");
  cmd.add_option("--window-end", args.window_end, "Window end, exclusive (default: unbounded)")
      ->check(check_time, "TIME");
  cmd.add_option("--shards", args.shards, "Worker shards")->check(CLI::Range(1u, 1024u));
}

void add_cyborg_flags(CLI::App& cmd, tl::AnalysisOptions& o) {
  cmd.add_option("--latency", o.cyborg.latency_max, "Max first-comment latency (s)")
      ->capture_default_str()->check(CLI::NonNegativeNumber);
  cmd.add_option("--min-chars", o.cyborg.min_chars, "First comment must be longer than this")
      ->capture_default_str();
}

void add_lifecycle_flags(CLI::App& cmd, tl::AnalysisOptions& o) {
  cmd.add_option("--fraction", o.lifecycle.fraction, "Comment fraction for time-to-fraction")
      ->capture_default_str()->check(CLI::Range(1e-9, 1.0));
  cmd.add_option("--t-early", o.lifecycle.t_early, "Early bloomer boundary (s)")
      ->capture_default_str()->check(CLI::NonNegativeNumber);
  cmd.add_option("--t-late", o.lifecycle.t_late, "Late bloomer boundary (s)")
      ->capture_default_str()->check(CLI::NonNegativeNumber);
  cmd.add_option("--mayfly-threshold", o.mayfly_threshold, "Mayfly age threshold (s)")
      ->capture_default_str()->check(CLI::NonNegativeNumber);
}

void add_tree_flags(CLI::App& cmd, tl::AnalysisOptions& o) {
  cmd.add_option("--limelight-mark", o.limelight_mark, "Limelight score reported as a share above")
      ->capture_default_str()->check(CLI::Range(0.0, 1.0));
}

void add_burst_flags(CLI::App& cmd, tl::AnalysisOptions& o) {
  cmd.add_option("--min-posting-events", o.burst_min_author_posts, "Min posts per author")
      ->capture_default_str()->check(CLI::Range(2ul, SIZE_MAX));
  cmd.add_option("--min-commenting-events", o.burst_min_author_comments, "Min comments per author")
      ->capture_default_str()->check(CLI::Range(2ul, SIZE_MAX));
  cmd.add_option("--min-post-comment-events", o.burst_min_post_comments, "Min comments per post")
      ->capture_default_str()->check(CLI::Range(2ul, SIZE_MAX));
}

void add_controversy_flags(CLI::App& cmd, tl::AnalysisOptions& o) {
  auto& c = o.controversy;
  cmd.add_option("--theta", c.theta, "Controversial iff score > theta")
      ->capture_default_str()->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--min-subreddit-posts", c.min_subreddit_posts, "Subreddits need at least this many posts")
      ->capture_default_str();
  cmd.add_option("--min-author-posts", c.min_author_posts, "Authors need more than this many posts")
      ->capture_default_str();
}

// One --min-comments flag drives every "popular post" cut-off used by the
// selected analyses.
void add_min_comments_flag(CLI::App& cmd, std::optional<std::size_t>& min_comments) {
  cmd.add_option("--min-comments", min_comments, "Popular-post comment minimum (default 500)")
      ->check(CLI::PositiveNumber);
}

json manifest(std::string_view subcommand, const RunArgs& args, const tl::AnalysisWindow& window,
              const tl::Corpus& corpus, const tl::ReportSet& reports) {
  const auto& o = args.options;
  const auto& d = corpus.diagnostics();
  json outputs = json::array();
  for (const auto& [name, text] : reports) outputs.push_back(name);
  outputs.push_back("run_manifest.json");
  return {
      {"subcommand", subcommand},
      {"inputs", {{"posts", args.posts}, {"comments", args.comments}}},
      {"window", {{"start_utc", window.start_utc}, {"end_utc", window.end_utc}}},
      {"output_dir", args.out},
      {"shards", args.shards},
      {"thresholds",
       {{"cyborg_latency_seconds", o.cyborg.latency_max},
        {"cyborg_min_chars", o.cyborg.min_chars},
        {"lifecycle_fraction", o.lifecycle.fraction},
        {"lifecycle_t_early_seconds", o.lifecycle.t_early},
        {"lifecycle_t_late_seconds", o.lifecycle.t_late},
        {"lifecycle_min_comments", o.lifecycle.min_comments},
        {"mayfly_threshold_seconds", o.mayfly_threshold},
        {"limelight_min_comments", o.limelight_min_comments},
        {"limelight_mark", o.limelight_mark},
        {"burst_min_posting_events", o.burst_min_author_posts},
        {"burst_min_commenting_events", o.burst_min_author_comments},
        {"burst_min_post_comment_events", o.burst_min_post_comments},
        {"controversy_theta", o.controversy.theta},
        {"controversy_min_subreddit_posts", o.controversy.min_subreddit_posts},
        {"controversy_min_author_posts", o.controversy.min_author_posts},
        {"controversy_min_scatter_comments", o.controversy.min_scatter_comments}}},
      {"counts",
       {{"posts_retained", corpus.posts().size()},
        {"comments_retained", corpus.comments().size()},
        {"comments_in_window", corpus.in_window_comment_count()},
        {"orphan_comments", corpus.orphan_count()}}},
      {"diagnostics",
       {{"malformed_post_lines", d.malformed_post_lines},
        {"malformed_comment_lines", d.malformed_comment_lines},
        {"duplicate_posts", d.duplicate_posts},
        {"duplicate_comments", d.duplicate_comments},
        {"out_of_window_posts", d.out_of_window_posts},
        {"out_of_window_comments", d.out_of_window_comments}}},
      {"outputs", outputs},
  };
}

int run_analyses(std::string_view name, std::span<const tl::Analysis> analyses, RunArgs& args) {
  const auto started = std::chrono::steady_clock::now();
  const tl::UnixSeconds end =
      args.window_end.empty() ? std::numeric_limits<tl::UnixSeconds>::max() : *parse_time(args.window_end);
  const auto window = tl::AnalysisWindow::make(*parse_time(args.window_start), end);

  const tl::Corpus corpus = tl::ingest_files(args.posts, args.comments, window, args.shards);
  tl::ReportSet reports;
  for (tl::Analysis a : analyses) reports.merge(tl::render(a, corpus, args.options, args.shards));
  const json m = manifest(name, args, window, corpus, reports);
  reports["run_manifest.json"] = m.dump(2) + "\n";
  tl::write_reports(reports, args.out);

  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
  std::cerr << "threadlens " << name << ": " << corpus.posts().size() << " posts, " << corpus.comments().size()
            << " comments, " << reports.size() << " files in " << elapsed.count() << " s\n";
  return 0;
}

struct SynthArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int run_synth(const SynthArgs& args) {
  tl::SynthConfig config;
  if (!args.config.empty()) {
    const auto lines = tl::read_lines(args.config);
    std::string text;
    for (const auto& l : lines) text += l + "\n";
    config = tl::synth_config_from_json(text);
  }
  if (args.seed) config.seed = *args.seed;
  config.validate();
  const tl::SynthCorpus corpus = tl::generate(config);
  const tl::ReportSet files = {
      {"posts.jsonl", corpus.posts_jsonl()},
      {"comments.jsonl", corpus.comments_jsonl()},
      {"ground_truth.json", tl::to_json(corpus.truth)},
      {"synth_config.json", tl::to_json(config)},
  };
  tl::write_reports(files, args.out);
  std::cerr << "threadlens synth: " << corpus.posts.size() << " posts, " << corpus.comments.size()
            << " comments\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Behavioral analytics over Reddit-style post/comment dumps", "threadlens"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", "threadlens 0.1.0");

  RunArgs args;
  std::optional<std::size_t> min_comments;
  std::optional<std::size_t> scatter_min_comments;

  struct Command {
    CLI::App* cmd;
    std::vector<tl::Analysis> analyses;
  };
  std::vector<Command> commands;
  auto analysis_cmd = [&](const char* name, const char* help, std::vector<tl::Analysis> analyses) {
    CLI::App* cmd = app.add_subcommand(name, help);
    add_io_flags(*cmd, args);
    commands.push_back({cmd, std::move(analyses)});
    return cmd;
  };

  using A = tl::Analysis;
  analysis_cmd("stats", "Basic corpus statistics", {A::Stats});
  auto* lifecycle = analysis_cmd("lifecycle", "Post age, mayfly share and evolution classes", {A::Lifecycle});
  add_lifecycle_flags(*lifecycle, args.options);
  add_min_comments_flag(*lifecycle, min_comments);
  auto* cyborg = analysis_cmd("cyborg", "Cyborg-like post detection", {A::Cyborg});
  add_cyborg_flags(*cyborg, args.options);
  auto* tree = analysis_cmd("tree", "Depth, breadth, limelight and hog per post", {A::Tree});
  add_tree_flags(*tree, args.options);
  add_min_comments_flag(*tree, min_comments);
  auto* burst = analysis_cmd("burstiness", "Inter-event burstiness of authors and posts", {A::Burstiness});
  add_burst_flags(*burst, args.options);
  analysis_cmd("authors", "Producer/consumer roles, interaction scores and graph", {A::Authors});
  auto* controversy = analysis_cmd("controversy", "Deletion-based controversiality", {A::Controversy});
  add_controversy_flags(*controversy, args.options);
  add_min_comments_flag(*controversy, scatter_min_comments);
  auto* all = analysis_cmd("all", "Every analysis", {std::begin(tl::kAllAnalyses), std::end(tl::kAllAnalyses)});
  add_cyborg_flags(*all, args.options);
  add_lifecycle_flags(*all, args.options);
  add_tree_flags(*all, args.options);
  add_burst_flags(*all, args.options);
  add_controversy_flags(*all, args.options);
  add_min_comments_flag(*all, min_comments);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic corpus with ground truth");
  synth->add_option("--config", synth_args.config, "Generator config (JSON)")->check(CLI::ExistingFile);
  synth->add_option("--seed", synth_args.seed, "Override the config seed");
  synth->add_option("--out", synth_args.out, "Output directory")->required();

  if (argc > 1 && argv[1][0] != '-' && app.get_subcommand_no_throw(argv[1]) == nullptr) {
    std::cerr << "threadlens: unknown subcommand '" << argv[1] << "'\n\n" << app.help();
    return kExitUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    if (rc == 0) return 0;
    std::cerr << "\n" << app.help();
    return kExitUsage;
  }

  if (min_comments) {
    args.options.lifecycle.min_comments = *min_comments;
    args.options.limelight_min_comments = *min_comments;
    args.options.controversy.min_scatter_comments = *min_comments;
  }
  if (scatter_min_comments) args.options.controversy.min_scatter_comments = *scatter_min_comments;

  try {
    if (synth->parsed()) return run_synth(synth_args);
    for (const auto& c : commands) {
      if (c.cmd->parsed()) return run_analyses(c.cmd->get_name(), c.analyses, args);
    }
  } catch (const tl::Error& e) {
    std::cerr << "threadlens: " << e.what() << "\n";
    return e.code() == tl::ErrorCode::Io ? kExitIo : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "threadlens: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
