#include "threadlens/synth.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <fstream>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "threadlens/cyborg.hpp"

namespace threadlens {

SynthRng::SynthRng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t SynthRng::next() { return engine_(); }

double SynthRng::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::int64_t SynthRng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi <= lo) return lo;
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());  // full 64-bit range
  const std::uint64_t limit = span * (std::numeric_limits<std::uint64_t>::max() / span);
  std::uint64_t raw = next();
  while (raw >= limit) raw = next();
  return lo + static_cast<std::int64_t>(raw % span);
}

bool SynthRng::bernoulli(double p) { return uniform01() < p; }

double SynthRng::exponential(double mean) { return -mean * std::log1p(-uniform01()); }

double SynthRng::pareto(double x_min, double alpha) {
  return x_min * std::pow(1.0 - uniform01(), -1.0 / alpha);
}

std::string_view to_string(IntervalLaw law) noexcept {
  switch (law) {
    case IntervalLaw::Regular: return "regular";
    case IntervalLaw::Exponential: return "exponential";
    case IntervalLaw::Pareto: return "pareto";
  }
  return "unknown";
}

namespace {

using nlohmann::json;

constexpr UnixSeconds kBackgroundHorizon = 20 * kOneDay;
constexpr UnixSeconds kLongestPopularSpan = 82 * kOneDay;
constexpr std::size_t kPopularThreshold = 500;
constexpr UnixSeconds kBackgroundMinLatency = 7;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidConfig, what);
}

bool is_fraction(double f) { return f >= 0.0 && f <= 1.0; }

std::optional<IntervalLaw> law_from_string(std::string_view s) {
  if (s == "regular") return IntervalLaw::Regular;
  if (s == "exponential") return IntervalLaw::Exponential;
  if (s == "pareto") return IntervalLaw::Pareto;
  return std::nullopt;
}

}  // namespace

void SynthConfig::validate() const {
  require(window.start_utc > 0 && window.start_utc < window.end_utc, "window must be positive and non-empty");
  require(window.end_utc - window.start_utc > kLongestPopularSpan + kBackgroundHorizon,
          "window must be longer than 102 days");
  require(n_authors >= 2, "need at least two authors");
  require(stray_comments == 0 || window.start_utc > 30 * kOneDay, "stray comments need a window starting after day 30");
  require(subreddits.empty() ? n_subreddits >= 1 : true, "need at least one subreddit");
  for (const auto& s : subreddits) require(!s.name.empty() && s.weight > 0, "subreddits need a name and positive weight");
  require(is_fraction(zero_comment_fraction), "zero_comment_fraction must lie in [0, 1]");
  require(is_fraction(deleted_author_post_fraction), "deleted_author_post_fraction must lie in [0, 1]");
  require(is_fraction(self_reply_fraction), "self_reply_fraction must lie in [0, 1]");
  require(is_fraction(background_deletion), "background_deletion must lie in [0, 1]");
  require(mean_comments >= 1.0, "mean_comments must be >= 1");
  require(max_comments >= 1 && max_comments < kPopularThreshold, "max_comments must lie in [1, 500)");

  require(is_fraction(cyborg.success_fraction), "cyborg.success_fraction must lie in [0, 1]");
  require(cyborg.latency_max >= 0 && cyborg.latency_max < kBackgroundMinLatency,
          "cyborg.latency_max must lie in [0, 7)");
  require(cyborg.max_chars > cyborg.min_chars, "cyborg.max_chars must exceed cyborg.min_chars");

  require(lifecycle.min_comments >= kPopularThreshold, "lifecycle.min_comments must be >= 500");
  require(lifecycle.max_comments >= lifecycle.min_comments, "lifecycle.max_comments < min_comments");
  require(is_fraction(lifecycle.limelight_min) && is_fraction(lifecycle.limelight_max) &&
              lifecycle.limelight_min <= lifecycle.limelight_max && lifecycle.limelight_min > 0,
          "limelight range must satisfy 0 < min <= max <= 1");
  require(is_fraction(lifecycle.hog_same_author_fraction), "hog_same_author_fraction must lie in [0, 1]");

  require(controversial.min_comments >= 1 && controversial.max_comments >= controversial.min_comments &&
              controversial.max_comments < kPopularThreshold,
          "controversial comment range must satisfy 1 <= min <= max < 500");

  std::size_t planted = cyborg.count + fast_human + lifecycle.early + lifecycle.steady + lifecycle.late +
                        controversial.count;
  for (const auto& b : bursty) {
    require(b.authors >= 1 && b.posts_per_author >= 2, "bursty groups need >= 1 author and >= 2 posts");
    require(b.scale > 0 && std::isfinite(b.scale), "bursty scale must be positive");
    require(b.law != IntervalLaw::Pareto || b.alpha > 0, "pareto alpha must be positive");
    planted += b.authors * b.posts_per_author;
  }
  require(planted <= n_posts, "planted posts exceed n_posts");
}

SynthConfig synth_config_from_json(std::string_view text) {
  json j = json::parse(text.begin(), text.end(), nullptr, false);
  require(!j.is_discarded() && j.is_object(), "config is not a JSON object");
  SynthConfig c;
  try {
    auto read = [](const json& obj, const char* key, auto& field) {
      using T = std::remove_reference_t<decltype(field)>;
      if (auto it = obj.find(key); it != obj.end() && !it->is_null()) {
        if constexpr (std::is_unsigned_v<T>) {
          if (!it->is_number_unsigned()) {
            throw Error(ErrorCode::InvalidConfig, std::string(key) + " must be a non-negative integer");
          }
        }
        field = it->template get<T>();
      }
    };
    read(j, "seed", c.seed);
    read(j, "n_posts", c.n_posts);
    read(j, "n_authors", c.n_authors);
    if (auto w = j.find("window"); w != j.end()) {
      read(*w, "start_utc", c.window.start_utc);
      read(*w, "end_utc", c.window.end_utc);
    }
    if (auto s = j.find("subreddits"); s != j.end()) {
      for (const auto& row : *s) {
        SubredditSpec spec;
        read(row, "name", spec.name);
        read(row, "weight", spec.weight);
        c.subreddits.push_back(spec);
      }
    }
    read(j, "n_subreddits", c.n_subreddits);
    read(j, "zero_comment_fraction", c.zero_comment_fraction);
    read(j, "mean_comments", c.mean_comments);
    read(j, "max_comments", c.max_comments);
    read(j, "deleted_author_post_fraction", c.deleted_author_post_fraction);
    read(j, "background_deletion", c.background_deletion);
    read(j, "self_reply_fraction", c.self_reply_fraction);
    read(j, "fast_human", c.fast_human);
    if (auto s = j.find("cyborg"); s != j.end()) {
      read(*s, "count", c.cyborg.count);
      read(*s, "success_fraction", c.cyborg.success_fraction);
      read(*s, "latency_max", c.cyborg.latency_max);
      read(*s, "min_chars", c.cyborg.min_chars);
      read(*s, "max_chars", c.cyborg.max_chars);
    }
    if (auto s = j.find("lifecycle"); s != j.end()) {
      read(*s, "early", c.lifecycle.early);
      read(*s, "steady", c.lifecycle.steady);
      read(*s, "late", c.lifecycle.late);
      read(*s, "min_comments", c.lifecycle.min_comments);
      read(*s, "max_comments", c.lifecycle.max_comments);
      read(*s, "limelight_min", c.lifecycle.limelight_min);
      read(*s, "limelight_max", c.lifecycle.limelight_max);
      read(*s, "hog_same_author_fraction", c.lifecycle.hog_same_author_fraction);
    }
    if (auto s = j.find("controversial"); s != j.end()) {
      read(*s, "count", c.controversial.count);
      read(*s, "min_comments", c.controversial.min_comments);
      read(*s, "max_comments", c.controversial.max_comments);
    }
    if (auto s = j.find("bursty"); s != j.end()) {
      for (const auto& row : *s) {
        BurstyPlant b;
        std::string law = "regular";
        read(row, "law", law);
        auto parsed = law_from_string(law);
        require(parsed.has_value(), "unknown interval law '" + law + "'");
        b.law = *parsed;
        read(row, "authors", b.authors);
        read(row, "posts_per_author", b.posts_per_author);
        read(row, "scale", b.scale);
        read(row, "alpha", b.alpha);
        c.bursty.push_back(b);
      }
    }
    read(j, "stray_comments", c.stray_comments);
    read(j, "late_comments", c.late_comments);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, e.what());
  }
  c.validate();
  return c;
}

std::string to_json(const SynthConfig& c) {
  json subs = json::array();
  for (const auto& s : c.subreddits) subs.push_back({{"name", s.name}, {"weight", s.weight}});
  json bursty = json::array();
  for (const auto& b : c.bursty) {
    bursty.push_back({{"law", to_string(b.law)},
                      {"authors", b.authors},
                      {"posts_per_author", b.posts_per_author},
                      {"scale", b.scale},
                      {"alpha", b.alpha}});
  }
  json j = {
      {"seed", c.seed},
      {"n_posts", c.n_posts},
      {"n_authors", c.n_authors},
      {"window", {{"start_utc", c.window.start_utc}, {"end_utc", c.window.end_utc}}},
      {"subreddits", subs},
      {"n_subreddits", c.n_subreddits},
      {"zero_comment_fraction", c.zero_comment_fraction},
      {"mean_comments", c.mean_comments},
      {"max_comments", c.max_comments},
      {"deleted_author_post_fraction", c.deleted_author_post_fraction},
      {"background_deletion", c.background_deletion},
      {"self_reply_fraction", c.self_reply_fraction},
      {"fast_human", c.fast_human},
      {"cyborg",
       {{"count", c.cyborg.count},
        {"success_fraction", c.cyborg.success_fraction},
        {"latency_max", c.cyborg.latency_max},
        {"min_chars", c.cyborg.min_chars},
        {"max_chars", c.cyborg.max_chars}}},
      {"lifecycle",
       {{"early", c.lifecycle.early},
        {"steady", c.lifecycle.steady},
        {"late", c.lifecycle.late},
        {"min_comments", c.lifecycle.min_comments},
        {"max_comments", c.lifecycle.max_comments},
        {"limelight_min", c.lifecycle.limelight_min},
        {"limelight_max", c.lifecycle.limelight_max},
        {"hog_same_author_fraction", c.lifecycle.hog_same_author_fraction}}},
      {"controversial",
       {{"count", c.controversial.count},
        {"min_comments", c.controversial.min_comments},
        {"max_comments", c.controversial.max_comments}}},
      {"bursty", bursty},
      {"stray_comments", c.stray_comments},
      {"late_comments", c.late_comments},
  };
  return j.dump(2) + "\n";
}

std::string to_json(const GroundTruth& truth) {
  json posts = json::object();
  for (const auto& [id, t] : truth.posts) {
    json row = {
        {"role", t.role},
        {"n_comments", t.n_comments},
        {"n_deleted", t.n_deleted},
        {"cyborg", t.cyborg},
    };
    auto put = [&](const char* key, const auto& opt) {
      row[key] = opt ? json(*opt) : json(nullptr);
    };
    put("successful", t.successful);
    put("controversial", t.controversial);
    row["lifecycle"] = t.lifecycle ? json(std::string(to_string(*t.lifecycle))) : json(nullptr);
    put("t75_seconds", t.t75_seconds);
    put("limelight_target", t.limelight_target);
    put("limelight_exact", t.limelight_exact);
    put("hog_is_post_author", t.hog_is_post_author);
    posts[id] = std::move(row);
  }
  json authors = json::object();
  for (const auto& [id, a] : truth.authors) {
    authors[id] = {{"law", to_string(a.law)}, {"n_posts", a.n_posts}, {"scale", a.scale}, {"alpha", a.alpha}};
  }
  return json{{"posts", posts}, {"authors", authors}}.dump(2) + "\n";
}

namespace {

constexpr std::string_view kWords[] = {
    "the",   "reddit", "thread", "really", "think", "people", "would", "about", "point",  "story",
    "agree", "source", "great",  "never",  "maybe", "little", "good",  "game",  "city",   "vote",
    "news",  "world",  "music",  "photo",  "funny", "today",  "year",  "time",  "thanks", "post",
};
constexpr std::string_view kPromoWords[] = {
    "amazing", "offer",  "limited", "deal",   "discount", "exclusive", "product", "quality",
    "order",   "today",  "free",    "bonus",  "premium",  "service",   "best",    "price",
    "guarantee", "customers", "special", "brand",
};

enum class Role { Regular, Cyborg, FastHuman, Early, Steady, Late, Controversial, Bursty };

std::string_view role_name(Role r) {
  switch (r) {
    case Role::Regular: return "background";
    case Role::Cyborg: return "cyborg";
    case Role::FastHuman: return "fast_human";
    case Role::Early: return "early_bloomer";
    case Role::Steady: return "steady";
    case Role::Late: return "late_bloomer";
    case Role::Controversial: return "controversial";
    case Role::Bursty: return "bursty";
  }
  return "unknown";
}

std::string base36(std::uint64_t v, int width) {
  static constexpr char kDigits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string out(static_cast<std::size_t>(width), '0');
  for (int i = width - 1; i >= 0 && v > 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[v % 36];
    v /= 36;
  }
  return out;
}

struct Slot {
  Role role = Role::Regular;
  std::size_t variant = 0;
  std::string author;  // bursty only
  UnixSeconds created = 0;
};

struct PlannedComment {
  UnixSeconds offset = 0;
  std::string author;
  std::string body;
  std::int64_t parent = -1;  // index of an earlier planned comment, -1 for the post
  bool deleted = false;
};

class Generator {
 public:
  explicit Generator(const SynthConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

  SynthCorpus run();

 private:
  std::string post_id() { return std::string(kPostPrefix) + base36(next_post_++, 7); }
  std::string comment_id() { return std::string(kCommentPrefix) + base36(next_comment_++, 8); }

  const std::string& any_author() { return authors_[static_cast<std::size_t>(rng_.uniform(0, authors_.size() - 1))]; }
  const std::string& other_author(const std::string& not_this) {
    while (true) {
      const auto& a = any_author();
      if (a != not_this) return a;
    }
  }
  const std::string& subreddit();

  std::string body(std::size_t scalars, bool promo, std::size_t accents);
  std::string chatter() { return body(static_cast<std::size_t>(rng_.uniform(8, 90)), false, 0); }

  UnixSeconds post_time(UnixSeconds horizon) {
    return rng_.uniform(cfg_.window.start_utc, cfg_.window.end_utc - horizon - 1);
  }

  std::vector<UnixSeconds> background_offsets(std::size_t n, UnixSeconds floor_offset);
  std::size_t background_count();
  void attach_randomly(std::vector<PlannedComment>& planned, std::size_t from);
  std::size_t delete_some(std::vector<PlannedComment>& planned, std::size_t count,
                          const std::vector<std::size_t>& candidates);
  std::size_t background_deletions(std::vector<PlannedComment>& planned, std::size_t from);
  void background_thread(const std::string& post_author, std::vector<PlannedComment>& planned,
                         std::size_t n, UnixSeconds floor_offset);
  void emit(PostRecord& post, const std::vector<PlannedComment>& planned);

  void make_background(Slot& slot, PostRecord& post, PostTruth& truth);
  void make_cyborg(std::size_t variant, PostRecord& post, PostTruth& truth);
  void make_fast_human(std::size_t variant, PostRecord& post, PostTruth& truth);
  void make_popular(Role role, PostRecord& post, PostTruth& truth);
  void make_controversial(PostRecord& post, PostTruth& truth);
  std::vector<Slot> bursty_slots();

  const SynthConfig& cfg_;
  SynthRng rng_;
  SynthCorpus out_;
  std::vector<std::string> authors_;
  std::vector<std::string> subreddit_names_;
  std::vector<double> subreddit_cdf_;
  std::uint64_t next_post_ = 0;
  std::uint64_t next_comment_ = 0;
  std::vector<std::size_t> comment_count_;  // per emitted post, including out-of-window comments
};

const std::string& Generator::subreddit() {
  const double u = rng_.uniform01() * subreddit_cdf_.back();
  auto it = std::upper_bound(subreddit_cdf_.begin(), subreddit_cdf_.end(), u);
  if (it == subreddit_cdf_.end()) --it;
  return subreddit_names_[static_cast<std::size_t>(it - subreddit_cdf_.begin())];
}

// Exactly `scalars` Unicode scalar values. Accented letters take two bytes, so
// the byte length exceeds the scalar count when accents > 0.
std::string Generator::body(std::size_t scalars, bool promo, std::size_t accents) {
  std::string text;
  while (text.size() < scalars) {
    if (!text.empty()) text.push_back(' ');
    if (promo) {
      text += kPromoWords[static_cast<std::size_t>(rng_.uniform(0, std::size(kPromoWords) - 1))];
    } else {
      text += kWords[static_cast<std::size_t>(rng_.uniform(0, std::size(kWords) - 1))];
    }
  }
  text.resize(scalars);
  if (!text.empty() && text.back() == ' ') text.back() = 'x';
  std::string out;
  out.reserve(text.size() + accents);
  std::size_t placed = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (placed < accents && text[i] == 'e' && rng_.bernoulli(0.5)) {
      out += "\xC3\xA9";
      ++placed;
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

std::vector<UnixSeconds> Generator::background_offsets(std::size_t n, UnixSeconds floor_offset) {
  std::vector<UnixSeconds> offsets;
  if (n == 0) return offsets;
  offsets.reserve(n);
  const UnixSeconds first = floor_offset + std::llround(rng_.exponential(300.0));
  offsets.push_back(std::min(first, kBackgroundHorizon));
  for (std::size_t i = 1; i < n; ++i) {
    const double gap = rng_.bernoulli(0.9) ? rng_.exponential(2.0 * 3600) : rng_.exponential(3.0 * kOneDay);
    offsets.push_back(std::min<UnixSeconds>(offsets.front() + std::llround(gap), kBackgroundHorizon));
  }
  std::sort(offsets.begin(), offsets.end());
  return offsets;
}

std::size_t Generator::background_count() {
  if (rng_.bernoulli(cfg_.zero_comment_fraction)) return 0;
  const auto n = 1 + static_cast<std::size_t>(std::llround(rng_.exponential(cfg_.mean_comments - 1.0)));
  return std::min(n, cfg_.max_comments);
}

void Generator::attach_randomly(std::vector<PlannedComment>& planned, std::size_t from) {
  for (std::size_t i = from; i < planned.size(); ++i) {
    if (i == 0 || rng_.bernoulli(0.4)) {
      planned[i].parent = -1;
    } else {
      planned[i].parent = rng_.uniform(0, static_cast<std::int64_t>(i) - 1);
    }
  }
}

std::size_t Generator::delete_some(std::vector<PlannedComment>& planned, std::size_t count,
                                   const std::vector<std::size_t>& candidates) {
  std::vector<std::size_t> pool = candidates;
  count = std::min(count, pool.size());
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = static_cast<std::size_t>(rng_.uniform(static_cast<std::int64_t>(i), pool.size() - 1));
    std::swap(pool[i], pool[j]);
    auto& c = planned[pool[i]];
    c.deleted = true;
    c.author = std::string(kDeletedMarker);
    c.body = std::string(rng_.bernoulli(0.7) ? kDeletedMarker : kRemovedMarker);
  }
  return count;
}

// Background posts never exceed one deletion in five comments.
std::size_t Generator::background_deletions(std::vector<PlannedComment>& planned, std::size_t from) {
  std::size_t wanted = 0;
  for (std::size_t i = 0; i < planned.size(); ++i) {
    if (rng_.bernoulli(cfg_.background_deletion)) ++wanted;
  }
  std::vector<std::size_t> candidates;
  for (std::size_t i = from; i < planned.size(); ++i) candidates.push_back(i);
  return delete_some(planned, std::min(wanted, planned.size() / 5), candidates);
}

void Generator::background_thread(const std::string& post_author, std::vector<PlannedComment>& planned,
                                  std::size_t n, UnixSeconds floor_offset) {
  for (UnixSeconds off : background_offsets(n, floor_offset)) {
    PlannedComment c;
    c.offset = off;
    c.author = rng_.bernoulli(cfg_.self_reply_fraction) && !is_deleted_author(post_author)
                   ? post_author
                   : other_author(post_author);
    c.body = chatter();
    planned.push_back(std::move(c));
  }
}

void Generator::emit(PostRecord& post, const std::vector<PlannedComment>& planned) {
  std::vector<std::string> ids;
  ids.reserve(planned.size());
  for (const auto& p : planned) {
    CommentRecord c;
    c.name = comment_id();
    c.author = p.author;
    c.created_utc = post.created_utc + p.offset;
    c.link_id = post.name;
    c.parent_id = p.parent < 0 ? post.name : ids[static_cast<std::size_t>(p.parent)];
    c.body = p.body;
    c.subreddit = post.subreddit;
    c.score = p.deleted ? 1 : rng_.uniform(-5, 40);
    ids.push_back(c.name);
    out_.comments.push_back(std::move(c));
  }
  post.num_comments = static_cast<std::int64_t>(planned.size());
}

void Generator::make_background(Slot& slot, PostRecord& post, PostTruth& truth) {
  if (slot.role != Role::Bursty && rng_.bernoulli(cfg_.deleted_author_post_fraction)) {
    post.author = std::string(kDeletedMarker);
  }
  std::vector<PlannedComment> planned;
  background_thread(post.author, planned, background_count(), kBackgroundMinLatency);
  attach_randomly(planned, 0);
  truth.n_deleted = background_deletions(planned, 0);
  truth.n_comments = planned.size();
  emit(post, planned);
}

void Generator::make_cyborg(std::size_t variant, PostRecord& post, PostTruth& truth) {
  std::vector<PlannedComment> planned;
  PlannedComment first;
  first.offset = rng_.uniform(0, cfg_.cyborg.latency_max);
  first.author = post.author;
  const auto chars = static_cast<std::size_t>(
      rng_.uniform(static_cast<std::int64_t>(cfg_.cyborg.min_chars) + 1, static_cast<std::int64_t>(cfg_.cyborg.max_chars)));
  first.body = body(chars, true, static_cast<std::size_t>(rng_.uniform(0, 3)));
  planned.push_back(std::move(first));

  // Exactly round(success_fraction * count) planted cyborg posts succeed.
  const auto n_successful = static_cast<std::size_t>(
      std::llround(cfg_.cyborg.success_fraction * static_cast<double>(cfg_.cyborg.count)));
  const bool successful = variant < n_successful;
  if (successful && rng_.bernoulli(0.5)) {
    // Reaction by score only.
    post.score = rng_.uniform(2, 60);
    const auto own = static_cast<std::size_t>(rng_.uniform(0, 2));
    for (UnixSeconds off : background_offsets(own, kBackgroundMinLatency)) {
      planned.push_back({off, post.author, chatter(), -1, false});
    }
  } else if (successful) {
    post.score = 1;
    const auto n = static_cast<std::size_t>(rng_.uniform(1, 5));
    for (UnixSeconds off : background_offsets(n, kBackgroundMinLatency)) {
      planned.push_back({off, other_author(post.author), chatter(), -1, false});
    }
  } else {
    post.score = 1;
    const auto own = static_cast<std::size_t>(rng_.uniform(0, 2));
    for (UnixSeconds off : background_offsets(own, kBackgroundMinLatency)) {
      planned.push_back({off, post.author, chatter(), -1, false});
    }
  }
  attach_randomly(planned, 1);
  truth.cyborg = true;
  truth.successful = successful;
  truth.n_comments = planned.size();
  emit(post, planned);
}

// Fast first comments that fail the cyborg test in one specific way each.
void Generator::make_fast_human(std::size_t variant, PostRecord& post, PostTruth& truth) {
  std::vector<PlannedComment> planned;
  PlannedComment first;
  first.offset = rng_.uniform(0, cfg_.cyborg.latency_max);
  const std::size_t long_chars = cfg_.cyborg.min_chars + 1 + static_cast<std::size_t>(rng_.uniform(0, 80));
  switch (variant % 3) {
    case 0:  // long, but written by someone else
      first.author = other_author(post.author);
      first.body = body(long_chars, false, 0);
      break;
    case 1:  // by the author, exactly min_chars scalars but more bytes
      first.author = post.author;
      first.body = body(cfg_.cyborg.min_chars, true, 3);
      break;
    default:  // by the author, long, carrying a link
      first.author = post.author;
      first.body = "see https://example.com/offer " + body(long_chars, true, 0);
      break;
  }
  planned.push_back(std::move(first));
  background_thread(post.author, planned, background_count(), kBackgroundMinLatency);
  attach_randomly(planned, 1);
  truth.n_deleted = background_deletions(planned, 1);
  truth.n_comments = planned.size();
  emit(post, planned);
}

void Generator::make_popular(Role role, PostRecord& post, PostTruth& truth) {
  const auto& lc = cfg_.lifecycle;
  const auto n = static_cast<std::size_t>(
      rng_.uniform(static_cast<std::int64_t>(lc.min_comments), static_cast<std::int64_t>(lc.max_comments)));
  const std::size_t k = (3 * n + 3) / 4;  // ceil(0.75 n)

  UnixSeconds t75 = 0;
  UnixSeconds tail = 0;
  EvolutionClass cls = EvolutionClass::Steady;
  switch (role) {
    case Role::Early:
      t75 = rng_.uniform(3600, 20 * 3600);
      tail = 3 * kOneDay;
      cls = EvolutionClass::EarlyBloomer;
      break;
    case Role::Steady:
      t75 = rng_.uniform(2 * kOneDay, 28 * kOneDay);
      tail = 10 * kOneDay;
      cls = EvolutionClass::Steady;
      break;
    default:
      t75 = rng_.uniform(32 * kOneDay, 60 * kOneDay);
      tail = 20 * kOneDay;
      cls = EvolutionClass::LateBloomer;
      break;
  }
  post.created_utc = post_time(t75 + tail + 1);

  // The k-th comment lands exactly at t75: k-1 strictly before, the rest at or after.
  std::vector<UnixSeconds> offsets;
  offsets.reserve(n);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (role == Role::Late && rng_.bernoulli(0.8)) {
      offsets.push_back(rng_.uniform(std::max<UnixSeconds>(kBackgroundMinLatency, t75 - 3 * kOneDay), t75 - 1));
    } else {
      offsets.push_back(rng_.uniform(kBackgroundMinLatency, t75 - 1));
    }
  }
  offsets.push_back(t75);
  for (std::size_t i = k; i < n; ++i) offsets.push_back(rng_.uniform(t75, t75 + tail));
  std::sort(offsets.begin(), offsets.end());

  const double target = lc.limelight_min + (lc.limelight_max - lc.limelight_min) * rng_.uniform01();
  const std::vector<std::size_t> branch_sizes = limelight_branch_sizes(rng_, n, target);
  const std::size_t dominant = branch_sizes.front();
  std::vector<std::size_t> branch_of;
  branch_of.reserve(n);
  for (std::size_t b = 0; b < branch_sizes.size(); ++b) branch_of.insert(branch_of.end(), branch_sizes[b], b);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(branch_of[i], branch_of[static_cast<std::size_t>(rng_.uniform(0, static_cast<std::int64_t>(i)))]);
  }

  const bool hog_is_author = rng_.bernoulli(lc.hog_same_author_fraction);
  std::vector<PlannedComment> planned(n);
  std::vector<std::vector<std::size_t>> members(branch_sizes.size());
  std::vector<std::size_t> deletable;
  for (std::size_t i = 0; i < n; ++i) {
    auto& c = planned[i];
    c.offset = offsets[i];
    c.body = chatter();
    auto& branch = members[branch_of[i]];
    if (branch.empty()) {
      c.parent = -1;
      c.author = branch_of[i] == 0 ? (hog_is_author ? post.author : other_author(post.author))
                                   : any_author();
    } else {
      c.parent = static_cast<std::int64_t>(branch[static_cast<std::size_t>(rng_.uniform(0, branch.size() - 1))]);
      c.author = any_author();
      deletable.push_back(i);
    }
    branch.push_back(i);
  }
  std::size_t wanted = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rng_.bernoulli(cfg_.background_deletion)) ++wanted;
  }
  truth.n_deleted = delete_some(planned, std::min(wanted, n / 5), deletable);
  truth.n_comments = n;
  truth.lifecycle = cls;
  truth.t75_seconds = t75;
  truth.limelight_target = target;
  truth.limelight_exact = static_cast<double>(dominant) / static_cast<double>(n);
  truth.hog_is_post_author = hog_is_author;
  emit(post, planned);
}

void Generator::make_controversial(PostRecord& post, PostTruth& truth) {
  const auto& cc = cfg_.controversial;
  const auto n = static_cast<std::size_t>(
      rng_.uniform(static_cast<std::int64_t>(cc.min_comments), static_cast<std::int64_t>(cc.max_comments)));
  std::vector<PlannedComment> planned;
  background_thread(post.author, planned, n, kBackgroundMinLatency);
  attach_randomly(planned, 0);
  const std::size_t floor_share = n / 5;  // largest non-controversial deletion count
  const std::size_t d = std::min(n, floor_share + 1 + static_cast<std::size_t>(rng_.uniform(0, (n - floor_share - 1) / 3)));
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  truth.n_deleted = delete_some(planned, d, all);
  truth.n_comments = n;
  emit(post, planned);
}

std::vector<Slot> Generator::bursty_slots() {
  std::vector<Slot> slots;
  const UnixSeconds span = cfg_.window.end_utc - cfg_.window.start_utc - kBackgroundHorizon - 1;
  std::size_t serial = 0;
  for (const auto& group : cfg_.bursty) {
    for (std::size_t a = 0; a < group.authors; ++a) {
      const std::string author = "bursty_" + std::string(to_string(group.law)) + "_" + std::to_string(serial++);
      // Each interval is capped so the whole series fits in the window.
      const double cap = static_cast<double>(span - 1) / static_cast<double>(group.posts_per_author);
      std::vector<UnixSeconds> gaps;
      for (std::size_t i = 1; i < group.posts_per_author; ++i) {
        double gap = group.scale;
        if (group.law == IntervalLaw::Exponential) gap = rng_.exponential(group.scale);
        if (group.law == IntervalLaw::Pareto) gap = rng_.pareto(group.scale, group.alpha);
        gaps.push_back(std::llround(std::min(gap, cap)));
      }
      const UnixSeconds total = std::accumulate(gaps.begin(), gaps.end(), UnixSeconds{0});
      UnixSeconds t = cfg_.window.start_utc + rng_.uniform(0, span - 1 - total);
      slots.push_back({Role::Bursty, 0, author, t});
      for (UnixSeconds g : gaps) {
        t += g;
        slots.push_back({Role::Bursty, 0, author, t});
      }
      out_.truth.authors[author] = {group.law, group.posts_per_author, group.scale,
                                    group.law == IntervalLaw::Pareto ? group.alpha : 0.0};
    }
  }
  return slots;
}

SynthCorpus Generator::run() {
  cfg_.validate();
  for (std::size_t i = 0; i < cfg_.n_authors; ++i) authors_.push_back("u" + base36(i, 5));
  if (cfg_.subreddits.empty()) {
    for (std::size_t k = 0; k < cfg_.n_subreddits; ++k) {
      subreddit_names_.push_back("sub" + std::to_string(k));
      subreddit_cdf_.push_back((subreddit_cdf_.empty() ? 0.0 : subreddit_cdf_.back()) + 1.0 / static_cast<double>(k + 1));
    }
  } else {
    for (const auto& s : cfg_.subreddits) {
      subreddit_names_.push_back(s.name);
      subreddit_cdf_.push_back((subreddit_cdf_.empty() ? 0.0 : subreddit_cdf_.back()) + s.weight);
    }
  }

  std::vector<Slot> slots = bursty_slots();
  auto add = [&](Role role, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) slots.push_back({role, i, {}, 0});
  };
  add(Role::Cyborg, cfg_.cyborg.count);
  add(Role::FastHuman, cfg_.fast_human);
  add(Role::Early, cfg_.lifecycle.early);
  add(Role::Steady, cfg_.lifecycle.steady);
  add(Role::Late, cfg_.lifecycle.late);
  add(Role::Controversial, cfg_.controversial.count);
  add(Role::Regular, cfg_.n_posts - slots.size());
  for (std::size_t i = slots.size(); i > 1; --i) {
    std::swap(slots[i - 1], slots[static_cast<std::size_t>(rng_.uniform(0, static_cast<std::int64_t>(i) - 1))]);
  }

  for (auto& slot : slots) {
    PostRecord post;
    post.name = post_id();
    post.author = slot.role == Role::Bursty ? slot.author : any_author();
    post.created_utc = slot.role == Role::Bursty ? slot.created : post_time(kBackgroundHorizon);
    post.subreddit = subreddit();
    post.score = rng_.bernoulli(0.5) ? 1 : rng_.uniform(0, 200);
    post.title = chatter();

    PostTruth truth;
    truth.role = std::string(role_name(slot.role));
    switch (slot.role) {
      case Role::Cyborg: make_cyborg(slot.variant, post, truth); break;
      case Role::FastHuman: make_fast_human(slot.variant, post, truth); break;
      case Role::Early:
      case Role::Steady:
      case Role::Late: make_popular(slot.role, post, truth); break;
      case Role::Controversial: make_controversial(post, truth); break;
      case Role::Regular:
      case Role::Bursty: make_background(slot, post, truth); break;
    }
    if (truth.n_comments > 0) truth.controversial = 5 * truth.n_deleted > truth.n_comments;
    out_.truth.posts[post.name] = std::move(truth);
    out_.posts.push_back(std::move(post));
  }

  // Noise that the window filter must remove.
  const std::size_t in_window_posts = out_.posts.size();
  for (std::size_t i = 0; i < cfg_.late_comments && in_window_posts > 0; ++i) {
    auto& post = out_.posts[static_cast<std::size_t>(rng_.uniform(0, in_window_posts - 1))];
    CommentRecord c;
    c.name = comment_id();
    c.author = any_author();
    c.created_utc = cfg_.window.end_utc + rng_.uniform(0, 10 * kOneDay);
    c.link_id = post.name;
    c.parent_id = post.name;
    c.body = chatter();
    c.subreddit = post.subreddit;
    ++post.num_comments;
    out_.comments.push_back(std::move(c));
  }
  for (std::size_t made = 0; made < cfg_.stray_comments;) {
    PostRecord post;
    post.name = post_id();
    post.author = any_author();
    post.created_utc = cfg_.window.start_utc - rng_.uniform(1, 30 * kOneDay);
    post.subreddit = subreddit();
    post.title = chatter();
    const std::size_t n = std::min<std::size_t>(cfg_.stray_comments - made, 5);
    for (std::size_t i = 0; i < n; ++i) {
      CommentRecord c;
      c.name = comment_id();
      c.author = other_author(post.author);
      c.created_utc = cfg_.window.start_utc + rng_.uniform(0, 10 * kOneDay);
      c.link_id = post.name;
      c.parent_id = post.name;
      c.body = chatter();
      c.subreddit = post.subreddit;
      out_.comments.push_back(std::move(c));
    }
    post.num_comments = static_cast<std::int64_t>(n);
    made += n;
    out_.posts.push_back(std::move(post));
  }
  return std::move(out_);
}

}  // namespace

std::vector<std::size_t> limelight_branch_sizes(SynthRng& rng, std::size_t n, double target) {
  if (n < 2) throw Error(ErrorCode::InvalidConfig, "a planted limelight tree needs at least two comments");
  auto dominant = static_cast<std::size_t>(std::llround(target * static_cast<double>(n)));
  dominant = std::clamp<std::size_t>(dominant, 2, n);
  std::vector<std::size_t> sizes{dominant};
  for (std::size_t rest = n - dominant; rest > 0;) {
    const auto size = std::min<std::size_t>(
        rest, static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(dominant) - 1)));
    sizes.push_back(size);
    rest -= size;
  }
  return sizes;
}

SynthCorpus generate(const SynthConfig& config) { return Generator(config).run(); }

std::string SynthCorpus::posts_jsonl() const {
  std::string out;
  for (const auto& p : posts) {
    out += to_json_line(p);
    out.push_back('\n');
  }
  return out;
}

std::string SynthCorpus::comments_jsonl() const {
  std::string out;
  for (const auto& c : comments) {
    out += to_json_line(c);
    out.push_back('\n');
  }
  return out;
}

void write_synth(const SynthCorpus& corpus, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create '" + dir.string() + "': " + ec.message());
  auto write = [&](const char* name, const std::string& text) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + (dir / name).string() + "'");
  };
  write("posts.jsonl", corpus.posts_jsonl());
  write("comments.jsonl", corpus.comments_jsonl());
  write("ground_truth.json", to_json(corpus.truth));
}

}  // namespace threadlens
