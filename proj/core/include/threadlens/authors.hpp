#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "threadlens/ingest.hpp"

namespace threadlens {

enum class AuthorCategory { ProducerOnly, ConsumerOnly, Both };

std::string_view to_string(AuthorCategory c) noexcept;

/// Per-author activity. The deleted marker never gets a profile.
///
/// effective_received (A) counts comments on the author's posts written by
/// other, non-deleted authors. comments_on_others (B) counts the author's
/// comments on posts not written by them.
struct AuthorProfile {
  std::string author;
  std::uint64_t n_posts = 0;
  std::uint64_t n_comments_made = 0;
  std::uint64_t effective_received = 0;
  std::uint64_t comments_on_others = 0;

  AuthorCategory category() const noexcept;
  bool operator==(const AuthorProfile&) const = default;
};

/// Profiles keyed (and ordered) by author id.
std::map<std::string, AuthorProfile> author_profiles(const Corpus& corpus);

struct AuthorCategoryCounts {
  std::uint64_t producers_only = 0;
  std::uint64_t consumers_only = 0;
  std::uint64_t both = 0;
  std::uint64_t total_active = 0;

  bool operator==(const AuthorCategoryCounts&) const = default;
};

AuthorCategoryCounts author_categories(const Corpus& corpus);
AuthorCategoryCounts author_categories(const std::map<std::string, AuthorProfile>& profiles);

/// A / (A + B). Throws Error{Undefined} when A + B = 0.
double interaction_score(const AuthorProfile& profile);

enum class PerPostClass { LessThanOnePerPost, ExactlyOnePerPost, MoreThanOnePerPost };

std::string_view to_string(PerPostClass c) noexcept;

struct EffectivePerPost {
  double average = 0;
  PerPostClass cls = PerPostClass::LessThanOnePerPost;
};

/// Throws Error{NoPosts}.
EffectivePerPost effective_comments_per_post(const AuthorProfile& profile);

/// Directed multigraph commenter -> post author. Self-loops and deleted
/// authors are left out.
class InteractionGraph {
 public:
  void add_edge(const std::string& src, const std::string& dst, std::uint64_t weight = 1);

  /// (src, dst) -> multiplicity, ordered.
  const std::map<std::pair<std::string, std::string>, std::uint64_t>& edges() const noexcept {
    return edges_;
  }
  std::uint64_t in_degree(const std::string& author) const;
  std::uint64_t out_degree(const std::string& author) const;
  const std::map<std::string, std::uint64_t>& in_degrees() const noexcept { return in_; }
  const std::map<std::string, std::uint64_t>& out_degrees() const noexcept { return out_; }
  std::uint64_t total_weight() const noexcept { return total_; }

 private:
  std::map<std::pair<std::string, std::string>, std::uint64_t> edges_;
  std::map<std::string, std::uint64_t> in_;
  std::map<std::string, std::uint64_t> out_;
  std::uint64_t total_ = 0;
};

InteractionGraph build_interaction_graph(const Corpus& corpus);

}  // namespace threadlens
