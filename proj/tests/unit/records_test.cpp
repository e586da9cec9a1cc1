#include <gtest/gtest.h>

#include "threadlens/error.hpp"
#include "threadlens/records.hpp"

using namespace threadlens;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Io;
}

}  // namespace

TEST(ParsePost, MapsFields) {
  const auto p = parse_post_line(
      R"({"name":"t3_a1","author":"u1","created_utc":100,"num_comments":0,"subreddit":"s","score":1,"title":"t"})");
  EXPECT_EQ(p.name, "t3_a1");
  EXPECT_EQ(p.author, "u1");
  EXPECT_EQ(p.created_utc, 100);
  EXPECT_EQ(p.num_comments, 0);
  EXPECT_EQ(p.subreddit, "s");
  EXPECT_EQ(p.score, 1);
  EXPECT_EQ(p.title, "t");
  EXPECT_EQ(p.selftext, "");
}

TEST(ParsePost, MissingAuthorBecomesDeleted) {
  EXPECT_EQ(parse_post_line(R"({"name":"t3_a2","created_utc":100})").author, "[deleted]");
  EXPECT_EQ(parse_post_line(R"({"name":"t3_a2","created_utc":100,"author":null})").author, "[deleted]");
  EXPECT_EQ(parse_post_line(R"({"name":"t3_a2","created_utc":100,"author":""})").author, "[deleted]");
}

TEST(ParsePost, Errors) {
  EXPECT_EQ(code_of([] { parse_post_line("{not json"); }), ErrorCode::MalformedJson);
  EXPECT_EQ(code_of([] { parse_post_line("[1,2]"); }), ErrorCode::MalformedJson);
  EXPECT_EQ(code_of([] { parse_post_line(R"({"created_utc":100})"); }), ErrorCode::MissingField);
  EXPECT_EQ(code_of([] { parse_post_line(R"({"name":"t3_a"})"); }), ErrorCode::MissingField);
  EXPECT_EQ(code_of([] { parse_post_line(R"({"name":"t1_a","created_utc":1})"); }), ErrorCode::BadPrefix);
}

TEST(ParsePost, CreatedUtcAsString) {
  EXPECT_EQ(parse_post_line(R"({"name":"t3_a","created_utc":"1199145600"})").created_utc, 1199145600);
  EXPECT_EQ(parse_post_line(R"({"name":"t3_a","created_utc":1199145600.0})").created_utc, 1199145600);
}

TEST(ParseComment, MapsFields) {
  const auto c = parse_comment_line(
      R"({"name":"t1_c1","author":"u2","created_utc":106,"link_id":"t3_a1","parent_id":"t3_a1","body":"hi","subreddit":"s","score":1})");
  EXPECT_EQ(c.name, "t1_c1");
  EXPECT_EQ(c.author, "u2");
  EXPECT_EQ(c.created_utc, 106);
  EXPECT_EQ(c.link_id, "t3_a1");
  EXPECT_EQ(c.parent_id, "t3_a1");
  EXPECT_EQ(c.body, "hi");
  EXPECT_EQ(c.score, 1);
}

TEST(ParseComment, BadParentPrefix) {
  EXPECT_EQ(code_of([] {
              parse_comment_line(R"({"name":"t1_c1","created_utc":1,"link_id":"t3_a","parent_id":"t5_x"})");
            }),
            ErrorCode::BadPrefix);
  EXPECT_EQ(code_of([] {
              parse_comment_line(R"({"name":"t1_c1","created_utc":1,"link_id":"t1_a","parent_id":"t3_a"})");
            }),
            ErrorCode::BadPrefix);
}

TEST(ParseComment, MissingBodyIsEmpty) {
  const auto c = parse_comment_line(R"({"name":"t1_c1","created_utc":1,"link_id":"t3_a","parent_id":"t3_a"})");
  EXPECT_EQ(c.body, "");
  EXPECT_EQ(c.author, "[deleted]");
}

TEST(RoundTrip, SerializeThenParse) {
  PostRecord p{"t3_xyz", "alice", 1234, 7, "pics", -3, "a \"quoted\" title", "line\nbreak é"};
  EXPECT_EQ(parse_post_line(to_json_line(p)), p);
  CommentRecord c{"t1_q", "[deleted]", 99, "t3_xyz", "t1_p", "[removed]", "pics", 0};
  EXPECT_EQ(parse_comment_line(to_json_line(c)), c);
}
