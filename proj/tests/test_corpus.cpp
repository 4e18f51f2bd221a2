#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "groupdyn/corpus.hpp"
#include "temp_dir.hpp"

using namespace groupdyn;

TEST_CASE("vocabulary normalizes terms and tracks phrase length") {
  Vocabulary v;
  v.insert("#Sandy");
  v.insert("New York");
  v.insert("FLOODING");
  CHECK(v.size() == 3);
  CHECK(v.contains("sandy"));
  CHECK(v.contains("new york"));
  CHECK(v.contains("flooding"));
  CHECK_FALSE(v.contains("Sandy"));
  CHECK(v.max_phrase_words() == 2);
}

TEST_CASE("tokenize keeps vocabulary terms with greedy phrase matching") {
  Vocabulary v;
  v.insert("new york");
  v.insert("new");
  v.insert("york city");
  v.insert("storm");

  auto tokens = tokenize("Huge STORM over New York City today", v);
  // greedy left-to-right: "new york" consumes both words, leaving "city" unmatched
  CHECK(tokens == std::vector<std::string>{"storm", "new york"});

  // idempotent on its own space-joined output
  auto again = tokenize("storm new york", v);
  CHECK(again == tokens);

  CHECK(tokenize("nothing relevant here", v).empty());
  CHECK(tokenize("", v).empty());
}

TEST_CASE("tokenize strips hashtags and punctuation") {
  Vocabulary v;
  v.insert("sandy");
  v.insert("hurricane");
  auto tokens = tokenize("#Sandy!!! (hurricane?)", v);
  CHECK(tokens == std::vector<std::string>{"sandy", "hurricane"});
}

TEST_CASE("timestamp parsing covers the accepted shapes") {
  CHECK(*parse_iso8601("2012-10-01") == 1349049600);
  CHECK(*parse_iso8601("2012-10-01T12:30:00Z") == 1349094600);
  CHECK(*parse_iso8601("2012-10-01 12:30:00") == 1349094600);
  CHECK(*parse_iso8601("2012-10-01T12:30:00.250Z") == 1349094600);
  // positive offsets move the instant earlier in UTC
  CHECK(*parse_iso8601("2012-10-01T12:30:00+02:00") == 1349094600 - 7200);
  CHECK(*parse_iso8601("2012-10-01T12:30:00-05:00") == 1349094600 + 18000);
  CHECK_FALSE(parse_iso8601("yesterday").has_value());
  CHECK_FALSE(parse_iso8601("2012-13-40").has_value());
  CHECK_FALSE(parse_iso8601("").has_value());
}

TEST_CASE("slice index floors against the anchor and rejects earlier times") {
  CHECK(slice_index(0, 0, 86400) == 0);
  CHECK(slice_index(86399, 0, 86400) == 0);
  CHECK(slice_index(86400, 0, 86400) == 1);
  CHECK(slice_index(1349094600, 1349049600, 86400) == 0);
  CHECK_THROWS_AS(slice_index(-1, 0, 86400), std::out_of_range);
}

namespace {

struct Fixture {
  testutil::TempDir dir;
  std::string posts, profiles, followers;
  Vocabulary vocab;

  Fixture() {
    vocab.insert("sandy");
    vocab.insert("new york");
    vocab.insert("flooding");
    posts = dir.file("posts.jsonl",
                     R"({"id":"p1","user":"alice","ts":1349049600,"text":"Hurricane #Sandy hits New York"})"
                     "\n"
                     R"({"id":"p2","user":"bob","ts":"2012-10-01T12:30:00Z","tokens":["#Sandy","flooding"],"retweet_of":"alice"})"
                     "\n"
                     R"({"id":"p3","user":"carol","ts":"2012-10-02","reply_to":"bob","mentions":["alice","dave"]})"
                     "\n"
                     "not json\n"
                     R"({"id":"p4","user":"alice"})"
                     "\n")
                .string();
    profiles = dir.file("profiles.jsonl",
                        R"({"user":"alice","location":"New York, NY","description":"PhD researcher","posts":50,"mentions_received":7})"
                        "\n"
                        R"({"user":"bob","posts":-1})"
                        "\n"
                        R"({"user":"carol","location":"London"})"
                        "\n"
                        "garbage\n"
                        R"({"missing":"user"})"
                        "\n")
                   .string();
    followers = dir.file("followers.csv",
                         "follower,followee\n"
                         "alice,bob\n"
                         "alice,bob\n"
                         "bob,alice\n"
                         "carol,carol\n"
                         "carol,alice\n"
                         "badline\n")
                    .string();
  }

  Corpus load() const { return load_corpus(posts, profiles, followers, vocab); }
};

}  // namespace

TEST_CASE("corpus loading wires posts, profiles, and followers together") {
  Fixture f;
  Corpus c = f.load();

  REQUIRE(c.posts.size() == 3);
  CHECK(c.skipped_posts == 2);
  CHECK(c.posts[0].tokens == std::vector<std::string>{"sandy", "new york"});
  CHECK(c.posts[1].tokens == std::vector<std::string>{"sandy", "flooding"});
  CHECK(*c.posts[1].retweet_of == "alice");
  CHECK(*c.posts[2].reply_to == "bob");
  CHECK(c.posts[2].mentions == std::vector<UserId>{"alice", "dave"});

  CHECK(c.skipped_profiles == 3);
  CHECK(c.profiles.size() == 2);
  CHECK(c.profiles.count("alice") == 1);
  CHECK(c.profiles.count("carol") == 1);

  REQUIRE(c.followers.size() == 3);
  CHECK(c.skipped_followers == 1);

  CHECK(c.start_midnight == 1349049600);
  CHECK(c.slice_count == 2);
  CHECK(c.slice_of(c.posts[0].timestamp) == 0);
  CHECK(c.slice_of(c.posts[1].timestamp) == 0);
  CHECK(c.slice_of(c.posts[2].timestamp) == 1);

  auto slices = c.slices();
  REQUIRE(slices.size() == 2);
  CHECK(slices[0].start == 1349049600);
  CHECK(slices[0].end == 1349049600 + 86400);
  CHECK(slices[1].index == 1);

  CHECK(c.users == std::set<UserId>{"alice", "bob", "carol", "dave"});
  // reply target bob and mention target dave lack profile rows
  CHECK(c.unknown_user_refs == 2);
}

TEST_CASE("activity counters prefer profile values per field") {
  Fixture f;
  Corpus c = f.load();

  auto alice = c.aid_metrics("alice");
  CHECK(alice.activity == 50);    // profile override
  CHECK(alice.popularity == 7);   // profile override
  CHECK(alice.diffusion == 1);    // recomputed: one retweet received

  auto bob = c.aid_metrics("bob");
  CHECK(bob.activity == 1);
  CHECK(bob.popularity == 0);
  CHECK(bob.diffusion == 0);

  auto dave = c.aid_metrics("dave");
  CHECK(dave.activity == 0);
  CHECK(dave.popularity == 1);
  CHECK(dave.diffusion == 0);

  CHECK(c.find_profile("alice") != nullptr);
  CHECK(c.find_profile("dave") == nullptr);
}

TEST_CASE("duplicate profile rows are an error") {
  testutil::TempDir dir;
  Vocabulary v;
  v.insert("x");
  auto posts = dir.file("p.jsonl", R"({"id":"1","user":"a","ts":0,"text":"x"})" "\n").string();
  auto profiles = dir.file("pr.jsonl",
                           R"({"user":"a"})" "\n" R"({"user":"a"})" "\n")
                      .string();
  auto followers = dir.file("f.csv", "follower,followee\n").string();
  CHECK_THROWS_WITH_AS((void)load_corpus(posts, profiles, followers, v),
                       doctest::Contains("duplicate user 'a'"), std::runtime_error);
}

TEST_CASE("an empty posts file is an error") {
  testutil::TempDir dir;
  Vocabulary v;
  auto posts = dir.file("p.jsonl", "\n").string();
  auto profiles = dir.file("pr.jsonl", R"({"user":"a"})" "\n").string();
  auto followers = dir.file("f.csv", "follower,followee\n").string();
  CHECK_THROWS_AS((void)load_corpus(posts, profiles, followers, v), std::runtime_error);
}

TEST_CASE("a wrong followers header is an error") {
  testutil::TempDir dir;
  Vocabulary v;
  v.insert("x");
  auto posts = dir.file("p.jsonl", R"({"id":"1","user":"a","ts":0,"text":"x"})" "\n").string();
  auto profiles = dir.file("pr.jsonl", R"({"user":"a"})" "\n").string();
  auto followers = dir.file("f.csv", "from,to\na,b\n").string();
  CHECK_THROWS_WITH_AS((void)load_corpus(posts, profiles, followers, v),
                       doctest::Contains("malformed header"), std::runtime_error);
}

TEST_CASE("slice grid anchors at the earliest post's midnight") {
  testutil::TempDir dir;
  Vocabulary v;
  v.insert("x");
  // first post at 18:00, second two days later at 03:00
  auto posts = dir.file("p.jsonl",
                        R"({"id":"1","user":"a","ts":"2012-10-01T18:00:00Z","text":"x"})"
                        "\n"
                        R"({"id":"2","user":"a","ts":"2012-10-03T03:00:00Z","text":"x"})"
                        "\n")
                   .string();
  auto profiles = dir.file("pr.jsonl", R"({"user":"a"})" "\n").string();
  auto followers = dir.file("f.csv", "follower,followee\n").string();
  Corpus c = load_corpus(posts, profiles, followers, v);
  CHECK(c.start_midnight == 1349049600);
  CHECK(c.slice_count == 3);
  CHECK(c.slice_of(c.posts[0].timestamp) == 0);
  CHECK(c.slice_of(c.posts[1].timestamp) == 2);
}
