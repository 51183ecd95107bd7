// Copyright 2026 The cfaug Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <httplib.h>
#include <json.hpp>

#include <thread>

#include "cfaug/entity.h"
#include "cfaug/error.h"
#include "cfaug/llm.h"
#include "support.h"

namespace cfaug {
namespace {

TEST(PatternAnnotator, ClaimSentence) {
  const auto spans = PatternEntityAnnotator{}.annotate(testing::claim_sentence());
  ASSERT_EQ(spans.size(), 3u);
  EXPECT_EQ(spans[0], (EntitySpan{0, 2, "PERCENT"}));
  EXPECT_EQ(spans[1], (EntitySpan{6, 7, "PROPER"}));
  EXPECT_EQ(spans[2], (EntitySpan{8, 9, "PROPER"}));
}

TEST(PatternAnnotator, CardinalsRunsAndPronoun) {
  const auto s = make_sentence("d", 0, "I saw 3 New York doctors and 50 percent agreed", "O");
  const auto spans = PatternEntityAnnotator{}.annotate(s);
  ASSERT_EQ(spans.size(), 3u);
  EXPECT_EQ(spans[0], (EntitySpan{2, 3, "CARDINAL"}));
  EXPECT_EQ(spans[1], (EntitySpan{3, 5, "PROPER"}));
  EXPECT_EQ(spans[2], (EntitySpan{7, 9, "PERCENT"}));
}

TEST(GoldAnnotator, UsesLabelRuns) {
  auto s = make_sentence("d", 0, "a b c d", "O");
  s.token_labels = {"O", "PER", "PER", "O"};
  const auto spans = GoldSpanAnnotator(LabelSchema("O", {"PER"})).annotate(s);
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0], (EntitySpan{1, 3, "PER"}));
}

TEST(EntitySpans, Validation) {
  const std::vector<EntitySpan> ok = {{0, 1, "A"}, {1, 3, "B"}};
  validate_entity_spans(ok, 3);
  const std::vector<EntitySpan> overlap = {{0, 2, "A"}, {1, 3, "B"}};
  EXPECT_THROW(validate_entity_spans(overlap, 3), ValidationError);
  const std::vector<EntitySpan> beyond = {{2, 4, "A"}};
  EXPECT_THROW(validate_entity_spans(beyond, 3), ValidationError);
}

TEST(Dictionary, BuildDedupAndRoundTrip) {
  const std::vector<LabeledSentence> sentences = {
      testing::claim_sentence(), make_sentence("x", 0, "Only 80 % have IBS .", "CLA")};
  const auto dict = EntityDictionary::build(sentences, PatternEntityAnnotator{});
  ASSERT_TRUE(dict.has_category("PERCENT"));
  EXPECT_EQ(dict.entities("PERCENT").size(), 1u);
  ASSERT_EQ(dict.entities("PROPER").size(), 2u);
  EXPECT_EQ(dict.entities("PROPER")[0], (EntityDictionary::Entity{"IBS"}));
  EXPECT_FALSE(dict.has_category("CARDINAL"));
  const auto again = EntityDictionary::parse(dict.serialize(), "d");
  EXPECT_EQ(again.serialize(), dict.serialize());
  EXPECT_EQ(again.size(), dict.size());
  EXPECT_THROW(EntityDictionary::parse("PROPER\n", "bad"), ParseError);
}

TEST(Prompts, TwoVariants) {
  EXPECT_EQ(contradiction_prompt("X is Y.", 1),
            "Contradict this sentence with colorful words \"X is Y.\"");
  EXPECT_NE(contradiction_prompt("X", 2).find("Without using despite"), std::string::npos);
  EXPECT_THROW(contradiction_prompt("X", 3), ConfigError);
}

TEST(Retry, RecoversFromTransientFailures) {
  MockLlmClient client("No.");
  client.fail_next(2);
  EXPECT_EQ(llm_contradict("s", client, 1, RetryPolicy{3, {}}), "No.");
  EXPECT_EQ(client.calls(), 3u);
}

TEST(Retry, GivesUpAfterMaxAttempts) {
  MockLlmClient client("No.");
  client.fail_next(5);
  EXPECT_THROW(llm_contradict("s", client, 1, RetryPolicy{2, {}}), RetriableError);
  EXPECT_EQ(client.calls(), 2u);
}

TEST(Retry, EmptyCompletionIsAugmentationError) {
  MockLlmClient client("   \n");
  EXPECT_THROW(llm_contradict("s", client, 1), AugmentationError);
  EXPECT_EQ(client.calls(), 1u);
}

TEST(MockClient, ResponderSeesPrompt) {
  MockLlmClient client([](const std::string& p) { return "echo:" + p; });
  EXPECT_EQ(client.complete("hi"), "echo:hi");
  EXPECT_EQ(client.prompts(), (std::vector<std::string>{"hi"}));
}

class StubServer {
 public:
  StubServer() {
    server_.Post("/json", [](const httplib::Request& req, httplib::Response& res) {
      const auto body = nlohmann::json::parse(req.body);
      res.set_content(nlohmann::json{{"completion", "not " + body["prompt"].get<std::string>()}}
                          .dump(),
                      "application/json");
    });
    server_.Post("/plain", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("plain reply", "text/plain");
    });
    server_.Post("/busy", [this](const httplib::Request&, httplib::Response& res) {
      if (busy_hits_++ == 0) {
        res.status = 503;
      } else {
        res.set_content("{\"text\":\"after retry\"}", "application/json");
      }
    });
    server_.Post("/denied", [](const httplib::Request&, httplib::Response& res) {
      res.status = 403;
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }
  std::string url(const std::string& path) const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  int busy_hits_ = 0;
};

TEST(HttpClient, JsonPlainRetryAndRejection) {
  StubServer stub;
  HttpLlmClient json_client({stub.url("/json"), "", std::chrono::milliseconds(5000)});
  EXPECT_EQ(json_client.complete("p"), "not p");
  HttpLlmClient plain({stub.url("/plain"), "", std::chrono::milliseconds(5000)});
  EXPECT_EQ(plain.complete("p"), "plain reply");
  HttpLlmClient busy({stub.url("/busy"), "", std::chrono::milliseconds(5000)});
  EXPECT_EQ(llm_contradict("s", busy, 1, RetryPolicy{2, {}}), "after retry");
  HttpLlmClient denied({stub.url("/denied"), "", std::chrono::milliseconds(5000)});
  EXPECT_THROW(denied.complete("p"), AugmentationError);
}

TEST(HttpClient, RejectsBadEndpoints) {
  EXPECT_THROW(HttpLlmClient({"localhost:80", "", std::chrono::milliseconds(10)}), ConfigError);
  EXPECT_THROW(HttpLlmClient({"ftp://x/y", "", std::chrono::milliseconds(10)}), ConfigError);
}

TEST(HttpClient, UnreachableIsRetriable) {
  // Grab a free port, then close it so nothing listens there.
  int port = 0;
  {
    httplib::Server s;
    port = s.bind_to_any_port("127.0.0.1");
  }
  HttpLlmClient client({"http://127.0.0.1:" + std::to_string(port) + "/x", "",
                        std::chrono::milliseconds(500)});
  EXPECT_THROW(client.complete("p"), RetriableError);
}

}  // namespace
}  // namespace cfaug
