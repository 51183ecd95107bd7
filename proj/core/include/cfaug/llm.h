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

#ifndef CFAUG_LLM_H_
#define CFAUG_LLM_H_

#include <chrono>
#include <cstddef>
#include <functional>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace cfaug {

// Text-completion backend. complete() throws RetriableError for transport
// failures and timeouts. Implementations must be thread-safe.
class LlmClient {
 public:
  virtual ~LlmClient() = default;
  virtual std::string complete(const std::string& prompt) = 0;
};

// Offline client. By default replies with a fixed string; a responder can
// compute the reply from the prompt instead. The first `failures` calls
// throw RetriableError.
class MockLlmClient final : public LlmClient {
 public:
  using Responder = std::function<std::string(const std::string& prompt)>;

  explicit MockLlmClient(std::string reply = {});
  explicit MockLlmClient(Responder responder);

  void fail_next(std::size_t failures);
  std::string complete(const std::string& prompt) override;

  std::size_t calls() const;
  std::vector<std::string> prompts() const;

 private:
  mutable std::mutex mu_;
  Responder responder_;
  std::size_t failures_ = 0;
  std::size_t calls_ = 0;
  std::vector<std::string> prompts_;
};

struct HttpLlmOptions {
  // http://host:port/path or https://host:port/path
  std::string endpoint;
  // Environment variable holding the bearer token; unset means no auth.
  std::string token_env = "CFAUG_LLM_TOKEN";
  std::chrono::milliseconds timeout{30000};
};

// POSTs {"prompt": "..."} as JSON and accepts either a JSON object with a
// "completion" (or "text") string field or a plain-text body.
class HttpLlmClient final : public LlmClient {
 public:
  explicit HttpLlmClient(HttpLlmOptions options);
  std::string complete(const std::string& prompt) override;

 private:
  HttpLlmOptions options_;
  std::string scheme_host_port_;
  std::string path_;
};

// The two contradiction prompt templates, variant 1 or 2, with the sentence
// interpolated in double quotes.
std::string contradiction_prompt(std::string_view sentence, int variant);

struct RetryPolicy {
  std::size_t max_attempts = 3;
  std::chrono::milliseconds backoff{0};
};

// Sends the prompt, retrying RetriableError up to max_attempts in total.
// Throws the last RetriableError when every attempt failed and
// AugmentationError for an empty (all-whitespace) completion.
std::string llm_contradict(std::string_view sentence_text, LlmClient& client,
                           int variant, const RetryPolicy& retry = {});

}  // namespace cfaug

#endif  // CFAUG_LLM_H_
