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

#include "cfaug/llm.h"

#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "cfaug/error.h"
#include "cfaug/text.h"

namespace cfaug {

MockLlmClient::MockLlmClient(std::string reply)
    : responder_([reply = std::move(reply)](const std::string&) { return reply; }) {}

MockLlmClient::MockLlmClient(Responder responder)
    : responder_(std::move(responder)) {}

void MockLlmClient::fail_next(std::size_t failures) {
  std::lock_guard lock(mu_);
  failures_ = failures;
}

std::string MockLlmClient::complete(const std::string& prompt) {
  {
    std::lock_guard lock(mu_);
    ++calls_;
    prompts_.push_back(prompt);
    if (failures_ > 0) {
      --failures_;
      throw RetriableError("mock LLM client: simulated transport failure");
    }
  }
  return responder_(prompt);
}

std::size_t MockLlmClient::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

std::vector<std::string> MockLlmClient::prompts() const {
  std::lock_guard lock(mu_);
  return prompts_;
}

HttpLlmClient::HttpLlmClient(HttpLlmOptions options)
    : options_(std::move(options)) {
  const std::string& url = options_.endpoint;
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("LLM endpoint must be an http(s) URL: " + url);
  }
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw ConfigError("unsupported LLM endpoint scheme: " + scheme);
  }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (scheme == "https") {
    throw ConfigError("this build has no TLS support; use an http endpoint");
  }
#endif
  const std::size_t path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
}

std::string HttpLlmClient::complete(const std::string& prompt) {
  httplib::Client client(scheme_host_port_);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
      options_.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());

  httplib::Headers headers;
  if (!options_.token_env.empty()) {
    if (const char* token = std::getenv(options_.token_env.c_str())) {
      headers.emplace("Authorization", std::string("Bearer ") + token);
    }
  }
  const nlohmann::json body = {{"prompt", prompt}};
  auto result = client.Post(path_, headers, body.dump(), "application/json");
  if (!result) {
    throw RetriableError("LLM request failed: " + httplib::to_string(result.error()));
  }
  if (result->status == 429 || result->status >= 500) {
    throw RetriableError("LLM endpoint returned HTTP " +
                         std::to_string(result->status));
  }
  if (result->status != 200) {
    throw AugmentationError("LLM endpoint returned HTTP " +
                            std::to_string(result->status));
  }
  const auto parsed = nlohmann::json::parse(result->body, nullptr, false);
  if (parsed.is_object()) {
    for (const char* field : {"completion", "text"}) {
      if (parsed.contains(field) && parsed[field].is_string()) {
        return parsed[field].get<std::string>();
      }
    }
    throw AugmentationError("LLM response has no completion field");
  }
  return result->body;
}

std::string contradiction_prompt(std::string_view sentence, int variant) {
  switch (variant) {
    case 1:
      return "Contradict this sentence with colorful words \"" +
             std::string(sentence) + "\"";
    case 2:
      return "Without using despite, while, and although, contradict this "
             "sentence with colorful words \"" +
             std::string(sentence) + "\"";
    default:
      throw ConfigError("prompt variant must be 1 or 2, got " +
                        std::to_string(variant));
  }
}

std::string llm_contradict(std::string_view sentence_text, LlmClient& client,
                           int variant, const RetryPolicy& retry) {
  const std::string prompt = contradiction_prompt(sentence_text, variant);
  const std::size_t attempts = std::max<std::size_t>(1, retry.max_attempts);
  for (std::size_t attempt = 1;; ++attempt) {
    try {
      std::string reply = client.complete(prompt);
      if (text::trim(reply).empty()) {
        throw AugmentationError("LLM returned an empty completion");
      }
      return reply;
    } catch (const RetriableError&) {
      if (attempt >= attempts) throw;
      if (retry.backoff.count() > 0) std::this_thread::sleep_for(retry.backoff * attempt);
    }
  }
}

}  // namespace cfaug
