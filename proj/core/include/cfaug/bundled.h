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

#ifndef CFAUG_BUNDLED_H_
#define CFAUG_BUNDLED_H_

#include <string_view>

// Resource files from core/data, compiled into the library.
namespace cfaug::bundled {

std::string_view abbreviations_txt();
std::string_view verbs_tsv();
std::string_view antonyms_tsv();
std::string_view verb_stoplist_txt();

}  // namespace cfaug::bundled

#endif  // CFAUG_BUNDLED_H_
