// Copyright 2026 The qagen Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qagen {

// Exit codes.
constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // runtime errors, integrity violations under --strict
constexpr int kExitUsage = 2;

// args excludes the program name. Errors go to err as one line
// "error: <message>".
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
int run(int argc, char **argv);

// Directory holding the shipped schema, templates, kb and vectors.
std::string default_data_dir();

}  // namespace qagen
