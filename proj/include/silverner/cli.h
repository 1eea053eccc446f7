// Copyright 2026 The silverner Authors.
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

#ifndef SILVERNER_CLI_H_
#define SILVERNER_CLI_H_

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace silverner {

inline constexpr std::string_view kToolVersion = "silverner 0.3.0";
inline constexpr std::string_view kConfigEnvVar = "SILVERNER_CONFIG";

// Effective key=value configuration. Unknown keys are rejected.
class RunConfig {
 public:
  RunConfig();

  void Set(const std::string &key, const std::string &value);
  const std::string &Get(const std::string &key) const;
  bool GetBool(const std::string &key) const;
  std::int64_t GetInt(const std::string &key) const;

  void Load(const std::string &path);
  std::string Canonical() const;
  std::string Digest() const;

 private:
  std::map<std::string, std::string> values_;
};

struct RunManifest {
  std::string subcommand;
  std::map<std::string, std::string> inputs;
  std::map<std::string, std::string> outputs;
  std::string config_digest;
  std::string seed;
  std::map<std::string, std::int64_t> counters;

  void Write(std::ostream &os) const;
};

// Runs one subcommand. `args` excludes the program name.
int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace silverner

#endif  // SILVERNER_CLI_H_
