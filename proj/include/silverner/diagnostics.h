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

#ifndef SILVERNER_DIAGNOSTICS_H_
#define SILVERNER_DIAGNOSTICS_H_

#include <cstdint>
#include <map>
#include <ostream>
#include <string>

namespace silverner {

// Named event counters. Keys sort lexicographically on output.
class Counters {
 public:
  void Add(const std::string &key, std::int64_t n = 1) { counts_[key] += n; }
  std::int64_t Get(const std::string &key) const {
    auto it = counts_.find(key);
    return it == counts_.end() ? 0 : it->second;
  }
  void Merge(const Counters &other) {
    for (const auto &[k, v] : other.counts_) counts_[k] += v;
  }
  const std::map<std::string, std::int64_t> &values() const { return counts_; }

  // One `key<TAB>count` line per counter.
  void Write(std::ostream &os) const {
    for (const auto &[k, v] : counts_) os << k << '\t' << v << '\n';
  }

 private:
  std::map<std::string, std::int64_t> counts_;
};

}  // namespace silverner

#endif  // SILVERNER_DIAGNOSTICS_H_
