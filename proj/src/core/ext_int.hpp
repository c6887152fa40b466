// Copyright 2026 The catl-decomp Authors
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

#ifndef CATL_CORE_EXT_INT_HPP_
#define CATL_CORE_EXT_INT_HPP_

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

namespace catl {

// Integer extended with +inf and -inf. Robustness values and capability
// excess live here; finite values never approach the sentinels.
class ExtInt {
 public:
  constexpr ExtInt() = default;
  constexpr explicit ExtInt(std::int64_t v) : v_(v) {}

  static constexpr ExtInt pos_inf() { return ExtInt(kPosInf); }
  static constexpr ExtInt neg_inf() { return ExtInt(kNegInf); }

  constexpr bool is_finite() const { return v_ != kPosInf && v_ != kNegInf; }
  constexpr bool is_pos_inf() const { return v_ == kPosInf; }
  constexpr bool is_neg_inf() const { return v_ == kNegInf; }
  constexpr std::int64_t value() const { return v_; }

  constexpr auto operator<=>(const ExtInt&) const = default;

  std::string to_string() const {
    if (v_ == kPosInf) return "inf";
    if (v_ == kNegInf) return "-inf";
    return std::to_string(v_);
  }

  friend std::ostream& operator<<(std::ostream& os, ExtInt x) {
    return os << x.to_string();
  }

 private:
  static constexpr std::int64_t kPosInf =
      std::numeric_limits<std::int64_t>::max();
  static constexpr std::int64_t kNegInf =
      std::numeric_limits<std::int64_t>::min();

  std::int64_t v_ = 0;
};

using Robustness = ExtInt;

}  // namespace catl

#endif  // CATL_CORE_EXT_INT_HPP_
