// Copyright 2026 The qleak Authors
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

#include <cmath>
#include <limits>
#include <ostream>

#include "qleak/errors.hpp"

namespace qleak {

/// A finite double or the distinguished value +inf. NaN and -inf are rejected.
class ExtReal {
public:
    constexpr ExtReal() = default;
    ExtReal(double v) : v_(v) {  // NOLINT(google-explicit-constructor)
        if (std::isnan(v) || v == -std::numeric_limits<double>::infinity())
            throw NonFinite("ExtReal: value must be finite or +inf");
    }

    static ExtReal infinity() {
        ExtReal r;
        r.v_ = std::numeric_limits<double>::infinity();
        return r;
    }

    bool is_infinite() const { return std::isinf(v_); }
    bool is_finite() const { return !is_infinite(); }

    /// Raw value; +inf when infinite.
    double value() const { return v_; }
    explicit operator double() const { return v_; }

    friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
    friend auto operator<=>(ExtReal a, ExtReal b) { return a.v_ <=> b.v_; }

    friend std::ostream& operator<<(std::ostream& os, ExtReal x) {
        if (x.is_infinite()) return os << "inf";
        return os << x.v_;
    }

private:
    double v_ = 0.0;
};

}  // namespace qleak
