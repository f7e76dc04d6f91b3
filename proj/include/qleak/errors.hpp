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

#include <stdexcept>
#include <string>

namespace qleak {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define QLEAK_DEFINE_ERROR(Name)                     \
    class Name : public Error {                      \
    public:                                          \
        using Error::Error;                          \
    }

QLEAK_DEFINE_ERROR(NonHermitian);
QLEAK_DEFINE_ERROR(NonFinite);
QLEAK_DEFINE_ERROR(NegativeEigenvalue);
QLEAK_DEFINE_ERROR(NotDensityMatrix);
QLEAK_DEFINE_ERROR(InvalidPovm);
QLEAK_DEFINE_ERROR(DimensionMismatch);
QLEAK_DEFINE_ERROR(NotTracePreserving);
QLEAK_DEFINE_ERROR(InvalidDistribution);
QLEAK_DEFINE_ERROR(LabelMismatch);
QLEAK_DEFINE_ERROR(ArityMismatch);
QLEAK_DEFINE_ERROR(DomainError);
QLEAK_DEFINE_ERROR(DimensionTooLarge);
QLEAK_DEFINE_ERROR(DimensionNot2);
QLEAK_DEFINE_ERROR(NotCommuting);

#undef QLEAK_DEFINE_ERROR

}  // namespace qleak
