// Copyright 2026 The fvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FVQE_ERRORS_HPP
#define FVQE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fvqe {

// Every error raised by the library derives from Error and carries a class
// tag; the CLI maps the tag to its exit code.
enum class ErrorClass {
    invalid_argument = 1,
    dimension = 2,
    input = 3,
    missing_entry = 4,
    numerical = 5,
    symmetry = 6,
};

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
    ErrorClass error_class() const { return cls_; }

private:
    ErrorClass cls_;
};

#define FVQE_DEFINE_ERROR(Name, Cls)                                                 \
    class Name : public Error {                                                      \
    public:                                                                          \
        explicit Name(const std::string& what) : Error(ErrorClass::Cls, what) {}     \
    };

FVQE_DEFINE_ERROR(InvalidArgument, invalid_argument)
FVQE_DEFINE_ERROR(InvalidMask, invalid_argument)
FVQE_DEFINE_ERROR(WindowTooSmall, invalid_argument)
FVQE_DEFINE_ERROR(DimensionError, dimension)
FVQE_DEFINE_ERROR(MalformedInput, input)
FVQE_DEFINE_ERROR(AsymmetricMatrix, input)
FVQE_DEFINE_ERROR(IncompleteMeasurement, missing_entry)
FVQE_DEFINE_ERROR(MissingEntry, missing_entry)
FVQE_DEFINE_ERROR(DivergenceError, numerical)
FVQE_DEFINE_ERROR(FitFailure, numerical)
FVQE_DEFINE_ERROR(DomainTooSmall, numerical)
FVQE_DEFINE_ERROR(ExtrapolationInvalid, numerical)
FVQE_DEFINE_ERROR(NormalizationError, numerical)
FVQE_DEFINE_ERROR(ChannelParityError, invalid_argument)
FVQE_DEFINE_ERROR(SymmetryViolation, symmetry)

#undef FVQE_DEFINE_ERROR

}  // namespace fvqe

#endif  // FVQE_ERRORS_HPP
