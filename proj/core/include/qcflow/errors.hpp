// Copyright 2026 The qcflow Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qc {

/// Base class for all qcflow errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidCommand : Error {
    using Error::Error;
};

struct NonInvertibleGate : Error {
    using Error::Error;
};

struct TooWide : Error {
    using Error::Error;
};

struct CompositeHasNoMatrix : Error {
    using Error::Error;
};

struct DeadQubitUse : Error {
    using Error::Error;
};

struct NonInvertibleInCompute : Error {
    using Error::Error;
};

struct DoubleUncompute : Error {
    using Error::Error;
};

struct ControlTargetsOverlap : Error {
    using Error::Error;
};

struct NoRuleApplicable : Error {
    using Error::Error;
};

struct NotCoprime : Error {
    using Error::Error;
};

struct ConstantOutOfRange : Error {
    using Error::Error;
};

struct TooManyQubits : Error {
    using Error::Error;
};

struct CircuitTooWide : Error {
    using Error::Error;
};

struct NotRegular : Error {
    using Error::Error;
};

struct UnsimulableGate : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct InvalidN : Error {
    using Error::Error;
};

}  // namespace qc
