// SPDX-License-Identifier: Apache-2.0
//
// riskey: keyhole-model channel estimation for RIS-assisted MIMO links
// Copyright (C) 2026 The riskey authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace riskey
{

// Invalid argument values (zero dimensions, out-of-range parameters, missing inputs).
class ArgumentError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Operand shapes do not fit together.
class DimensionError : public ArgumentError
{
public:
    using ArgumentError::ArgumentError;
};

// An input violates a numerical precondition (non-Hermitian, non-semi-unitary, ...).
class ContractError : public ArgumentError
{
public:
    using ArgumentError::ArgumentError;
};

// A subgroup has more active RIS elements than min(Nt, Nr) eigenpairs can separate.
class FeasibilityError : public ArgumentError
{
public:
    using ArgumentError::ArgumentError;
};

} // namespace riskey
