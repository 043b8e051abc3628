// SPDX-License-Identifier: Apache-2.0
//
// monotrack - monopulse beam tracking simulator for sparse MIMO channels
// Copyright (C) 2026 The monotrack authors
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

namespace monotrack
{
    /// Invalid user-supplied configuration (CLI exit status 2).
    class ConfigError : public std::invalid_argument
    {
    public:
        explicit ConfigError(const std::string &what) : std::invalid_argument(what) {}
    };

    /// Broken internal invariant or caller contract (CLI exit status 3).
    class ContractViolation : public std::logic_error
    {
    public:
        explicit ContractViolation(const std::string &what) : std::logic_error(what) {}
    };
}
