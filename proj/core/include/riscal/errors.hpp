// SPDX-License-Identifier: Apache-2.0
//
// riscal - turntable RIS link simulation and reflect-coefficient fitting
// Copyright (C) 2026 the riscal authors
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

namespace riscal {

/// Base class for all riscal errors.
class error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent input data (bad files, out-of-range arguments,
/// mismatched dimensions, unknown identifiers).
class data_error : public error {
  public:
    using error::error;
};

/// Numerical failure during solving (underdetermined or singular systems).
class numeric_error : public error {
  public:
    using error::error;
};

} // namespace riscal
