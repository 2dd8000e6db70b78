// Copyright 2026 The qtunnel Authors
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

#include <map>
#include <string>
#include <string_view>

namespace qtunnel {

/// Evaluates small arithmetic expressions used in the text formats, e.g.
/// "pi/2", "-3*pi/8", "pi^2/40", "2*t1". Supports + - * / ^, parentheses,
/// decimal literals with exponents, the constant "pi" and caller-supplied
/// variables. Throws ParseError on malformed input or unknown names.
double eval_expression(std::string_view text, const std::map<std::string, double> &variables = {});

}  // namespace qtunnel
