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

#include "qtunnel/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "qtunnel/common.hpp"
#include "qtunnel/errors.hpp"

namespace qtunnel {

namespace {

// expr   := term (('+'|'-') term)*
// term   := unary (('*'|'/') unary)*
// unary  := ('-'|'+') unary | power
// power  := atom ('^' unary)?
// atom   := number | name | '(' expr ')'
class Parser {
  public:
    Parser(std::string_view text, const std::map<std::string, double> &vars) : text_(text), vars_(vars) {}

    double parse() {
        double v = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected character");
        }
        return v;
    }

  private:
    std::string_view text_;
    const std::map<std::string, double> &vars_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string &what) const {
        throw ParseError("bad expression '" + std::string(text_) + "': " + what + " at offset " +
                         std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    double expr() {
        double v = term();
        while (true) {
            if (accept('+')) {
                v += term();
            } else if (accept('-')) {
                v -= term();
            } else {
                return v;
            }
        }
    }

    double term() {
        double v = unary();
        while (true) {
            if (accept('*')) {
                v *= unary();
            } else if (accept('/')) {
                v /= unary();
            } else {
                return v;
            }
        }
    }

    double unary() {
        if (accept('-')) {
            return -unary();
        }
        if (accept('+')) {
            return unary();
        }
        return power();
    }

    double power() {
        double base = atom();
        if (accept('^')) {
            return std::pow(base, unary());
        }
        return base;
    }

    double atom() {
        skip_ws();
        if (accept('(')) {
            double v = expr();
            if (!accept(')')) {
                fail("missing ')'");
            }
            return v;
        }
        if (pos_ >= text_.size()) {
            fail("unexpected end");
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const std::string rest(text_.substr(pos_));
            char *end = nullptr;
            double v = std::strtod(rest.c_str(), &end);
            if (end == rest.c_str()) {
                fail("bad number");
            }
            pos_ += static_cast<std::size_t>(end - rest.c_str());
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            const std::string name(text_.substr(start, pos_ - start));
            if (name == "pi") {
                return kPi;
            }
            auto it = vars_.find(name);
            if (it == vars_.end()) {
                fail("unknown name '" + name + "'");
            }
            return it->second;
        }
        fail("unexpected character");
    }
};

}  // namespace

double eval_expression(std::string_view text, const std::map<std::string, double> &variables) {
    double v = Parser(text, variables).parse();
    if (!std::isfinite(v)) {
        throw ParseError("expression '" + std::string(text) + "' is not finite");
    }
    return v;
}

}  // namespace qtunnel
