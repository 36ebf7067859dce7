// Copyright 2026 The crec Authors
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
#ifndef CREC_LEXER_H_
#define CREC_LEXER_H_

#include <string>
#include <string_view>
#include <vector>

namespace crec {

enum class TokenKind { kKeyword, kIdentifier, kLiteral };

// A significant token. Punctuation, operators, comments and whitespace are
// never tokens.
struct Token {
  TokenKind kind = TokenKind::kIdentifier;
  std::string text;
  int line = 1;

  friend bool operator==(const Token&, const Token&) = default;
};

enum class LexemeKind { kKeyword, kIdentifier, kLiteral, kStringLiteral, kPunct };

// Every lexical unit including punctuation; comments and whitespace are
// still dropped. Features that look at statement structure work on these.
struct Lexeme {
  LexemeKind kind = LexemeKind::kPunct;
  std::string text;
  int line = 1;

  bool is_token() const { return kind != LexemeKind::kPunct; }
  bool is(std::string_view s) const { return text == s; }
  bool is_identifier() const { return kind == LexemeKind::kIdentifier; }
  bool is_keyword(std::string_view s) const {
    return kind == LexemeKind::kKeyword && text == s;
  }
};

// Lexes C-family / Java-like source. Total: unknown bytes are skipped,
// unterminated comments and strings end at end of input.
std::vector<Lexeme> lex(std::string_view source);

std::vector<Token> tokenize(std::string_view source);

Token to_token(const Lexeme& lexeme);

bool is_keyword(std::string_view word);

// Role of an opening brace, decided from the lexemes before it.
enum class BraceKind { kMethodBody, kClassBody, kOther };

struct BraceInfo {
  BraceKind kind = BraceKind::kOther;
  std::string name;      // method or class name when known
  int name_line = 0;     // line of the name lexeme
};

BraceInfo classify_brace(const std::vector<Lexeme>& lexemes,
                         std::size_t open_index);

}  // namespace crec

#endif  // CREC_LEXER_H_
