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
#include "crec/lexer.h"

#include <array>
#include <cctype>
#include <unordered_set>

namespace crec {
namespace {

const std::unordered_set<std::string_view>& keywords() {
  static const std::unordered_set<std::string_view> kKeywords = {
      "abstract", "assert",       "boolean",   "break",      "byte",
      "case",     "catch",        "char",      "class",      "const",
      "continue", "default",      "do",        "double",     "else",
      "enum",     "extends",      "final",     "finally",    "float",
      "for",      "goto",         "if",        "implements", "import",
      "instanceof", "int",        "interface", "long",       "native",
      "new",      "package",      "private",   "protected",  "public",
      "return",   "short",        "static",    "strictfp",   "super",
      "switch",   "synchronized", "this",      "throw",      "throws",
      "transient", "try",         "void",      "volatile",   "while",
  };
  return kKeywords;
}

bool is_literal_word(std::string_view w) {
  return w == "true" || w == "false" || w == "null";
}

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool ident_part(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

// Longest first within each length class.
constexpr std::array<std::string_view, 27> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--",
    "&&",   "||",  "==",  "!=",  "<=",  ">=", "+=", "-=", "*=",
    "/=",   "%=",  "&=",  "|=",  "^=",  "<<", ">>", "##", "@@",
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Lexeme> run() {
    bool line_start = true;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
        line_start = true;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
        continue;
      }
      if (c == '#' && line_start) {
        skip_preprocessor();
        continue;
      }
      line_start = false;
      if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
        continue;
      }
      if (c == '/' && peek(1) == '*') {
        skip_block_comment();
        continue;
      }
      if (c == '"') {
        lex_string();
        continue;
      }
      if (c == '\'') {
        lex_char();
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
        lex_number();
        continue;
      }
      if (ident_start(c)) {
        lex_word();
        continue;
      }
      if (static_cast<unsigned char>(c) >= 0x80 || std::iscntrl(static_cast<unsigned char>(c))) {
        ++pos_;
        continue;
      }
      lex_punct();
    }
    return std::move(out_);
  }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void emit(LexemeKind kind, std::size_t begin, std::size_t end, int line) {
    out_.push_back({kind, std::string(src_.substr(begin, end - begin)), line});
  }

  void skip_preprocessor() {
    while (pos_ < src_.size() && src_[pos_] != '\n') {
      if (src_[pos_] == '\\' && peek(1) == '\n') {
        pos_ += 2;
        ++line_;
        continue;
      }
      ++pos_;
    }
  }

  void skip_block_comment() {
    pos_ += 2;
    while (pos_ < src_.size() && !(src_[pos_] == '*' && peek(1) == '/')) {
      if (src_[pos_] == '\n') ++line_;
      ++pos_;
    }
    pos_ = std::min(src_.size(), pos_ + 2);
  }

  void lex_string() {
    const std::size_t begin = pos_;
    const int line = line_;
    if (peek(1) == '"' && peek(2) == '"') {  // text block
      pos_ += 3;
      while (pos_ < src_.size() &&
             !(src_[pos_] == '"' && peek(1) == '"' && peek(2) == '"')) {
        if (src_[pos_] == '\\') ++pos_;
        else if (src_[pos_] == '\n') ++line_;
        ++pos_;
      }
      pos_ = std::min(src_.size(), pos_ + 3);
      emit(LexemeKind::kStringLiteral, begin, pos_, line);
      return;
    }
    ++pos_;
    while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
      if (src_[pos_] == '\\' && pos_ + 1 < src_.size() && peek(1) != '\n') ++pos_;
      ++pos_;
    }
    if (pos_ < src_.size() && src_[pos_] == '"') ++pos_;
    emit(LexemeKind::kStringLiteral, begin, pos_, line);
  }

  void lex_char() {
    const std::size_t begin = pos_;
    ++pos_;
    while (pos_ < src_.size() && src_[pos_] != '\'' && src_[pos_] != '\n') {
      if (src_[pos_] == '\\' && pos_ + 1 < src_.size() && peek(1) != '\n') ++pos_;
      ++pos_;
    }
    if (pos_ < src_.size() && src_[pos_] == '\'') ++pos_;
    emit(LexemeKind::kLiteral, begin, pos_, line_);
  }

  void lex_number() {
    const std::size_t begin = pos_;
    const bool hex = src_[pos_] == '0' && (peek(1) == 'x' || peek(1) == 'X');
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (ident_part(c) || c == '.') {
        ++pos_;
        continue;
      }
      char prev = src_[pos_ - 1];
      bool exponent = hex ? (prev == 'p' || prev == 'P')
                          : (prev == 'e' || prev == 'E');
      if ((c == '+' || c == '-') && exponent) {
        ++pos_;
        continue;
      }
      break;
    }
    emit(LexemeKind::kLiteral, begin, pos_, line_);
  }

  void lex_word() {
    const std::size_t begin = pos_;
    while (pos_ < src_.size() && ident_part(src_[pos_])) ++pos_;
    std::string_view word = src_.substr(begin, pos_ - begin);
    LexemeKind kind = LexemeKind::kIdentifier;
    if (is_literal_word(word)) kind = LexemeKind::kLiteral;
    else if (keywords().contains(word)) kind = LexemeKind::kKeyword;
    emit(kind, begin, pos_, line_);
  }

  void lex_punct() {
    for (std::string_view op : kOperators) {
      if (src_.substr(pos_, op.size()) == op) {
        emit(LexemeKind::kPunct, pos_, pos_ + op.size(), line_);
        pos_ += op.size();
        return;
      }
    }
    emit(LexemeKind::kPunct, pos_, pos_ + 1, line_);
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::vector<Lexeme> out_;
};

}  // namespace

std::vector<Lexeme> lex(std::string_view source) { return Lexer(source).run(); }

Token to_token(const Lexeme& lexeme) {
  TokenKind kind = TokenKind::kIdentifier;
  switch (lexeme.kind) {
    case LexemeKind::kKeyword: kind = TokenKind::kKeyword; break;
    case LexemeKind::kLiteral:
    case LexemeKind::kStringLiteral: kind = TokenKind::kLiteral; break;
    default: break;
  }
  return {kind, lexeme.text, lexeme.line};
}

std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> tokens;
  for (const auto& l : lex(source)) {
    if (l.is_token()) tokens.push_back(to_token(l));
  }
  return tokens;
}

bool is_keyword(std::string_view word) { return keywords().contains(word); }

BraceInfo classify_brace(const std::vector<Lexeme>& lx, std::size_t open) {
  BraceInfo info;
  if (open == 0) return info;

  // Class-like declarations: a type keyword between the previous statement
  // boundary and the brace.
  for (std::size_t i = open; i-- > 0;) {
    const Lexeme& l = lx[i];
    if (l.is(";") || l.is("{") || l.is("}") || l.is(")") || l.is("=")) break;
    if (l.kind == LexemeKind::kKeyword &&
        (l.text == "class" || l.text == "interface" || l.text == "enum")) {
      if (i > 0 && lx[i - 1].is(".")) break;  // Foo.class
      info.kind = BraceKind::kClassBody;
      if (i + 1 < open && lx[i + 1].is_identifier()) {
        info.name = lx[i + 1].text;
        info.name_line = lx[i + 1].line;
      }
      return info;
    }
  }

  std::size_t j = open - 1;
  // Skip a throws clause: throws A, b.C<D>
  {
    std::size_t k = j;
    bool saw_throws = false;
    while (true) {
      const Lexeme& l = lx[k];
      if (l.is_keyword("throws")) {
        saw_throws = true;
        break;
      }
      if (!(l.is_identifier() || l.is(".") || l.is(",") || l.is("<") ||
            l.is(">") || l.is(">>") || l.is("?"))) {
        break;
      }
      if (k == 0) break;
      --k;
    }
    if (saw_throws) {
      if (k == 0) return info;
      j = k - 1;
    }
  }
  if (!lx[j].is(")")) return info;

  int depth = 0;
  std::size_t k = j;
  for (;; --k) {
    if (lx[k].is(")")) ++depth;
    else if (lx[k].is("(")) {
      if (--depth == 0) break;
    }
    if (k == 0) return info;
  }
  if (k == 0) return info;
  const Lexeme& name = lx[k - 1];
  if (!name.is_identifier()) return info;
  // new Foo(...) { ... } is an anonymous class body.
  for (std::size_t b = k - 1; b-- > 0;) {
    if (lx[b].is_keyword("new")) {
      info.kind = BraceKind::kClassBody;
      return info;
    }
    if (!(lx[b].is_identifier() || lx[b].is(".") || lx[b].is("<") ||
          lx[b].is(">") || lx[b].is(","))) {
      break;
    }
  }
  info.kind = BraceKind::kMethodBody;
  info.name = name.text;
  info.name_line = name.line;
  return info;
}

}  // namespace crec
