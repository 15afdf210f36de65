#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "glw/errors.hpp"

namespace glw::text {

enum class TokKind { Ident, Int, Punct, End };

struct Token {
  TokKind kind;
  std::string text;
  int line;
  int col;

  bool is(std::string_view s) const { return (kind == TokKind::Punct || kind == TokKind::Ident) && text == s; }
};

// Tokenizer for the .gcat/.gmod/.gfil formats: identifiers, signed integers,
// punctuation, '#' comments to end of line.
class Tokenizer {
 public:
  explicit Tokenizer(std::string_view src) : src_(src) {}

  Token peek() {
    if (!has_peek_) {
      peeked_ = lex();
      has_peek_ = true;
    }
    return peeked_;
  }

  Token next() {
    Token t = peek();
    has_peek_ = false;
    return t;
  }

  bool accept(std::string_view s) {
    if (peek().is(s)) {
      next();
      return true;
    }
    return false;
  }

  Token expect(std::string_view s) {
    Token t = next();
    if (!t.is(s)) fail(t, "expected '" + std::string(s) + "'");
    return t;
  }

  Token expect_ident() {
    Token t = next();
    if (t.kind != TokKind::Ident) fail(t, "expected an identifier");
    return t;
  }

  int64_t expect_int() {
    Token t = next();
    if (t.kind != TokKind::Int) fail(t, "expected an integer");
    return std::stoll(t.text);
  }

  // Remainder of the current line, trimmed; used for file-name operands.
  std::string rest_of_line() {
    has_peek_ = false;
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) advance();
    size_t start = pos_;
    while (pos_ < src_.size() && src_[pos_] != '\n' && src_[pos_] != '#') advance();
    size_t end = pos_;
    while (end > start && std::isspace(static_cast<unsigned char>(src_[end - 1]))) --end;
    return std::string(src_.substr(start, end - start));
  }

  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    std::string got = t.kind == TokKind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", got " + got, t.line, t.col);
  }

 private:
  Token lex() {
    skip_ws_and_comments();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) {
      t.kind = TokKind::End;
      return t;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        advance();
      t.kind = TokKind::Ident;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      size_t start = pos_;
      advance();
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
      t.kind = TokKind::Int;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      advance();
      advance();
      t.kind = TokKind::Punct;
      t.text = "->";
      return t;
    }
    static constexpr std::string_view punct = ":=*+.{}(),[]-";
    if (punct.find(c) != std::string_view::npos) {
      advance();
      t.kind = TokKind::Punct;
      t.text = std::string(1, c);
      return t;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
  }

  void skip_ws_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token peeked_{};
  bool has_peek_ = false;
};

}  // namespace glw::text
