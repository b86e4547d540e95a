#pragma once

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "needlab/term.hpp"

namespace needlab {

/// Malformed source text. Line and column are 1-based.
struct SyntaxError : std::runtime_error {
  SyntaxError(const std::string& msg, std::size_t line, std::size_t col)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  std::size_t line;
  std::size_t col;
};

/// The variable standing for the hole of a one-hole context.
inline const Name& hole_name() {
  static const Name h{"[]"};
  return h;
}

namespace detail {

struct ParseOptions {
  bool labels = false;     // `ident:atom`
  bool holes = false;      // `[]`
  bool generated = false;  // `ident%N`
};

class Parser {
 public:
  Parser(std::string_view src, ParseOptions opts) : src_(src), opts_(opts) {}

  LabeledTerm parse_all() {
    skip();
    auto t = term();
    skip();
    if (pos_ < src_.size()) fail("unexpected input");
    return t;
  }

 private:
  std::string_view src_;
  ParseOptions opts_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src_[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
    throw SyntaxError(msg, line, col);
  }

  void skip() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (src_.substr(pos_, 2) == "--") {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_lambda() const {
    return (pos_ < src_.size() && src_[pos_] == '\\') || src_.substr(pos_, 2) == "\xCE\xBB";
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  bool at_atom() const {
    if (pos_ >= src_.size()) return false;
    char c = src_[pos_];
    if (ident_start(c) || c == '(') return true;
    return opts_.holes && src_.substr(pos_, 2) == "[]";
  }

  Name ident() {
    if (pos_ >= src_.size() || !ident_start(src_[pos_])) fail("expected identifier");
    std::size_t start = pos_;
    while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
    Name n{std::string(src_.substr(start, pos_ - start))};
    if (pos_ < src_.size() && src_[pos_] == '%') {
      if (!opts_.generated) fail("'%' is reserved for generated names");
      ++pos_;
      std::size_t ds = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (ds == pos_) fail("expected generation index");
      n.gen = static_cast<std::uint32_t>(std::stoul(std::string(src_.substr(ds, pos_ - ds))));
      if (n.gen == 0) fail("generation index must be positive");
    }
    return n;
  }

  void expect(char c) {
    skip();
    if (pos_ >= src_.size() || src_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  LabeledTerm lambda() {
    pos_ += src_[pos_] == '\\' ? 1 : 2;
    skip();
    Name x = ident();
    expect('.');
    skip();
    return LabeledTerm::lam(std::move(x), term());
  }

  LabeledTerm term() {
    skip();
    if (at_lambda()) return lambda();
    if (!at_atom()) fail("expected term");
    auto t = atom();
    for (;;) {
      skip();
      if (at_lambda()) return LabeledTerm::app(std::move(t), lambda());
      if (!at_atom()) return t;
      t = LabeledTerm::app(std::move(t), atom());
    }
  }

  LabeledTerm atom() {
    if (src_[pos_] == '(') {
      ++pos_;
      auto t = term();
      expect(')');
      return t;
    }
    if (src_[pos_] == '[') {
      pos_ += 2;
      return LabeledTerm::var(hole_name());
    }
    Name n = ident();
    if (opts_.labels && pos_ < src_.size() && src_[pos_] == ':') {
      ++pos_;
      if (!at_atom()) fail("expected labeled atom");
      return LabeledTerm::label(std::move(n), atom());
    }
    return LabeledTerm::var(std::move(n));
  }
};

}  // namespace detail

/// Parses a pure term. Throws SyntaxError.
inline Term parse(std::string_view text) {
  return erase(detail::Parser(text, {}).parse_all());
}

/// Parses a term that may contain labels `l:atom` and generated names `x%3`.
inline LabeledTerm parse_labeled(std::string_view text) {
  return detail::Parser(text, {true, false, true}).parse_all();
}

/// Parses a one-hole context; `[]` marks the hole.
inline Term parse_context(std::string_view text) {
  return erase(detail::Parser(text, {false, true, true}).parse_all());
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

template <bool L>
void print_rec(const basic_term<L>& t, std::string& out, bool fun_pos, bool arg_pos) {
  switch (t.kind()) {
    case Kind::var:
      out += t.name().str();
      return;
    case Kind::lam: {
      bool paren = fun_pos || arg_pos;
      if (paren) out += '(';
      out += '\\';
      out += t.name().str();
      out += '.';
      print_rec(t.body(), out, false, false);
      if (paren) out += ')';
      return;
    }
    case Kind::app: {
      if (arg_pos) out += '(';
      print_rec(t.fun(), out, true, false);
      out += ' ';
      print_rec(t.arg(), out, false, true);
      if (arg_pos) out += ')';
      return;
    }
    case Kind::label: {
      out += t.name().str();
      out += ':';
      auto b = t.body();
      if (b.is_var() || b.is_label()) {
        print_rec(b, out, false, false);
      } else {
        out += '(';
        print_rec(b, out, false, false);
        out += ')';
      }
      return;
    }
  }
}

}  // namespace detail

/// Concrete syntax with minimal parentheses; parse(print(t)) == t.
template <bool L>
std::string print(const basic_term<L>& t) {
  std::string out;
  detail::print_rec(t, out, false, false);
  return out;
}

}  // namespace needlab
