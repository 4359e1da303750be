#include "jetforge/poly_parser.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

#include "jetforge/errors.hpp"

namespace jetforge {
namespace {

class Parser {
 public:
  Parser(std::string_view text, int m) : text_(normalize(text)), m_(m) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  static std::string normalize(std::string_view in) {
    std::string out;
    for (std::size_t i = 0; i < in.size(); ++i) {
      // U+2212 MINUS SIGN in UTF-8
      if (i + 2 < in.size() && static_cast<unsigned char>(in[i]) == 0xE2 &&
          static_cast<unsigned char>(in[i + 1]) == 0x88 && static_cast<unsigned char>(in[i + 2]) == 0x92) {
        out += '-';
        i += 2;
      } else {
        out += in[i];
      }
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw DomainError("polynomial parse error at column " + std::to_string(pos_ + 1) + ": " + msg +
                      " in \"" + text_ + "\"");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial p = term();
    for (;;) {
      if (accept('+'))
        p += term();
      else if (accept('-'))
        p -= term();
      else
        return p;
    }
  }

  Polynomial term() {
    Polynomial p = unary();
    while (accept('*')) p = p * unary();
    return p;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (accept('^')) {
      skip_space();
      const int e = integer("exponent");
      if (e > 64) fail("exponent too large");
      return base.pow(e);
    }
    return base;
  }

  int integer(const char* what) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    int v = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc()) fail(std::string("bad ") + what);
    return v;
  }

  Polynomial primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (c == 'x') {
      ++pos_;
      const int v = integer("variable index");
      if (v < 1 || v > m_) fail("variable x" + std::to_string(v) + " outside x1..x" + std::to_string(m_));
      return Polynomial::variable(m_, v - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Polynomial::constant(m_, number());
    fail("unexpected '" + std::string(1, c) + "'");
  }

  double number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      const std::size_t exp_start = pos_;
      digits();
      if (exp_start == pos_) fail("malformed exponent");
    }
    const std::string lit = text_.substr(start, pos_ - start);
    if (lit == ".") fail("malformed number");
    char* end = nullptr;
    const double v = std::strtod(lit.c_str(), &end);
    if (end != lit.c_str() + lit.size()) fail("malformed number");
    return v;
  }

  std::string text_;
  int m_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, int m) {
  if (m < 1) throw DomainError("parse_polynomial: dimension must be positive");
  return Parser(text, m).parse();
}

PolyMap parse_polymap(const std::vector<std::string>& components, int m, int max_degree) {
  std::vector<Polynomial> c;
  for (const auto& s : components) {
    Polynomial p = parse_polynomial(s, m);
    if (p.degree() > max_degree) {
      throw DomainError("polynomial \"" + s + "\" has degree " + std::to_string(p.degree()) +
                        " above the limit " + std::to_string(max_degree));
    }
    c.push_back(std::move(p));
  }
  return PolyMap(m, std::move(c));
}

}  // namespace jetforge
