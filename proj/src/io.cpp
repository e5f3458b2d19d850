#include "hod/io.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace hod {

namespace {

enum class Tok { Number, Complex, Ident, Plus, Minus, Star, Caret, LParen, RParen, Semi, End };

struct Token {
  Tok kind;
  std::string text;
  cplx value;
  int line;
  int col;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s, int line = 1) : s_(s), line_(line) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip();
      const int l = line_, c = col_;
      if (pos_ >= s_.size()) {
        out.push_back({Tok::End, "", {}, l, c});
        return out;
      }
      const char ch = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
        out.push_back({Tok::Number, "", cplx(number(), 0.0), l, c});
      } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::string id;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
          id += s_[pos_];
          advance();
        }
        out.push_back({Tok::Ident, id, {}, l, c});
      } else if (ch == '(' && complex_ahead()) {
        advance();
        skip();
        const double re = signed_number();
        skip();
        advance();  // ','
        skip();
        const double im = signed_number();
        skip();
        if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')' closing complex literal");
        advance();
        out.push_back({Tok::Complex, "", cplx(re, im), l, c});
      } else {
        Tok k;
        switch (ch) {
          case '+': k = Tok::Plus; break;
          case '-': k = Tok::Minus; break;
          case '*': k = Tok::Star; break;
          case '^': k = Tok::Caret; break;
          case '(': k = Tok::LParen; break;
          case ')': k = Tok::RParen; break;
          case ';': k = Tok::Semi; break;
          default: fail(std::string("unexpected character '") + ch + "'");
        }
        advance();
        out.push_back({k, std::string(1, ch), {}, l, c});
      }
    }
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < s_.size()) {
      if (s_[pos_] == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        advance();
      } else {
        break;
      }
    }
  }

  // "(" number "," number ")" with optional signs and blanks.
  bool complex_ahead() const {
    std::size_t p = pos_ + 1;
    int commas = 0;
    while (p < s_.size() && s_[p] != ')') {
      const char c = s_[p];
      if (c == ',') {
        ++commas;
      } else if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '+' ||
                   c == '-' || c == 'e' || c == 'E' || c == ' ' || c == '\t')) {
        return false;
      }
      ++p;
    }
    return p < s_.size() && commas == 1;
  }

  double number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) advance();
    };
    digits();
    if (pos_ < s_.size() && s_[pos_] == '.') {
      advance();
      digits();
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      advance();
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) advance();
      digits();
    }
    double v = 0.0;
    const auto* first = s_.data() + start;
    const auto* last = s_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) fail("malformed number");
    return v;
  }

  double signed_number() {
    double sign = 1.0;
    if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      if (s_[pos_] == '-') sign = -1.0;
      advance();
      skip();
    }
    return sign * number();
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const std::map<std::string, std::size_t>& vars)
      : t_(std::move(toks)), vars_(vars) {}

  std::vector<Polynomial> statements() {
    std::vector<Polynomial> out;
    while (peek().kind != Tok::End) {
      out.push_back(expr());
      expect(Tok::Semi, "expected ';' after polynomial");
    }
    return out;
  }

 private:
  const Token& peek() const { return t_[i_]; }
  const Token& take() { return t_[i_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().col);
  }
  void expect(Tok k, const char* msg) {
    if (peek().kind != k) fail(msg);
    ++i_;
  }

  Polynomial expr() {
    Polynomial acc = term_signed();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool minus = take().kind == Tok::Minus;
      Polynomial rhs = term();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  Polynomial term_signed() {
    if (peek().kind == Tok::Minus) {
      ++i_;
      return term() * cplx(-1.0);
    }
    if (peek().kind == Tok::Plus) ++i_;
    return term();
  }

  Polynomial term() {
    Polynomial acc = power();
    while (peek().kind == Tok::Star) {
      ++i_;
      acc = acc * power();
    }
    return acc;
  }

  Polynomial power() {
    Polynomial base = atom();
    if (peek().kind == Tok::Caret) {
      ++i_;
      const Token& e = peek();
      if (e.kind != Tok::Number || e.value.real() != std::floor(e.value.real()) ||
          e.value.real() < 0 || e.value.real() > 1000) {
        fail("exponent must be a non-negative integer");
      }
      ++i_;
      return base.pow(static_cast<unsigned>(e.value.real()));
    }
    return base;
  }

  Polynomial atom() {
    const Token& tk = peek();
    const std::size_t n = vars_.size();
    switch (tk.kind) {
      case Tok::Number:
      case Tok::Complex:
        ++i_;
        return Polynomial::constant(n, tk.value);
      case Tok::Ident: {
        auto it = vars_.find(tk.text);
        if (it == vars_.end()) fail("undeclared variable '" + tk.text + "'");
        ++i_;
        return Polynomial::variable(n, it->second);
      }
      case Tok::LParen: {
        ++i_;
        Polynomial inner = expr();
        expect(Tok::RParen, "expected ')'");
        return inner;
      }
      case Tok::Minus:
        ++i_;
        return power() * cplx(-1.0);
      default:
        fail("expected a number, variable or '('");
    }
  }

  std::vector<Token> t_;
  std::size_t i_ = 0;
  const std::map<std::string, std::size_t>& vars_;
};

bool valid_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

std::string strip_comment(std::string_view line) {
  const auto h = line.find('#');
  return std::string(h == std::string_view::npos ? line : line.substr(0, h));
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

PolySystem parse_system(std::string_view text) {
  // Header: first non-blank, non-comment line.
  std::size_t pos = 0;
  int line = 1;
  std::optional<std::vector<std::string>> names;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    const std::string body = trim(strip_comment(raw));
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    if (body.empty()) {
      ++line;
      continue;
    }
    if (body.rfind("vars", 0) != 0) throw ParseError("expected header 'vars: <names>'", line, 1);
    std::string rest = trim(body.substr(4));
    if (rest.empty() || rest[0] != ':') throw ParseError("expected ':' after 'vars'", line, 5);
    rest = rest.substr(1);
    for (char& c : rest) {
      if (c == ',') c = ' ';
    }
    std::istringstream is(rest);
    std::vector<std::string> v;
    for (std::string w; is >> w;) {
      if (!valid_name(w)) throw ParseError("invalid variable name '" + w + "'", line, 1);
      for (const auto& prev : v) {
        if (prev == w) throw ParseError("variable '" + w + "' declared twice", line, 1);
      }
      v.push_back(w);
    }
    if (v.empty()) throw ParseError("no variables declared", line, 1);
    names = std::move(v);
    ++line;
    break;
  }
  if (!names) throw ParseError("empty input", line, 1);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < names->size(); ++i) index[(*names)[i]] = i;
  Parser p(Lexer(text.substr(pos), line).run(), index);
  auto polys = p.statements();
  if (polys.empty()) throw ParseError("system has no polynomials", line, 1);
  return PolySystem(std::move(polys), *names);
}

std::string format_complex(cplx c) { return "(" + fmt(c.real()) + "," + fmt(c.imag()) + ")"; }

std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& names) {
  if (p.terms().empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string coef;
    bool negative = false;
    if (c.imag() == 0.0) {
      negative = std::signbit(c.real());
      const double a = std::abs(c.real());
      if (a != 1.0 || mono.empty()) coef = fmt(a);
    } else {
      coef = format_complex(c);
    }
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    out += coef;
    if (!coef.empty() && !mono.empty()) out += "*";
    out += mono;
  }
  return out;
}

std::string serialize(const PolySystem& F) {
  std::string out = "vars:";
  for (const auto& n : F.var_names()) out += " " + n;
  out += "\n";
  for (const auto& p : F.polys()) out += format_polynomial(p, F.var_names()) + ";\n";
  return out;
}

Point parse_point(std::string_view text, const PolySystem& F) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < F.nvars(); ++i) index[F.var_names()[i]] = i;
  std::vector<std::optional<cplx>> vals(F.nvars());
  std::size_t pos = 0;
  int line = 0;
  while (pos < text.size()) {
    ++line;
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    const std::string body = trim(strip_comment(raw));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'name = value'", line, 1);
    const std::string name = trim(body.substr(0, eq));
    auto it = index.find(name);
    if (it == index.end()) throw ParseError("unknown variable '" + name + "'", line, 1);
    if (vals[it->second]) throw ParseError("variable '" + name + "' assigned twice", line, 1);
    const std::string value = trim(body.substr(eq + 1));
    const int col = static_cast<int>(eq) + 2;
    auto toks = Lexer(value, line).run();
    cplx v;
    std::size_t k = 0;
    double sign = 1.0;
    if (toks[k].kind == Tok::Minus) {
      sign = -1.0;
      ++k;
    }
    if (toks[k].kind != Tok::Number && toks[k].kind != Tok::Complex) {
      throw ParseError("expected a number or (re,im)", line, col);
    }
    v = sign * toks[k].value;
    if (toks[k + 1].kind != Tok::End) throw ParseError("trailing text after value", line, col);
    vals[it->second] = v;
  }
  Point out(F.nvars());
  for (std::size_t i = 0; i < F.nvars(); ++i) {
    if (!vals[i]) {
      throw DimensionError("point does not assign variable '" + F.var_names()[i] + "'");
    }
    out[i] = *vals[i];
  }
  return out;
}

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace hod
