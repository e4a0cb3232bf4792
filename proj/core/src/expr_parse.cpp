#include "unihardy/expr_parse.hpp"

#include <cctype>
#include <cstdlib>
#include <map>
#include <optional>
#include <vector>

#include "unihardy/errors.hpp"

namespace unihardy {

namespace {

struct Parser {
  const std::string& text;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw error(errc::parse_error, msg + " at position " + std::to_string(pos) + " in '" + text + "'");
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char ch) {
    skip_ws();
    if (pos < text.size() && text[pos] == ch) {
      ++pos;
      return true;
    }
    return false;
  }

  bool peek(char ch) {
    skip_ws();
    return pos < text.size() && text[pos] == ch;
  }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    return text.substr(start, pos - start);
  }

  double number() {
    skip_ws();
    const char* begin = text.c_str() + pos;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos += static_cast<size_t>(end - begin);
    return v;
  }

  struct Args {
    std::vector<double> positional;
    std::vector<RadialExpr> exprs;
    std::map<std::string, double> keyword;

    double kw(const Parser& p, const std::string& name) const {
      auto it = keyword.find(name);
      if (it == keyword.end()) p.fail("missing argument '" + name + "'");
      return it->second;
    }
    double kw_or(const std::string& name, double fallback) const {
      auto it = keyword.find(name);
      return it == keyword.end() ? fallback : it->second;
    }
    double positional_at(const Parser& p, size_t i) const {
      if (i >= positional.size()) p.fail("missing positional argument " + std::to_string(i));
      return positional[i];
    }
  };

  RadialExpr expr() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    const char ch = text[pos];
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+' || ch == '.')
      return RadialExpr::constant(number());

    const std::string name = ident();
    if (name.empty()) fail("expected a function name");
    if (!eat('(')) fail("expected '(' after '" + name + "'");

    Args args;
    if (!peek(')')) {
      do {
        skip_ws();
        const size_t save = pos;
        if (std::isalpha(static_cast<unsigned char>(text[pos]))) {
          const std::string key = ident();
          if (eat('=')) {
            args.keyword[key] = number();
            continue;
          }
          pos = save;  // a nested call, not key=value
          args.exprs.push_back(expr());
        } else if (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '-' ||
                   text[pos] == '+' || text[pos] == '.') {
          args.positional.push_back(number());
        } else {
          args.exprs.push_back(expr());
        }
      } while (eat(','));
    }
    if (!eat(')')) fail("expected ')'");
    return build(name, args);
  }

  RadialExpr build(const std::string& name, const Args& a) {
    if (name == "const") return RadialExpr::constant(a.positional_at(*this, 0));
    if (name == "powr") return RadialExpr::power(a.positional_at(*this, 0));
    if (name == "bnd")
      return RadialExpr::boundary_power(a.kw(*this, "c"), a.kw(*this, "k"), a.kw_or("R", 1.0));
    if (name == "logr") return RadialExpr::log_weight(a.kw_or("R", 1.0));
    if (name == "bump")
      return RadialExpr::bump(a.positional_at(*this, 0), a.positional_at(*this, 1));
    if (name == "rampup")
      return RadialExpr::ramp_up(a.positional_at(*this, 0), a.positional_at(*this, 1));
    if (name == "rampdown")
      return RadialExpr::ramp_down(a.positional_at(*this, 0), a.positional_at(*this, 1));
    if (name == "bndfam")
      return make_boundary_family(a.kw(*this, "k"), a.kw(*this, "delta"), a.kw(*this, "c"),
                                  a.kw_or("R", 1.0));
    if (name == "originfam") return make_origin_family(a.kw(*this, "k"), a.kw(*this, "delta"));
    if (name == "extremal")
      return extremal_candidate(a.kw(*this, "b"), a.kw(*this, "p"), a.kw(*this, "c"),
                                a.kw_or("R", 1.0));
    if (name == "neg") {
      if (a.exprs.size() != 1) fail("neg() takes exactly one expression");
      return -a.exprs[0];
    }
    if (name == "mul" || name == "add") {
      std::vector<RadialExpr> parts = a.exprs;
      for (double v : a.positional) parts.push_back(RadialExpr::constant(v));
      if (parts.empty()) fail(name + "() needs at least one argument");
      RadialExpr acc = parts[0];
      for (size_t i = 1; i < parts.size(); ++i)
        acc = name == "mul" ? acc * parts[i] : acc + parts[i];
      return acc;
    }
    fail("unknown function '" + name + "'");
  }
};

}  // namespace

RadialExpr parse_radial_expr(const std::string& text) {
  Parser p{text};
  RadialExpr e = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return e;
}

}  // namespace unihardy
