#include "kato/spec.hpp"

#include "kato/format.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <set>

namespace kato::spec {

const Value *Expr::find(std::string_view key) const {
  for (const Pair &p : args)
    if (p.key == key) return &p.value;
  return nullptr;
}

bool operator==(const Value &a, const Value &b) {
  if (a.is_expr() != b.is_expr()) return false;
  return a.is_expr() ? a.expr() == b.expr() : a.number == b.number;
}

bool operator==(const Expr &a, const Expr &b) {
  if (a.name != b.name || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (a.args[i].key != b.args[i].key || !(a.args[i].value == b.args[i].value)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Grammar

namespace {

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
bool digit(char c) { return c >= '0' && c <= '9'; }

class Parser {
public:
  explicit Parser(std::string_view text) : s_(text) {}

  Expr top() {
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) throw SyntaxError(pos_, "expected end of input");
    return e;
  }

private:
  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) throw SyntaxError(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string ident() {
    if (!ident_start(peek())) throw SyntaxError(pos_, "expected identifier");
    const std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  double number() {
    const std::size_t start = pos_;
    std::size_t p = pos_;
    if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
    const std::size_t mantissa = p;
    while (p < s_.size() && digit(s_[p])) ++p;
    if (p < s_.size() && s_[p] == '.') {
      ++p;
      while (p < s_.size() && digit(s_[p])) ++p;
    }
    if (p == mantissa || (p == mantissa + 1 && s_[mantissa] == '.'))
      throw SyntaxError(start, "expected number");
    if (p < s_.size() && (s_[p] == 'e' || s_[p] == 'E')) {
      std::size_t q = p + 1;
      if (q < s_.size() && (s_[q] == '+' || s_[q] == '-')) ++q;
      if (q >= s_.size() || !digit(s_[q])) throw SyntaxError(q, "expected exponent digits");
      while (q < s_.size() && digit(s_[q])) ++q;
      p = q;
    }
    const std::size_t from = s_[start] == '+' ? start + 1 : start;
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s_.data() + from, s_.data() + p, v);
    if (ec != std::errc() || end != s_.data() + p || !std::isfinite(v))
      throw SyntaxError(start, "number out of range");
    pos_ = p;
    return v;
  }

  Expr expr() {
    Expr e;
    e.name = ident();
    expect('(');
    if (peek() == ')') {
      ++pos_;
      return e;
    }
    for (;;) {
      Pair p;
      p.key = ident();
      expect('=');
      const char c = peek();
      if (ident_start(c)) {
        p.value.nested.push_back(expr());
      } else if (digit(c) || c == '-' || c == '+' || c == '.') {
        p.value.number = number();
      } else {
        throw SyntaxError(pos_, "expected number or expression");
      }
      e.args.push_back(std::move(p));
      const char next = peek();
      if (next == ',') {
        ++pos_;
        continue;
      }
      if (next == ')') {
        ++pos_;
        return e;
      }
      throw SyntaxError(pos_, "expected ',' or ')'");
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

} // namespace

Expr parse_tree(std::string_view text) { return Parser(text).top(); }

std::string print(const Expr &e) {
  std::string s = e.name + "(";
  for (std::size_t i = 0; i < e.args.size(); ++i) {
    if (i) s += ",";
    s += e.args[i].key + "=";
    s += e.args[i].value.is_expr() ? print(e.args[i].value.expr())
                                   : format_number(e.args[i].value.number);
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// Family tables

namespace {

enum class Cat { Profile, Field, Domain, Pair, TestFunction };

[[noreturn]] void bad(const Expr &e, const std::string &msg) {
  throw Error(ErrorKind::BadArity, e.name + ": " + msg);
}

// Keys that are a prefix followed by 1, 2, ... (or 0, 1, ...).
bool indexed(std::string_view key, std::string_view prefix, int &index) {
  if (key.size() <= prefix.size() || key.substr(0, prefix.size()) != prefix) return false;
  const std::string_view rest = key.substr(prefix.size());
  if (rest.size() > 1 && rest[0] == '0') return false;
  int v = 0;
  const auto [end, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
  if (ec != std::errc() || end != rest.data() + rest.size()) return false;
  index = v;
  return true;
}

struct Rule {
  std::vector<std::string> required;
  std::vector<std::string> optional;
};

void check_keys(const Expr &e, const Rule &rule) {
  std::set<std::string> seen;
  for (const Pair &p : e.args) {
    if (!seen.insert(p.key).second) bad(e, "duplicate key '" + p.key + "'");
    const bool known =
        std::find(rule.required.begin(), rule.required.end(), p.key) != rule.required.end() ||
        std::find(rule.optional.begin(), rule.optional.end(), p.key) != rule.optional.end();
    if (!known) bad(e, "unknown key '" + p.key + "'");
  }
  for (const std::string &k : rule.required)
    if (!seen.count(k)) bad(e, "missing key '" + k + "'");
}

void check_unique(const Expr &e) {
  std::set<std::string> seen;
  for (const Pair &p : e.args)
    if (!seen.insert(p.key).second) bad(e, "duplicate key '" + p.key + "'");
}

const Value &need(const Expr &e, std::string_view key) {
  const Value *v = e.find(key);
  if (!v) bad(e, "missing key '" + std::string(key) + "'");
  return *v;
}

double num(const Expr &e, std::string_view key) {
  const Value &v = need(e, key);
  if (v.is_expr()) bad(e, "key '" + std::string(key) + "' takes a number");
  return v.number;
}

double num_or(const Expr &e, std::string_view key, double fallback) {
  return e.find(key) ? num(e, key) : fallback;
}

int integer(const Expr &e, std::string_view key) {
  const double v = num(e, key);
  if (v != std::floor(v) || std::abs(v) > 1e6)
    bad(e, "key '" + std::string(key) + "' takes an integer");
  return static_cast<int>(v);
}

const Expr &sub(const Expr &e, std::string_view key) {
  const Value &v = need(e, key);
  if (!v.is_expr()) bad(e, "key '" + std::string(key) + "' takes an expression");
  return v.expr();
}

// Numbers under prefix+index for index = first, first+1, ... in order.
std::vector<double> sequence(const Expr &e, std::string_view prefix, int first) {
  std::vector<double> out;
  for (const Pair &p : e.args) {
    int i = 0;
    if (!indexed(p.key, prefix, i)) continue;
    if (i != first + static_cast<int>(out.size())) bad(e, "keys '" + std::string(prefix) + "k' must be consecutive");
    if (p.value.is_expr()) bad(e, "key '" + p.key + "' takes a number");
    out.push_back(p.value.number);
  }
  return out;
}

Cat category(const Expr &e);
void validate_as(const Expr &e, Cat cat);

void check_profile(const Expr &e) {
  if (e.name == "constant") check_keys(e, {{"c"}, {"scale"}});
  else if (e.name == "indicator") check_keys(e, {{"a", "b"}, {"scale"}});
  else if (e.name == "power") check_keys(e, {{"alpha", "tau"}, {"scale"}});
  else if (e.name == "bump") check_keys(e, {{"c", "w"}, {"scale"}});
  else if (e.name == "spline") {
    check_unique(e);
    std::size_t i = 0;
    for (const Pair &p : e.args) {
      if (p.key == "scale") continue;
      const std::string want = (i % 2 == 0 ? "k" : "v") + std::to_string(i / 2);
      if (p.key != want) bad(e, "expected key '" + want + "', got '" + p.key + "'");
      ++i;
    }
    if (i < 4 || i % 2) bad(e, "needs at least two (k, v) pairs");
  }
  for (const Pair &p : e.args)
    if (p.value.is_expr()) bad(e, "key '" + p.key + "' takes a number");
}

void check_field(const Expr &e) {
  if (e.name == "radial") {
    check_keys(e, {{"profile"}, {}});
    validate_as(sub(e, "profile"), Cat::Profile);
  } else if (e.name == "coordinate") {
    check_keys(e, {{"i"}, {}});
    if (integer(e, "i") < 1) bad(e, "index i is 1-based");
  } else if (e.name == "shifted_bump") {
    check_unique(e);
    const std::vector<double> c = sequence(e, "c", 1);
    if (c.empty()) bad(e, "needs centre keys c1, c2, ...");
    for (const Pair &p : e.args) {
      int i = 0;
      if (p.key != "w" && !indexed(p.key, "c", i)) bad(e, "unknown key '" + p.key + "'");
    }
    num(e, "w");
  } else if (e.name == "product") {
    check_keys(e, {{"a", "b"}, {}});
    validate_as(sub(e, "a"), Cat::Field);
    validate_as(sub(e, "b"), Cat::Field);
  } else if (e.name == "modulus") {
    check_keys(e, {{"f"}, {}});
    validate_as(sub(e, "f"), Cat::Field);
  }
}

void check_domain(const Expr &e) {
  if (e.name == "ball") {
    check_unique(e);
    for (const Pair &p : e.args) {
      int i = 0;
      if (p.key != "n" && p.key != "r" && !indexed(p.key, "c", i))
        bad(e, "unknown key '" + p.key + "'");
    }
    const int n = integer(e, "n");
    const std::vector<double> c = sequence(e, "c", 1);
    if (!c.empty() && static_cast<int>(c.size()) != n) bad(e, "centre needs n coordinates");
    if (e.find("r")) num(e, "r");
  } else if (e.name == "ellipsoid") {
    check_unique(e);
    std::size_t i = 0;
    for (const Pair &p : e.args) {
      const std::string want(1, static_cast<char>('a' + i));
      if (p.key != want || i >= 26) bad(e, "expected key '" + want + "', got '" + p.key + "'");
      if (p.value.is_expr()) bad(e, "key '" + p.key + "' takes a number");
      ++i;
    }
    if (i < 2) bad(e, "needs at least two axes");
  } else if (e.name == "radialmap") {
    check_keys(e, {{"n", "g0", "a"}, {}});
    integer(e, "n");
    num(e, "g0");
    num(e, "a");
  }
}

void check_pair(const Expr &e) {
  check_keys(e, {{"outer", "inner"}, {}});
  validate_as(sub(e, "outer"), Cat::Domain);
  validate_as(sub(e, "inner"), Cat::Domain);
}

void check_test_function(const Expr &e) {
  if (e.name == "barrier") {
    check_keys(e, {{"omega"}, {"kappa"}});
  } else if (e.name == "step") {
    check_keys(e, {{"a", "b", "eps"}, {}});
  } else if (e.name == "tabulated") {
    check_unique(e);
    std::size_t i = 0;
    for (const Pair &p : e.args) {
      const std::string want = (i % 2 == 0 ? "x" : "v") + std::to_string(i / 2);
      if (p.key != want) bad(e, "expected key '" + want + "', got '" + p.key + "'");
      ++i;
    }
    if (i < 2 || i % 2) bad(e, "needs (x, v) pairs");
  }
  for (const Pair &p : e.args)
    if (p.value.is_expr()) bad(e, "key '" + p.key + "' takes a number");
}

struct Family {
  std::string_view name;
  Cat cat;
};

constexpr std::array<Family, 17> kFamilies{{
    {"constant", Cat::Profile},      {"indicator", Cat::Profile},
    {"power", Cat::Profile},         {"bump", Cat::Profile},
    {"spline", Cat::Profile},        {"radial", Cat::Field},
    {"coordinate", Cat::Field},      {"shifted_bump", Cat::Field},
    {"product", Cat::Field},         {"modulus", Cat::Field},
    {"ball", Cat::Domain},           {"ellipsoid", Cat::Domain},
    {"radialmap", Cat::Domain},      {"pair", Cat::Pair},
    {"barrier", Cat::TestFunction},    {"step", Cat::TestFunction},
    {"tabulated", Cat::TestFunction},
}};

Cat category(const Expr &e) {
  for (const Family &f : kFamilies)
    if (f.name == e.name) return f.cat;
  throw Error(ErrorKind::UnknownFamily, "unknown family '" + e.name + "'");
}

void validate_as(const Expr &e, Cat cat) {
  const Cat actual = category(e);
  const bool ok = actual == cat || (cat == Cat::Field && actual == Cat::Profile);
  if (!ok) throw Error(ErrorKind::BadArity, "'" + e.name + "' is not valid in this position");
  validate(e);
}

} // namespace

void validate(const Expr &e) {
  switch (category(e)) {
  case Cat::Profile: check_profile(e); break;
  case Cat::Field: check_field(e); break;
  case Cat::Domain: check_domain(e); break;
  case Cat::Pair: check_pair(e); break;
  case Cat::TestFunction: check_test_function(e); break;
  }
}

Expr parse(std::string_view text) {
  Expr e = parse_tree(text);
  validate(e);
  return e;
}

bool is_profile(const Expr &e) { return category(e) == Cat::Profile; }
bool is_field(const Expr &e) {
  const Cat c = category(e);
  return c == Cat::Field || c == Cat::Profile;
}
bool is_domain(const Expr &e) { return category(e) == Cat::Domain; }

// ---------------------------------------------------------------------------
// Conversions

fn::RadialProfile to_profile(const Expr &e) {
  validate_as(e, Cat::Profile);
  fn::RadialProfile p = fn::RadialProfile::constant(0.0);
  if (e.name == "constant") {
    p = fn::RadialProfile::constant(num(e, "c"));
  } else if (e.name == "indicator") {
    p = fn::RadialProfile::indicator(num(e, "a"), num(e, "b"));
  } else if (e.name == "power") {
    p = fn::RadialProfile::power(num(e, "alpha"), num(e, "tau"));
  } else if (e.name == "bump") {
    p = fn::RadialProfile::bump(num(e, "c"), num(e, "w"));
  } else {
    p = fn::RadialProfile::spline(sequence(e, "k", 0), sequence(e, "v", 0));
  }
  if (e.find("scale")) p = p.scaled(num(e, "scale"));
  return p;
}

fn::FieldFunction to_field(const Expr &e) {
  validate_as(e, Cat::Field);
  if (category(e) == Cat::Profile) return fn::FieldFunction::radial(to_profile(e));
  if (e.name == "radial") return fn::FieldFunction::radial(to_profile(sub(e, "profile")));
  if (e.name == "coordinate") return fn::FieldFunction::coordinate(integer(e, "i"));
  if (e.name == "shifted_bump")
    return fn::FieldFunction::shifted_bump(sequence(e, "c", 1), num(e, "w"));
  if (e.name == "product")
    return fn::FieldFunction::product(to_field(sub(e, "a")), to_field(sub(e, "b")));
  return fn::FieldFunction::modulus(to_field(sub(e, "f")));
}

geo::Domain to_domain(const Expr &e) {
  validate_as(e, Cat::Domain);
  if (e.name == "ball") {
    geo::Ball b;
    b.n = integer(e, "n");
    b.radius = num_or(e, "r", 1.0);
    b.center = sequence(e, "c", 1);
    return geo::Domain(b);
  }
  if (e.name == "ellipsoid") {
    geo::Ellipsoid el;
    for (const Pair &p : e.args) el.axes.push_back(p.value.number);
    return geo::Domain(el);
  }
  return geo::Domain(geo::RadialMap{integer(e, "n"), num(e, "g0"), num(e, "a")});
}

geo::NestedPair to_pair(const Expr &e) {
  validate_as(e, Cat::Pair);
  return geo::make_nested_pair(to_domain(sub(e, "outer")), to_domain(sub(e, "inner")));
}

ly::TestFunctionH to_test_function(const Expr &e) {
  validate_as(e, Cat::TestFunction);
  if (e.name == "barrier") return ly::TestFunctionH::barrier(num(e, "omega"), num_or(e, "kappa", ly::kKappa));
  if (e.name == "step") return ly::TestFunctionH::step(num(e, "a"), num(e, "b"), num(e, "eps"));
  return ly::TestFunctionH::tabulated(sequence(e, "x", 0), sequence(e, "v", 0));
}

fn::FieldFunction parse_field(std::string_view text) { return to_field(parse(text)); }
geo::Domain parse_domain(std::string_view text) { return to_domain(parse(text)); }

} // namespace kato::spec
