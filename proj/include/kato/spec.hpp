#pragma once

// The specification mini-grammar for functions, domains and test functions:
//
//   expr := ident '(' [pair (',' pair)*] ')'
//   pair := ident '=' (number | expr)
//
// Numbers are decimal with an optional exponent. parse() checks the family
// tables, so every returned tree names a registered family with valid keys.

#include "kato/error.hpp"
#include "kato/functions.hpp"
#include "kato/geometry.hpp"
#include "kato/liebyau.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace kato::spec {

struct Expr;

struct Value {
  double number = 0.0;
  std::vector<Expr> nested; // one element for an expression value

  bool is_expr() const { return !nested.empty(); }
  const Expr &expr() const { return nested.front(); }
};

struct Pair {
  std::string key;
  Value value;
};

struct Expr {
  std::string name;
  std::vector<Pair> args;

  const Value *find(std::string_view key) const;
};

bool operator==(const Expr &a, const Expr &b);
bool operator==(const Value &a, const Value &b);

class SyntaxError : public Error {
public:
  SyntaxError(std::size_t offset, const std::string &what)
      : Error(ErrorKind::SyntaxError, "at byte " + std::to_string(offset) + ": " + what),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

// Grammar only; no family checks.
Expr parse_tree(std::string_view text);
// Grammar plus family tables (UnknownFamily, BadArity).
Expr parse(std::string_view text);
void validate(const Expr &e);
std::string print(const Expr &e);

bool is_profile(const Expr &e);
bool is_field(const Expr &e);
bool is_domain(const Expr &e);

fn::RadialProfile to_profile(const Expr &e);
// A bare profile is read as the radial field with that profile.
fn::FieldFunction to_field(const Expr &e);
geo::Domain to_domain(const Expr &e);
geo::NestedPair to_pair(const Expr &e);
ly::TestFunctionH to_test_function(const Expr &e);

fn::FieldFunction parse_field(std::string_view text);
geo::Domain parse_domain(std::string_view text);

} // namespace kato::spec
