#ifndef DAOLAB_DSL_HPP
#define DAOLAB_DSL_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "field.hpp"
#include "ideal.hpp"
#include "parse.hpp"

namespace daolab::dsl {

// Session files:
//
//   statement  := (ring_decl | ideal_decl | command) ";"
//   ring_decl  := "ring" ID "=" field? "[" idlist "]" ("/" "(" polylist ")")? mode?
//   field      := "Q" | "F" natural
//   mode       := "graded" | "local"
//   ideal_decl := "ideal" ID "=" "(" polylist? ")"
//   command    := ("compute" | "verify" | "explore" | "resolve") arg*
//   arg        := ID ("=" (natural (".." natural)? | ID))?
//
// Polynomials are stored in canonical printed form over the declared field.

constexpr std::uint64_t kDefaultPrime = 32003;

struct Location {
  std::size_t line = 1;
  std::size_t column = 1;
  friend bool operator==(const Location&, const Location&) = default;
};

struct FieldSpec {
  bool rational = false;
  std::uint64_t prime = kDefaultPrime;

  std::string name() const { return rational ? "Q" : "F" + std::to_string(prime); }
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

struct RingDecl {
  std::string name;
  FieldSpec field;
  std::vector<std::string> vars;
  std::vector<std::string> relations;
  std::optional<RingMode> mode;
  friend bool operator==(const RingDecl&, const RingDecl&) = default;
};

struct IdealDecl {
  std::string name;
  std::string ring;
  std::vector<std::string> gens;
  friend bool operator==(const IdealDecl&, const IdealDecl&) = default;
};

struct Arg {
  std::string key;
  std::optional<std::string> value;
  friend bool operator==(const Arg&, const Arg&) = default;
};

struct Command {
  std::string verb;
  std::vector<Arg> args;

  std::optional<std::string> option(const std::string& key) const {
    for (const auto& a : args)
      if (a.key == key && a.value) return a.value;
    return std::nullopt;
  }
  /// Bare words, in order.
  std::vector<std::string> words() const {
    std::vector<std::string> out;
    for (const auto& a : args)
      if (!a.value) out.push_back(a.key);
    return out;
  }
  friend bool operator==(const Command&, const Command&) = default;
};

using Statement = std::variant<RingDecl, IdealDecl, Command>;

struct SessionScript {
  std::vector<Statement> statements;
  std::vector<Location> locations;  // parallel to statements; not compared

  const RingDecl* ring(const std::string& name) const {
    for (const auto& s : statements)
      if (auto r = std::get_if<RingDecl>(&s); r && r->name == name) return r;
    return nullptr;
  }
  const IdealDecl* ideal(const std::string& name) const {
    for (const auto& s : statements)
      if (auto i = std::get_if<IdealDecl>(&s); i && i->name == name) return i;
    return nullptr;
  }
  template <class T>
  std::vector<const T*> all() const {
    std::vector<const T*> out;
    for (const auto& s : statements)
      if (auto p = std::get_if<T>(&s)) out.push_back(p);
    return out;
  }

  friend bool operator==(const SessionScript& a, const SessionScript& b) { return a.statements == b.statements; }
};

inline const std::set<std::string>& scenario_names() {
  static const std::set<std::string> s{"main_inequality", "identity", "monotonicity", "socle_exactness", "regular",
                                       "examples"};
  return s;
}

namespace detail {

inline bool keyword_allowed(const std::string& verb, const std::string& w) {
  if (verb == "compute") return w == "dao";
  if (verb == "verify") return scenario_names().count(w) > 0;
  if (verb == "resolve") return w == "gr" || w == "quotient";
  return false;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : cur_(text) {}

  SessionScript run() {
    SessionScript out;
    while (!cur_.eof()) {
      Location loc{cur_.line(), cur_.column()};
      out.locations.push_back(loc);
      std::string kw = cur_.identifier();
      if (kw == "ring") {
        out.statements.push_back(ring_decl(loc));
      } else if (kw == "ideal") {
        out.statements.push_back(ideal_decl(loc));
      } else if (kw == "compute" || kw == "verify" || kw == "explore" || kw == "resolve") {
        out.statements.push_back(command(kw));
      } else {
        throw ParseError("unknown statement '" + kw + "'", loc.line, loc.column);
      }
      cur_.expect(';');
    }
    return out;
  }

 private:
  Location here() {
    cur_.peek();
    return {cur_.line(), cur_.column()};
  }

  template <class Field>
  std::vector<std::string> polylist(const Field& F, const std::vector<std::string>& vars, char close) {
    auto ring = PolyRing<Field>::make(F, vars);
    PolynomialReader<Field> reader(ring, cur_);
    std::vector<std::string> out;
    if (cur_.peek() == close) return out;
    do {
      out.push_back(reader.expression().to_string());
    } while (cur_.accept(','));
    return out;
  }

  std::vector<std::string> polylist(const FieldSpec& f, const std::vector<std::string>& vars, char close) {
    if (f.rational) return polylist(RationalField(), vars, close);
    return polylist(PrimeField(f.prime), vars, close);
  }

  FieldSpec field() {
    auto [line, col] = here();
    std::string id = cur_.identifier();
    FieldSpec f;
    if (id == "Q") {
      f.rational = true;
      return f;
    }
    if (id.size() >= 2 && id[0] == 'F' &&
        std::all_of(id.begin() + 1, id.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      if (id.size() > 11) throw ParseError("modulus too large: " + id.substr(1), line, col);
      std::uint64_t p = std::stoull(id.substr(1));
      if (!is_prime(p)) throw ParseError("composite modulus " + std::to_string(p), line, col);
      if (p < 3 || p >= (1ULL << 31)) throw ParseError("modulus out of range: " + std::to_string(p), line, col);
      f.prime = p;
      return f;
    }
    throw ParseError("unknown field '" + id + "'", line, col);
  }

  std::string fresh(const std::string& name, const Location& loc) {
    if (!declared_.insert(name).second) throw ParseError("duplicate declaration of '" + name + "'", loc.line, loc.column);
    return name;
  }

  RingDecl ring_decl(const Location&) {
    RingDecl r;
    Location at = here();
    r.name = fresh(cur_.identifier(), at);
    cur_.expect('=');
    if (cur_.peek() != '[') r.field = field();
    cur_.expect('[');
    std::set<std::string> seen;
    do {
      auto [line, col] = here();
      auto v = cur_.identifier();
      if (!seen.insert(v).second) throw ParseError("repeated variable '" + v + "'", line, col);
      r.vars.push_back(v);
    } while (cur_.accept(','));
    cur_.expect(']');
    if (cur_.accept('/')) {
      cur_.expect('(');
      r.relations = polylist(r.field, r.vars, ')');
      cur_.expect(')');
    }
    if (cur_.accept_word("graded")) {
      r.mode = RingMode::Graded;
    } else if (cur_.accept_word("local")) {
      r.mode = RingMode::Local;
    }
    rings_.push_back(r);
    return r;
  }

  IdealDecl ideal_decl(const Location& loc) {
    if (rings_.empty()) throw ParseError("ideal declared before any ring", loc.line, loc.column);
    const RingDecl& R = rings_.back();
    IdealDecl d;
    Location at = here();
    d.name = fresh(cur_.identifier(), at);
    d.ring = R.name;
    cur_.expect('=');
    cur_.expect('(');
    d.gens = polylist(R.field, R.vars, ')');
    cur_.expect(')');
    return d;
  }

  Command command(const std::string& verb) {
    Command c{verb, {}};
    while (cur_.peek() != ';' && !cur_.eof()) {
      auto [line, col] = here();
      Arg a{cur_.identifier(), std::nullopt};
      if (cur_.accept('=')) {
        if (cur_.at_number()) {
          std::string v = cur_.number().get_str();
          if (cur_.accept('.')) {
            cur_.expect('.');
            v += ".." + cur_.number().get_str();
          }
          a.value = v;
        } else {
          a.value = cur_.identifier();
        }
      } else if (!keyword_allowed(verb, a.key) && !declared_.count(a.key)) {
        throw ParseError("undeclared identifier '" + a.key + "'", line, col);
      }
      c.args.push_back(std::move(a));
    }
    return c;
  }

  Cursor cur_;
  std::set<std::string> declared_;
  std::vector<RingDecl> rings_;
};

}  // namespace detail

inline SessionScript parse_session(std::string_view text) { return detail::Parser(text).run(); }

/// Canonical source text; parse(print(s)) == s.
inline std::string print_session(const SessionScript& s) {
  std::ostringstream os;
  auto list = [&](const std::vector<std::string>& xs) {
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << xs[i];
  };
  for (const auto& st : s.statements) {
    if (auto r = std::get_if<RingDecl>(&st)) {
      os << "ring " << r->name << " = " << r->field.name() << "[";
      for (std::size_t i = 0; i < r->vars.size(); ++i) os << (i ? "," : "") << r->vars[i];
      os << "]";
      if (!r->relations.empty()) {
        os << "/(";
        list(r->relations);
        os << ")";
      }
      if (r->mode) os << " " << to_string(*r->mode);
    } else if (auto d = std::get_if<IdealDecl>(&st)) {
      os << "ideal " << d->name << " = (";
      list(d->gens);
      os << ")";
    } else {
      const auto& c = std::get<Command>(st);
      os << c.verb;
      for (const auto& a : c.args) os << " " << a.key << (a.value ? "=" + *a.value : "");
    }
    os << ";\n";
  }
  return os.str();
}

/// "line:col: message" followed by the offending line and a caret.
inline std::string diagnostic(const ParseError& e, std::string_view text, const std::string& file = "") {
  std::ostringstream os;
  if (!file.empty()) os << file << ":";
  os << e.line() << ":" << e.column() << ": error: " << e.what() << "\n";
  std::size_t line = 1, start = 0;
  for (std::size_t i = 0; i < text.size() && line < e.line(); ++i)
    if (text[i] == '\n') {
      ++line;
      start = i + 1;
    }
  std::size_t end = text.find('\n', start);
  std::string_view src = text.substr(start, end == std::string_view::npos ? text.size() - start : end - start);
  os << "  " << src << "\n  " << std::string(e.column() > 0 ? e.column() - 1 : 0, ' ') << "^\n";
  return os.str();
}

}  // namespace daolab::dsl

#endif  // DAOLAB_DSL_HPP
