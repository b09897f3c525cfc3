#include "bfoml/fo.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>

#include <json.hpp>

#include "bfoml/error.hpp"
#include "bfoml/syntax.hpp"

namespace bfoml {

FOMatrix FOMatrix::atom(Var x, Var y) {
  FOMatrix m;
  m.kind = Kind::Atom;
  m.x = std::move(x);
  m.y = std::move(y);
  return m;
}

FOMatrix FOMatrix::negation(FOMatrix a) {
  FOMatrix m;
  m.kind = Kind::Not;
  m.sub.push_back(std::move(a));
  return m;
}

FOMatrix FOMatrix::binary(Kind k, FOMatrix a, FOMatrix b) {
  FOMatrix m;
  m.kind = k;
  m.sub.push_back(std::move(a));
  m.sub.push_back(std::move(b));
  return m;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Ex, All, Dot, LParen, RParen, Comma, Bang, Amp, Bar, Arrow, Ident, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, column;
};

std::vector<Token> lex_fo(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const std::size_t l = line, k = col;
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", l, k});
      advance(2);
      continue;
    }
    static const std::map<char, Tok> single = {{'.', Tok::Dot},   {'(', Tok::LParen},
                                               {')', Tok::RParen}, {',', Tok::Comma},
                                               {'!', Tok::Bang},  {'&', Tok::Amp},
                                               {'|', Tok::Bar}};
    if (auto it = single.find(c); it != single.end()) {
      out.push_back({it->second, std::string(1, c), l, k});
      advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      std::string word(src.substr(i, j - i));
      const Tok kind = word == "EX" ? Tok::Ex : word == "ALL" ? Tok::All : Tok::Ident;
      out.push_back({kind, std::move(word), l, k});
      advance(j - i);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", l, k);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class FOParser {
 public:
  explicit FOParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  FOFormula parse() {
    FOFormula f;
    VarSet bound;
    while (peek().kind == Tok::Ex || peek().kind == Tok::All) {
      const Quantifier q = next().kind == Tok::Ex ? Quantifier::Exists : Quantifier::Forall;
      Var v = variable();
      expect(Tok::Dot, "'.'");
      if (!bound.insert(v).second) {
        throw FOFormulaError("prefix binds " + v.str() + " twice");
      }
      f.prefix.emplace_back(q, std::move(v));
    }
    f.matrix = implication();
    if (peek().kind != Tok::End) fail("expected end of input, got " + describe(peek()));
    for (const Var& v : vars_) {
      if (!bound.count(v)) {
        throw FOFormulaError("not a sentence: " + v.str() + " is free");
      }
    }
    return f;
  }

 private:
  static std::string describe(const Token& t) {
    return t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
  }
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().column);
  }
  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what + ", got " + describe(peek()));
    next();
  }

  Var variable() {
    if (peek().kind != Tok::Ident) fail("expected a variable, got " + describe(peek()));
    return Var(next().text);
  }

  FOMatrix implication() {
    FOMatrix lhs = disjunction();
    if (peek().kind != Tok::Arrow) return lhs;
    next();
    return FOMatrix::binary(FOMatrix::Kind::Implies, std::move(lhs), implication());
  }

  FOMatrix disjunction() {
    FOMatrix lhs = conjunction();
    while (peek().kind == Tok::Bar) {
      next();
      lhs = FOMatrix::binary(FOMatrix::Kind::Or, std::move(lhs), conjunction());
    }
    return lhs;
  }

  FOMatrix conjunction() {
    FOMatrix lhs = unary();
    while (peek().kind == Tok::Amp) {
      next();
      lhs = FOMatrix::binary(FOMatrix::Kind::And, std::move(lhs), unary());
    }
    return lhs;
  }

  FOMatrix unary() {
    switch (peek().kind) {
      case Tok::Bang:
        next();
        return FOMatrix::negation(unary());
      case Tok::LParen: {
        next();
        FOMatrix m = implication();
        expect(Tok::RParen, "')'");
        return m;
      }
      case Tok::Ex:
      case Tok::All:
        throw FOFormulaError("not prenex: quantifier " + peek().text + " inside the matrix");
      case Tok::Ident:
        return atom();
      default:
        fail("expected a formula, got " + describe(peek()));
    }
  }

  FOMatrix atom() {
    const Token name = next();
    if (name.text != "R") {
      throw FOFormulaError("unknown predicate " + name.text + "; only R is available");
    }
    expect(Tok::LParen, "'('");
    Var x = variable();
    expect(Tok::Comma, "',' (R is binary)");
    Var y = variable();
    expect(Tok::RParen, "')' (R is binary)");
    vars_.insert(x);
    vars_.insert(y);
    return FOMatrix::atom(std::move(x), std::move(y));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  VarSet vars_;
};

}  // namespace

FOFormula parse_fo(std::string_view text) { return FOParser(lex_fo(text)).parse(); }

std::string to_string(const FOMatrix& m) {
  using K = FOMatrix::Kind;
  switch (m.kind) {
    case K::Atom:
      return "R(" + m.x.str() + "," + m.y.str() + ")";
    case K::Not:
      return "!" + to_string(m.sub[0]);
    case K::And:
      return "(" + to_string(m.sub[0]) + " & " + to_string(m.sub[1]) + ")";
    case K::Or:
      return "(" + to_string(m.sub[0]) + " | " + to_string(m.sub[1]) + ")";
    case K::Implies:
      return "(" + to_string(m.sub[0]) + " -> " + to_string(m.sub[1]) + ")";
  }
  return "";
}

std::string to_string(const FOFormula& f) {
  std::string out;
  for (const auto& [q, v] : f.prefix) {
    out += (q == Quantifier::Exists ? "EX " : "ALL ") + v.str() + " . ";
  }
  return out + to_string(f.matrix);
}

// ---------------------------------------------------------------------------
// Models

std::string fo_model_to_json(const FOModel& m, int indent) {
  nlohmann::ordered_json out;
  out["domain"] = m.domain;
  out["R"] = nlohmann::ordered_json::array();
  for (const auto& [a, b] : m.r) out["R"].push_back({a, b});
  return out.dump(indent);
}

FOModel fo_model_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ModelError(std::string("malformed FO model JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("domain") || !j["domain"].is_array()) {
    throw ModelError("FO model JSON needs a \"domain\" array");
  }
  FOModel m;
  for (const auto& e : j["domain"]) {
    if (!e.is_string()) throw ModelError("domain elements must be strings");
    m.domain.push_back(e.get<std::string>());
  }
  const std::set<std::string> dom(m.domain.begin(), m.domain.end());
  if (dom.empty()) throw ModelError("domain is empty");
  if (dom.size() != m.domain.size()) throw ModelError("domain repeats an element");
  if (j.contains("R")) {
    if (!j["R"].is_array()) throw ModelError("\"R\" must be an array of pairs");
    for (const auto& p : j["R"]) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
        throw ModelError("\"R\" must be an array of pairs of strings");
      }
      std::string a = p[0].get<std::string>(), b = p[1].get<std::string>();
      if (!dom.count(a) || !dom.count(b)) {
        throw ModelError("R mentions (" + a + "," + b + ") outside the domain");
      }
      m.r.emplace(std::move(a), std::move(b));
    }
  }
  return m;
}

namespace {

bool eval_matrix(const FOModel& m, const FOMatrix& f, const std::map<Var, std::string>& env) {
  using K = FOMatrix::Kind;
  switch (f.kind) {
    case K::Atom:
      return m.r.count({env.at(f.x), env.at(f.y)}) != 0;
    case K::Not:
      return !eval_matrix(m, f.sub[0], env);
    case K::And:
      return eval_matrix(m, f.sub[0], env) && eval_matrix(m, f.sub[1], env);
    case K::Or:
      return eval_matrix(m, f.sub[0], env) || eval_matrix(m, f.sub[1], env);
    case K::Implies:
      return !eval_matrix(m, f.sub[0], env) || eval_matrix(m, f.sub[1], env);
  }
  return false;
}

bool eval_prefix(const FOModel& m, const FOFormula& f, std::size_t i,
                 std::map<Var, std::string>& env) {
  if (i == f.prefix.size()) return eval_matrix(m, f.matrix, env);
  const auto& [q, v] = f.prefix[i];
  for (const auto& d : m.domain) {
    env[v] = d;
    const bool sub = eval_prefix(m, f, i + 1, env);
    if (q == Quantifier::Exists && sub) return true;
    if (q == Quantifier::Forall && !sub) return false;
  }
  return q == Quantifier::Forall;
}

// Visits every model up to max_domain elements; stops when visit returns true.
void for_each_model(std::size_t max_domain, const std::function<bool(const FOModel&)>& visit) {
  for (std::size_t k = 1; k <= max_domain; ++k) {
    FOModel m;
    for (std::size_t i = 0; i < k; ++i) m.domain.push_back("d" + std::to_string(i));
    const std::size_t pairs = k * k;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      m.r.clear();
      for (std::size_t p = 0; p < pairs; ++p) {
        if (mask >> p & 1) m.r.emplace(m.domain[p / k], m.domain[p % k]);
      }
      if (visit(m)) return;
    }
  }
}

}  // namespace

bool fo_check(const FOModel& m, const FOFormula& f) {
  std::map<Var, std::string> env;
  return eval_prefix(m, f, 0, env);
}

std::optional<FOModel> fo_enumerate_sat(const FOFormula& f, std::size_t max_domain) {
  std::optional<FOModel> out;
  for_each_model(max_domain, [&](const FOModel& m) {
    if (fo_check(m, f)) out = m;
    return out.has_value();
  });
  return out;
}

std::vector<FOModel> fo_models(const FOFormula& f, std::size_t max_domain) {
  std::vector<FOModel> out;
  for_each_model(max_domain, [&](const FOModel& m) {
    if (fo_check(m, f)) out.push_back(m);
    return false;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Translation

namespace {

void matrix_vars(const FOMatrix& m, VarSet& out) {
  if (m.kind == FOMatrix::Kind::Atom) {
    out.insert(m.x);
    out.insert(m.y);
  }
  for (const FOMatrix& s : m.sub) matrix_vars(s, out);
}

// Reused binder names are left for cleanse to separate.
Formula translate_raw(const FOMatrix& m, const Var& z) {
  using K = FOMatrix::Kind;
  switch (m.kind) {
    case K::Atom:
      return Formula::exists_diamond(
          z, Formula::conjunction(Formula::atom("P", {m.x}), Formula::atom("Q", {m.y})));
    case K::Not:
      return Formula::negation(translate_raw(m.sub[0], z));
    case K::And:
      return Formula::conjunction(translate_raw(m.sub[0], z), translate_raw(m.sub[1], z));
    case K::Or:
      return Formula::disjunction(translate_raw(m.sub[0], z), translate_raw(m.sub[1], z));
    case K::Implies:
      return Formula::implication(translate_raw(m.sub[0], z), translate_raw(m.sub[1], z));
  }
  return Formula::top();
}

// `base` itself if unused, otherwise the next indexed variant.
Var pick(const std::string& base, FreshVars& fresh) {
  Var v(base, 0);
  if (!fresh.taken(v)) {
    fresh.reserve(v);
    return v;
  }
  return fresh.fresh(base);
}

}  // namespace

Formula translate_qf(const FOMatrix& m) {
  VarSet used;
  matrix_vars(m, used);
  FreshVars fresh(used);
  return cleanse(translate_raw(m, pick("z", fresh)));
}

Formula translate_sentence(const FOFormula& f) {
  const std::size_t n = f.prefix.size();
  if (n == 0) throw FOFormulaError("translation needs at least one quantifier");
  VarSet used;
  matrix_vars(f.matrix, used);
  for (const auto& [q, v] : f.prefix) used.insert(v);
  FreshVars fresh(used);
  const Var z = pick("z", fresh);
  const Var z1 = pick("z1", fresh);
  const Var z2 = pick("z2", fresh);

  Formula psi1 = translate_raw(f.matrix, z);
  for (auto it = f.prefix.rbegin(); it != f.prefix.rend(); ++it) {
    psi1 = it->first == Quantifier::Exists ? Formula::exists_diamond(it->second, psi1)
                                           : Formula::forall_box(it->second, psi1);
  }

  const Formula fact = Formula::exists_diamond(
      z, Formula::conjunction(Formula::atom("P", {z1}), Formula::atom("Q", {z2})));
  Formula some = fact, every = fact;
  for (std::size_t i = 0; i < n; ++i) {
    some = Formula::exists_diamond(z, some);
    every = Formula::forall_box(z, every);
  }
  const Formula psi2 =
      Formula::forall_box(z1, Formula::forall_box(z2, Formula::implication(some, every)));

  std::optional<Formula> psi3;
  Formula tower = Formula::exists_diamond(z, Formula::top());
  for (std::size_t j = 1; j <= n + 2; ++j) {
    tower = Formula::forall_box(z, tower);
    psi3 = psi3 ? Formula::conjunction(*psi3, tower) : tower;
  }

  return cleanse(Formula::conjunction(Formula::conjunction(psi1, psi2), *psi3));
}

// ---------------------------------------------------------------------------
// Witness models

namespace {

KripkeModel path_and_fan(const FOModel& m, std::vector<std::string> chain) {
  KripkeModel k;
  k.domain = m.domain;
  k.worlds = chain;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) k.edges.emplace_back(chain[i], chain[i + 1]);
  for (const auto& d : m.domain) {
    const std::string u = "u_" + d;
    k.worlds.push_back(u);
    k.edges.emplace_back(chain.back(), u);
    k.rho[u]["P"].insert({d});
    for (const auto& [a, b] : m.r) {
      if (a == d) k.rho[u]["Q"].insert({b});
    }
  }
  return k;
}

void constant_domains(KripkeModel& k) {
  const std::set<std::string> all(k.domain.begin(), k.domain.end());
  for (const auto& w : k.worlds) k.local[w] = all;
}

std::vector<std::string> chain_worlds(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("w" + std::to_string(i));
  return out;
}

}  // namespace

KripkeModel build_witness_model(const FOModel& m, const FOFormula& f) {
  std::vector<std::string> chain{"v1", "v2"};
  for (auto& w : chain_worlds(f.prefix.size())) chain.push_back(std::move(w));
  KripkeModel k = path_and_fan(m, std::move(chain));
  constant_domains(k);
  return k;
}

KripkeModel build_witness_model_repaired(const FOModel& m, const FOFormula& f) {
  std::vector<std::string> chain{"v1"};
  for (auto& w : chain_worlds(f.prefix.size())) chain.push_back(std::move(w));
  KripkeModel k = path_and_fan(m, std::move(chain));
  k.worlds.push_back("t");
  for (const auto& d : m.domain) k.edges.emplace_back("u_" + d, "t");
  k.edges.emplace_back("t", "t");
  constant_domains(k);
  return k;
}

}  // namespace bfoml
