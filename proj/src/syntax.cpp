#include "pfpc/syntax.hpp"

#include <cctype>
#include <set>
#include <vector>

#include "pfpc/derived.hpp"

namespace pfpc {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Ident, Int, Decimal, Symbol, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

const std::set<std::string> kKeywords = {"fn",  "let", "in",   "case",   "of",  "inl", "inr",
                                         "fst", "snd", "fold", "unfold", "fix", "or",  "mu",
                                         "tt",  "ff",  "Bool", "Nat"};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "--") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    int l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
        ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      Tok kind = Tok::Int;
      if (j + 1 < src.size() && src[j] == '.' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        kind = Tok::Decimal;
      }
      out.push_back({kind, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    for (std::string_view sym : {"=>", "->"}) {
      if (src.substr(i, 2) == sym) {
        out.push_back({Tok::Symbol, std::string(sym), l, cl});
        advance(2);
        goto next;
      }
    }
    if (std::string_view("(),:+*.[]|=/").find(c) != std::string_view::npos) {
      out.push_back({Tok::Symbol, std::string(1, c), l, cl});
      advance(1);
      continue;
    }
    throw ParseError(l, cl, std::string("unexpected character '") + c + "'");
  next:;
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Type whole_type() {
    Type t = type();
    expect_end();
    return t;
  }

  Term whole_term() {
    Term t = term();
    expect_end();
    return t;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(std::string_view text) const {
    const Token& t = peek();
    return (t.kind == Tok::Symbol || t.kind == Tok::Ident || t.kind == Tok::Int) && t.text == text;
  }
  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.column, message + ", found " + found);
  }
  void expect(std::string_view text) {
    if (!at(text)) fail("expected '" + std::string(text) + "'");
    ++pos_;
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail("expected end of input");
  }
  std::string ident() {
    const Token& t = peek();
    if (t.kind != Tok::Ident || kKeywords.contains(t.text)) fail("expected an identifier");
    ++pos_;
    return t.text;
  }

  // -- types -----------------------------------------------------------------

  Type type() {
    if (at("mu")) {
      ++pos_;
      std::string x = ident();
      expect(".");
      return Type::mu(x, type());
    }
    Type left = sum_type();
    if (at("->")) {
      ++pos_;
      return Type::arrow(left, type());
    }
    return left;
  }

  Type sum_type() {
    Type left = prod_type();
    while (at("+")) {
      ++pos_;
      left = Type::sum(left, prod_type());
    }
    return left;
  }

  Type prod_type() {
    Type left = atom_type();
    while (at("*")) {
      ++pos_;
      left = Type::prod(left, atom_type());
    }
    return left;
  }

  Type atom_type() {
    const Token& t = peek();
    if (at("mu")) return type();
    if (at("(")) {
      ++pos_;
      Type inner = type();
      expect(")");
      return inner;
    }
    if (t.kind == Tok::Int && t.text == "0") {
      ++pos_;
      return empty_type();
    }
    if (t.kind == Tok::Int && t.text == "1") {
      ++pos_;
      return unit_type();
    }
    if (at("Bool")) {
      ++pos_;
      return bool_type();
    }
    if (at("Nat")) {
      ++pos_;
      return nat_type();
    }
    if (t.kind == Tok::Ident && !kKeywords.contains(t.text)) return Type::var(ident());
    fail("expected a type");
  }

  Type bracket_type() {
    expect("[");
    Type t = type();
    expect("]");
    return t;
  }

  // -- terms -----------------------------------------------------------------

  bool at_binder_form() const { return at("fn") || at("let") || at("case"); }

  bool at_prefix_start() const {
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      if (!kKeywords.contains(t.text)) return true;
      static const std::set<std::string> starters = {"fst",    "snd", "inl", "inr", "fold",
                                                     "unfold", "fix", "tt",  "ff"};
      return starters.contains(t.text);
    }
    return at("(");
  }

  Term term() {
    if (at("fn")) {
      ++pos_;
      std::string x = ident();
      std::optional<Type> domain;
      if (at(":")) {
        ++pos_;
        domain = type();
      }
      expect("=>");
      return Term::lam(x, domain, term());
    }
    if (at("let")) {
      ++pos_;
      std::string x = ident();
      std::optional<Type> domain;
      if (at(":")) {
        ++pos_;
        domain = type();
      }
      expect("=");
      Term bound = term();
      expect("in");
      Term body = term();
      return Term::app(Term::lam(x, domain, body), bound);
    }
    if (at("case")) {
      ++pos_;
      Term scrutinee = term();
      expect("of");
      expect("inl");
      std::string x = ident();
      expect("=>");
      Term left = term();
      expect("|");
      expect("inr");
      std::string y = ident();
      expect("=>");
      Term right = term();
      return Term::case_of(scrutinee, x, left, y, right);
    }
    Term left = application();
    if (at("or")) {
      ++pos_;
      expect("[");
      Rational p = rational();
      expect("]");
      Term right = term();
      return Term::choice(p, left, right);
    }
    return left;
  }

  Rational rational() {
    const Token& t = peek();
    std::string text;
    if (t.kind == Tok::Decimal) {
      text = t.text;
      ++pos_;
    } else if (t.kind == Tok::Int) {
      text = t.text;
      ++pos_;
      if (at("/")) {
        ++pos_;
        if (peek().kind != Tok::Int) fail("expected a denominator");
        text += "/" + peek().text;
        ++pos_;
      }
    } else {
      fail("expected a probability");
    }
    Rational p;
    try {
      p = parse_rational(text);
    } catch (const std::invalid_argument& e) {
      throw ParseError(t.line, t.column, e.what());
    }
    if (!is_probability(p)) throw ParseError(t.line, t.column, "probability " + text + " is outside [0,1]");
    return p;
  }

  Term application() {
    if (!at_prefix_start()) fail("expected a term");
    Term fn = prefix();
    while (true) {
      if (at_binder_form()) return Term::app(fn, term());
      if (!at_prefix_start()) return fn;
      fn = Term::app(fn, prefix());
    }
  }

  Term prefix_arg() { return at_binder_form() ? term() : prefix(); }

  Term prefix() {
    if (at("fst") || at("snd")) {
      int index = at("fst") ? 1 : 2;
      ++pos_;
      return Term::proj(index, prefix_arg());
    }
    if (at("inl") || at("inr")) {
      int index = at("inl") ? 1 : 2;
      ++pos_;
      std::optional<Type> annotation;
      if (at("[")) annotation = bracket_type();
      return Term::inj(index, prefix_arg(), annotation);
    }
    if (at("fold")) {
      ++pos_;
      Type annotation = bracket_type();
      return Term::fold(annotation, prefix_arg());
    }
    if (at("unfold")) {
      ++pos_;
      return Term::unfold(prefix_arg());
    }
    if (at("fix")) {
      const Token& t = peek();
      ++pos_;
      Type fn_type = bracket_type();
      auto arrow = fn_type.as<ty::Arrow>();
      if (!arrow) throw ParseError(t.line, t.column, "fix needs a function type A -> B");
      return Term::app(derived::fix(arrow->domain, arrow->codomain), prefix_arg());
    }
    return atom();
  }

  Term atom() {
    if (at("tt")) {
      ++pos_;
      return derived::tt();
    }
    if (at("ff")) {
      ++pos_;
      return derived::ff();
    }
    if (at("(")) {
      ++pos_;
      if (at(")")) {
        ++pos_;
        return derived::unit_value();
      }
      Term first = term();
      if (at(",")) {
        ++pos_;
        Term second = term();
        expect(")");
        return Term::pair(first, second);
      }
      expect(")");
      return first;
    }
    return Term::var(ident());
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// -- printing ----------------------------------------------------------------

bool is_unit_value(const Term& m) {
  auto lam = m.as<tm::Lam>();
  if (!lam || !lam->domain || !alpha_equal(*lam->domain, empty_type())) return false;
  auto v = lam->body.as<tm::Var>();
  return v && v->name == lam->binder;
}

// Levels: 0 binder forms and `or`, 1 application, 2 prefix keywords, 3 atoms.
void print(const Term& m, int ctx, std::string& out) {
  auto wrap = [&](int level, auto body) {
    bool parens = level < ctx;
    if (parens) out += "(";
    body();
    if (parens) out += ")";
  };

  if (auto v = m.as<tm::Var>()) {
    out += v->name;
  } else if (auto p = m.as<tm::Pair>()) {
    out += "(";
    print(p->first, 0, out);
    out += ", ";
    print(p->second, 0, out);
    out += ")";
  } else if (auto p = m.as<tm::Proj>()) {
    wrap(2, [&] {
      out += p->index == 1 ? "fst " : "snd ";
      print(p->arg, 2, out);
    });
  } else if (auto i = m.as<tm::Inj>()) {
    if (i->annotation && alpha_equal(*i->annotation, bool_type()) && is_unit_value(i->arg)) {
      out += i->index == 1 ? "ff" : "tt";
      return;
    }
    wrap(2, [&] {
      out += i->index == 1 ? "inl" : "inr";
      if (i->annotation) out += "[" + pretty(*i->annotation) + "]";
      out += " ";
      print(i->arg, 2, out);
    });
  } else if (auto c = m.as<tm::Case>()) {
    wrap(0, [&] {
      out += "case ";
      print(c->scrutinee, 0, out);
      out += " of inl " + c->left_binder + " => ";
      print(c->left_body, c->left_body.as<tm::Case>() ? 3 : 0, out);
      out += " | inr " + c->right_binder + " => ";
      print(c->right_body, 0, out);
    });
  } else if (auto l = m.as<tm::Lam>()) {
    if (is_unit_value(m)) {
      out += "()";
      return;
    }
    wrap(0, [&] {
      out += "fn " + l->binder;
      if (l->domain) out += " : " + pretty(*l->domain);
      out += " => ";
      print(l->body, 0, out);
    });
  } else if (auto a = m.as<tm::App>()) {
    auto head = a->fn.as<tm::Lam>();
    if (head && !head->domain) {
      wrap(0, [&] {
        out += "let " + head->binder + " = ";
        print(a->arg, 0, out);
        out += " in ";
        print(head->body, 0, out);
      });
    } else if (auto fix = head ? derived::match_fix(a->fn) : std::nullopt) {
      wrap(2, [&] {
        out += "fix[" + pretty(Type::arrow(fix->first, fix->second)) + "] ";
        print(a->arg, 2, out);
      });
    } else {
      wrap(1, [&] {
        print(a->fn, 1, out);
        out += " ";
        print(a->arg, 2, out);
      });
    }
  } else if (auto f = m.as<tm::Fold>()) {
    wrap(2, [&] {
      out += "fold[" + pretty(f->annotation) + "] ";
      print(f->arg, 2, out);
    });
  } else if (auto u = m.as<tm::Unfold>()) {
    wrap(2, [&] {
      out += "unfold ";
      print(u->arg, 2, out);
    });
  } else if (auto o = m.as<tm::Or>()) {
    wrap(0, [&] {
      print(o->left, 1, out);
      out += " or[" + to_string(o->p) + "] ";
      print(o->right, 0, out);
    });
  }
}

}  // namespace

Type parse_type(std::string_view source) { return Parser(source).whole_type(); }

Term parse_term(std::string_view source) { return Parser(source).whole_term(); }

std::string pretty(const Term& m) {
  std::string out;
  print(m, 0, out);
  return out;
}

}  // namespace pfpc
