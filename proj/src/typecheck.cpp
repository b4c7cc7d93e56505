#include "pfpc/typecheck.hpp"

#include <algorithm>
#include <set>

#include "pfpc/syntax.hpp"

namespace pfpc {

std::string to_string(TypeErrorKind kind) {
  switch (kind) {
    case TypeErrorKind::UnboundVariable: return "unbound variable";
    case TypeErrorKind::Mismatch: return "type mismatch";
    case TypeErrorKind::IllFormedContext: return "ill-formed context";
    case TypeErrorKind::NonClosedType: return "non-closed type";
    case TypeErrorKind::AnnotationMismatch: return "annotation mismatch";
  }
  return "type error";
}

namespace {

std::string describe(TypeErrorKind kind, const std::string& rule, const std::string& location,
                     const std::string& detail) {
  return to_string(kind) + " [rule: " + rule + "] at `" + location + "`: " + detail;
}

std::string excerpt(const Term& m) {
  std::string s = pretty(m);
  if (s.size() > 72) s = s.substr(0, 69) + "...";
  return s;
}

// Scoped context. Rebinding a name shadows the earlier entry, which is the
// same as renaming the inner binder apart.
class Scope {
 public:
  explicit Scope(const TermCtx& base) : entries_(base) {}

  const Type* lookup(const std::string& x) const {
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
      if (it->first == x) return &it->second;
    return nullptr;
  }
  void push(const std::string& x, const Type& a) { entries_.emplace_back(x, a); }
  void pop() { entries_.pop_back(); }

 private:
  TermCtx entries_;
};

void require_closed(const Type& a, const std::string& rule, const Term& where) {
  try {
    wf_type({}, a);
  } catch (const TypeError& e) {
    throw TypeError(TypeErrorKind::NonClosedType, rule, excerpt(where),
                    "annotation " + pretty(a) + " is not a closed well-formed type");
  }
}

class Checker {
 public:
  explicit Checker(const TermCtx& gamma) : scope_(gamma) {}

  Type infer(const Term& m) {
    if (auto v = m.as<tm::Var>()) {
      if (auto a = scope_.lookup(v->name)) return *a;
      throw TypeError(TypeErrorKind::UnboundVariable, "variable", v->name,
                      "variable '" + v->name + "' is not in the context");
    }
    if (auto p = m.as<tm::Pair>()) return Type::prod(infer(p->first), infer(p->second));
    if (auto p = m.as<tm::Proj>()) {
      Type a = infer(p->arg);
      auto prod = a.as<ty::Prod>();
      if (!prod)
        throw TypeError(TypeErrorKind::Mismatch, "projection", excerpt(m),
                        "projecting from a non-product of type " + pretty(a), std::nullopt, a);
      return p->index == 1 ? prod->left : prod->right;
    }
    if (auto i = m.as<tm::Inj>()) {
      if (!i->annotation)
        throw TypeError(TypeErrorKind::AnnotationMismatch, "injection", excerpt(m),
                        "cannot infer the sum type of an unannotated injection here; write inl[A + B]");
      require_closed(*i->annotation, "injection", m);
      check_inj(m, *i, *i->annotation);
      return *i->annotation;
    }
    if (auto c = m.as<tm::Case>()) {
      auto [left, right] = scrutinee_sum(m, c->scrutinee);
      // Synthesize from whichever branch can, check the other against it.
      std::optional<Type> result;
      try {
        result = infer_bound(c->left_binder, left, c->left_body);
      } catch (const TypeError&) {
        Type b = infer_bound(c->right_binder, right, c->right_body);
        check_bound(c->left_binder, left, c->left_body, b);
        return b;
      }
      check_bound(c->right_binder, right, c->right_body, *result);
      return *result;
    }
    if (auto l = m.as<tm::Lam>()) {
      if (!l->domain)
        throw TypeError(TypeErrorKind::AnnotationMismatch, "abstraction", excerpt(m),
                        "lambda needs a domain annotation outside `let`");
      require_closed(*l->domain, "abstraction", m);
      return Type::arrow(*l->domain, infer_bound(l->binder, *l->domain, l->body));
    }
    if (auto a = m.as<tm::App>()) {
      if (auto head = a->fn.as<tm::Lam>(); head && !head->domain) {
        Type bound = infer(a->arg);
        return infer_bound(head->binder, bound, head->body);
      }
      Type f = infer(a->fn);
      auto arrow = f.as<ty::Arrow>();
      if (!arrow)
        throw TypeError(TypeErrorKind::Mismatch, "application", excerpt(m),
                        "applying a term of non-function type " + pretty(f), std::nullopt, f);
      check(a->arg, arrow->domain, "application");
      return arrow->codomain;
    }
    if (auto f = m.as<tm::Fold>()) {
      require_closed(f->annotation, "fold", m);
      if (!f->annotation.as<ty::Mu>())
        throw TypeError(TypeErrorKind::AnnotationMismatch, "fold", excerpt(m),
                        "fold annotation " + pretty(f->annotation) + " is not a recursive type");
      check(f->arg, unfold_mu(f->annotation), "fold");
      return f->annotation;
    }
    if (auto u = m.as<tm::Unfold>()) {
      Type a = infer(u->arg);
      if (!a.as<ty::Mu>())
        throw TypeError(TypeErrorKind::Mismatch, "unfold", excerpt(m),
                        "unfolding a term of non-recursive type " + pretty(a), std::nullopt, a);
      return unfold_mu(a);
    }
    auto o = m.as<tm::Or>();
    std::optional<Type> a;
    try {
      a = infer(o->left);
    } catch (const TypeError&) {
      Type b = infer(o->right);
      check(o->left, b, "probabilistic choice");
      return b;
    }
    check(o->right, *a, "probabilistic choice");
    return *a;
  }

  void check(const Term& m, const Type& a, const std::string& rule) {
    if (auto i = m.as<tm::Inj>()) {
      if (i->annotation) {
        require_closed(*i->annotation, "injection", m);
        if (!alpha_equal(*i->annotation, a))
          throw TypeError(TypeErrorKind::AnnotationMismatch, "injection", excerpt(m),
                          "annotation " + pretty(*i->annotation) + " where " + pretty(a) + " is required", a,
                          *i->annotation);
      }
      check_inj(m, *i, a);
      return;
    }
    if (auto l = m.as<tm::Lam>()) {
      auto arrow = a.as<ty::Arrow>();
      if (!arrow)
        throw TypeError(TypeErrorKind::Mismatch, rule, excerpt(m),
                        "a function where " + pretty(a) + " is required", a, quiet_infer(m));
      if (l->domain) {
        require_closed(*l->domain, "abstraction", m);
        if (!alpha_equal(*l->domain, arrow->domain))
          throw TypeError(TypeErrorKind::AnnotationMismatch, "abstraction", excerpt(m),
                          "domain " + pretty(*l->domain) + " where " + pretty(arrow->domain) + " is required",
                          arrow->domain, *l->domain);
      }
      check_bound(l->binder, arrow->domain, l->body, arrow->codomain);
      return;
    }
    if (auto p = m.as<tm::Pair>()) {
      auto prod = a.as<ty::Prod>();
      if (!prod)
        throw TypeError(TypeErrorKind::Mismatch, "pairing", excerpt(m),
                        "a pair where " + pretty(a) + " is required", a, quiet_infer(m));
      check(p->first, prod->left, "pairing");
      check(p->second, prod->right, "pairing");
      return;
    }
    if (auto o = m.as<tm::Or>()) {
      check(o->left, a, "probabilistic choice");
      check(o->right, a, "probabilistic choice");
      return;
    }
    if (auto c = m.as<tm::Case>()) {
      auto [left, right] = scrutinee_sum(m, c->scrutinee);
      check_bound(c->left_binder, left, c->left_body, a);
      check_bound(c->right_binder, right, c->right_body, a);
      return;
    }
    if (auto ap = m.as<tm::App>()) {
      if (auto head = ap->fn.as<tm::Lam>(); head && !head->domain) {
        Type bound = infer(ap->arg);
        check_bound(head->binder, bound, head->body, a);
        return;
      }
    }
    Type actual = infer(m);
    if (!alpha_equal(actual, a))
      throw TypeError(TypeErrorKind::Mismatch, rule, excerpt(m),
                      "expected " + pretty(a) + " but found " + pretty(actual), a, actual);
  }

 private:
  std::optional<Type> quiet_infer(const Term& m) {
    try {
      return infer(m);
    } catch (const TypeError&) {
      return std::nullopt;
    }
  }

  void check_inj(const Term& m, const tm::Inj& i, const Type& a) {
    auto sum = a.as<ty::Sum>();
    if (!sum)
      throw TypeError(TypeErrorKind::Mismatch, "injection", excerpt(m),
                      "an injection where " + pretty(a) + " is required", a, quiet_infer(m));
    check(i.arg, i.index == 1 ? sum->left : sum->right, "injection");
  }

  std::pair<Type, Type> scrutinee_sum(const Term& m, const Term& scrutinee) {
    Type s = infer(scrutinee);
    auto sum = s.as<ty::Sum>();
    if (!sum)
      throw TypeError(TypeErrorKind::Mismatch, "case", excerpt(m),
                      "case analysis on non-sum type " + pretty(s), std::nullopt, s);
    return {sum->left, sum->right};
  }

  Type infer_bound(const std::string& x, const Type& a, const Term& body) {
    scope_.push(x, a);
    try {
      Type b = infer(body);
      scope_.pop();
      return b;
    } catch (...) {
      scope_.pop();
      throw;
    }
  }

  void check_bound(const std::string& x, const Type& a, const Term& body, const Type& b) {
    scope_.push(x, a);
    try {
      check(body, b, "binding");
      scope_.pop();
    } catch (...) {
      scope_.pop();
      throw;
    }
  }

  Scope scope_;
};

void validate_context(const TermCtx& gamma) {
  std::set<std::string> seen;
  for (const auto& [x, a] : gamma) {
    if (!seen.insert(x).second)
      throw TypeError(TypeErrorKind::IllFormedContext, "context", x, "variable '" + x + "' bound twice");
    try {
      wf_type({}, a);
    } catch (const TypeError&) {
      throw TypeError(TypeErrorKind::NonClosedType, "context", x,
                      "context type " + pretty(a) + " is not closed and well-formed");
    }
  }
}

void wf_type_in(std::vector<std::string>& theta, const Type& a) {
  if (auto v = a.as<ty::Var>()) {
    if (std::find(theta.begin(), theta.end(), v->name) == theta.end())
      throw TypeError(TypeErrorKind::UnboundVariable, "type variable", v->name,
                      "type variable '" + v->name + "' is not in the type context");
    return;
  }
  if (auto s = a.as<ty::Sum>()) {
    wf_type_in(theta, s->left);
    wf_type_in(theta, s->right);
  } else if (auto p = a.as<ty::Prod>()) {
    wf_type_in(theta, p->left);
    wf_type_in(theta, p->right);
  } else if (auto f = a.as<ty::Arrow>()) {
    wf_type_in(theta, f->domain);
    wf_type_in(theta, f->codomain);
  } else if (auto m = a.as<ty::Mu>()) {
    theta.push_back(m->binder);
    try {
      wf_type_in(theta, m->body);
    } catch (...) {
      theta.pop_back();
      throw;
    }
    theta.pop_back();
  }
}

}  // namespace

TypeError::TypeError(TypeErrorKind kind, std::string rule, std::string location, std::string detail,
                     std::optional<Type> expected, std::optional<Type> actual)
    : std::runtime_error(describe(kind, rule, location, detail)),
      kind_(kind),
      rule_(std::move(rule)),
      location_(std::move(location)),
      expected_(std::move(expected)),
      actual_(std::move(actual)) {}

void wf_type(const TypeCtx& theta, const Type& a) {
  std::set<std::string> distinct(theta.begin(), theta.end());
  if (distinct.size() != theta.size())
    throw TypeError(TypeErrorKind::IllFormedContext, "type context", "", "type variables must be distinct");
  std::vector<std::string> scope = theta;
  wf_type_in(scope, a);
}

Type infer(const TermCtx& gamma, const Term& m) {
  validate_context(gamma);
  return Checker(gamma).infer(m);
}

void check(const TermCtx& gamma, const Term& m, const Type& a) {
  validate_context(gamma);
  Checker(gamma).check(m, a, "checking");
}

Type check_program(const Term& m) { return infer({}, m); }

std::optional<Type> try_check_program(const Term& m) {
  try {
    return check_program(m);
  } catch (const TypeError&) {
    return std::nullopt;
  }
}

}  // namespace pfpc
