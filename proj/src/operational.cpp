#include "pfpc/operational.hpp"

#include "pfpc/syntax.hpp"

namespace pfpc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void stuck(const Term& m, const std::string& why) {
  std::string text = pretty(m);
  if (text.size() > 80) text = text.substr(0, 77) + "...";
  throw StuckTerm("stuck term `" + text + "`: " + why);
}

}  // namespace

std::string to_string(RedexKind kind) {
  switch (kind) {
    case RedexKind::Projection: return "projection";
    case RedexKind::Case: return "case";
    case RedexKind::Unfold: return "unfold";
    case RedexKind::Beta: return "beta";
    case RedexKind::Choice: return "choice";
  }
  return "?";
}

std::optional<Decomposition> decompose(const Term& m) {
  if (is_value(m)) return std::nullopt;
  Decomposition d{{}, m};
  Term& cur = d.redex;
  for (;;) {
    if (auto p = cur.as<tm::Pair>()) {
      if (!is_value(p->first)) {
        d.context.push_back(frame::PairLeft{p->second});
        cur = Term(p->first);
      } else {
        d.context.push_back(frame::PairRight{p->first});
        cur = Term(p->second);
      }
    } else if (auto p = cur.as<tm::Proj>()) {
      if (!is_value(p->arg)) {
        d.context.push_back(frame::Proj{p->index});
        cur = Term(p->arg);
      } else if (p->arg.as<tm::Pair>()) {
        return d;
      } else {
        stuck(cur, "projection from a non-pair");
      }
    } else if (auto i = cur.as<tm::Inj>()) {
      d.context.push_back(frame::Inj{i->index, i->annotation});
      cur = Term(i->arg);
    } else if (auto c = cur.as<tm::Case>()) {
      if (!is_value(c->scrutinee)) {
        d.context.push_back(frame::Case{c->left_binder, c->left_body, c->right_binder, c->right_body});
        cur = Term(c->scrutinee);
      } else if (c->scrutinee.as<tm::Inj>()) {
        return d;
      } else {
        stuck(cur, "case on a non-injection");
      }
    } else if (auto a = cur.as<tm::App>()) {
      if (!is_value(a->fn)) {
        d.context.push_back(frame::AppLeft{a->arg});
        cur = Term(a->fn);
      } else if (!is_value(a->arg)) {
        d.context.push_back(frame::AppRight{a->fn});
        cur = Term(a->arg);
      } else if (a->fn.as<tm::Lam>()) {
        return d;
      } else {
        stuck(cur, "applying a non-function");
      }
    } else if (auto f = cur.as<tm::Fold>()) {
      d.context.push_back(frame::Fold{f->annotation});
      cur = Term(f->arg);
    } else if (auto u = cur.as<tm::Unfold>()) {
      if (!is_value(u->arg)) {
        d.context.push_back(frame::Unfold{});
        cur = Term(u->arg);
      } else if (u->arg.as<tm::Fold>()) {
        return d;
      } else {
        stuck(cur, "unfold of a non-fold");
      }
    } else if (cur.as<tm::Or>()) {
      return d;
    } else {
      stuck(cur, "free variable in evaluation position");
    }
  }
}

Term plug(const EvalContext& context, const Term& m) {
  Term out = m;
  for (auto it = context.rbegin(); it != context.rend(); ++it) {
    out = std::visit(overloaded{
                         [&](const frame::PairLeft& f) { return Term::pair(out, f.right); },
                         [&](const frame::PairRight& f) { return Term::pair(f.left, out); },
                         [&](const frame::Proj& f) { return Term::proj(f.index, out); },
                         [&](const frame::AppLeft& f) { return Term::app(out, f.arg); },
                         [&](const frame::AppRight& f) { return Term::app(f.fn, out); },
                         [&](const frame::Inj& f) { return Term::inj(f.index, out, f.annotation); },
                         [&](const frame::Case& f) {
                           return Term::case_of(out, f.left_binder, f.left_body, f.right_binder, f.right_body);
                         },
                         [&](const frame::Fold& f) { return Term::fold(f.annotation, out); },
                         [&](const frame::Unfold&) { return Term::unfold(out); },
                     },
                     *it);
  }
  return out;
}

WeightedSuccessors step(const Term& m) {
  auto d = decompose(m);
  if (!d) throw std::invalid_argument("step called on a value: " + pretty(m));
  const Term& r = d->redex;
  WeightedSuccessors out{RedexKind::Beta, {}};
  auto one = [&](RedexKind kind, const Term& reduct) {
    out.rule = kind;
    out.branches.push_back({Rational(1), plug(d->context, reduct)});
  };
  if (auto p = r.as<tm::Proj>()) {
    auto pair = p->arg.as<tm::Pair>();
    one(RedexKind::Projection, p->index == 1 ? pair->first : pair->second);
  } else if (auto c = r.as<tm::Case>()) {
    auto inj = c->scrutinee.as<tm::Inj>();
    if (inj->index == 1)
      one(RedexKind::Case, subst_term(c->left_body, inj->arg, c->left_binder));
    else
      one(RedexKind::Case, subst_term(c->right_body, inj->arg, c->right_binder));
  } else if (auto u = r.as<tm::Unfold>()) {
    one(RedexKind::Unfold, u->arg.as<tm::Fold>()->arg);
  } else if (auto a = r.as<tm::App>()) {
    auto lam = a->fn.as<tm::Lam>();
    one(RedexKind::Beta, subst_term(lam->body, a->arg, lam->binder));
  } else {
    auto o = r.as<tm::Or>();
    out.rule = RedexKind::Choice;
    if (o->p == 1) {
      out.branches.push_back({Rational(1), plug(d->context, o->left)});
    } else if (o->p == 0) {
      out.branches.push_back({Rational(1), plug(d->context, o->right)});
    } else {
      out.branches.push_back({o->p, plug(d->context, o->left)});
      Rational q = 1 - o->p;
      out.branches.push_back({q, plug(d->context, o->right)});
    }
  }
  return out;
}

}  // namespace pfpc
