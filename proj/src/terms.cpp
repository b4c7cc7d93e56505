#include "pfpc/terms.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace pfpc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<std::string> merge(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::string> without(std::vector<std::string> a, const std::string& x) {
  auto it = std::lower_bound(a.begin(), a.end(), x);
  if (it != a.end() && *it == x) a.erase(it);
  return a;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.contains(base)) return base;
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "v";
  for (int i = 1;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (!avoid.contains(candidate)) return candidate;
  }
}

int binder_index(const std::vector<std::string>& stack, const std::string& name) {
  for (std::size_t i = stack.size(); i-- > 0;)
    if (stack[i] == name) return static_cast<int>(stack.size() - 1 - i);
  return -1;
}

void check_index(int index) {
  if (index != 1 && index != 2) throw std::invalid_argument("projection/injection index must be 1 or 2");
}

// Renames binder `y` in `body` to a name outside `avoid`; returns the new name.
std::string rename_binder(const std::string& y, Term& body, const std::set<std::string>& avoid_extra) {
  std::set<std::string> avoid(body.free_vars().begin(), body.free_vars().end());
  avoid.insert(avoid_extra.begin(), avoid_extra.end());
  avoid.insert(y);
  std::string fresh = fresh_name(y, avoid);
  body = subst_term(body, Term::var(fresh), y);
  return fresh;
}

void key_into(const Term& m, std::vector<std::string>& stack, std::string& out) {
  auto bind = [&](const std::string& x, const Term& body) {
    stack.push_back(x);
    key_into(body, stack, out);
    stack.pop_back();
  };
  std::visit(overloaded{
                 [&](const tm::Var& v) {
                   int i = binder_index(stack, v.name);
                   out += i >= 0 ? "#" + std::to_string(i) : "$" + v.name;
                 },
                 [&](const tm::Pair& p) {
                   out += "P(";
                   key_into(p.first, stack, out);
                   out += ",";
                   key_into(p.second, stack, out);
                   out += ")";
                 },
                 [&](const tm::Proj& p) {
                   out += "p" + std::to_string(p.index) + "(";
                   key_into(p.arg, stack, out);
                   out += ")";
                 },
                 [&](const tm::Inj& i) {
                   out += "i" + std::to_string(i.index);
                   if (i.annotation) out += "[" + type_key(*i.annotation) + "]";
                   out += "(";
                   key_into(i.arg, stack, out);
                   out += ")";
                 },
                 [&](const tm::Case& c) {
                   out += "C(";
                   key_into(c.scrutinee, stack, out);
                   out += ",";
                   bind(c.left_binder, c.left_body);
                   out += ",";
                   bind(c.right_binder, c.right_body);
                   out += ")";
                 },
                 [&](const tm::Lam& l) {
                   out += "L";
                   if (l.domain) out += "[" + type_key(*l.domain) + "]";
                   out += "(";
                   bind(l.binder, l.body);
                   out += ")";
                 },
                 [&](const tm::App& a) {
                   out += "A(";
                   key_into(a.fn, stack, out);
                   out += ",";
                   key_into(a.arg, stack, out);
                   out += ")";
                 },
                 [&](const tm::Fold& f) {
                   out += "F[" + type_key(f.annotation) + "](";
                   key_into(f.arg, stack, out);
                   out += ")";
                 },
                 [&](const tm::Unfold& u) {
                   out += "U(";
                   key_into(u.arg, stack, out);
                   out += ")";
                 },
                 [&](const tm::Or& o) {
                   out += "O[" + to_string(o.p) + "](";
                   key_into(o.left, stack, out);
                   out += ",";
                   key_into(o.right, stack, out);
                   out += ")";
                 },
             },
             m.node().shape);
}

}  // namespace

Term Term::var(std::string name) {
  TermNode n{tm::Var{name}, {name}, true};
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

Term Term::pair(Term first, Term second) {
  auto free = merge(first.free_vars(), second.free_vars());
  bool value = is_value(first) && is_value(second);
  TermNode n{tm::Pair{std::move(first), std::move(second)}, std::move(free), value};
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

Term Term::proj(int index, Term arg) {
  check_index(index);
  auto free = arg.free_vars();
  TermNode n{tm::Proj{index, std::move(arg)}, std::move(free), false};
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

Term Term::inj(int index, Term arg, std::optional<Type> annotation) {
  check_index(index);
  auto free = arg.free_vars();
  bool value = is_value(arg);
  TermNode n{tm::Inj{index, std::move(arg), std::move(annotation)}, std::move(free), value};
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

Term Term::case_of(Term scrutinee, std::string left_binder, Term left_body, std::string right_binder,
                   Term right_body) {
  auto free = merge(scrutinee.free_vars(), merge(without(left_body.free_vars(), left_binder),
                                                 without(right_body.free_vars(), right_binder)));
  TermNode n{tm::Case{std::move(scrutinee), std::move(left_binder), std::move(left_body),
                      std::move(right_binder), std::move(right_body)},
             std::move(free), false};
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

Term Term::lam(std::string binder, std::optional<Type> domain, Term body) {
  auto free = without(body.free_vars(), binder);
  TermNode n{tm::Lam{std::move(binder), std::move(domain), std::move(body)}, std::move(free), true};
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

Term Term::app(Term fn, Term arg) {
  auto free = merge(fn.free_vars(), arg.free_vars());
  TermNode n{tm::App{std::move(fn), std::move(arg)}, std::move(free), false};
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

Term Term::fold(Type annotation, Term arg) {
  auto free = arg.free_vars();
  bool value = is_value(arg);
  TermNode n{tm::Fold{std::move(annotation), std::move(arg)}, std::move(free), value};
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

Term Term::unfold(Term arg) {
  auto free = arg.free_vars();
  TermNode n{tm::Unfold{std::move(arg)}, std::move(free), false};
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

Term Term::choice(Rational p, Term left, Term right) {
  if (!is_probability(p)) throw std::invalid_argument("choice probability outside [0,1]: " + to_string(p));
  auto free = merge(left.free_vars(), right.free_vars());
  TermNode n{tm::Or{std::move(p), std::move(left), std::move(right)}, std::move(free), false};
  return Term(std::make_shared<const TermNode>(std::move(n)));
}

const std::vector<std::string>& Term::free_vars() const { return node_->free; }

bool Term::has_free(const std::string& x) const {
  return std::binary_search(node_->free.begin(), node_->free.end(), x);
}

Term subst_term(const Term& body, const Term& v, const std::string& x) {
  if (!body.has_free(x)) return body;
  std::set<std::string> v_free(v.free_vars().begin(), v.free_vars().end());

  // Under a binder y: rename y first if it would capture a free variable of v.
  auto under = [&](std::string y, Term inner) -> std::pair<std::string, Term> {
    if (y == x) return {y, inner};
    if (v_free.contains(y) && inner.has_free(x)) {
      std::set<std::string> avoid = v_free;
      avoid.insert(x);
      y = rename_binder(y, inner, avoid);
    }
    return {y, subst_term(inner, v, x)};
  };

  return std::visit(
      overloaded{
          [&](const tm::Var&) { return v; },
          [&](const tm::Pair& p) { return Term::pair(subst_term(p.first, v, x), subst_term(p.second, v, x)); },
          [&](const tm::Proj& p) { return Term::proj(p.index, subst_term(p.arg, v, x)); },
          [&](const tm::Inj& i) { return Term::inj(i.index, subst_term(i.arg, v, x), i.annotation); },
          [&](const tm::Case& c) {
            auto [lb, lbody] = under(c.left_binder, c.left_body);
            auto [rb, rbody] = under(c.right_binder, c.right_body);
            return Term::case_of(subst_term(c.scrutinee, v, x), lb, lbody, rb, rbody);
          },
          [&](const tm::Lam& l) {
            auto [b, inner] = under(l.binder, l.body);
            return Term::lam(b, l.domain, inner);
          },
          [&](const tm::App& a) { return Term::app(subst_term(a.fn, v, x), subst_term(a.arg, v, x)); },
          [&](const tm::Fold& f) { return Term::fold(f.annotation, subst_term(f.arg, v, x)); },
          [&](const tm::Unfold& u) { return Term::unfold(subst_term(u.arg, v, x)); },
          [&](const tm::Or& o) {
            return Term::choice(o.p, subst_term(o.left, v, x), subst_term(o.right, v, x));
          },
      },
      body.node().shape);
}

std::string alpha_key(const Term& m) {
  std::vector<std::string> stack;
  std::string out;
  key_into(m, stack, out);
  return out;
}

bool alpha_equivalent(const Term& a, const Term& b) { return alpha_key(a) == alpha_key(b); }

std::size_t term_size(const Term& m) {
  return std::visit(overloaded{
                        [](const tm::Var&) -> std::size_t { return 1; },
                        [](const tm::Pair& p) { return 1 + term_size(p.first) + term_size(p.second); },
                        [](const tm::Proj& p) { return 1 + term_size(p.arg); },
                        [](const tm::Inj& i) { return 1 + term_size(i.arg); },
                        [](const tm::Case& c) {
                          return 1 + term_size(c.scrutinee) + term_size(c.left_body) + term_size(c.right_body);
                        },
                        [](const tm::Lam& l) { return 1 + term_size(l.body); },
                        [](const tm::App& a) { return 1 + term_size(a.fn) + term_size(a.arg); },
                        [](const tm::Fold& f) { return 1 + term_size(f.arg); },
                        [](const tm::Unfold& u) { return 1 + term_size(u.arg); },
                        [](const tm::Or& o) { return 1 + term_size(o.left) + term_size(o.right); },
                    },
                    m.node().shape);
}

bool is_recursion_free(const Term& m) {
  return std::visit(overloaded{
                        [](const tm::Var&) { return true; },
                        [](const tm::Pair& p) { return is_recursion_free(p.first) && is_recursion_free(p.second); },
                        [](const tm::Proj& p) { return is_recursion_free(p.arg); },
                        [](const tm::Inj& i) { return is_recursion_free(i.arg); },
                        [](const tm::Case& c) {
                          return is_recursion_free(c.scrutinee) && is_recursion_free(c.left_body) &&
                                 is_recursion_free(c.right_body);
                        },
                        [](const tm::Lam& l) { return is_recursion_free(l.body); },
                        [](const tm::App& a) { return is_recursion_free(a.fn) && is_recursion_free(a.arg); },
                        [](const tm::Fold& f) { return is_recursion_free(f.arg); },
                        [](const tm::Unfold&) { return false; },
                        [](const tm::Or& o) { return is_recursion_free(o.left) && is_recursion_free(o.right); },
                    },
                    m.node().shape);
}

}  // namespace pfpc
