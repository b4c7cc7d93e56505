#include "pfpc/types.hpp"

#include <algorithm>
#include <stdexcept>

namespace pfpc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void collect_free(const Type& a, std::vector<std::string>& bound, std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const ty::Var& v) {
                   if (std::find(bound.begin(), bound.end(), v.name) == bound.end()) out.insert(v.name);
                 },
                 [&](const ty::Sum& s) {
                   collect_free(s.left, bound, out);
                   collect_free(s.right, bound, out);
                 },
                 [&](const ty::Prod& p) {
                   collect_free(p.left, bound, out);
                   collect_free(p.right, bound, out);
                 },
                 [&](const ty::Arrow& f) {
                   collect_free(f.domain, bound, out);
                   collect_free(f.codomain, bound, out);
                 },
                 [&](const ty::Mu& m) {
                   bound.push_back(m.binder);
                   collect_free(m.body, bound, out);
                   bound.pop_back();
                 },
             },
             a.node().shape);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  for (int i = 1;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (!avoid.contains(candidate)) return candidate;
  }
}

// Binder stacks hold names innermost-last; lookup returns the de Bruijn index.
int binder_index(const std::vector<std::string>& stack, const std::string& name) {
  for (std::size_t i = stack.size(); i-- > 0;)
    if (stack[i] == name) return static_cast<int>(stack.size() - 1 - i);
  return -1;
}

bool alpha_equal_in(const Type& a, const Type& b, std::vector<std::string>& sa,
                    std::vector<std::string>& sb) {
  if (a.identity() == b.identity() && sa == sb) return true;
  const auto& x = a.node().shape;
  const auto& y = b.node().shape;
  if (x.index() != y.index()) return false;
  if (auto va = a.as<ty::Var>()) {
    auto vb = b.as<ty::Var>();
    int ia = binder_index(sa, va->name);
    int ib = binder_index(sb, vb->name);
    if (ia != ib) return false;
    return ia >= 0 || va->name == vb->name;
  }
  if (auto pa = a.as<ty::Sum>()) {
    auto pb = b.as<ty::Sum>();
    return alpha_equal_in(pa->left, pb->left, sa, sb) && alpha_equal_in(pa->right, pb->right, sa, sb);
  }
  if (auto pa = a.as<ty::Prod>()) {
    auto pb = b.as<ty::Prod>();
    return alpha_equal_in(pa->left, pb->left, sa, sb) && alpha_equal_in(pa->right, pb->right, sa, sb);
  }
  if (auto fa = a.as<ty::Arrow>()) {
    auto fb = b.as<ty::Arrow>();
    return alpha_equal_in(fa->domain, fb->domain, sa, sb) &&
           alpha_equal_in(fa->codomain, fb->codomain, sa, sb);
  }
  auto ma = a.as<ty::Mu>();
  auto mb = b.as<ty::Mu>();
  sa.push_back(ma->binder);
  sb.push_back(mb->binder);
  bool eq = alpha_equal_in(ma->body, mb->body, sa, sb);
  sa.pop_back();
  sb.pop_back();
  return eq;
}

void key_into(const Type& a, std::vector<std::string>& stack, std::string& out) {
  std::visit(overloaded{
                 [&](const ty::Var& v) {
                   int i = binder_index(stack, v.name);
                   out += i >= 0 ? "#" + std::to_string(i) : "$" + v.name;
                 },
                 [&](const ty::Sum& s) {
                   out += "+(";
                   key_into(s.left, stack, out);
                   out += ",";
                   key_into(s.right, stack, out);
                   out += ")";
                 },
                 [&](const ty::Prod& p) {
                   out += "*(";
                   key_into(p.left, stack, out);
                   out += ",";
                   key_into(p.right, stack, out);
                   out += ")";
                 },
                 [&](const ty::Arrow& f) {
                   out += ">(";
                   key_into(f.domain, stack, out);
                   out += ",";
                   key_into(f.codomain, stack, out);
                   out += ")";
                 },
                 [&](const ty::Mu& m) {
                   out += "u(";
                   stack.push_back(m.binder);
                   key_into(m.body, stack, out);
                   stack.pop_back();
                   out += ")";
                 },
             },
             a.node().shape);
}

// Precedence: 0 = mu / arrow, 1 = sum, 2 = product, 3 = atom.
void pretty_into(const Type& a, int ctx, std::string& out) {
  auto named = [&]() -> const char* {
    if (!is_closed(a)) return nullptr;
    if (alpha_equal(a, empty_type())) return "0";
    if (alpha_equal(a, unit_type())) return "1";
    if (alpha_equal(a, bool_type())) return "Bool";
    if (alpha_equal(a, nat_type())) return "Nat";
    return nullptr;
  };
  if (!a.as<ty::Var>()) {
    if (const char* n = named()) {
      out += n;
      return;
    }
  }
  auto wrap = [&](int level, auto body) {
    bool parens = level < ctx;
    if (parens) out += "(";
    body();
    if (parens) out += ")";
  };
  std::visit(overloaded{
                 [&](const ty::Var& v) { out += v.name; },
                 [&](const ty::Sum& s) {
                   wrap(1, [&] {
                     pretty_into(s.left, 1, out);
                     out += " + ";
                     pretty_into(s.right, 2, out);
                   });
                 },
                 [&](const ty::Prod& p) {
                   wrap(2, [&] {
                     pretty_into(p.left, 2, out);
                     out += " * ";
                     pretty_into(p.right, 3, out);
                   });
                 },
                 [&](const ty::Arrow& f) {
                   wrap(0, [&] {
                     pretty_into(f.domain, 1, out);
                     out += " -> ";
                     pretty_into(f.codomain, 0, out);
                   });
                 },
                 [&](const ty::Mu& m) {
                   wrap(0, [&] {
                     out += "mu " + m.binder + ". ";
                     pretty_into(m.body, 0, out);
                   });
                 },
             },
             a.node().shape);
}

}  // namespace

Type Type::var(std::string name) {
  return Type(std::make_shared<const TypeNode>(TypeNode{ty::Var{std::move(name)}}));
}
Type Type::sum(Type left, Type right) {
  return Type(std::make_shared<const TypeNode>(TypeNode{ty::Sum{std::move(left), std::move(right)}}));
}
Type Type::prod(Type left, Type right) {
  return Type(std::make_shared<const TypeNode>(TypeNode{ty::Prod{std::move(left), std::move(right)}}));
}
Type Type::arrow(Type domain, Type codomain) {
  return Type(
      std::make_shared<const TypeNode>(TypeNode{ty::Arrow{std::move(domain), std::move(codomain)}}));
}
Type Type::mu(std::string binder, Type body) {
  return Type(std::make_shared<const TypeNode>(TypeNode{ty::Mu{std::move(binder), std::move(body)}}));
}

std::set<std::string> free_type_vars(const Type& a) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(a, bound, out);
  return out;
}

Type subst_type(const Type& a, const Type& b, const std::string& x) {
  return std::visit(
      overloaded{
          [&](const ty::Var& v) { return v.name == x ? b : a; },
          [&](const ty::Sum& s) {
            return Type::sum(subst_type(s.left, b, x), subst_type(s.right, b, x));
          },
          [&](const ty::Prod& p) {
            return Type::prod(subst_type(p.left, b, x), subst_type(p.right, b, x));
          },
          [&](const ty::Arrow& f) {
            return Type::arrow(subst_type(f.domain, b, x), subst_type(f.codomain, b, x));
          },
          [&](const ty::Mu& m) {
            if (m.binder == x) return a;
            auto body_free = free_type_vars(m.body);
            if (!body_free.contains(x)) return a;
            auto b_free = free_type_vars(b);
            if (!b_free.contains(m.binder)) return Type::mu(m.binder, subst_type(m.body, b, x));
            auto avoid = body_free;
            avoid.insert(b_free.begin(), b_free.end());
            avoid.insert(x);
            std::string renamed = fresh_name(m.binder, avoid);
            Type body = subst_type(m.body, Type::var(renamed), m.binder);
            return Type::mu(renamed, subst_type(body, b, x));
          },
      },
      a.node().shape);
}

bool alpha_equal(const Type& a, const Type& b) {
  std::vector<std::string> sa, sb;
  return alpha_equal_in(a, b, sa, sb);
}

Type unfold_mu(const Type& a) {
  auto m = a.as<ty::Mu>();
  if (!m) throw std::logic_error("unfold_mu on a non-recursive type");
  return subst_type(m->body, a, m->binder);
}

std::string type_key(const Type& a) {
  std::vector<std::string> stack;
  std::string out;
  key_into(a, stack, out);
  return out;
}

Type empty_type() { return Type::mu("X", Type::var("X")); }
Type unit_type() { return Type::arrow(empty_type(), empty_type()); }
Type bool_type() { return Type::sum(unit_type(), unit_type()); }
Type nat_type() { return Type::mu("X", Type::sum(unit_type(), Type::var("X"))); }

Type list_type(const Type& elem) {
  std::string x = free_type_vars(elem).contains("X") ? fresh_name("X", free_type_vars(elem)) : "X";
  return Type::mu(x, Type::sum(unit_type(), Type::prod(elem, Type::var(x))));
}

Type stream_type(const Type& elem) {
  std::string x = free_type_vars(elem).contains("X") ? fresh_name("X", free_type_vars(elem)) : "X";
  return Type::mu(x, Type::arrow(unit_type(), Type::prod(elem, Type::var(x))));
}

std::string pretty(const Type& a) {
  std::string out;
  pretty_into(a, 0, out);
  return out;
}

}  // namespace pfpc
