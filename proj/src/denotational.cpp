#include "pfpc/denotational.hpp"

#include <algorithm>
#include <utility>

#include "pfpc/derived.hpp"
#include "pfpc/syntax.hpp"

namespace pfpc {

namespace {

std::shared_ptr<SemValueNode> make_node(decltype(SemValueNode::shape) shape) {
  auto node = std::make_shared<SemValueNode>();
  node->shape = std::move(shape);
  return node;
}

// fn x : 0 => x, the unit value; it denotes the point of 1.
bool is_unit_lambda(const std::string& binder, const std::optional<Type>& domain, const Term& body) {
  static const Type empty = empty_type();
  if (!domain || !alpha_equal(*domain, empty)) return false;
  const tm::Var* v = body.as<tm::Var>();
  return v && v->name == binder;
}

}  // namespace

SemValue SemValue::unit() {
  static const SemValue u = [] {
    auto node = make_node(sem::Unit{});
    node->key = "()";
    return SemValue(node);
  }();
  return u;
}

SemValue SemValue::pair(SemValue first, SemValue second) {
  std::string key = "(" + first.key() + "," + second.key() + ")";
  auto node = make_node(sem::Pair{std::move(first), std::move(second)});
  node->key = std::move(key);
  return SemValue(node);
}

SemValue SemValue::inj(int index, SemValue arg, std::optional<Type> annotation) {
  if (index != 1 && index != 2) throw std::invalid_argument("injection index must be 1 or 2");
  std::string key = "in" + std::to_string(index) + "(" + arg.key() + ")";
  auto node = make_node(sem::Inj{index, std::move(arg), std::move(annotation)});
  node->key = std::move(key);
  return SemValue(node);
}

SemValue SemValue::fold(Type annotation, SemValue arg) {
  std::string key = "fold(" + arg.key() + ")";
  auto node = make_node(sem::Fold{std::move(annotation), std::move(arg)});
  node->key = std::move(key);
  return SemValue(node);
}

SemValue SemValue::closure(const Env& env, std::string binder, std::optional<Type> domain, Term body) {
  if (is_unit_lambda(binder, domain, body)) return unit();
  Term lam = Term::lam(binder, domain, body);
  Env captured;
  for (const std::string& x : lam.free_vars()) {
    auto it = env.find(x);
    if (it == env.end()) throw DenotationError("unbound variable " + x);
    captured.emplace(x, it->second);
  }
  auto node = make_node(sem::Closure{std::move(captured), std::move(binder), std::move(domain), std::move(body)});
  SemValue v(node);
  // Length-prefixed so that keys stay self-delimiting inside pairs.
  std::string text = alpha_key(readback(v));
  node->key = "fn" + std::to_string(text.size()) + ":" + text;
  return v;
}

const std::string& SemValue::key() const { return node_->key; }

Term readback(const SemValue& v) {
  struct Visitor {
    Term operator()(const sem::Unit&) const { return derived::unit_value(); }
    Term operator()(const sem::Pair& p) const { return Term::pair(readback(p.first), readback(p.second)); }
    Term operator()(const sem::Inj& i) const { return Term::inj(i.index, readback(i.arg), i.annotation); }
    Term operator()(const sem::Fold& f) const { return Term::fold(f.annotation, readback(f.arg)); }
    Term operator()(const sem::Closure& c) const {
      Term body = c.body;
      // Captured values are closed, so the order of substitution is irrelevant.
      for (const auto& [x, value] : c.env)
        if (x != c.binder) body = subst_term(body, readback(value), x);
      return Term::lam(c.binder, c.domain, body);
    }
  };
  return std::visit(Visitor{}, v.node().shape);
}

Rational SemDist::mass() const {
  Rational total = 0;
  for (const auto& [k, e] : entries) total += e.probability;
  return total;
}

Rational SemDist::at(const std::string& key) const {
  auto it = entries.find(key);
  return it == entries.end() ? Rational(0) : it->second.probability;
}

void SemDist::add(const SemValue& v, const Rational& p) {
  if (p == 0) return;
  auto it = entries.find(v.key());
  if (it == entries.end())
    entries.emplace(v.key(), SemMass{v, p});
  else
    it->second.probability += p;
}

bool SemDist::operator==(const SemDist& other) const {
  if (entries.size() != other.entries.size()) return false;
  for (const auto& [k, e] : entries)
    if (other.at(k) != e.probability) return false;
  return true;
}

std::string to_string(const SemDist& d) {
  if (d.entries.empty()) return "0";
  std::vector<std::pair<std::string, std::string>> parts;
  for (const auto& [k, e] : d.entries) parts.emplace_back(pretty(readback(e.value)), to_string(e.probability));
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& [text, p] : parts) out += (out.empty() ? "" : " + ") + p + " [" + text + "]";
  return out;
}

namespace {

// A value together with the budget left on its path.
using OutcomeKey = std::pair<std::string, std::uint64_t>;
struct Outcome {
  SemValue value;
  std::uint64_t fuel;
  Rational probability;
};
using Outcomes = std::map<OutcomeKey, Outcome>;

void add_outcome(Outcomes& out, const SemValue& v, std::uint64_t fuel, const Rational& p) {
  if (p == 0) return;
  OutcomeKey key{v.key(), fuel};
  auto it = out.find(key);
  if (it == out.end())
    out.emplace(std::move(key), Outcome{v, fuel, p});
  else
    it->second.probability += p;
}

Outcomes run(const Env& env, const Term& m, std::uint64_t fuel);

// Evaluate `next` after each outcome of the previous step, once per distinct remaining budget.
template <class F>
void then(const Outcomes& first, const Env& env, const Term& next, Outcomes& out, F&& combine) {
  std::map<std::uint64_t, Outcomes> cache;
  for (const auto& [k1, o1] : first) {
    auto it = cache.find(o1.fuel);
    if (it == cache.end()) it = cache.emplace(o1.fuel, run(env, next, o1.fuel)).first;
    for (const auto& [k2, o2] : it->second) {
      Rational p = o1.probability * o2.probability;
      combine(o1.value, o2, p, out);
    }
  }
}

Outcomes apply(const SemValue& fn, const SemValue& arg, std::uint64_t fuel) {
  Outcomes out;
  if (fuel == 0) return out;
  if (fn.as<sem::Unit>()) {
    add_outcome(out, arg, fuel - 1, Rational(1));
    return out;
  }
  const sem::Closure* c = fn.as<sem::Closure>();
  if (!c) throw DenotationError("application of a non-function");
  Env inner = c->env;
  inner.insert_or_assign(c->binder, arg);
  return run(inner, c->body, fuel - 1);
}

Outcomes run(const Env& env, const Term& m, std::uint64_t fuel) {
  Outcomes out;
  if (const tm::Var* v = m.as<tm::Var>()) {
    auto it = env.find(v->name);
    if (it == env.end()) throw DenotationError("unbound variable " + v->name);
    add_outcome(out, it->second, fuel, Rational(1));
  } else if (const tm::Lam* l = m.as<tm::Lam>()) {
    add_outcome(out, SemValue::closure(env, l->binder, l->domain, l->body), fuel, Rational(1));
  } else if (const tm::Pair* p = m.as<tm::Pair>()) {
    then(run(env, p->first, fuel), env, p->second, out,
         [](const SemValue& a, const Outcome& b, const Rational& w, Outcomes& o) {
           add_outcome(o, SemValue::pair(a, b.value), b.fuel, w);
         });
  } else if (const tm::App* a = m.as<tm::App>()) {
    then(run(env, a->fn, fuel), env, a->arg, out,
         [](const SemValue& f, const Outcome& x, const Rational& w, Outcomes& o) {
           for (const auto& [k, r] : apply(f, x.value, x.fuel)) add_outcome(o, r.value, r.fuel, w * r.probability);
         });
  } else if (const tm::Proj* p = m.as<tm::Proj>()) {
    for (const auto& [k, o] : run(env, p->arg, fuel)) {
      const sem::Pair* pr = o.value.as<sem::Pair>();
      if (!pr) throw DenotationError("projection from a non-pair");
      add_outcome(out, p->index == 1 ? pr->first : pr->second, o.fuel, o.probability);
    }
  } else if (const tm::Inj* i = m.as<tm::Inj>()) {
    for (const auto& [k, o] : run(env, i->arg, fuel))
      add_outcome(out, SemValue::inj(i->index, o.value, i->annotation), o.fuel, o.probability);
  } else if (const tm::Fold* f = m.as<tm::Fold>()) {
    for (const auto& [k, o] : run(env, f->arg, fuel))
      add_outcome(out, SemValue::fold(f->annotation, o.value), o.fuel, o.probability);
  } else if (const tm::Unfold* u = m.as<tm::Unfold>()) {
    for (const auto& [k, o] : run(env, u->arg, fuel)) {
      const sem::Fold* fd = o.value.as<sem::Fold>();
      if (!fd) throw DenotationError("unfold of a non-fold");
      add_outcome(out, fd->arg, o.fuel, o.probability);
    }
  } else if (const tm::Case* c = m.as<tm::Case>()) {
    for (const auto& [k, o] : run(env, c->scrutinee, fuel)) {
      const sem::Inj* in = o.value.as<sem::Inj>();
      if (!in) throw DenotationError("case on a non-injection");
      Env inner = env;
      inner.insert_or_assign(in->index == 1 ? c->left_binder : c->right_binder, in->arg);
      for (const auto& [k2, r] : run(inner, in->index == 1 ? c->left_body : c->right_body, o.fuel))
        add_outcome(out, r.value, r.fuel, o.probability * r.probability);
    }
  } else if (const tm::Or* c = m.as<tm::Or>()) {
    Rational q = 1 - c->p;
    if (c->p != 0)
      for (const auto& [k, o] : run(env, c->left, fuel)) add_outcome(out, o.value, o.fuel, c->p * o.probability);
    if (q != 0)
      for (const auto& [k, o] : run(env, c->right, fuel)) add_outcome(out, o.value, o.fuel, q * o.probability);
  }
  return out;
}

}  // namespace

SemDist denote(const Env& env, const Term& m, Fuel fuel) {
  SemDist d;
  for (const auto& [k, o] : run(env, m, fuel.steps)) d.add(o.value, o.probability);
  return d;
}

SemDist denote(const Term& closed, Fuel fuel) { return denote(Env{}, closed, fuel); }

SemValue denote_value(const Term& v) {
  if (!is_value(v)) throw std::invalid_argument("denote_value: not a value: " + pretty(v));
  if (!v.is_closed()) throw std::invalid_argument("denote_value: open value: " + pretty(v));
  // Values contain no redex outside a lambda, so no budget is needed.
  SemDist d = denote(v, Fuel{0});
  return d.entries.begin()->second.value;
}

bool pointwise_leq(const SemDist& d1, const SemDist& d2) {
  for (const auto& [k, e] : d1.entries)
    if (e.probability > d2.at(k)) return false;
  return true;
}

Rational max_pointwise_gap(const SemDist& d1, const SemDist& d2) {
  Rational gap = 0;
  auto visit = [&](const SemDist& a, const SemDist& b) {
    for (const auto& [k, e] : a.entries) {
      Rational diff = e.probability - b.at(k);
      if (diff < 0) diff = -diff;
      if (diff > gap) gap = diff;
    }
  };
  visit(d1, d2);
  visit(d2, d1);
  return gap;
}

SemDist operational_dist(const DistReport& report) {
  SemDist d;
  for (const auto& [k, vm] : report.values) d.add(denote_value(vm.value), vm.probability);
  return d;
}

SoundnessReport soundness_check(const Term& m, Fuel fuel) {
  WeightedSuccessors next = step(m);
  std::uint64_t cost = next.rule == RedexKind::Beta ? 1 : 0;
  SoundnessReport report{next.rule, denote(m, fuel), {}, false};
  if (fuel.steps >= cost)
    for (const Successor& s : next.branches)
      for (const auto& [k, e] : denote(s.term, Fuel{fuel.steps - cost}).entries)
        report.rhs.add(e.value, s.probability * e.probability);
  report.equal = report.lhs == report.rhs;
  return report;
}

AdequacyReport adequacy_check(const Term& m, Fuel fuel, unsigned steps, const Rational& tol,
                              const ExploreOptions& options) {
  AdequacyReport report;
  report.denotational = denote(m, fuel);
  DistReport explored = explore(m, steps, options);
  report.operational = operational_dist(explored);
  report.live_mass = explored.live_mass;
  report.max_pointwise_gap = max_pointwise_gap(report.denotational, report.operational);
  report.mass_gap = report.denotational.mass() - report.operational.mass();
  if (report.mass_gap < 0) report.mass_gap = -report.mass_gap;
  report.exact_mode = is_recursion_free(m);

  SemDist d_quarter = denote(m, Fuel{fuel.steps / 4});
  SemDist d_half = denote(m, Fuel{fuel.steps / 2});
  report.denotational_monotone =
      pointwise_leq(d_quarter, d_half) && pointwise_leq(d_half, report.denotational);
  SemDist o_quarter = operational_dist(explore(m, steps / 4, options));
  SemDist o_half = operational_dist(explore(m, steps / 2, options));
  report.operational_monotone = pointwise_leq(o_quarter, o_half) && pointwise_leq(o_half, report.operational);

  bool monotone = report.denotational_monotone && report.operational_monotone;
  if (report.exact_mode)
    report.pass = monotone && report.live_mass == 0 && report.denotational == report.operational;
  else
    report.pass = monotone && report.max_pointwise_gap <= tol && report.mass_gap <= tol;
  return report;
}

LetCommutativityReport let_commutativity_check(const Term& m1, const Term& m2, const std::string& x1,
                                               const std::string& x2, const Term& n, Fuel fuel) {
  if (!m1.is_closed() || !m2.is_closed()) throw std::invalid_argument("let_commutativity_check: open bound term");
  if (x1 == x2) throw std::invalid_argument("let_commutativity_check: binders must differ");
  Term first = derived::let(x1, m1, derived::let(x2, m2, n));
  Term second = derived::let(x2, m2, derived::let(x1, m1, n));
  LetCommutativityReport report{first, second, denote(first, fuel), denote(second, fuel), false};
  report.equal = report.first_dist == report.second_dist;
  return report;
}

}  // namespace pfpc
