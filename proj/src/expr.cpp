#include "causalineq/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>

namespace causalineq {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string mask_hex(VarSet s) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%llx", static_cast<unsigned long long>(s));
  return buf;
}

}  // namespace

ExprPtr make_const(double v) {
  auto e = std::make_shared<Expr>(Expr::Kind::constant);
  e->value = v;
  return e;
}

ExprPtr make_conditional(VarSet head, VarSet cond) {
  if (head == 0) return make_const(1.0);
  auto e = std::make_shared<Expr>(Expr::Kind::conditional);
  e->head = head;
  e->cond = cond;
  return e;
}

ExprPtr make_term(VarSet free, VarSet signature) {
  auto e = std::make_shared<Expr>(Expr::Kind::term);
  e->term_free = free;
  e->signature = signature;
  return e;
}

ExprPtr make_product(std::vector<ExprPtr> kids) {
  std::vector<ExprPtr> flat;
  double k = 1;
  for (auto& kid : kids) {
    if (kid->kind == Expr::Kind::product) {
      for (auto& sub : kid->kids) flat.push_back(sub);
    } else if (kid->kind == Expr::Kind::constant) {
      k *= kid->value;
    } else {
      flat.push_back(kid);
    }
  }
  if (k == 0) return make_const(0.0);
  if (k != 1) flat.insert(flat.begin(), make_const(k));
  if (flat.empty()) return make_const(1.0);
  if (flat.size() == 1) return flat[0];
  auto e = std::make_shared<Expr>(Expr::Kind::product);
  e->kids = std::move(flat);
  return e;
}

ExprPtr make_sum(VarSet vars, ExprPtr child) {
  if (vars == 0) return child;
  if (child->kind == Expr::Kind::sum) {
    VarSet merged = vars | child->sum_vars;
    return make_sum(merged, child->kids[0]);
  }
  auto e = std::make_shared<Expr>(Expr::Kind::sum);
  e->sum_vars = vars;
  e->kids.push_back(std::move(child));
  return e;
}

ExprPtr make_ratio(ExprPtr num, ExprPtr den) {
  if (den->kind == Expr::Kind::constant && den->value == 1.0) return num;
  if (num->kind == Expr::Kind::constant && num->value == 0.0) return num;
  auto e = std::make_shared<Expr>(Expr::Kind::ratio);
  e->kids.push_back(std::move(num));
  e->kids.push_back(std::move(den));
  return e;
}

VarSet expr_dependencies(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::constant:
      return 0;
    case Expr::Kind::conditional:
      return e->head | e->cond;
    case Expr::Kind::term:
      return e->term_free | e->signature;
    case Expr::Kind::sum:
      return expr_dependencies(e->kids[0]) & ~e->sum_vars;
    default: {
      VarSet out = 0;
      for (const auto& kid : e->kids) out |= expr_dependencies(kid);
      return out;
    }
  }
}

double eval_expr(const ExprPtr& e, EvalContext& ctx,
                 std::vector<int>& assignment) {
  switch (e->kind) {
    case Expr::Kind::constant:
      return e->value;
    case Expr::Kind::conditional: {
      MarginalCache* mc = ctx.tables->obs_marginals();
      if (!mc) {
        throw InputError("expression needs an observational table");
      }
      double den = mc->prob(e->cond, assignment);
      if (den == 0.0) {
        ctx.zero_denominator = true;
        return 0.0;
      }
      return mc->prob(e->head | e->cond, assignment) / den;
    }
    case Expr::Kind::term: {
      if (e->term_free == 0) return 1.0;
      const DistributionTable* t = ctx.tables->find_free(e->term_free);
      if (!t) {
        throw InputError("no table with free set {" +
                         set_names(ctx.og->g(), e->term_free) + "}");
      }
      return t->at(assignment);
    }
    case Expr::Kind::product: {
      double p = 1;
      for (const auto& kid : e->kids) p *= eval_expr(kid, ctx, assignment);
      return p;
    }
    case Expr::Kind::sum: {
      std::vector<int> members = set_members(e->sum_vars);
      std::vector<int> saved;
      saved.reserve(members.size());
      for (int m : members) saved.push_back(assignment[m]);
      double total = 0;
      for_each_assignment(ctx.sizes, e->sum_vars, assignment,
                          [&] { total += eval_expr(e->kids[0], ctx, assignment); });
      for (std::size_t j = 0; j < members.size(); ++j) {
        assignment[members[j]] = saved[j];
      }
      return total;
    }
    case Expr::Kind::ratio: {
      double den = eval_expr(e->kids[1], ctx, assignment);
      if (den == 0.0) {
        ctx.zero_denominator = true;
        return 0.0;
      }
      return eval_expr(e->kids[0], ctx, assignment) / den;
    }
  }
  return 0;
}

std::optional<std::pair<double, double>> eval_cleared(
    const ExprPtr& e, EvalContext& ctx, std::vector<int>& assignment) {
  switch (e->kind) {
    case Expr::Kind::constant:
      return {{e->value, 1.0}};
    case Expr::Kind::conditional: {
      MarginalCache* mc = ctx.tables->obs_marginals();
      if (!mc) throw InputError("expression needs an observational table");
      return {{mc->prob(e->head | e->cond, assignment),
               mc->prob(e->cond, assignment)}};
    }
    case Expr::Kind::term:
      return {{eval_expr(e, ctx, assignment), 1.0}};
    case Expr::Kind::product: {
      double num = 1, den = 1;
      for (const auto& kid : e->kids) {
        auto part = eval_cleared(kid, ctx, assignment);
        if (!part) return std::nullopt;
        num *= part->first;
        den *= part->second;
      }
      return {{num, den}};
    }
    case Expr::Kind::ratio: {
      auto a = eval_cleared(e->kids[0], ctx, assignment);
      auto b = eval_cleared(e->kids[1], ctx, assignment);
      if (!a || !b) return std::nullopt;
      return {{a->first * b->second, a->second * b->first}};
    }
    case Expr::Kind::sum:
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

std::string lower_names(const OrderedGraph& og, VarSet s) {
  std::vector<int> members = set_members(s);
  std::sort(members.begin(), members.end(), [&](int a, int b) {
    return og.position[a] < og.position[b];
  });
  std::string out;
  for (int i : members) {
    if (!out.empty()) out += ",";
    for (char c : og.g().observed(i).name) {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  return out;
}

bool needs_parens_in_product(const ExprPtr& e) {
  return e->kind == Expr::Kind::ratio || e->kind == Expr::Kind::sum;
}

// A product of conditionals that telescopes over one shared context C, i.e.
// each factor conditions on exactly C plus the heads of the factors before
// it, is the joint conditional P(heads | C). Returns the collapsed display,
// or nullopt when the factors do not telescope (as happens whenever other
// variables interleave with the chain).
std::optional<std::string> collapsed_chain_display(const OrderedGraph& og,
                                                   const ExprPtr& e) {
  std::vector<ExprPtr> kids = e->kids;
  for (const ExprPtr& kid : kids) {
    if (kid->kind != Expr::Kind::conditional) return std::nullopt;
  }
  auto head_pos = [&](const ExprPtr& kid) {
    int best = 1 << 30;
    for (int m : set_members(kid->head)) best = std::min(best, og.position[m]);
    return best;
  };
  std::sort(kids.begin(), kids.end(), [&](const ExprPtr& a, const ExprPtr& b) {
    return head_pos(a) < head_pos(b);
  });
  VarSet context = kids.front()->cond;
  VarSet heads = 0;
  for (const ExprPtr& kid : kids) {
    if (kid->head & heads) return std::nullopt;
    if (kid->cond != (context | heads)) return std::nullopt;
    heads |= kid->head;
  }
  if (kids.size() < 2) return std::nullopt;
  std::string out = "P(" + lower_names(og, heads);
  if (context) out += "|" + lower_names(og, context);
  return out + ")";
}

}  // namespace

std::string display_expr(const OrderedGraph& og, const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::constant:
      return fmt_double(e->value);
    case Expr::Kind::conditional: {
      std::string out = "P(" + lower_names(og, e->head);
      if (e->cond) out += "|" + lower_names(og, e->cond);
      return out + ")";
    }
    case Expr::Kind::term: {
      if (e->term_free == 0) return "1";
      if (e->signature == 0) return "P(" + lower_names(og, e->term_free) + ")";
      return "P_{" + lower_names(og, e->signature) + "}(" +
             lower_names(og, e->term_free) + ")";
    }
    case Expr::Kind::product: {
      if (auto collapsed = collapsed_chain_display(og, e)) return *collapsed;
      std::string out;
      for (auto it = e->kids.rbegin(); it != e->kids.rend(); ++it) {
        if (!out.empty()) out += " ";
        if (needs_parens_in_product(*it)) {
          out += "(" + display_expr(og, *it) + ")";
        } else {
          out += display_expr(og, *it);
        }
      }
      return out;
    }
    case Expr::Kind::sum: {
      const ExprPtr& kid = e->kids[0];
      // A sum over some of a term's own response variables is just that
      // term's marginal; render it with the smaller response set.
      if (kid->kind == Expr::Kind::term &&
          is_subset(e->sum_vars, kid->term_free)) {
        return display_expr(
            og, make_term(kid->term_free & ~e->sum_vars, kid->signature));
      }
      std::string child = display_expr(og, kid);
      if (kid->kind == Expr::Kind::ratio) child = "(" + child + ")";
      return "Σ_{" + lower_names(og, e->sum_vars) + "} " + child;
    }
    case Expr::Kind::ratio: {
      auto wrap = [&](const ExprPtr& kid) {
        std::string s = display_expr(og, kid);
        if (kid->kind == Expr::Kind::conditional ||
            kid->kind == Expr::Kind::term ||
            kid->kind == Expr::Kind::constant) {
          return s;
        }
        return "(" + s + ")";
      };
      return wrap(e->kids[0]) + "/" + wrap(e->kids[1]);
    }
  }
  return "";
}

namespace {

struct KeyFraction {
  double k = 1;
  std::multimap<std::string, int> num, den;  // atom -> multiplicity via repeats

  void add(std::multimap<std::string, int>& side, const std::string& atom) {
    side.emplace(atom, 1);
  }
};

void collect_key(const ExprPtr& e, KeyFraction& f, bool inverted);

std::string atom_list(const std::multimap<std::string, int>& side) {
  std::string out;
  for (const auto& [atom, _] : side) {
    if (!out.empty()) out += "*";
    out += atom;
  }
  return out;
}

void collect_key(const ExprPtr& e, KeyFraction& f, bool inverted) {
  auto& num = inverted ? f.den : f.num;
  auto& den = inverted ? f.num : f.den;
  switch (e->kind) {
    case Expr::Kind::constant:
      f.k = inverted ? f.k / e->value : f.k * e->value;
      return;
    case Expr::Kind::conditional:
      f.add(num, "J" + mask_hex(e->head | e->cond));
      if (e->cond) f.add(den, "J" + mask_hex(e->cond));
      return;
    case Expr::Kind::term:
      if (e->term_free) f.add(num, "T" + mask_hex(e->term_free));
      return;
    case Expr::Kind::product:
      for (const auto& kid : e->kids) collect_key(kid, f, inverted);
      return;
    case Expr::Kind::ratio:
      collect_key(e->kids[0], f, inverted);
      collect_key(e->kids[1], f, !inverted);
      return;
    case Expr::Kind::sum:
      f.add(num, "S" + mask_hex(e->sum_vars) + "(" +
                     canonical_key(e->kids[0]) + ")");
      return;
  }
}

}  // namespace

std::string canonical_key(const ExprPtr& e) {
  KeyFraction f;
  collect_key(e, f, false);
  // Cancel common atoms.
  for (auto it = f.num.begin(); it != f.num.end();) {
    auto hit = f.den.find(it->first);
    if (hit != f.den.end()) {
      f.den.erase(hit);
      it = f.num.erase(it);
    } else {
      ++it;
    }
  }
  std::string out;
  if (f.k != 1) out += fmt_double(f.k) + "*";
  out += atom_list(f.num);
  if (out.empty() || out.back() == '*') out += "1";
  if (!f.den.empty()) out += "/" + atom_list(f.den);
  return out;
}

}  // namespace causalineq
