#pragma once

// Sparse polynomials over an exact field, with variables indexed by vertex.
//
// A Monomial is a sorted multiset of variables, so both ordinary products
// (exponents add) and multilinear products (exponents clamped to 1, i.e.
// set union) are representable. Polynomials never store zero coefficients.

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "revpeb/dag.hpp"
#include "revpeb/error.hpp"
#include "revpeb/field.hpp"

namespace revpeb {

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<VertexIndex> vars) : vars_(std::move(vars)) { std::sort(vars_.begin(), vars_.end()); }

  // x_U for a set U.
  static Monomial of_set(std::span<const VertexIndex> set) { return Monomial({set.begin(), set.end()}); }

  const std::vector<VertexIndex>& vars() const noexcept { return vars_; }
  std::size_t degree() const noexcept { return vars_.size(); }
  bool is_one() const noexcept { return vars_.empty(); }

  bool contains(VertexIndex v) const { return std::binary_search(vars_.begin(), vars_.end(), v); }

  bool is_square_free() const { return std::adjacent_find(vars_.begin(), vars_.end()) == vars_.end(); }

  // Distinct variables.
  std::vector<VertexIndex> support() const {
    std::vector<VertexIndex> s = vars_;
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  }

  Monomial times(const Monomial& other) const {
    Monomial m;
    m.vars_.reserve(vars_.size() + other.vars_.size());
    std::merge(vars_.begin(), vars_.end(), other.vars_.begin(), other.vars_.end(), std::back_inserter(m.vars_));
    return m;
  }

  // Product with every exponent clamped to 1.
  Monomial multilinear_times(const Monomial& other) const {
    Monomial m;
    auto a = support(), b = other.support();
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m.vars_));
    return m;
  }

  Monomial multilinearized() const { return Monomial(support()); }

  // Graded, then lexicographic on the sorted variable list.
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.vars_.size() != b.vars_.size()) return a.vars_.size() < b.vars_.size();
    return a.vars_ < b.vars_;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<VertexIndex> vars_;
};

template <Field F>
class Polynomial {
 public:
  using value_type = typename F::value_type;
  using Terms = std::map<Monomial, value_type>;

  explicit Polynomial(F field) : field_(std::move(field)) {}

  static Polynomial constant(const F& field, const value_type& c) {
    Polynomial p(field);
    p.add_term(Monomial{}, c);
    return p;
  }
  static Polynomial one(const F& field) { return constant(field, field.one()); }
  static Polynomial term(const F& field, Monomial m, const value_type& c) {
    Polynomial p(field);
    p.add_term(std::move(m), c);
    return p;
  }
  static Polynomial variable(const F& field, VertexIndex v) { return term(field, Monomial({v}), field.one()); }

  const F& field() const noexcept { return field_; }
  const Terms& terms() const noexcept { return terms_; }

  // Number of monomials with nonzero coefficient.
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.is_one() && field_.equal(terms_.begin()->second, field_.one());
  }

  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  bool is_multilinear() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.is_square_free(); });
  }

  value_type coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  void add_term(Monomial m, const value_type& c) {
    if (field_.is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second = field_.add(it->second, c);
      if (field_.is_zero(it->second)) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_field(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_field(o);
    for (const auto& [m, c] : o.terms_) add_term(m, field_.neg(c));
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  Polynomial scaled(const value_type& c) const {
    Polynomial out(field_);
    for (const auto& [m, a] : terms_) out.add_term(m, field_.mul(a, c));
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (!(a.field_ == b.field_) || a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [m, c] : a.terms_) {
      if (!(m == it->first) || !a.field_.equal(c, it->second)) return false;
      ++it;
    }
    return true;
  }

  void check_field(const Polynomial& o) const {
    if (!(field_ == o.field_))
      throw Error(ErrorKind::FieldMismatch, field_.spec().name() + " vs " + o.field_.spec().name());
  }

 private:
  F field_;
  Terms terms_;
};

// Ordinary product: exponents add.
template <Field F>
Polynomial<F> product(const Polynomial<F>& p, const Polynomial<F>& q) {
  p.check_field(q);
  Polynomial<F> out(p.field());
  for (const auto& [m1, c1] : p.terms())
    for (const auto& [m2, c2] : q.terms()) out.add_term(m1.times(m2), p.field().mul(c1, c2));
  return out;
}

// Product in F[x] / (x_j^2 - x_j): monomials multiply by set union.
template <Field F>
Polynomial<F> multilinear_product(const Polynomial<F>& p, const Polynomial<F>& q) {
  p.check_field(q);
  Polynomial<F> out(p.field());
  for (const auto& [m1, c1] : p.terms())
    for (const auto& [m2, c2] : q.terms()) out.add_term(m1.multilinear_times(m2), p.field().mul(c1, c2));
  return out;
}

template <Field F>
Polynomial<F> multilinearize(const Polynomial<F>& p) {
  Polynomial<F> out(p.field());
  for (const auto& [m, c] : p.terms()) out.add_term(m.multilinearized(), c);
  return out;
}

// Human-readable rendering, e.g. "x_p*x_q - x_p*x_q*x_u".
template <Field F>
std::string to_string(const Polynomial<F>& p, const Dag& dag) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    std::string coeff = p.field().format(c);
    bool negative = !coeff.empty() && coeff[0] == '-';
    if (negative) coeff = coeff.substr(1);
    out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
    first = false;
    std::string vars;
    for (VertexIndex v : m.vars()) vars += (vars.empty() ? "" : "*") + std::string("x_") + dag.name(v);
    if (vars.empty()) out += coeff;
    else if (coeff == "1") out += vars;
    else out += coeff + "*" + vars;
  }
  return out;
}

}  // namespace revpeb
