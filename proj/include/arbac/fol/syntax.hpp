// Copyright 2026 The arbac-reach Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ARBAC_FOL_SYNTAX_HPP_
#define ARBAC_FOL_SYNTAX_HPP_

#include <compare>
#include <cstdint>
#include <vector>

#include "arbac/fol/signature.hpp"

namespace arbac {

// A variable is identified by (sort, id); a constant by its ConstId.
struct Term {
  enum class Kind : std::uint8_t { kVar, kConst };
  Kind kind = Kind::kVar;
  SortId sort = 0;
  int id = 0;

  static Term var(SortId s, int id) { return {Kind::kVar, s, id}; }
  static Term constant(SortId s, ConstId c) { return {Kind::kConst, s, c}; }
  bool is_var() const { return kind == Kind::kVar; }
  bool is_const() const { return kind == Kind::kConst; }

  auto operator<=>(const Term&) const = default;
};

struct Atom {
  PredId pred = kEq;
  std::vector<Term> args;

  auto operator<=>(const Atom&) const = default;
};

struct Literal {
  bool positive = true;
  Atom atom;

  static Literal make(bool positive, PredId p, std::vector<Term> args) {
    return Literal{positive, Atom{p, std::move(args)}};
  }
  static Literal eq(const Term& a, const Term& b, bool positive = true) {
    return make(positive, kEq, {a, b});
  }
  Literal negated() const { return Literal{!positive, atom}; }
  bool is_eq() const { return atom.pred == kEq; }

  auto operator<=>(const Literal&) const = default;
};

// Existential closure of a conjunction of literals.
struct Cube {
  std::vector<Term> vars;
  std::vector<Literal> lits;

  bool operator==(const Cube&) const = default;
  auto operator<=>(const Cube&) const = default;
};

// Disjunction of cubes. No cubes means false.
struct ExistsFormula {
  std::vector<Cube> cubes;

  static ExistsFormula falsity() { return {}; }
  static ExistsFormula of(Cube c) { return ExistsFormula{{std::move(c)}}; }
  bool is_false() const { return cubes.empty(); }

  bool operator==(const ExistsFormula&) const = default;
};

// Quantifier-free formula in negation normal form.
struct Formula {
  enum class Kind : std::uint8_t { kTrue, kFalse, kLit, kAnd, kOr };
  Kind kind = Kind::kTrue;
  Literal lit;
  std::vector<Formula> kids;

  static Formula truth() { return Formula{Kind::kTrue, {}, {}}; }
  static Formula falsity() { return Formula{Kind::kFalse, {}, {}}; }
  static Formula literal(Literal l) { return Formula{Kind::kLit, std::move(l), {}}; }
  // Both flatten nested connectives of the same kind and fold constants.
  static Formula conj(std::vector<Formula> kids);
  static Formula disj(std::vector<Formula> kids);

  bool operator==(const Formula&) const = default;
};

// Universal closure of a quantifier-free matrix.
struct ForallFormula {
  std::vector<Term> vars;
  Formula matrix;

  bool operator==(const ForallFormula&) const = default;
};

struct UniversalTheory {
  std::vector<ForallFormula> axioms;

  void add(ForallFormula f) { axioms.push_back(std::move(f)); }
  void append(const UniversalTheory& other) {
    axioms.insert(axioms.end(), other.axioms.begin(), other.axioms.end());
  }
};

// Negation normal form of the negated matrix.
Formula negate(const Formula& f);

// The conjunction of a cube's literals as a formula.
Formula cube_matrix(const Cube& c);

// forall-formula equivalent to the negation of f.
ForallFormula negate_exists(const ExistsFormula& f);
// Same, one universal clause per cube.
std::vector<ForallFormula> negate_exists_clauses(const ExistsFormula& f);

// Negation of a forall-formula as a disjunction of cubes (matrix to DNF).
ExistsFormula negate_forall(const ForallFormula& f);

// Disjunctive normal form of a quantifier-free formula, as literal sets.
std::vector<std::vector<Literal>> to_dnf(const Formula& f);

// Throws SortError when argument sorts do not match the declaration.
void check_well_sorted(const Signature& sig, const Literal& l);
void check_well_sorted(const Signature& sig, const Cube& c);
void check_well_sorted(const Signature& sig, const Formula& f);

// Variables occurring in a formula, sorted and unique.
std::vector<Term> free_vars(const Formula& f);
std::vector<Term> vars_of(const std::vector<Literal>& lits);

// Largest variable id per sort used in a variable list, -1 when none.
std::vector<int> max_var_ids(const std::vector<Term>& vars, int num_sorts);

// Renames every variable (s,i) to (s, i + offset[s]).
Term shift_term(const Term& t, const std::vector<int>& offset);
Literal shift_literal(const Literal& l, const std::vector<int>& offset);
Formula shift_formula(const Formula& f, const std::vector<int>& offset);

// Replaces every occurrence of a predicate by another with the same sorts.
Formula rename_predicate(const Formula& f, PredId from, PredId to);
Cube rename_predicate(const Cube& c, PredId from, PredId to);

// Substitution of terms for variables.
class Substitution {
 public:
  void bind(const Term& var, const Term& value);
  const Term& apply(const Term& t) const;
  Literal apply(const Literal& l) const;
  Formula apply(const Formula& f) const;
  bool empty() const { return map_.empty(); }

 private:
  std::vector<std::pair<Term, Term>> map_;
};

bool mentions_predicate(const Formula& f, PredId p);
bool mentions_predicate(const Cube& c, PredId p);

}  // namespace arbac

#endif  // ARBAC_FOL_SYNTAX_HPP_
