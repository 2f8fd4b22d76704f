#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "knotconc/infection.hpp"
#include "knotconc/ledger.hpp"

namespace knotconc {

// Named knots, templates and expressions, plus atom and constant values.
//
//   # comment
//   [knot K]
//   row = 1, 1
//   row = 0, 2
//   slice = false
//   amphichiral = false
//
//   [template T]
//   base = 9_46
//   slice = true
//   site alpha = 1, 0
//   site beta = 0, t - 1 | nondisjoint
//   ribbon = t - 2
//   amphichiral = false
//
//   [expr J2]
//   value = iterate(R946_op, 2, K)
//   # also: infect(T, E), infect(T, alpha=E, beta=F), sum(E, F, ...), mirror(K)
//
//   [assign]
//   rho1(9_46) = 0
//   C' = [1/3, 1/2]
//
// Built-ins: unknot, trefoil, figure_eight, 9_46, R946_op, fig8_op.
class Catalog {
 public:
  enum class Kind { Knot, Template, Expr };

  Catalog();
  // Throws ParseError and ValidationError.
  static Catalog parse(std::string_view text);

  std::optional<Kind> kind_of(const std::string& name) const;
  bool is_builtin(const std::string& name) const;
  // A knot or expression; throws ValidationError for unknown names and
  // templates.
  ExprPtr expr(const std::string& name) const;
  // Throws ValidationError.
  TemplatePtr templ(const std::string& name) const;
  const Assignment& assignment() const { return assignment_; }
  // User definitions in file order.
  const std::vector<std::string>& names() const { return order_; }

 private:
  friend class CatalogParser;
  void define(const std::string& name, Kind kind, int line);

  std::map<std::string, Kind> kinds_;
  std::map<std::string, ExprPtr> exprs_;
  std::map<std::string, TemplatePtr> templates_;
  std::vector<std::string> order_;
  Assignment assignment_;
};

// Lines "atom-or-constant = value" with value "q" or "[lo, hi]"; an
// optional [assign] header is skipped.  Throws ParseError.
Assignment parse_assignment(std::string_view text);

}  // namespace knotconc
