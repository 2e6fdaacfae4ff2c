#include "metlie/catalog.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "metlie/errors.hpp"

namespace metlie {

const NamedForm* CatalogEntry::find_form(std::string_view form_name) const {
  for (const auto& f : forms)
    if (f.name == form_name) return &f;
  return nullptr;
}

namespace catalog {

namespace {

using Entries = std::vector<BracketEntry<Rational>>;
using FormEntries = std::vector<std::tuple<std::size_t, std::size_t, Rational>>;

Rational q(long n, long d = 1) { return Rational(n, d); }

CatalogEntry make_entry(std::string name, LieAlgebra g, std::vector<NamedForm> forms,
                        std::vector<std::string> notes) {
  if (const auto j = jacobi_check(g); !j) throw JacobiError(j.triple[0], j.triple[1], j.triple[2]);
  for (const auto& f : forms) {
    if (f.form.dim() != g.dim()) throw InputError("catalog form '" + f.name + "' has the wrong dimension");
    if (f.ad_invariant && !is_ad_invariant(g, f.form))
      throw InputError("catalog form '" + f.name + "' is not ad-invariant");
  }
  return CatalogEntry{std::move(name), std::move(g), std::move(forms), std::move(notes)};
}

std::map<std::string, CatalogEntry, std::less<>> build() {
  std::map<std::string, CatalogEntry, std::less<>> m;
  auto put = [&m](CatalogEntry e) {
    std::string key = e.name;
    m.emplace(std::move(key), std::move(e));
  };
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::string name = "r" + std::to_string(n);
    put(make_entry(name, LieAlgebra::abelian(n, name), {{"identity", SymBilinearForm::identity(n), true}},
                   {"abelian"}));
  }
  put(make_entry("aff", LieAlgebra::from_brackets(2, Entries{{0, 1, 1, q(1)}}, "aff"), {},
                 {"2-dimensional non-abelian algebra [X, Y] = Y; trivial center"}));
  put(make_entry("h3", heisenberg(),
                 {{"h0", h3_metric_h0(), false}, {"h1", h3_metric_h1(), false}, {"h2", h3_metric_h2(), false}},
                 {"Heisenberg algebra [e1, e2] = e3 (indices 0, 1, 2 in files)",
                  "h1: <X1,X1> = <X2,X2> = -<X3,X3> = 1", "h2: <X1,X2> = <X3,X3> = 1",
                  "h0: <X1,X1> = <X2,X3> = 1, degenerate center"}));
  put(make_entry("sl2", sl2(), {}, {"basis H, E, F with [H,E] = 2E, [H,F] = -2F, [E,F] = H"}));
  put(make_entry("so3", so3(), {}, {"basis with [e1,e2] = e3 and cyclic"}));
  put(make_entry("g0", oscillator_g0(), {{"gmatrix0", gmatrix0_g0(), true}},
                 {"oscillator algebra [e0,e1] = e2, [e0,e2] = -e1, [e1,e2] = e3"}));
  put(make_entry("g1", solvable_g1(), {{"gmatrix0", gmatrix0_g1(), true}},
                 {"[e0,e1] = e1, [e0,e2] = -e2, [e1,e2] = e3"}));
  {
    const LieAlgebra g = direct_sum(LieAlgebra::abelian(1), sl2(), "r+sl2");
    SymBilinearForm b = SymBilinearForm::from_entries(4, FormEntries{{0, 0, q(1)}}) + killing_form(g);
    put(make_entry("r+sl2", g, {{"killing+1", b, true}}, {"R e0 plus sl(2,R) on e1, e2, e3"}));
  }
  {
    const LieAlgebra g = direct_sum(LieAlgebra::abelian(1), so3(), "r+so3");
    SymBilinearForm b = SymBilinearForm::from_entries(4, FormEntries{{0, 0, q(1)}}) + killing_form(g);
    put(make_entry("r+so3", g, {{"killing+1", b, true}}, {"R e0 plus so(3) on e1, e2, e3"}));
  }
  return m;
}

const std::map<std::string, CatalogEntry, std::less<>>& table() {
  static const auto t = build();
  return t;
}

std::string joined(const std::vector<std::string>& names) {
  std::string s;
  for (const auto& n : names) s += (s.empty() ? "" : ", ") + n;
  return s;
}

}  // namespace

LieAlgebra heisenberg() { return LieAlgebra::from_brackets(3, Entries{{0, 1, 2, q(1)}}, "h3"); }

LieAlgebra oscillator_g0() {
  return LieAlgebra::from_brackets(4, Entries{{0, 1, 2, q(1)}, {0, 2, 1, q(-1)}, {1, 2, 3, q(1)}}, "g0");
}

LieAlgebra solvable_g1() {
  return LieAlgebra::from_brackets(4, Entries{{0, 1, 1, q(1)}, {0, 2, 2, q(-1)}, {1, 2, 3, q(1)}}, "g1");
}

LieAlgebra sl2() {
  return LieAlgebra::from_brackets(3, Entries{{0, 1, 1, q(2)}, {0, 2, 2, q(-2)}, {1, 2, 0, q(1)}}, "sl2");
}

LieAlgebra so3() {
  return LieAlgebra::from_brackets(3, Entries{{0, 1, 2, q(1)}, {1, 2, 0, q(1)}, {2, 0, 1, q(1)}}, "so3");
}

SymBilinearForm gmatrix0_g0() {
  return SymBilinearForm::from_entries(4, FormEntries{{0, 3, q(1)}, {1, 1, q(1)}, {2, 2, q(1)}});
}

SymBilinearForm gmatrix0_g1() {
  return SymBilinearForm::from_entries(4, FormEntries{{0, 3, q(1)}, {1, 2, q(1)}});
}

SymBilinearForm h3_metric_h0() { return SymBilinearForm::from_entries(3, FormEntries{{0, 0, q(1)}, {1, 2, q(1)}}); }

SymBilinearForm h3_metric_h1() { return SymBilinearForm::diagonal({q(1), q(1), q(-1)}); }

SymBilinearForm h3_metric_h2() { return SymBilinearForm::from_entries(3, FormEntries{{0, 1, q(1)}, {2, 2, q(1)}}); }

const CatalogEntry& get(std::string_view name) {
  const auto& t = table();
  const auto it = t.find(name);
  if (it == t.end())
    throw LookupError("unknown algebra '" + std::string(name) + "'; valid names: " + joined(algebra_names()));
  return it->second;
}

bool contains(std::string_view name) { return table().find(name) != table().end(); }

const std::vector<std::string>& algebra_names() {
  static const std::vector<std::string> names = {"r1", "r2",  "r3", "r4", "aff",   "h3",
                                                 "sl2", "so3", "g0", "g1", "r+sl2", "r+so3"};
  return names;
}

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names = {"gmatrix0", "h0", "h1", "h2", "killing"};
  return names;
}

SymBilinearForm metric(const CatalogEntry& entry, std::string_view metric_name) {
  if (metric_name == "killing") return killing_form(entry.algebra);
  if (const NamedForm* f = entry.find_form(metric_name)) return f->form;
  std::vector<std::string> have;
  for (const auto& f : entry.forms) have.push_back(f.name);
  have.push_back("killing");
  throw LookupError("algebra '" + entry.name + "' has no metric '" + std::string(metric_name) +
                    "'; available: " + joined(have));
}

}  // namespace catalog

const char* to_string(Dim4Class c) {
  switch (c) {
    case Dim4Class::kR4: return "R4";
    case Dim4Class::kRPlusSl2: return "R+sl2";
    case Dim4Class::kRPlusSo3: return "R+so3";
    case Dim4Class::kOscillatorG0: return "oscillator_g0";
    case Dim4Class::kG1: return "g1";
    case Dim4Class::kNotInList: return "not_in_list";
  }
  return "?";
}

Dim4Class classify_dim4_metric(const LieAlgebra& g) {
  if (g.dim() != 4) throw InputError("classify_dim4_metric expects a 4-dimensional algebra");
  if (g.is_abelian()) return Dim4Class::kR4;
  if (!has_nondegenerate_invariant_form(g).exists) return Dim4Class::kNotInList;

  const SymBilinearForm k = killing_form(g);
  const Signature ks = signature(k);
  if (ks.null == 1) {
    if (ks.minus == 3) return Dim4Class::kRPlusSo3;
    if (ks.plus == 2 && ks.minus == 1) return Dim4Class::kRPlusSl2;
    return Dim4Class::kNotInList;
  }

  const auto c1 = commutator(g);
  if (is_solvable(g) && center(g).dim() == 1 && c1.dim() == 3) {
    // Any basis vector outside C¹; K(x, x) has the sign of the action of x
    // on the 2-dimensional quotient of C¹ by the center.
    for (std::size_t i = 0; i < 4; ++i) {
      const Vec<Rational> x = unit_vector<Rational>(4, i);
      if (c1.contains(x)) continue;
      const int s = sign(k.evaluate(x, x));
      if (s < 0) return Dim4Class::kOscillatorG0;
      if (s > 0) return Dim4Class::kG1;
      break;
    }
  }
  return Dim4Class::kNotInList;
}

}  // namespace metlie
