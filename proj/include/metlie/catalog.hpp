#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "metlie/forms.hpp"
#include "metlie/lie_algebra.hpp"

namespace metlie {

struct NamedForm {
  std::string name;
  SymBilinearForm form;
  /// False for the left-invariant metrics h0, h1, h2 on h3, which are not
  /// claimed to be ad-invariant.
  bool ad_invariant = true;
};

struct CatalogEntry {
  std::string name;
  LieAlgebra algebra;
  std::vector<NamedForm> forms;
  std::vector<std::string> notes;

  const NamedForm* find_form(std::string_view form_name) const;
};

namespace catalog {

/// Validated built-in entry. Throws LookupError listing the valid names.
const CatalogEntry& get(std::string_view name);
bool contains(std::string_view name);

/// r1 r2 r3 r4 aff h3 sl2 so3 g0 g1 r+sl2 r+so3
const std::vector<std::string>& algebra_names();
/// gmatrix0 h0 h1 h2 killing
const std::vector<std::string>& metric_names();

/// Named metric on an entry; "killing" is computed for any algebra. Throws
/// LookupError if the entry has no such metric.
SymBilinearForm metric(const CatalogEntry& entry, std::string_view metric_name);

LieAlgebra heisenberg();
LieAlgebra oscillator_g0();
LieAlgebra solvable_g1();
LieAlgebra sl2();
LieAlgebra so3();
SymBilinearForm gmatrix0_g0();
SymBilinearForm gmatrix0_g1();
SymBilinearForm h3_metric_h0();
SymBilinearForm h3_metric_h1();
SymBilinearForm h3_metric_h2();

}  // namespace catalog

enum class Dim4Class { kR4, kRPlusSl2, kRPlusSo3, kOscillatorG0, kG1, kNotInList };

const char* to_string(Dim4Class c);

/// Names a 4-dimensional algebra from the list of those admitting an
/// ad-invariant metric, using basis-independent invariants only. Algebras
/// without such a metric come back as kNotInList. Throws InputError unless
/// dim g = 4.
Dim4Class classify_dim4_metric(const LieAlgebra& g);

}  // namespace metlie
