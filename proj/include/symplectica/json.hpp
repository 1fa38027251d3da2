#pragma once

#include <nlohmann/json.hpp>

#include "symplectica/extensions.hpp"
#include "symplectica/groups.hpp"
#include "symplectica/heisenberg.hpp"
#include "symplectica/smith.hpp"
#include "symplectica/standardness.hpp"
#include "symplectica/symplectic.hpp"

// JSON encodings. Integers of arbitrary size are written as decimal
// strings; readers accept strings or JSON integers. Elements of Q/Z are
// strings "n/d" (or "0"). Indices are 0-based throughout.

namespace symplectica::json {

using nlohmann::json;

json encode(const Int& x);
Int decode_int(const json& j);

json encode(const IntVector& v);
IntVector decode_vector(const json& j);

json encode(const IntMatrix& m);
/// An array of equal-length rows; [] is the 0x0 matrix.
IntMatrix decode_matrix(const json& j, std::size_t cols_if_empty = 0);

json encode(const QmodZ& x);
QmodZ decode_qmodz(const json& j);

/// {"p": 3, "exponents": [2, 1]}
json encode(const FinAbGroup& g);
FinAbGroup decode_group(const json& j);

/// {"p": 3, "lambda": [2, 1], "alpha": [[...], [...]]}
json encode(const ExtensionMatrix& xi);
ExtensionMatrix decode_extension(const json& j);

/// {"source": group, "target": group, "entries": matrix}
json encode(const HomMatrix& h);
HomMatrix decode_hom(const json& j);

/// {"ambient": group, "generators": [[...], ...], "order": "..."}
json encode(const Subgroup& s);
/// Accepts the object form or a bare generator list when `ambient` is given.
Subgroup decode_subgroup(const json& j, const FinAbGroup* ambient = nullptr);

/// {"group": group, "numerators": matrix}
json encode(const AlternatingForm& f);
AlternatingForm decode_form(const json& j);

/// Form fields plus an optional "provenance": {"parent", "images", "how"}.
json encode(const SymplecticPair& pair);
SymplecticPair decode_pair(const json& j);

/// {"kind": "bilinear", "group", "numerators"} or {"kind": "table", "group", "values"}
json encode(const Cocycle& c);
Cocycle decode_cocycle(const json& j);

/// {"kind": "beta" | "pi" | "theta", "i", "j", "a"}
json encode(const GeneratorOp& op);
GeneratorOp decode_op(const json& j);

/// {"S": [...], "T": [...]}
json encode(const BipartiteWitness& w);
BipartiteWitness decode_witness(const json& j);

json encode(const SmithDecomposition& d);
json encode(const StandardizationResult& r);
json encode(const NonStandardCertificate& c);
json encode(const HomogeneousReduction& r);
json encode(const TripleDecision& d);
json encode(const Splitting& s);

}  // namespace symplectica::json
