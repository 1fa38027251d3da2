#include "symplectica/json.hpp"

#include "symplectica/error.hpp"

namespace symplectica::json {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw PreconditionError(std::string("missing JSON field \"") + key + "\"");
  return j.at(key);
}

std::vector<int> decode_ints(const json& j) {
  if (!j.is_array()) throw PreconditionError("expected an array of exponents");
  std::vector<int> out;
  for (const auto& v : j) out.push_back(static_cast<int>(decode_int(v).get_si()));
  return out;
}

json encode_elements(const std::vector<GroupElement>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(encode(x));
  return out;
}

std::vector<GroupElement> decode_elements(const json& j) {
  if (!j.is_array()) throw PreconditionError("expected an array of group elements");
  std::vector<GroupElement> out;
  for (const auto& v : j) out.push_back(decode_vector(v));
  return out;
}

}  // namespace

json encode(const Int& x) { return x.get_str(); }

Int decode_int(const json& j) {
  if (j.is_number_integer()) return Int(j.dump());
  if (j.is_string()) {
    Int out;
    const std::string s = j.get<std::string>();
    if (s.empty() || out.set_str(s, 10) != 0) throw PreconditionError("malformed integer \"" + s + "\"");
    return out;
  }
  throw PreconditionError("expected an integer (number or decimal string), got " + j.dump());
}

json encode(const IntVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(encode(x));
  return out;
}

IntVector decode_vector(const json& j) {
  if (!j.is_array()) throw PreconditionError("expected an array of integers");
  IntVector out;
  for (const auto& x : j) out.push_back(decode_int(x));
  return out;
}

json encode(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(encode(m.row(i)));
  return out;
}

IntMatrix decode_matrix(const json& j, std::size_t cols_if_empty) {
  if (!j.is_array()) throw PreconditionError("expected a matrix (array of rows)");
  if (j.empty()) return IntMatrix(0, cols_if_empty);
  std::vector<IntVector> rows;
  for (const auto& r : j) {
    rows.push_back(decode_vector(r));
    if (rows.back().size() != rows.front().size()) throw PreconditionError("matrix rows have different lengths");
  }
  return IntMatrix(rows);
}

json encode(const QmodZ& x) { return x.str(); }

QmodZ decode_qmodz(const json& j) {
  if (j.is_number_integer()) return QmodZ(0, 1);
  if (!j.is_string()) throw PreconditionError("expected a rational \"n/d\"");
  const std::string s = j.get<std::string>();
  const auto slash = s.find('/');
  if (slash == std::string::npos) {
    decode_int(json(s));
    return QmodZ(0, 1);
  }
  const Int d = decode_int(json(s.substr(slash + 1)));
  if (d <= 0) throw PreconditionError("rational with non-positive denominator");
  return QmodZ(decode_int(json(s.substr(0, slash))), d);
}

json encode(const FinAbGroup& g) { return json{{"p", g.p()}, {"exponents", g.exponents()}}; }

FinAbGroup decode_group(const json& j) {
  return FinAbGroup(decode_int(field(j, "p")).get_si(), decode_ints(field(j, "exponents")));
}

json encode(const ExtensionMatrix& xi) {
  return json{{"p", xi.p()}, {"lambda", xi.profile().lambda()}, {"alpha", encode(xi.alpha())}};
}

ExtensionMatrix decode_extension(const json& j) {
  ExponentProfile profile(decode_int(field(j, "p")).get_si(), decode_ints(field(j, "lambda")));
  return ExtensionMatrix(profile, decode_matrix(field(j, "alpha"), profile.length()));
}

json encode(const HomMatrix& h) {
  return json{{"source", encode(h.source())}, {"target", encode(h.target())}, {"entries", encode(h.entries())}};
}

HomMatrix decode_hom(const json& j) {
  FinAbGroup s = decode_group(field(j, "source")), t = decode_group(field(j, "target"));
  IntMatrix e = decode_matrix(field(j, "entries"), s.rank());
  return HomMatrix(s, t, e);
}

json encode(const Subgroup& s) {
  return json{{"ambient", encode(s.ambient())}, {"generators", encode_elements(s.generators())},
              {"order", encode(s.order())}};
}

Subgroup decode_subgroup(const json& j, const FinAbGroup* ambient) {
  if (j.is_array()) {
    if (!ambient) throw PreconditionError("a bare generator list needs an ambient group");
    return Subgroup(*ambient, decode_elements(j));
  }
  const FinAbGroup g = j.contains("ambient") ? decode_group(j.at("ambient")) : ambient ? *ambient : FinAbGroup();
  if (!j.contains("ambient") && !ambient) throw PreconditionError("missing JSON field \"ambient\"");
  return Subgroup(g, decode_elements(field(j, "generators")));
}

json encode(const AlternatingForm& f) {
  return json{{"group", encode(f.group())}, {"numerators", encode(f.numerators())}};
}

AlternatingForm decode_form(const json& j) {
  const FinAbGroup g = decode_group(field(j, "group"));
  return AlternatingForm(g, decode_matrix(field(j, "numerators"), g.rank()));
}

json encode(const SymplecticPair& pair) {
  json out = encode(static_cast<const AlternatingForm&>(pair.form));
  if (pair.provenance)
    out["provenance"] = json{{"parent", encode(pair.provenance->parent)},
                             {"images", encode_elements(pair.provenance->images)},
                             {"how", pair.provenance->how}};
  return out;
}

SymplecticPair decode_pair(const json& j) {
  SymplecticPair out{SymplecticForm(decode_form(j)), std::nullopt};
  if (j.contains("provenance")) {
    const json& p = j.at("provenance");
    out.provenance = Provenance{decode_group(field(p, "parent")), decode_elements(field(p, "images")),
                                field(p, "how").get<std::string>()};
  }
  return out;
}

json encode(const Cocycle& c) {
  if (c.kind() == Cocycle::Kind::Bilinear)
    return json{{"kind", "bilinear"}, {"group", encode(c.group())}, {"numerators", encode(c.numerators())}};
  json v = json::array();
  for (const auto& x : c.values()) v.push_back(encode(x));
  return json{{"kind", "table"}, {"group", encode(c.group())}, {"values", v}};
}

Cocycle decode_cocycle(const json& j) {
  const FinAbGroup g = decode_group(field(j, "group"));
  const std::string kind = j.contains("kind") ? j.at("kind").get<std::string>() : "bilinear";
  if (kind == "bilinear") return Cocycle::bilinear(g, decode_matrix(field(j, "numerators"), g.rank()));
  if (kind == "table") {
    std::vector<QmodZ> v;
    for (const auto& x : field(j, "values")) v.push_back(decode_qmodz(x));
    return Cocycle::table(g, std::move(v));
  }
  throw PreconditionError("unknown cocycle kind \"" + kind + "\"");
}

json encode(const GeneratorOp& op) {
  return json{{"kind", kind_name(op.kind)}, {"i", op.i}, {"j", op.j}, {"a", encode(op.a)}};
}

GeneratorOp decode_op(const json& j) {
  GeneratorOp op;
  const std::string k = field(j, "kind").get<std::string>();
  if (k == "beta") op.kind = GeneratorOp::Kind::Scale;
  else if (k == "pi") op.kind = GeneratorOp::Kind::Swap;
  else if (k == "theta") op.kind = GeneratorOp::Kind::Shear;
  else throw PreconditionError("unknown generator kind \"" + k + "\"");
  op.i = field(j, "i").get<std::size_t>();
  op.j = j.contains("j") ? j.at("j").get<std::size_t>() : 0;
  op.a = j.contains("a") ? decode_int(j.at("a")) : Int(1);
  return op;
}

json encode(const BipartiteWitness& w) { return json{{"S", w.s}, {"T", w.t}}; }

BipartiteWitness decode_witness(const json& j) {
  return BipartiteWitness{field(j, "S").get<std::vector<std::size_t>>(), field(j, "T").get<std::vector<std::size_t>>()};
}

json encode(const SmithDecomposition& d) {
  return json{{"U", encode(d.U)}, {"D", encode(d.D)}, {"V", encode(d.V)}, {"rank", d.rank},
              {"diagonal", encode(d.diagonal())}};
}

json encode(const StandardizationResult& r) {
  json cert = json::array();
  for (const auto& e : r.certificate)
    cert.push_back(json{{"u", e.u}, {"v", e.v}, {"transported", encode(e.transported)}, {"standard", encode(e.standard)}});
  return json{{"A", encode(r.a)}, {"iso", encode(r.iso)}, {"route", route_name(r.route)},
              {"certificate", cert}, {"verified", r.verified}};
}

json encode(const NonStandardCertificate& c) {
  json vals = json::array();
  for (const auto& v : c.valuations) vals.push_back(json{{"i", v.i}, {"j", v.j}, {"valuation", v.valuation}});
  json refutations = json::array();
  for (const auto& pc : c.partitions.transcript)
    if (pc.violation)
      refutations.push_back(json{{"partition", encode(pc.partition)},
                                 {"entry", {pc.violation->first, pc.violation->second}}});
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& op : c.operations) ++counts[static_cast<int>(op.kind)];
  return json{{"matrix", encode(c.matrix)},
              {"s", c.s},
              {"N", c.n},
              {"partitions_checked", c.partitions.partitions_checked},
              {"partitions_refuted", c.partitions_refuted},
              {"refutations", refutations},
              {"valuations", vals},
              {"trials", c.trials},
              {"seed", c.seed},
              {"prng", c.prng},
              {"operation_counts", json{{"beta", counts[0]}, {"pi", counts[1]}, {"theta", counts[2]}}},
              {"verdict", c.verdict}};
}

json encode(const HomogeneousReduction& r) {
  json ops = json::array();
  for (const auto& op : r.operations) ops.push_back(encode(op));
  return json{{"sigma", encode(r.sigma)}, {"reduced", encode(r.reduced)}, {"witness", encode(r.witness)},
              {"operations", ops}};
}

json encode(const TripleDecision& d) {
  json out{{"verdict", verdict_name(d.verdict)},
           {"candidates", encode(d.candidates)},
           {"automorphisms", encode(d.automorphisms)},
           {"total_candidates", encode(d.total_candidates)}};
  if (d.sigma) out["sigma"] = encode(*d.sigma);
  if (d.witness) out["witness"] = encode(*d.witness);
  return out;
}

json encode(const Splitting& s) {
  json v = json::array();
  for (const auto& x : s.values) v.push_back(encode(x));
  return json{{"values", v}, {"method", split_method_name(s.method)}, {"verified", s.verified},
              {"pairs_checked", s.pairs_checked}};
}

}  // namespace symplectica::json
