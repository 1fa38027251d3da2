#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "symplectica/error.hpp"
#include "symplectica/json.hpp"

#ifndef SYMPLECTICA_VERSION
#define SYMPLECTICA_VERSION "0.0.0"
#endif

namespace symplectica::cli {

using nlohmann::json;
namespace sj = symplectica::json;

const char* status_name(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::Error: return "error";
    case Status::Inconclusive: return "inconclusive";
  }
  return "error";
}

int exit_code(Status s) {
  switch (s) {
    case Status::Ok: return 0;
    case Status::Error: return 1;
    case Status::Inconclusive: return 2;
  }
  return 1;
}

json CommandResult::to_json() const {
  return json{{"verb", verb},
              {"status", status_name(status)},
              {"payload", payload},
              {"provenance", {{"seed", seed}, {"version", version}, {"prng", prng}, {"timing_ms", timing_ms}}}};
}

std::string render(const CommandResult& r) {
  if (r.json_output) return r.to_json().dump() + "\n";
  return r.verb + ": " + status_name(r.status) + "\n" + r.payload.dump(2) + "\n";
}

namespace {

struct Options {
  std::string verb;
  std::string input;
  std::uint64_t seed = 0;
  int trials = -1;
  std::string budget = "1000000";
  long p = 3;
  int s = 4;
  int n = 4;
  std::string route = "auto";
  bool json = false;
};

struct Context {
  const Options& opt;
  json input;
  std::string prng;
  Status status = Status::Ok;

  const json& need_input() const {
    if (input.is_null()) throw PreconditionError("this verb needs JSON input (--input FILE or --input -)");
    return input;
  }
  // `key` when present, otherwise the whole input object.
  const json& part(const char* key) const {
    const json& in = need_input();
    return in.is_object() && in.contains(key) ? in.at(key) : in;
  }
  int trials(int fallback) const { return opt.trials >= 0 ? opt.trials : fallback; }
};

json encode_int_list(const IntVector& v) { return sj::encode(v); }

GroupElement element_field(const json& j, const char* key, const FinAbGroup& g) {
  if (!j.contains(key)) return g.zero();
  return g.reduce(sj::decode_vector(j.at(key)));
}

json encode_peel(const PeelResult& r) {
  return json{{"outer", sj::encode(r.outer)}, {"residual", sj::encode(r.residual)}, {"F", sj::encode(r.f)},
              {"R", sj::encode(r.r)}, {"recombination", sj::encode(r.recombination)}};
}

using Handler = std::function<json(Context&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"smith",
       [](Context& c) {
         const IntMatrix a = sj::decode_matrix(c.part("matrix"));
         return sj::encode(smith(a));
       }},
      {"cokernel",
       [](Context& c) {
         const IntMatrix a = sj::decode_matrix(c.part("matrix"));
         return json{{"invariants", encode_int_list(cokernel_structure(a))}};
       }},
      {"ext-group",
       [](Context& c) {
         const ExtensionMatrix xi = sj::decode_extension(c.part("extension"));
         const FinAbGroup g = extension_group(xi);
         IntVector inv;
         for (std::size_t i = g.rank(); i-- > 0;) inv.push_back(g.modulus(i));
         return json{{"group", sj::encode(g)}, {"invariants", sj::encode(inv)}, {"rank_check", rank_check(xi)}};
       }},
      {"ext-dual",
       [](Context& c) { return sj::encode(dual_extension(sj::decode_extension(c.part("extension")))); }},
      {"ext-antidual",
       [](Context& c) {
         const ExtensionMatrix xi = sj::decode_extension(c.part("extension"));
         json out{{"antidual", is_antidual(xi)}, {"autodual", is_autodual(xi)}};
         if (is_antidual(xi) && xi.p() != 2) {
           const AntidualPair ap = symplectic_from_antidual(xi);
           out["pair"] = sj::encode(ap.pair);
           out["G"] = sj::encode(ap.g);
           out["embedding"] = sj::encode(ap.embedding);
           json lifts = json::array();
           for (const auto& h : ap.lifts) lifts.push_back(sj::encode(h));
           out["lifts"] = lifts;
         }
         return out;
       }},
      {"ext-transform",
       [](Context& c) {
         const ExtensionMatrix xi = sj::decode_extension(c.part("extension"));
         const FinAbGroup g = xi.profile().group();
         HomMatrix sigma;
         const json& in = c.need_input();
         if (in.contains("sigma")) {
           const json& s = in.at("sigma");
           sigma = s.is_array() ? HomMatrix(g, g, sj::decode_matrix(s, g.rank())) : sj::decode_hom(s);
         } else {
           SplitMix64 rng(c.opt.seed);
           sigma = random_automorphism(g, rng, c.trials(16));
           c.prng = std::string(SplitMix64::kAlgorithm);
         }
         return json{{"sigma", sj::encode(sigma)}, {"result", sj::encode(transform(xi, sigma))}};
       }},
      {"bipartite",
       [](Context& c) {
         const BipartiteResult r = is_bipartite(sj::decode_extension(c.part("extension")));
         json out{{"bipartite", r.witness.has_value()}, {"partitions_checked", r.partitions_checked}};
         if (r.witness) out["witness"] = sj::encode(*r.witness);
         if (!r.reason.empty()) out["reason"] = r.reason;
         return out;
       }},
      {"reduce-homogeneous",
       [](Context& c) { return sj::encode(reduce_homogeneous(sj::decode_extension(c.part("extension")))); }},
      {"decide-triple",
       [](Context& c) {
         const TripleDecision d =
             decide_triple_standard_exhaustive(sj::decode_extension(c.part("extension")), sj::decode_int(c.opt.budget));
         if (d.verdict == TripleVerdict::Inconclusive) c.status = Status::Inconclusive;
         return sj::encode(d);
       }},
      {"counterexample",
       [](Context& c) { return sj::encode(counterexample_matrix(c.opt.p, c.opt.s, c.opt.n)); }},
      {"verify-counterexample",
       [](Context& c) {
         const ExtensionMatrix xi = c.input.is_null() ? counterexample_matrix(c.opt.p, c.opt.s, c.opt.n)
                                                      : sj::decode_extension(c.part("extension"));
         c.prng = std::string(SplitMix64::kAlgorithm);
         return sj::encode(verify_counterexample(xi, c.trials(10000), c.opt.seed));
       }},
      {"standard-pair",
       [](Context& c) {
         const FinAbGroup a = sj::decode_group(c.part("group"));
         std::optional<Subgroup> b;
         const json& in = c.need_input();
         if (in.contains("b")) b = sj::decode_subgroup(in.at("b"), &a);
         const StandardPair sp = standard_pair(a, b);
         return json{{"pair", sj::encode(sp.pair)}, {"m0", sj::encode(sp.m0)}};
       }},
      {"grow-isotropic",
       [](Context& c) {
         const SymplecticPair pair = sj::decode_pair(c.part("pair"));
         const json& in = c.need_input();
         const Subgroup seed =
             in.contains("seed") ? sj::decode_subgroup(in.at("seed"), &pair.group()) : Subgroup::trivial(pair.group());
         const Subgroup m = grow_maximal_isotropic(pair, seed);
         return json{{"subgroup", sj::encode(m)}, {"maximal", is_maximal_isotropic(pair.form, m)}};
       }},
      {"subquotient",
       [](Context& c) {
         const SymplecticPair pair = sj::decode_pair(c.part("pair"));
         const Subgroup a = sj::decode_subgroup(c.need_input().at("a"), &pair.group());
         return sj::encode(subquotient(pair, a));
       }},
      {"peel",
       [](Context& c) {
         const SymplecticPair pair = sj::decode_pair(c.part("pair"));
         const Subgroup a = sj::decode_subgroup(c.need_input().at("a"), &pair.group());
         const Subgroup b = sj::decode_subgroup(c.need_input().at("b"), &pair.group());
         return encode_peel(peel(pair, a, b));
       }},
      {"standardize",
       [](Context& c) {
         const SymplecticPair pair = sj::decode_pair(c.part("pair"));
         StandardizeRoute route = StandardizeRoute::Auto;
         if (c.opt.route == "peel") route = StandardizeRoute::Peel;
         else if (c.opt.route == "polarization") route = StandardizeRoute::Polarization;
         else if (c.opt.route != "auto") throw PreconditionError("unknown route \"" + c.opt.route + "\"");
         return sj::encode(standardize_pair(pair, route));
       }},
      {"heis-commutator",
       [](Context& c) {
         const json& in = c.need_input();
         const Cocycle psi = in.contains("standard") ? standard_cocycle(sj::decode_group(in.at("standard")))
                                                     : sj::decode_cocycle(c.part("cocycle"));
         const CommutatorForm f = commutator_form(psi);
         return json{{"form", sj::encode(f.form)}, {"nondegenerate", f.nondegenerate}};
       }},
      {"heis-split",
       [](Context& c) {
         const json& in = c.need_input();
         const Cocycle psi = sj::decode_cocycle(in.at("psi"));
         const Cocycle psi2 = sj::decode_cocycle(in.at("psi2"));
         if (psi.group().order() > 27) c.prng = std::string(SplitMix64::kAlgorithm);
         return sj::encode(equivalence_splitting(psi, psi2, SplitMethod::Auto, c.opt.seed));
       }},
      {"weyl-check",
       [](Context& c) {
         const json& in = c.need_input();
         const FinAbGroup a = sj::decode_group(c.part("group"));
         if (in.contains("x") || in.contains("y") || in.contains("chi") || in.contains("lam")) {
           const WeylProduct w = weyl_compose(a, element_field(in, "x", a), element_field(in, "chi", a),
                                              element_field(in, "y", a), element_field(in, "lam", a));
           if (!w.structural || !w.commutator)
             throw InvariantViolation("weyl-composition", "operator product differs from the composition law");
           return json{{"phase", sj::encode(w.phase)}, {"x", sj::encode(w.x)}, {"chi", sj::encode(w.chi)},
                       {"structural", w.structural}, {"commutator_phase", sj::encode(w.commutator_phase)},
                       {"commutator", w.commutator}};
         }
         if (a.order() > 16) throw BudgetExceeded("weyl-check: exhaustive mode needs |A| <= 16");
         const auto elems = a.elements();
         std::size_t pairs = 0;
         for (const auto& x : elems)
           for (const auto& chi : elems)
             for (const auto& y : elems)
               for (const auto& lam : elems) {
                 const WeylProduct w = weyl_compose(a, x, chi, y, lam);
                 ++pairs;
                 if (!w.structural || !w.commutator)
                   throw InvariantViolation("weyl-composition", "failure after " + std::to_string(pairs) + " pairs");
               }
         return json{{"pairs_checked", pairs}, {"failures", 0}};
       }},
  };
  return table;
}

json read_input(const std::string& path, std::istream& in) {
  if (path.empty()) return json();
  std::string text;
  if (path == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  } else {
    std::ifstream f(path);
    if (!f) throw PreconditionError("cannot open input file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw PreconditionError(std::string("malformed JSON: ") + e.what());
  }
}

json error_payload(const char* kind, const std::string& message, const std::string& invariant = "") {
  json out{{"error", kind}, {"message", message}};
  if (!invariant.empty()) out["invariant"] = invariant;
  return out;
}

}  // namespace

const std::vector<std::string>& verbs() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : handlers()) v.push_back(k);
    return v;
  }();
  return names;
}

CommandResult run(const std::vector<std::string>& args, std::istream& in) {
  CommandResult result;
  result.version = SYMPLECTICA_VERSION;
  Options opt;
  const auto start = std::chrono::steady_clock::now();

  CLI::App app{"Finite symplectic self-dualities and extension matrices", "symplectica"};
  app.add_option("verb", opt.verb, "Computation to run")->required();
  app.add_option("--input", opt.input, "JSON input file, or - for stdin");
  app.add_option("--seed", opt.seed, "PRNG seed");
  app.add_option("--trials", opt.trials, "Random trials / steps");
  app.add_option("--budget", opt.budget, "Candidate budget for exhaustive searches");
  app.add_option("--p", opt.p, "Prime");
  app.add_option("--s", opt.s, "Counterexample size s");
  app.add_option("--N", opt.n, "Counterexample exponent step N");
  app.add_option("--route", opt.route, "standardize route: auto, peel, polarization");
  app.add_flag("--json", opt.json, "Print the full result as one JSON object");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    result.json_output = std::find(args.begin(), args.end(), "--json") != args.end();
    result.verb = opt.verb;
    result.status = Status::Error;
    result.payload = error_payload("usage", e.what());
    return result;
  }
  result.verb = opt.verb;
  result.seed = opt.seed;
  result.json_output = opt.json;

  const auto it = handlers().find(opt.verb);
  if (it == handlers().end()) {
    result.status = Status::Error;
    result.payload = error_payload("unknown-verb", "unknown verb \"" + opt.verb + "\"");
    return result;
  }
  try {
    Context ctx{opt, read_input(opt.input, in), "", Status::Ok};
    result.payload = it->second(ctx);
    result.status = ctx.status;
    result.prng = ctx.prng;
  } catch (const InvariantViolation& e) {
    result.status = Status::Error;
    result.payload = error_payload("invariant-violation", e.what(), e.invariant());
  } catch (const BudgetExceeded& e) {
    result.status = Status::Inconclusive;
    result.payload = error_payload("budget-exceeded", e.what());
  } catch (const PreconditionError& e) {
    result.status = Status::Error;
    result.payload = error_payload("precondition", e.what());
  } catch (const json::exception& e) {
    result.status = Status::Error;
    result.payload = error_payload("malformed-input", e.what());
  } catch (const std::exception& e) {
    result.status = Status::Error;
    result.payload = error_payload("internal", e.what());
  }
  result.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace symplectica::cli
