#include "symplectica/standardness.hpp"

#include <algorithm>

#include "symplectica/error.hpp"

namespace symplectica {

std::optional<std::pair<std::size_t, std::size_t>> bipartite_violation(const ExtensionMatrix& xi,
                                                                      const BipartiteWitness& w) {
  std::vector<int> side(xi.size(), -1);
  for (auto i : w.s) side.at(i) = 0;
  for (auto i : w.t) side.at(i) = 1;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (side[i] < 0) throw PreconditionError("bipartite witness does not cover every index");
    for (std::size_t j = 0; j < xi.size(); ++j)
      if (side[i] == side[j] && xi(i, j) != 0) return std::make_pair(i, j);
  }
  return std::nullopt;
}

bool witnesses(const ExtensionMatrix& xi, const BipartiteWitness& w) {
  if (w.s.empty() || w.t.empty() || w.s.size() + w.t.size() != xi.size()) return false;
  return !bipartite_violation(xi, w).has_value();
}

BipartiteResult is_bipartite(const ExtensionMatrix& xi) {
  BipartiteResult out;
  const std::size_t l = xi.size();
  if (l <= 1) {
    out.reason = "no partition into two nonempty sets exists for l = " + std::to_string(l);
    return out;
  }
  if (l > 40) throw PreconditionError("is_bipartite: too many indices for exhaustive search");
  const std::uint64_t masks = (std::uint64_t{1} << (l - 1)) - 1;  // the all-ones mask empties T
  for (std::uint64_t mask = 0; mask < masks; ++mask) {
    BipartiteWitness w;
    w.s.push_back(0);
    for (std::size_t i = 1; i < l; ++i) ((mask >> (i - 1)) & 1 ? w.s : w.t).push_back(i);
    PartitionCheck c{w, bipartite_violation(xi, w)};
    out.transcript.push_back(c);
    ++out.partitions_checked;
    if (!c.violation) {
      out.witness = w;
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

ExtensionMatrix apply_generator(const ExtensionMatrix& xi, const GeneratorOp& op) {
  IntMatrix a = xi.alpha();
  switch (op.kind) {
    case GeneratorOp::Kind::Scale:
      for (std::size_t c = 0; c < a.cols(); ++c) a(op.i, c) *= op.a;
      for (std::size_t r = 0; r < a.rows(); ++r) a(r, op.i) *= op.a;
      break;
    case GeneratorOp::Kind::Swap:
      a.swap_rows(op.i, op.j);
      a.swap_cols(op.i, op.j);
      break;
    case GeneratorOp::Kind::Shear:
      a.add_row_multiple(op.i, op.j, op.a);
      a.add_col_multiple(op.i, op.j, op.a);
      break;
  }
  return ExtensionMatrix(xi.profile(), a);
}

HomogeneousReduction reduce_homogeneous(const ExtensionMatrix& xi) {
  const long p = xi.p();
  const std::size_t l = xi.size();
  if (p == 2) throw PreconditionError("reduce_homogeneous: p must be odd");
  if (l < 2) throw PreconditionError("reduce_homogeneous: needs l >= 2");
  if (!xi.profile().homogeneous()) throw PreconditionError("reduce_homogeneous: lambda is not homogeneous");
  if (!is_antidual(xi)) throw PreconditionError("reduce_homogeneous: extension is not antidual");
  const int k = xi.profile().lambda().front();
  const Int pk = ipow(p, k);
  const FinAbGroup g = xi.profile().group();

  ExtensionMatrix cur = xi;
  IntMatrix sigma = IntMatrix::identity(l);
  std::vector<GeneratorOp> ops;
  auto apply = [&](const GeneratorOp& op) {
    cur = apply_generator(cur, op);
    sigma = op.as_hom(g).entries() * sigma;
    ops.push_back(op);
  };

  for (std::size_t t = 0; t + 1 < l; t += 2) {
    int best = k;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = t; i < l; ++i)
      for (std::size_t j = i + 1; j < l; ++j) {
        const int v = valuation(cur(i, j), p, k);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (best == k) break;  // the trailing block is already zero
    if (bi != t) apply(GeneratorOp{GeneratorOp::Kind::Swap, t, bi, 0});
    if (bj != t + 1) apply(GeneratorOp{GeneratorOp::Kind::Swap, t + 1, bj, 0});

    const Int pv = ipow(p, best);
    const Int unit = cur(t, t + 1) / pv;
    const Int inv = inverse_mod(unit, pk);
    for (std::size_t m = t + 2; m < l; ++m) {
      if (cur(t, m) == 0) continue;
      // row m += c row (t+1) kills alpha[t][m].
      const Int c = mod(-(cur(t, m) / pv) * inv, pk);
      apply(GeneratorOp{GeneratorOp::Kind::Shear, m, t + 1, c});
    }
    for (std::size_t m = t + 2; m < l; ++m) {
      if (cur(t + 1, m) == 0) continue;
      // row m += c row t kills alpha[t+1][m], since alpha[t+1][t] = -alpha[t][t+1].
      const Int c = mod((cur(t + 1, m) / pv) * inv, pk);
      apply(GeneratorOp{GeneratorOp::Kind::Shear, m, t, c});
    }
  }

  BipartiteWitness w;
  for (std::size_t i = 0; i < l; ++i) (i % 2 == 0 ? w.s : w.t).push_back(i);
  HomMatrix sig(g, g, sigma);
  if (!witnesses(cur, w)) throw InvariantViolation("bipartite-output", "reduced matrix is not odd/even bipartite");
  if (transform(xi, sig) != cur) throw InvariantViolation("transform-consistency", "reduced matrix != sigma alpha sigma^T");
  return HomogeneousReduction{sig, cur, w, ops};
}

// ---------------------------------------------------------------------------

const char* verdict_name(TripleVerdict v) {
  switch (v) {
    case TripleVerdict::Standard: return "standard";
    case TripleVerdict::NonStandard: return "non-standard";
    case TripleVerdict::NotBipartiteReachable: return "not-bipartite-reachable";
    case TripleVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

TripleDecision decide_triple_standard_exhaustive(const ExtensionMatrix& xi, const Int& budget) {
  if (!is_antidual(xi)) throw PreconditionError("decide_triple_standard_exhaustive: extension is not antidual");
  const std::size_t l = xi.size();
  const long p = xi.p();
  const auto& lam = xi.profile().lambda();
  const FinAbGroup g = xi.profile().group();
  TripleDecision out;

  // Entry (i, j) = step_ij * c with c in [0, count_ij).
  std::vector<Int> step(l * l), count(l * l);
  out.total_candidates = 1;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      step[i * l + j] = ipow(p, std::max(0, lam[i] - lam[j]));
      count[i * l + j] = ipow(p, std::min(lam[i], lam[j]));
      out.total_candidates *= count[i * l + j];
    }

  std::vector<Int> c(l * l);
  for (;;) {
    if (out.candidates >= budget) {
      out.verdict = TripleVerdict::Inconclusive;
      return out;
    }
    ++out.candidates;
    IntMatrix m(l, l);
    for (std::size_t e = 0; e < l * l; ++e) m(e / l, e % l) = step[e] * c[e];
    const HomMatrix sigma(g, g, m);
    if (sigma.inverse()) {
      ++out.automorphisms;
      const ExtensionMatrix y = transform_unchecked(xi, m);
      const BipartiteResult r = is_bipartite(y);
      if (r.witness) {
        out.verdict = TripleVerdict::Standard;
        out.sigma = sigma;
        out.witness = r.witness;
        return out;
      }
    }
    std::size_t e = 0;
    while (e < l * l) {
      ++c[e];
      if (c[e] < count[e]) break;
      c[e] = 0;
      ++e;
    }
    if (e == l * l) break;
  }
  out.verdict = p == 2 ? TripleVerdict::NotBipartiteReachable : TripleVerdict::NonStandard;
  return out;
}

// ---------------------------------------------------------------------------

ExtensionMatrix counterexample_matrix(long p, int s, int n) {
  if (p == 2 || !is_prime(p)) throw PreconditionError("counterexample_matrix: p must be an odd prime");
  if (s < 4) throw PreconditionError("counterexample_matrix: s must be at least 4");
  if (n < s) throw PreconditionError("counterexample_matrix: N must be at least s");
  const std::size_t l = static_cast<std::size_t>(s);
  std::vector<int> lam(l);
  for (std::size_t i = 0; i < l; ++i) lam[i] = (s - static_cast<int>(i)) * n;
  IntMatrix a(l, l);
  for (std::size_t i = 1; i <= l; ++i)
    for (std::size_t j = i + 1; j <= l; ++j)
      if (i + j <= l + 1) {
        a(i - 1, j - 1) = ipow(p, static_cast<int>(l + 1 - i - j));
        a(j - 1, i - 1) = -a(i - 1, j - 1);
      }
  return ExtensionMatrix(ExponentProfile(p, lam), a);
}

namespace {

std::vector<ValuationRecord> skew_valuations(const ExtensionMatrix& xi, int s) {
  std::vector<ValuationRecord> out;
  const auto& lam = xi.profile().lambda();
  for (std::size_t i = 0; i < xi.size(); ++i)
    for (std::size_t j = 0; j < xi.size(); ++j)
      if (static_cast<int>(i + j) + 2 <= s + 1)
        out.push_back(ValuationRecord{i, j, valuation(xi(i, j), xi.p(), std::min(lam[i], lam[j]))});
  return out;
}

}  // namespace

NonStandardCertificate verify_counterexample(const ExtensionMatrix& xi, int trials, std::uint64_t seed) {
  if (trials < 0) throw PreconditionError("verify_counterexample: negative trial count");
  const int s = static_cast<int>(xi.size());
  if (s < 4) throw PreconditionError("verify_counterexample: matrix is not from the counterexample family");
  const int n = xi.profile().lambda().back();
  if (xi != counterexample_matrix(xi.p(), s, n))
    throw PreconditionError("verify_counterexample: matrix is not from the counterexample family");

  NonStandardCertificate cert;
  cert.matrix = xi;
  cert.s = s;
  cert.n = n;
  cert.partitions = is_bipartite(xi);
  if (cert.partitions.witness) throw InvariantViolation("non-bipartite", "the matrix admits a bipartite partition");
  for (const auto& c : cert.partitions.transcript)
    if (c.violation) ++cert.partitions_refuted;
  cert.valuations = skew_valuations(xi, s);
  cert.trials = trials;
  cert.seed = seed;
  cert.prng = std::string(SplitMix64::kAlgorithm);

  SplitMix64 rng(seed);
  const FinAbGroup g = xi.profile().group();
  ExtensionMatrix cur = xi;
  for (int step = 0; step < trials; ++step) {
    const GeneratorOp op = random_generator_op(g, rng);
    cur = apply_generator(cur, op);
    cert.operations.push_back(op);
    const auto now = skew_valuations(cur, s);
    for (std::size_t k = 0; k < now.size(); ++k)
      if (now[k].valuation != cert.valuations[k].valuation)
        throw InvariantViolation("valuation-invariance",
                                 "after operation " + std::to_string(step) + " (" + op.str() + ") entry (" +
                                     std::to_string(now[k].i + 1) + "," + std::to_string(now[k].j + 1) +
                                     ") has valuation " + std::to_string(now[k].valuation) + " instead of " +
                                     std::to_string(cert.valuations[k].valuation));
  }
  cert.verdict = "certified non-standard: valuation obstruction + empirical invariance";
  return cert;
}

// ---------------------------------------------------------------------------

HomMatrix split_skew_hom(const HomMatrix& nabla22, SplitMode mode) {
  const FinAbGroup& g = nabla22.source();
  if (nabla22.target() != g) throw PreconditionError("split_skew_hom: map must be an endomorphism");
  if (nabla22.adjoint() != -nabla22) throw PreconditionError("split_skew_hom: map is not skew");
  for (std::size_t i = 0; i < g.rank(); ++i)
    if (nabla22(i, i) != 0) throw PreconditionError("split_skew_hom: nonzero diagonal entry");
  if (g.rank() == 0) return nabla22;
  if (mode == SplitMode::OddOrder) {
    if (g.p() == 2) throw PreconditionError("split_skew_hom: odd-order mode on a 2-group");
    return nabla22.scaled(inverse_mod(2, ipow(g.p(), g.max_exponent())));
  }
  if (g.p() != 2 || g.max_exponent() != 1)
    throw PreconditionError("split_skew_hom: exponent-two mode needs a group of exponent 2");
  IntMatrix phi(g.rank(), g.rank());
  for (std::size_t i = 0; i < g.rank(); ++i)
    for (std::size_t j = 0; j < i; ++j) phi(i, j) = nabla22(i, j);
  HomMatrix out(g, g, phi);
  if (out - out.adjoint() != nabla22) throw InvariantViolation("skew-split", "phi - adjoint(phi) != nabla22");
  return out;
}

}  // namespace symplectica
