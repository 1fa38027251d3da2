#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symplectica/extensions.hpp"
#include "symplectica/groups.hpp"

namespace symplectica {

/// Disjoint nonempty index sets (0-based) covering {0..l-1} such that
/// alpha_ij == 0 mod p^{min(lambda_i, lambda_j)} whenever i, j lie on the
/// same side.
struct BipartiteWitness {
  std::vector<std::size_t> s;
  std::vector<std::size_t> t;
};

/// First same-side entry (i, j) that is nonzero, if any.
std::optional<std::pair<std::size_t, std::size_t>> bipartite_violation(const ExtensionMatrix& xi,
                                                                      const BipartiteWitness& w);
bool witnesses(const ExtensionMatrix& xi, const BipartiteWitness& w);

struct PartitionCheck {
  BipartiteWitness partition;
  /// Entry refuting the partition; empty when the partition is a witness.
  std::optional<std::pair<std::size_t, std::size_t>> violation;
};

struct BipartiteResult {
  std::optional<BipartiteWitness> witness;
  std::size_t partitions_checked = 0;
  /// Every partition examined, in search order.
  std::vector<PartitionCheck> transcript;
  /// Set when no partition exists at all (l <= 1).
  std::string reason;
};

/// Exhaustive search over partitions with index 0 in S. A bit mask over the
/// indices 1..l-1 marks the other members of S; masks are tried from 0
/// upward, skipping the one that leaves T empty.
BipartiteResult is_bipartite(const ExtensionMatrix& xi);

struct HomogeneousReduction {
  HomMatrix sigma;
  ExtensionMatrix reduced;
  BipartiteWitness witness;
  std::vector<GeneratorOp> operations;
};

/// Odd p, lambda = (k, ..., k), antidual, l >= 2. Brings alpha into 2x2
/// blocks along the diagonal by swaps and shears, pivoting at an entry of
/// least valuation (ties: lexicographically first (i, j), i < j).
HomogeneousReduction reduce_homogeneous(const ExtensionMatrix& xi);

enum class TripleVerdict { Standard, NonStandard, NotBipartiteReachable, Inconclusive };
const char* verdict_name(TripleVerdict v);

struct TripleDecision {
  TripleVerdict verdict = TripleVerdict::Inconclusive;
  std::optional<HomMatrix> sigma;
  std::optional<BipartiteWitness> witness;
  /// Endomorphism candidates enumerated (each counts against the budget).
  Int candidates = 0;
  Int automorphisms = 0;
  Int total_candidates = 0;
};

/// Enumerates every endomorphism of sum Z/p^{lambda_i} (entry (i, j) runs
/// over multiples of p^{max(0, lambda_i - lambda_j)} below p^{lambda_i}),
/// keeps the automorphisms, and looks for one making xi bipartite.
TripleDecision decide_triple_standard_exhaustive(const ExtensionMatrix& xi, const Int& budget);

/// lambda_i = (s + 1 - i) N; alpha_ij = p^{s+1-i-j} for i < j, i + j <= s + 1
/// (1-based), other upper entries 0, lower triangle the negatives.
ExtensionMatrix counterexample_matrix(long p, int s, int n);

struct ValuationRecord {
  std::size_t i = 0;
  std::size_t j = 0;
  int valuation = 0;
};

struct NonStandardCertificate {
  ExtensionMatrix matrix;
  int s = 0;
  int n = 0;
  BipartiteResult partitions;
  std::size_t partitions_refuted = 0;
  /// Valuations on and above the skew diagonal (i + j <= s + 1, 1-based).
  std::vector<ValuationRecord> valuations;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string prng;
  std::vector<GeneratorOp> operations;
  std::string verdict;
};

/// Exhaustive non-bipartiteness plus `trials` cumulative random generator
/// operations, each checked for valuation invariance. Throws
/// InvariantViolation("valuation-invariance") on counter-evidence.
NonStandardCertificate verify_counterexample(const ExtensionMatrix& xi, int trials, std::uint64_t seed);

/// Apply one generator operation to alpha in place of sigma alpha sigma^T.
ExtensionMatrix apply_generator(const ExtensionMatrix& xi, const GeneratorOp& op);

enum class SplitMode { OddOrder, ExponentTwo };

/// phi with nabla22 = phi - adjoint(phi). Odd order: phi = nabla22 / 2.
/// Exponent two: the strictly lower triangle of nabla22.
HomMatrix split_skew_hom(const HomMatrix& nabla22, SplitMode mode);

}  // namespace symplectica
