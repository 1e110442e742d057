#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fermatseq/natural.hpp"

/// Vertex-by-vertex increasing graph sequences and their integer encoding.
///
/// G_n has vertices 1..n+1, and the n-th sequence term is the row of vertex
/// n+2 in G_(n+1), read as a binary numeral with vertex 1 as the most
/// significant bit. Terms therefore satisfy s_n < 2^(n+1), and every such
/// sequence decodes to exactly one graph sequence.
namespace fermatseq::graphseq {

/// Prefix G_n of a vertex-by-vertex increasing sequence, stored as packed
/// lower-triangular rows. Rows are append-only: the only mutation is adding
/// the next vertex together with its edges to earlier vertices.
class VbvGraph {
 public:
  /// G_0: a single vertex, no edges.
  VbvGraph() = default;

  [[nodiscard]] std::size_t vertex_count() const noexcept { return vertices_; }
  /// n such that this graph is G_n.
  [[nodiscard]] std::size_t index() const noexcept { return vertices_ - 1; }

  /// Appends vertex vertex_count()+1 joined to the given earlier vertices (1-based).
  void add_vertex(std::span<const std::uint64_t> lower_neighbors);
  /// Appends a vertex from its row: row[j] is the adjacency to vertex j+1.
  void add_vertex_row(const std::vector<bool>& row);

  [[nodiscard]] bool adjacent(std::uint64_t u, std::uint64_t v) const;
  /// Neighbours of v that are smaller than v, ascending.
  [[nodiscard]] std::vector<std::uint64_t> lower_neighbors(std::uint64_t v) const;
  [[nodiscard]] std::vector<std::uint64_t> neighbors(std::uint64_t v) const;
  [[nodiscard]] std::size_t edge_count() const;
  [[nodiscard]] std::size_t degree(std::uint64_t v) const;

  /// The first `vertices` vertices with their induced edges.
  [[nodiscard]] VbvGraph prefix(std::size_t vertices) const;

  friend bool operator==(const VbvGraph&, const VbvGraph&) = default;

 private:
  static std::size_t row_offset(std::uint64_t v) { return (v - 1) * (v - 2) / 2; }
  [[nodiscard]] bool bit(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set_bit(std::size_t i);

  std::size_t vertices_ = 1;
  std::size_t bit_count_ = 0;
  std::vector<std::uint64_t> words_;
};

/// A term s_n of an encoded sequence. Construction enforces s_n < 2^(n+1)
/// and throws MembershipError otherwise.
class SeqTerm {
 public:
  SeqTerm(std::uint64_t index, Natural value);

  [[nodiscard]] std::uint64_t index() const noexcept { return index_; }
  [[nodiscard]] const Natural& value() const noexcept { return value_; }

  friend bool operator==(const SeqTerm&, const SeqTerm&) = default;

 private:
  std::uint64_t index_;
  Natural value_;
};

/// s_n from the row of vertex n+2. DomainError if g has fewer than n+2 vertices.
SeqTerm phi_encode(const VbvGraph& g, std::uint64_t n);

/// s_0 .. s_(V-2) for a graph with V vertices.
std::vector<SeqTerm> phi_encode_all(const VbvGraph& g);

/// The unique graph on terms.size()+1 vertices whose encoding is `terms`.
/// Terms must carry indices 0, 1, 2, ... in order (DomainError otherwise).
VbvGraph phi_decode(std::span<const SeqTerm> terms);

enum class Family {
  Empty,
  Complete,
  Star,
  RaryTree,
  FreeGroupCayley,
  DivisibilityHasse,
  Collatz,
  BooleanHasse,
  Transposition,
};

std::string_view to_string(Family f);
std::optional<Family> parse_family(std::string_view name);

class GeneratorSpec {
 public:
  /// PreconditionError for RaryTree with arity 0.
  explicit GeneratorSpec(Family family, std::uint64_t arity = 0);

  [[nodiscard]] Family family() const noexcept { return family_; }
  [[nodiscard]] std::uint64_t arity() const noexcept { return arity_; }

 private:
  Family family_;
  std::uint64_t arity_;
};

/// G_n of the family (vertices 1..n+1).
VbvGraph generate(const GeneratorSpec& spec, std::uint64_t n);

/// s_0 .. s_(count-1) for the family, i.e. the encoding of G_count.
std::vector<Natural> emit_terms(const GeneratorSpec& spec, std::uint64_t count);

/// Closed form of s_n. UnsupportedFamily for BooleanHasse and Transposition.
Natural closed_form(const GeneratorSpec& spec, std::uint64_t n);

[[nodiscard]] bool has_closed_form(Family f) noexcept;

/// Level function of the r-ary tree: n for r = 1, else floor(log_r((r-1)(n-1)+1)) + 1.
std::uint64_t tree_level(std::uint64_t r, std::uint64_t n);
/// Smallest vertex on the same level as n.
std::uint64_t tree_level_start(std::uint64_t r, std::uint64_t n);

/// phi_(v) in reversed colexicographic order without trailing fixed points
/// (phi_1 = [1], phi_2 = [2,1], phi_3 = [1,3,2], ...).
std::vector<std::uint32_t> transposition_permutation(std::uint64_t v);

/// The Hasse-diagram formula exactly as printed, including its r > 1 branch
/// 2^(m+1) * sum_k 2^(-p_k^alpha_k). Agrees with the encoded diagram for
/// prime powers and for products of two distinct primes only.
Natural hasse_printed_formula(std::uint64_t m);

enum class HasseSource { Printed, Encoded };

/// { n in [0, r] : H(n+6) >= 2^(n+6), H(n+5) >= 2^(n+4), H(n+4) >= 2^(n+2), H(n+3) >= 2^n }
/// with H either the printed formula or the encoded Hasse diagram.
std::vector<std::uint64_t> hasse_pattern_probe(std::uint64_t r, HasseSource source = HasseSource::Printed);

/// Connected components of the generated Collatz G_n (union-find).
std::uint64_t collatz_components(std::uint64_t n);

/// Component counts of Collatz G_0 .. G_max_n, grown one vertex at a time.
std::vector<std::uint64_t> collatz_component_counts(std::uint64_t max_n);

/// floor((n+2)/2) - floor((n+3)/6) + 1
std::uint64_t collatz_component_formula(std::uint64_t n);

/// Boolean-lattice G_(2^n - 1) against the n-cube: vertex/edge counts, regular
/// degree n, bipartiteness, the labelling v <-> bits of v-1, and
/// s_(2^n - 1) = 2^(2^n - 1). PreconditionError for n > 5.
bool hypercube_check(std::uint64_t n);

}  // namespace fermatseq::graphseq
