#include "fermatseq/graphseq.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <numeric>
#include <string>
#include <utility>

#include "fermatseq/errors.hpp"

namespace fermatseq::graphseq {

// ---- VbvGraph -------------------------------------------------------------

void VbvGraph::set_bit(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }

void VbvGraph::add_vertex(std::span<const std::uint64_t> lower_neighbors) {
  const std::uint64_t v = vertices_ + 1;
  const std::size_t base = row_offset(v);
  for (auto u : lower_neighbors) {
    if (u < 1 || u >= v) {
      throw DomainError("add_vertex: neighbour " + std::to_string(u) + " is not below vertex " + std::to_string(v));
    }
  }
  bit_count_ = base + (v - 1);
  words_.resize((bit_count_ + 63) / 64, 0);
  for (auto u : lower_neighbors) set_bit(base + (u - 1));
  vertices_ = v;
}

void VbvGraph::add_vertex_row(const std::vector<bool>& row) {
  if (row.size() != vertices_) {
    throw DomainError("add_vertex_row: row must have " + std::to_string(vertices_) + " entries");
  }
  std::vector<std::uint64_t> nb;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j]) nb.push_back(j + 1);
  }
  add_vertex(nb);
}

bool VbvGraph::adjacent(std::uint64_t u, std::uint64_t v) const {
  if (u < 1 || v < 1 || u > vertices_ || v > vertices_) throw DomainError("adjacent: vertex out of range");
  if (u == v) return false;
  if (u > v) std::swap(u, v);
  return bit(row_offset(v) + (u - 1));
}

std::vector<std::uint64_t> VbvGraph::lower_neighbors(std::uint64_t v) const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t u = 1; u < v; ++u) {
    if (adjacent(u, v)) out.push_back(u);
  }
  return out;
}

std::vector<std::uint64_t> VbvGraph::neighbors(std::uint64_t v) const {
  std::vector<std::uint64_t> out = lower_neighbors(v);
  for (std::uint64_t w = v + 1; w <= vertices_; ++w) {
    if (adjacent(v, w)) out.push_back(w);
  }
  return out;
}

std::size_t VbvGraph::edge_count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t VbvGraph::degree(std::uint64_t v) const { return neighbors(v).size(); }

VbvGraph VbvGraph::prefix(std::size_t vertices) const {
  if (vertices < 1 || vertices > vertices_) throw DomainError("prefix: vertex count out of range");
  VbvGraph g;
  for (std::uint64_t v = 2; v <= vertices; ++v) g.add_vertex(lower_neighbors(v));
  return g;
}

// ---- codec ----------------------------------------------------------------

SeqTerm::SeqTerm(std::uint64_t index, Natural value) : index_(index), value_(std::move(value)) {
  if (value_.bit_length() > index_ + 1) {
    throw MembershipError("s_" + std::to_string(index_) + " = " + value_.str() + " is not below 2^" +
                          std::to_string(index_ + 1));
  }
}

SeqTerm phi_encode(const VbvGraph& g, std::uint64_t n) {
  if (g.vertex_count() < n + 2) {
    throw DomainError("phi_encode: s_" + std::to_string(n) + " needs " + std::to_string(n + 2) + " vertices, graph has " +
                      std::to_string(g.vertex_count()));
  }
  Integer z = 0;
  for (std::uint64_t k = 1; k <= n + 1; ++k) {
    if (g.adjacent(n + 2, k)) mpz_setbit(z.get_mpz_t(), n + 1 - k);
  }
  return SeqTerm(n, Natural(std::move(z)));
}

std::vector<SeqTerm> phi_encode_all(const VbvGraph& g) {
  std::vector<SeqTerm> out;
  out.reserve(g.vertex_count() - 1);
  for (std::uint64_t n = 0; n + 2 <= g.vertex_count(); ++n) out.push_back(phi_encode(g, n));
  return out;
}

VbvGraph phi_decode(std::span<const SeqTerm> terms) {
  VbvGraph g;
  std::vector<std::uint64_t> nb;
  for (std::size_t pos = 0; pos < terms.size(); ++pos) {
    const SeqTerm& t = terms[pos];
    if (t.index() != pos) throw DomainError("phi_decode: expected s_" + std::to_string(pos));
    const std::uint64_t n = t.index();
    nb.clear();
    for (std::uint64_t k = 1; k <= n + 1; ++k) {
      if (t.value().test_bit(n + 1 - k)) nb.push_back(k);
    }
    g.add_vertex(nb);
  }
  return g;
}

// ---- families -------------------------------------------------------------

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 9> kFamilyNames{{
    {Family::Empty, "empty"},
    {Family::Complete, "complete"},
    {Family::Star, "star"},
    {Family::RaryTree, "rary_tree"},
    {Family::FreeGroupCayley, "free_group_cayley"},
    {Family::DivisibilityHasse, "divisibility_hasse"},
    {Family::Collatz, "collatz"},
    {Family::BooleanHasse, "boolean_hasse"},
    {Family::Transposition, "transposition"},
}};

// distinct prime factors, ascending, with multiplicities
std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t v) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= v; ++p) {
    if (v % p) continue;
    unsigned a = 0;
    while (v % p == 0) {
      v /= p;
      ++a;
    }
    out.emplace_back(p, a);
  }
  if (v > 1) out.emplace_back(v, 1);
  return out;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

bool differ_by_transposition(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  const std::size_t len = std::max(a.size(), b.size());
  unsigned diff = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const std::uint32_t x = i < a.size() ? a[i] : static_cast<std::uint32_t>(i + 1);
    const std::uint32_t y = i < b.size() ? b[i] : static_cast<std::uint32_t>(i + 1);
    if (x != y && ++diff > 2) return false;
  }
  return diff == 2;
}

// Lower neighbours of each new vertex, family by family.
class Rule {
 public:
  explicit Rule(const GeneratorSpec& spec) : spec_(spec) {}

  std::vector<std::uint64_t> lower(std::uint64_t v) {
    std::vector<std::uint64_t> nb;
    switch (spec_.family()) {
      case Family::Empty:
        break;
      case Family::Complete:
        for (std::uint64_t u = 1; u < v; ++u) nb.push_back(u);
        break;
      case Family::Star:
        nb.push_back(1);
        break;
      case Family::RaryTree: {
        const std::uint64_t r = spec_.arity();
        const std::uint64_t level = tree_level(r, v);
        if (level == 1) break;
        const std::uint64_t start = tree_level_start(r, v);
        const std::uint64_t prev_start = tree_level_start(r, start - 1);
        const std::uint64_t u = prev_start + (v - start) / r;
        assert(tree_level(r, u) + 1 == level);
        nb.push_back(u);
        break;
      }
      case Family::FreeGroupCayley:
        if (v == 2) nb.push_back(1);
        if (v / 3 >= 1) nb.push_back(v / 3);
        break;
      case Family::DivisibilityHasse:
        for (const auto& [p, a] : factor(v)) nb.push_back(v / p);
        std::sort(nb.begin(), nb.end());
        break;
      case Family::Collatz:
        if (v % 2 == 0) nb.push_back(v / 2);
        if (v % 6 == 4) nb.push_back((v - 1) / 3);
        std::sort(nb.begin(), nb.end());
        break;
      case Family::BooleanHasse: {
        const std::uint64_t s = v - 1;
        for (unsigned b = 0; b < 64; ++b) {
          if ((s >> b) & 1U) nb.push_back(v - (std::uint64_t{1} << b));
        }
        std::sort(nb.begin(), nb.end());
        break;
      }
      case Family::Transposition: {
        while (perms_.size() < v) perms_.push_back(transposition_permutation(perms_.size() + 1));
        for (std::uint64_t u = 1; u < v; ++u) {
          if (differ_by_transposition(perms_[u - 1], perms_[v - 1])) nb.push_back(u);
        }
        break;
      }
    }
    for (auto u : nb) {
      if (u == v) throw DomainError("generator produced a self-loop at " + std::to_string(v));
    }
    return nb;
  }

 private:
  GeneratorSpec spec_;
  std::vector<std::vector<std::uint32_t>> perms_;
};

Natural pow2(std::uint64_t e) { return Natural::pow2(e); }

}  // namespace

std::string_view to_string(Family f) {
  for (const auto& [fam, name] : kFamilyNames) {
    if (fam == f) return name;
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  for (const auto& [fam, n] : kFamilyNames) {
    if (n == name) return fam;
  }
  return std::nullopt;
}

GeneratorSpec::GeneratorSpec(Family family, std::uint64_t arity) : family_(family), arity_(arity) {
  if (family == Family::RaryTree && arity < 1) throw PreconditionError("rary_tree requires r >= 1");
}

std::uint64_t tree_level(std::uint64_t r, std::uint64_t n) {
  if (r < 1 || n < 1) throw DomainError("tree_level: r and n must be positive");
  if (r == 1) return n;
  // largest L with r^L <= (r-1)(n-1)+1, plus one
  const unsigned __int128 target = static_cast<unsigned __int128>(r - 1) * (n - 1) + 1;
  unsigned __int128 pw = 1;
  std::uint64_t L = 0;
  while (pw * r <= target) {
    pw *= r;
    ++L;
  }
  return L + 1;
}

std::uint64_t tree_level_start(std::uint64_t r, std::uint64_t n) {
  const std::uint64_t level = tree_level(r, n);
  if (r == 1) return n;
  // 1 + r + ... + r^(level-2) vertices sit above this level
  std::uint64_t above = 0;
  std::uint64_t pw = 1;
  for (std::uint64_t i = 0; i + 1 < level; ++i) {
    above += pw;
    pw *= r;
  }
  return above + 1;
}

std::vector<std::uint32_t> transposition_permutation(std::uint64_t v) {
  if (v < 1) throw DomainError("transposition_permutation: v must be positive");
  const std::uint64_t k = v - 1;
  unsigned d = 1;
  unsigned __int128 fact = 1;
  while (fact <= k) {
    ++d;
    fact *= d;
  }
  // tau = k-th permutation of 1..d in lex order; phi_(j) = d+1 - tau_(d+1-j)
  std::vector<std::uint32_t> pool(d);
  std::iota(pool.begin(), pool.end(), 1U);
  std::vector<std::uint32_t> tau;
  unsigned __int128 rem = k;
  for (unsigned i = d; i >= 1; --i) {
    fact /= i;
    const auto digit = static_cast<std::size_t>(rem / fact);
    rem %= fact;
    tau.push_back(pool[digit]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  std::vector<std::uint32_t> phi(d);
  for (unsigned j = 1; j <= d; ++j) phi[j - 1] = d + 1 - tau[d - j];
  while (phi.size() > 1 && phi.back() == phi.size()) phi.pop_back();
  return phi;
}

VbvGraph generate(const GeneratorSpec& spec, std::uint64_t n) {
  Rule rule(spec);
  VbvGraph g;
  for (std::uint64_t v = 2; v <= n + 1; ++v) g.add_vertex(rule.lower(v));
  return g;
}

std::vector<Natural> emit_terms(const GeneratorSpec& spec, std::uint64_t count) {
  std::vector<Natural> out;
  if (count == 0) return out;
  const VbvGraph g = generate(spec, count);
  out.reserve(count);
  for (std::uint64_t n = 0; n < count; ++n) out.push_back(phi_encode(g, n).value());
  return out;
}

bool has_closed_form(Family f) noexcept { return f != Family::BooleanHasse && f != Family::Transposition; }

Natural closed_form(const GeneratorSpec& spec, std::uint64_t n) {
  switch (spec.family()) {
    case Family::Empty:
      return Natural(0);
    case Family::Complete:
      return pow2(n + 1) - Natural(1);
    case Family::Star:
      return pow2(n);
    case Family::RaryTree:
      return pow2(n - n / spec.arity());
    case Family::FreeGroupCayley:
      return n == 0 ? Natural(1) : pow2(n - (n - 1) / 3);
    case Family::DivisibilityHasse: {
      // one term per cover (m+2)/p of m+2
      const std::uint64_t v = n + 2;
      Natural s(0);
      for (const auto& [p, a] : factor(v)) {
        const std::uint64_t cover = v / p;
        assert(cover <= n + 1);
        s += pow2(n + 1 - cover);
      }
      return s;
    }
    case Family::Collatz: {
      if (n % 2 == 1) return Natural(0);
      const Natural root = pow2(n / 2);
      if (n % 6 == 2) {
        assert((2 * (n + 1)) % 3 == 0);
        return root + pow2(2 * (n + 1) / 3);
      }
      return root;
    }
    case Family::BooleanHasse:
    case Family::Transposition:
      break;
  }
  throw UnsupportedFamily(std::string("closed_form: no closed form for ") + std::string(to_string(spec.family())));
}

Natural hasse_printed_formula(std::uint64_t m) {
  const auto sig = factor(m + 2);
  if (sig.size() == 1) {
    const auto& [p, a] = sig.front();
    return pow2(m + 1 - ipow(p, a - 1));
  }
  Natural s(0);
  for (const auto& [p, a] : sig) {
    const std::uint64_t col = ipow(p, a);
    assert(col <= m + 1);
    s += pow2(m + 1 - col);
  }
  return s;
}

std::vector<std::uint64_t> hasse_pattern_probe(std::uint64_t r, HasseSource source) {
  std::vector<Natural> h;
  if (source == HasseSource::Printed) {
    for (std::uint64_t m = 0; m <= r + 6; ++m) h.push_back(hasse_printed_formula(m));
  } else {
    h = emit_terms(GeneratorSpec(Family::DivisibilityHasse), r + 7);
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 0; n <= r; ++n) {
    if (h[n + 6] >= pow2(n + 6) && h[n + 5] >= pow2(n + 4) && h[n + 4] >= pow2(n + 2) && h[n + 3] >= pow2(n)) {
      out.push_back(n);
    }
  }
  return out;
}

// ---- Collatz components ---------------------------------------------------

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t add() {
    parent_.push_back(parent_.size());
    size_.push_back(1);
    ++components_;
    return parent_.size() - 1;
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
  }

  [[nodiscard]] std::uint64_t components() const { return components_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::uint64_t components_ = 0;
};

}  // namespace

std::uint64_t collatz_components(std::uint64_t n) {
  const VbvGraph g = generate(GeneratorSpec(Family::Collatz), n);
  UnionFind uf;
  for (std::uint64_t v = 1; v <= g.vertex_count(); ++v) uf.add();
  for (std::uint64_t v = 2; v <= g.vertex_count(); ++v) {
    for (auto u : g.lower_neighbors(v)) uf.unite(u - 1, v - 1);
  }
  return uf.components();
}

std::vector<std::uint64_t> collatz_component_counts(std::uint64_t max_n) {
  Rule rule(GeneratorSpec(Family::Collatz));
  UnionFind uf;
  uf.add();
  std::vector<std::uint64_t> counts{uf.components()};
  for (std::uint64_t v = 2; v <= max_n + 1; ++v) {
    uf.add();
    for (auto u : rule.lower(v)) uf.unite(u - 1, v - 1);
    counts.push_back(uf.components());
  }
  return counts;
}

std::uint64_t collatz_component_formula(std::uint64_t n) { return (n + 2) / 2 - (n + 3) / 6 + 1; }

// ---- hypercube ------------------------------------------------------------

bool hypercube_check(std::uint64_t n) {
  if (n > 5) throw PreconditionError("hypercube_check: n must be at most 5");
  const std::uint64_t V = std::uint64_t{1} << n;
  const VbvGraph g1 = generate(GeneratorSpec(Family::BooleanHasse), V);
  const VbvGraph g = g1.prefix(V);

  if (g.vertex_count() != V) return false;
  if (g.edge_count() != n * V / 2) return false;
  for (std::uint64_t v = 1; v <= V; ++v) {
    if (g.degree(v) != n) return false;
  }

  // 2-colouring by BFS from every uncoloured vertex
  std::vector<int> colour(V + 1, -1);
  for (std::uint64_t s = 1; s <= V; ++s) {
    if (colour[s] >= 0) continue;
    colour[s] = 0;
    std::vector<std::uint64_t> queue{s};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const auto u = queue[h];
      for (auto w : g.neighbors(u)) {
        if (colour[w] < 0) {
          colour[w] = 1 - colour[u];
          queue.push_back(w);
        } else if (colour[w] == colour[u]) {
          return false;
        }
      }
    }
  }

  // v <-> bit vector of v-1 is an isomorphism onto Q_n
  for (std::uint64_t u = 1; u <= V; ++u) {
    for (std::uint64_t v = u + 1; v <= V; ++v) {
      if (g.adjacent(u, v) != (std::popcount((u - 1) ^ (v - 1)) == 1)) return false;
    }
  }

  return phi_encode(g1, V - 1).value() == pow2(V - 1);
}

}  // namespace fermatseq::graphseq
