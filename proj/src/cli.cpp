#include "fermatseq/cli.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>

#include "fermatseq/arith.hpp"
#include "fermatseq/conditions.hpp"
#include "fermatseq/config.hpp"
#include "fermatseq/errors.hpp"
#include "fermatseq/explorers.hpp"
#include "fermatseq/graphseq.hpp"

namespace fermatseq::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Emitted as JSON numbers up to 2^53, as decimal strings beyond.
ojson num(const Integer& v) {
  if (v.fits_slong_p() && abs(v) <= Integer(1) << 53) return static_cast<std::int64_t>(v.get_si());
  return v.get_str();
}
ojson num(const Natural& v) { return num(v.value()); }

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

ojson param_value(const std::string& s) {
  if (all_digits(s) || (s.size() > 1 && s[0] == '-' && all_digits(s.substr(1)))) return num(Integer(s));
  return s;
}

Integer parse_integer(const std::string& name, const std::string& s) {
  std::string_view body = s;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) body.remove_prefix(1);
  if (!all_digits(body)) throw UsageError("--" + name + ": not an integer: '" + s + "'");
  return Integer(s[0] == '+' ? s.substr(1) : s);
}

Natural parse_natural(const std::string& name, const std::string& s) {
  const Integer v = parse_integer(name, s);
  if (sgn(v) < 0) throw PreconditionError("--" + name + " must be non-negative, got " + s);
  return Natural(v);
}

std::uint64_t parse_u64(const std::string& name, const std::string& s) {
  const Natural v = parse_natural(name, s);
  if (!v.fits_u64()) throw PreconditionError("--" + name + " is too large: " + s);
  return v.to_u64();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

struct Output {
  const RunConfig& cfg;
  std::ostream& out;
  std::string command;

  ojson envelope() const {
    ojson j;
    j["command"] = command;
    j["config"] = cfg.to_json();
    return j;
  }

  void header_line() const { out << "# config " << cfg.to_json().dump() << "\n"; }

  void json(const ojson& j) const { out << j.dump(2) << "\n"; }

  // index,value rows for list-valued results
  void csv(const std::vector<ojson>& values) const {
    header_line();
    out << "index,value\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
      out << i << ",";
      if (values[i].is_null()) {
        out << "unknown";
      } else if (values[i].is_string()) {
        out << values[i].get<std::string>();
      } else {
        out << values[i].dump();
      }
      out << "\n";
    }
  }

  void text_list(const std::vector<ojson>& values) const {
    header_line();
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out << ",";
      if (values[i].is_null()) {
        out << "?";
      } else if (values[i].is_string()) {
        out << values[i].get<std::string>();
      } else {
        out << values[i].dump();
      }
    }
    out << "\n";
  }

  void require_not_csv() const {
    if (cfg.output_format == OutputFormat::Csv) throw UsageError(command + ": csv output is only available for lists");
  }
};

// ---- check ------------------------------------------------------------------

struct NamedArgs {
  std::map<std::string, std::string> values;

  const std::string& get(const std::string& name) const {
    auto it = values.find(name);
    if (it == values.end()) throw UsageError("missing argument --" + name);
    return it->second;
  }
  Integer z(const std::string& name) const { return parse_integer(name, get(name)); }
  Natural nat(const std::string& name) const { return parse_natural(name, get(name)); }
  std::uint64_t u64(const std::string& name) const { return parse_u64(name, get(name)); }
};

NamedArgs parse_named(const std::vector<std::string>& extras, const std::vector<std::string>& allowed) {
  NamedArgs a;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& tok = extras[i];
    if (tok.rfind("--", 0) != 0 || tok.size() <= 2) throw UsageError("unexpected argument '" + tok + "'");
    std::string name = tok.substr(2);
    std::string value;
    if (auto eq = name.find('='); eq != std::string::npos) {
      value = name.substr(eq + 1);
      name = name.substr(0, eq);
    } else {
      if (i + 1 >= extras.size()) throw UsageError("--" + name + " needs a value");
      value = extras[++i];
    }
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      std::string list;
      for (const auto& n : allowed) list += " --" + n;
      throw UsageError("unknown argument --" + name + " (expected:" + list + ")");
    }
    if (!a.values.emplace(name, value).second) throw UsageError("--" + name + " given twice");
  }
  return a;
}

const std::map<conditions::ConditionId, std::vector<std::string>>& condition_params() {
  using conditions::ConditionId;
  static const std::map<ConditionId, std::vector<std::string>> params{
      {ConditionId::ZeroGen, {"A", "B", "C", "D", "E"}},
      {ConditionId::FirstGen, {"k", "l", "m", "q", "r"}},
      {ConditionId::Particularizacion, {"k", "n", "r", "s"}},
      {ConditionId::SecondGen, {"b", "c", "d", "g"}},
      {ConditionId::CommonPart, {"k", "l", "m", "r"}},
      {ConditionId::Particularizacion2, {"l", "n", "r", "s", "t"}},
      {ConditionId::PropBaaz, {"u", "v", "x"}},
      {ConditionId::BaazTheorem, {"n", "u", "v", "x"}},
      {ConditionId::ThirdGen, {"a", "f", "h", "i"}},
      {ConditionId::CommonPart2, {"a", "f", "h", "i"}},
      {ConditionId::Particularizacion3, {"i", "n"}},
      {ConditionId::FourthGen, {"a", "b", "c", "d", "g", "h", "i", "k"}},
      {ConditionId::Particularizacion4, {"c", "i", "n"}},
      {ConditionId::Broda, {"A", "B", "C", "D"}},
      {ConditionId::Particularizacion5, {"m", "n"}},
      {ConditionId::ProductVersion, {"m", "n"}},
  };
  return params;
}

conditions::ConditionReport evaluate_condition(conditions::ConditionId id, const NamedArgs& a,
                                               const arith::ArithConfig& ac) {
  using conditions::ConditionId;
  namespace c = conditions;
  switch (id) {
    case ConditionId::ZeroGen:
      return c::zero_gen(a.z("A"), a.z("B"), a.z("C"), a.z("D"), a.z("E"));
    case ConditionId::FirstGen:
      return c::first_gen(a.z("k"), a.z("l"), a.z("m"), a.z("q"), a.z("r"), ac);
    case ConditionId::Particularizacion:
      return c::thm_particularizacion(a.nat("k"), a.u64("n"), a.u64("r"), a.u64("s"));
    case ConditionId::SecondGen:
      return c::second_gen(a.z("b"), a.z("c"), a.z("d"), a.z("g"), ac);
    case ConditionId::CommonPart:
      return c::common_part(a.z("k"), a.z("l"), a.z("m"), a.z("r"), ac);
    case ConditionId::Particularizacion2:
      return c::thm_particularizacion2(a.nat("l"), a.u64("n"), a.u64("r"), a.nat("s"), a.u64("t"), ac);
    case ConditionId::PropBaaz:
      return c::prop_baaz(a.u64("u"), a.nat("v"), a.u64("x"));
    case ConditionId::BaazTheorem:
      return c::thm_baaz(a.u64("n"), a.u64("u"), a.nat("v"), a.u64("x"), ac);
    case ConditionId::ThirdGen:
      return c::third_gen(a.z("a"), a.z("f"), a.z("h"), a.z("i"), ac);
    case ConditionId::CommonPart2:
      return c::common_part2(a.z("a"), a.z("f"), a.z("h"), a.z("i"), ac);
    case ConditionId::Particularizacion3:
      return c::thm_particularizacion3(a.nat("i"), a.u64("n"));
    case ConditionId::FourthGen:
      return c::fourth_gen(a.z("a"), a.z("b"), a.z("c"), a.z("d"), a.z("g"), a.z("h"), a.z("i"), a.z("k"));
    case ConditionId::Particularizacion4:
      return c::thm_particularizacion4(a.nat("c"), a.nat("i"), a.u64("n"));
    case ConditionId::Broda:
      return c::prop_broda(a.nat("A"), a.nat("B"), a.nat("C"), a.nat("D"), ac);
    case ConditionId::Particularizacion5:
      return c::thm_particularizacion5(a.nat("m"), a.u64("n"), ac);
    case ConditionId::ProductVersion:
      return c::thm_product_version(a.nat("m"), a.u64("n"), ac);
  }
  throw UsageError("unknown condition");
}

int cmd_check(const Output& o, const std::string& id_name, const std::vector<std::string>& extras) {
  o.require_not_csv();
  const auto id = conditions::parse_condition_id(id_name);
  if (!id) {
    std::string list;
    for (auto c : conditions::all_condition_ids()) list += " " + std::string(conditions::to_string(c));
    throw UsageError("unknown condition '" + id_name + "' (known:" + list + ")");
  }
  const NamedArgs args = parse_named(extras, condition_params().at(*id));
  for (const auto& p : condition_params().at(*id)) args.get(p);
  const auto rep = evaluate_condition(*id, args, o.cfg.arith());

  if (o.cfg.output_format == OutputFormat::Json) {
    ojson j = o.envelope();
    ojson r;
    r["condition"] = std::string(conditions::to_string(rep.id));
    ojson inputs = ojson::object();
    for (const auto& b : rep.inputs) inputs[b.name] = num(b.value);
    r["inputs"] = inputs;
    r["hypothesis_holds"] = rep.hypothesis_holds;
    r["conclusion_checked"] = rep.conclusion_checked;
    r["conclusion_holds"] = rep.conclusion_holds;
    r["sound"] = rep.sound();
    if (rep.witness) {
      r["witness"] = ojson{{"divisor", num(rep.witness->divisor)}, {"dividend", rep.witness->dividend}};
    } else {
      r["witness"] = nullptr;
    }
    j["report"] = r;
    o.json(j);
  } else {
    o.header_line();
    o.out << "condition " << conditions::to_string(rep.id) << "\n";
    o.out << "inputs";
    for (const auto& b : rep.inputs) o.out << " " << b.name << "=" << b.value.get_str();
    o.out << "\nhypothesis " << (rep.hypothesis_holds ? "true" : "false") << "\n";
    if (rep.conclusion_checked) o.out << "conclusion " << (rep.conclusion_holds ? "true" : "false") << "\n";
    if (rep.witness) o.out << "witness " << rep.witness->divisor.get_str() << " | " << rep.witness->dividend << "\n";
    if (!rep.sound()) o.out << "VIOLATION\n";
  }
  if (!rep.sound()) return kExitViolation;
  return rep.hypothesis_holds ? kExitOk : kExitHypothesisFalse;
}

// ---- explorers ------------------------------------------------------------

void emit_search(const Output& o, const explore::SearchResult& res) {
  std::vector<ojson> hits;
  for (const auto& h : res.hits) hits.push_back(num(h));
  switch (o.cfg.output_format) {
    case OutputFormat::Json: {
      ojson j = o.envelope();
      ojson params = ojson::object();
      for (const auto& [k, v] : res.parameters) params[k] = param_value(v);
      j["parameters"] = params;
      j["hits"] = hits;
      j["bound_reached"] = res.bound_reached;
      o.json(j);
      break;
    }
    case OutputFormat::Csv:
      o.csv(hits);
      break;
    case OutputFormat::Text:
      o.text_list(hits);
      break;
  }
}

int cmd_minm(const Output& o, std::uint64_t count, std::uint64_t ceiling) {
  explore::MinMOptions opts;
  opts.count_ceiling = ceiling;
  opts.search_cap = o.cfg.search_cap;
  const auto terms = explore::min_m_sequence(count, opts, o.cfg.explore());
  std::vector<ojson> vals;
  bool bound = false;
  for (const auto& t : terms) {
    if (t) {
      vals.push_back(num(*t));
    } else {
      vals.emplace_back(nullptr);
      bound = true;
    }
  }
  switch (o.cfg.output_format) {
    case OutputFormat::Json: {
      ojson j = o.envelope();
      j["parameters"] = ojson{{"count", count}, {"ceiling", ceiling}, {"search_cap", o.cfg.search_cap}};
      j["terms"] = vals;
      j["bound_reached"] = bound;
      o.json(j);
      break;
    }
    case OutputFormat::Csv:
      o.csv(vals);
      break;
    case OutputFormat::Text:
      o.text_list(vals);
      break;
  }
  return kExitOk;
}

int cmd_streak(const Output& o, const Natural& m, std::uint64_t n, std::uint64_t max_len, bool doubling) {
  o.require_not_csv();
  const auto kind = doubling ? explore::StreakKind::Doubling : explore::StreakKind::Diagonal;
  const auto s = explore::streak_probe(m, n, max_len, kind, o.cfg.explore());
  if (o.cfg.output_format == OutputFormat::Json) {
    ojson j = o.envelope();
    j["parameters"] =
        ojson{{"m", num(m)}, {"n", n}, {"max_len", max_len}, {"kind", doubling ? "doubling" : "diagonal"}};
    j["base_holds"] = s.has_value();
    j["streak"] = s ? ojson(*s) : ojson(nullptr);
    j["bound_reached"] = s.has_value() && *s == max_len;
    o.json(j);
  } else {
    o.header_line();
    o.out << (s ? std::to_string(*s) : std::string("none")) << "\n";
  }
  return kExitOk;
}

// ---- graph ------------------------------------------------------------------

graphseq::VbvGraph graph_from_rows(const std::string& rows) {
  graphseq::VbvGraph g;
  if (rows.empty()) return g;
  for (const auto& row : split(rows, ',')) {
    if (row.size() != g.vertex_count()) {
      throw UsageError("--rows: row for vertex " + std::to_string(g.vertex_count() + 1) + " needs " +
                       std::to_string(g.vertex_count()) + " bits");
    }
    std::vector<bool> bits;
    for (char c : row) {
      if (c != '0' && c != '1') throw UsageError("--rows: bits must be 0 or 1");
      bits.push_back(c == '1');
    }
    g.add_vertex_row(bits);
  }
  return g;
}

graphseq::VbvGraph graph_from_matrix(const std::string& matrix) {
  const auto rows = split(matrix, ',');
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw UsageError("--matrix: must be square");
    for (std::size_t j = 0; j < n; ++j) {
      const char c = rows[i][j];
      if (c != '0' && c != '1') throw UsageError("--matrix: entries must be 0 or 1");
      if (i == j && c != '0') throw DomainError("--matrix: diagonal must be zero");
      if (c != rows[j][i]) throw DomainError("--matrix: must be symmetric");
    }
  }
  graphseq::VbvGraph g;
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<bool> bits;
    for (std::size_t j = 0; j < i; ++j) bits.push_back(rows[i][j] == '1');
    g.add_vertex_row(bits);
  }
  return g;
}

std::vector<ojson> term_values(const std::vector<Natural>& terms) {
  std::vector<ojson> v;
  for (const auto& t : terms) v.push_back(num(t));
  return v;
}

void emit_terms(const Output& o, ojson params, const std::vector<Natural>& terms) {
  const auto vals = term_values(terms);
  switch (o.cfg.output_format) {
    case OutputFormat::Json: {
      ojson j = o.envelope();
      j["parameters"] = std::move(params);
      j["terms"] = vals;
      o.json(j);
      break;
    }
    case OutputFormat::Csv:
      o.csv(vals);
      break;
    case OutputFormat::Text:
      o.text_list(vals);
      break;
  }
}

graphseq::GeneratorSpec family_spec(const std::string& name, std::uint64_t r) {
  const auto f = graphseq::parse_family(name);
  if (!f) throw UsageError("unknown family '" + name + "'");
  if (*f != graphseq::Family::RaryTree && r != 0) throw UsageError("--r only applies to rary_tree");
  return graphseq::GeneratorSpec(*f, r);
}

ojson spec_json(const graphseq::GeneratorSpec& spec) {
  ojson j{{"family", std::string(graphseq::to_string(spec.family()))}};
  if (spec.family() == graphseq::Family::RaryTree) j["r"] = spec.arity();
  return j;
}

int cmd_graph_decode(const Output& o, const std::string& terms_arg) {
  o.require_not_csv();
  std::vector<graphseq::SeqTerm> terms;
  if (!terms_arg.empty()) {
    std::uint64_t idx = 0;
    for (const auto& t : split(terms_arg, ',')) terms.emplace_back(idx++, parse_natural("terms", t));
  }
  const auto g = graphseq::phi_decode(terms);
  std::vector<std::string> rows;
  ojson edges = ojson::array();
  for (std::uint64_t v = 2; v <= g.vertex_count(); ++v) {
    std::string row;
    for (std::uint64_t u = 1; u < v; ++u) {
      const bool a = g.adjacent(u, v);
      row += a ? '1' : '0';
      if (a) edges.push_back(ojson::array({u, v}));
    }
    rows.push_back(row);
  }
  if (o.cfg.output_format == OutputFormat::Json) {
    ojson j = o.envelope();
    j["vertices"] = g.vertex_count();
    j["rows"] = rows;
    j["edges"] = edges;
    o.json(j);
  } else {
    o.header_line();
    for (const auto& r : rows) o.out << r << "\n";
  }
  return kExitOk;
}

int cmd_graph_components(const Output& o, std::optional<std::uint64_t> n, std::optional<std::uint64_t> upto) {
  o.require_not_csv();
  if (n.has_value() == upto.has_value()) throw UsageError("components: give exactly one of --n, --upto");
  if (n) {
    const auto c = graphseq::collatz_components(*n);
    const auto f = graphseq::collatz_component_formula(*n);
    if (o.cfg.output_format == OutputFormat::Json) {
      ojson j = o.envelope();
      j["n"] = *n;
      j["components"] = c;
      j["formula"] = f;
      o.json(j);
    } else {
      o.header_line();
      o.out << c << "\n";
    }
    return kExitOk;
  }
  const auto counts = graphseq::collatz_component_counts(*upto);
  std::uint64_t mismatches = 0;
  std::optional<std::uint64_t> first;
  for (std::uint64_t k = 3; k <= *upto; ++k) {
    if (counts[k] != graphseq::collatz_component_formula(k)) {
      ++mismatches;
      if (!first) first = k;
    }
  }
  if (o.cfg.output_format == OutputFormat::Json) {
    ojson j = o.envelope();
    j["upto"] = *upto;
    j["checked_from"] = 3;
    j["mismatches"] = mismatches;
    if (first) {
      j["first_mismatch"] = ojson{{"n", *first},
                                  {"components", counts[*first]},
                                  {"formula", graphseq::collatz_component_formula(*first)}};
    } else {
      j["first_mismatch"] = nullptr;
    }
    o.json(j);
  } else {
    o.header_line();
    if (first) {
      o.out << "first mismatch at n = " << *first << "\n";
    } else {
      o.out << "formula agrees for 3 <= n <= " << *upto << "\n";
    }
  }
  return kExitOk;
}

int cmd_graph_verify(const Output& o, const graphseq::GeneratorSpec& spec, std::uint64_t upto) {
  o.require_not_csv();
  if (!graphseq::has_closed_form(spec.family())) {
    throw UnsupportedFamily(std::string(graphseq::to_string(spec.family())) + " has no closed form");
  }
  const auto g = graphseq::generate(spec, upto + 1);
  std::optional<std::uint64_t> first;
  for (std::uint64_t n = 0; n <= upto && !first; ++n) {
    if (graphseq::closed_form(spec, n) != graphseq::phi_encode(g, n).value()) first = n;
  }
  if (o.cfg.output_format == OutputFormat::Json) {
    ojson j = o.envelope();
    j["parameters"] = spec_json(spec);
    j["upto"] = upto;
    j["ok"] = !first.has_value();
    j["first_mismatch"] = first ? ojson(*first) : ojson(nullptr);
    o.json(j);
  } else {
    o.header_line();
    if (first) {
      o.out << "mismatch at n = " << *first << "\n";
    } else {
      o.out << "ok up to " << upto << "\n";
    }
  }
  return first ? kExitViolation : kExitOk;
}

int cmd_graph_hypercube(const Output& o, std::uint64_t n) {
  o.require_not_csv();
  const bool ok = graphseq::hypercube_check(n);
  if (o.cfg.output_format == OutputFormat::Json) {
    ojson j = o.envelope();
    j["n"] = n;
    j["index"] = (std::uint64_t{1} << n) - 1;
    j["holds"] = ok;
    o.json(j);
  } else {
    o.header_line();
    o.out << (ok ? "true" : "false") << "\n";
  }
  return ok ? kExitOk : kExitViolation;
}

int cmd_hasse_probe(const Output& o, std::uint64_t r, const std::string& source) {
  graphseq::HasseSource src;
  if (source == "printed") {
    src = graphseq::HasseSource::Printed;
  } else if (source == "encoded") {
    src = graphseq::HasseSource::Encoded;
  } else {
    throw UsageError("--source must be printed or encoded");
  }
  explore::SearchResult res;
  res.parameters = {{"r", std::to_string(r)}, {"source", source}};
  for (auto h : graphseq::hasse_pattern_probe(r, src)) res.hits.emplace_back(h);
  emit_search(o, res);
  return kExitOk;
}

// ---- arithmetic -----------------------------------------------------------

int cmd_fermat(const Output& o, std::uint64_t n, const Natural& m) {
  o.require_not_csv();
  const Natural res = arith::fermat_mod(FermatIndex(n), m);
  if (o.cfg.output_format == OutputFormat::Json) {
    ojson j = o.envelope();
    j["n"] = n;
    j["modulus"] = num(m);
    j["residue"] = num(res);
    j["divides"] = res.is_zero();
    o.json(j);
  } else {
    o.header_line();
    o.out << res << "\n";
  }
  return kExitOk;
}

int cmd_prime(const Output& o, const Natural& p) {
  o.require_not_csv();
  const bool prime = arith::is_prime(p, o.cfg.arith());
  if (o.cfg.output_format == OutputFormat::Json) {
    ojson j = o.envelope();
    j["p"] = num(p);
    j["prime"] = prime;
    o.json(j);
  } else {
    o.header_line();
    o.out << (prime ? "true" : "false") << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fermat-number divisibility conditions and graph-sequence encodings", "fermatseq"};
  app.fallthrough();
  app.allow_extras();
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed, mat_bound, search_cap, workers, witnesses;
  std::optional<std::string> format;
  bool timing = false;
  app.add_option("--config", config_path, "JSON config file (default: $FERMATSEQ_CONFIG)");
  app.add_option("--seed", seed, "RNG seed for probabilistic primality");
  app.add_option("--materialization-bound", mat_bound, "largest n for which F_n is built exactly");
  app.add_option("--search-cap", search_cap, "upper limit of unbounded searches");
  app.add_option("--workers", workers, "worker threads");
  app.add_option("--witnesses", witnesses, "Miller-Rabin rounds above the deterministic range");
  app.add_option("--format", format, "json, csv or text");
  app.add_flag("--timing", timing, "print runtime_ms to stderr");

  std::string check_id;
  auto* check = app.add_subcommand("check", "evaluate one condition, e.g. check particularizacion3 --i 5 --n 5");
  check->add_option("id", check_id, "condition id")->required();

  std::uint64_t s_n = 0;
  std::string s_lo, s_hi;
  auto* search = app.add_subcommand("search", "divisor candidates k*2^(n+2)+1 for k in [lo, hi]");
  search->add_option("--n", s_n)->required();
  search->add_option("--lo", s_lo)->required();
  search->add_option("--hi", s_hi)->required();

  std::string sc_pred;
  std::uint64_t sc_r = 0;
  auto* scan = app.add_subcommand("scan", "antidiagonal scan of predicate A or B");
  scan->add_option("--pred", sc_pred)->required();
  scan->add_option("--r", sc_r)->required();

  std::uint64_t mm_count = 0, mm_ceiling = 14;
  auto* minm = app.add_subcommand("minm", "least m with A(m, n) for n = 1 .. count");
  minm->add_option("--count", mm_count)->required();
  minm->add_option("--ceiling", mm_ceiling, "largest allowed count");

  std::string st_m;
  std::uint64_t st_n = 0, st_len = 64;
  bool st_doubling = false;
  auto* streak = app.add_subcommand("streak", "run length of A along a diagonal or doubling path");
  streak->add_option("--m", st_m)->required();
  streak->add_option("--n", st_n)->required();
  streak->add_option("--max-len", st_len);
  streak->add_flag("--doubling", st_doubling);

  std::uint64_t f_n = 0;
  std::string f_mod;
  auto* fermat = app.add_subcommand("fermat", "F_n mod m");
  fermat->add_option("--n", f_n)->required();
  fermat->add_option("--mod", f_mod)->required();

  std::string p_p;
  auto* prime = app.add_subcommand("prime", "primality test");
  prime->add_option("--p", p_p)->required();

  auto* graph = app.add_subcommand("graph", "graph-sequence encoding");
  graph->require_subcommand(1);

  std::optional<std::string> g_rows, g_matrix;
  auto* encode = graph->add_subcommand("encode", "adjacency to sequence terms");
  encode->add_option("--rows", g_rows, "lower rows, e.g. 1,11,111");
  encode->add_option("--matrix", g_matrix, "full matrix rows, e.g. 01,10");

  std::string g_terms;
  auto* decode = graph->add_subcommand("decode", "sequence terms to adjacency");
  decode->add_option("--terms", g_terms)->required();

  std::string g_family;
  std::uint64_t g_count = 0, g_r = 0;
  auto* emit = graph->add_subcommand("emit", "first terms of a family");
  emit->add_option("--family", g_family)->required();
  emit->add_option("--count", g_count)->required();
  emit->add_option("--r", g_r, "arity for rary_tree");

  std::optional<std::uint64_t> c_n, c_upto;
  auto* components = graph->add_subcommand("components", "Collatz component counts");
  components->add_option("--n", c_n);
  components->add_option("--upto", c_upto);

  std::string v_family;
  std::uint64_t v_upto = 64, v_r = 0;
  auto* verify = graph->add_subcommand("verify", "closed form against the encoded generator");
  verify->add_option("--family", v_family)->required();
  verify->add_option("--upto", v_upto);
  verify->add_option("--r", v_r, "arity for rary_tree");

  std::uint64_t h_n = 0;
  auto* hypercube = graph->add_subcommand("hypercube", "Boolean-lattice graph against the n-cube");
  hypercube->add_option("--n", h_n)->required();

  std::uint64_t hp_r = 0;
  std::string hp_source = "printed";
  auto* hasse = graph->add_subcommand("hasse-probe", "pattern probe over the Hasse-diagram terms");
  hasse->add_option("--r", hp_r)->required();
  hasse->add_option("--source", hp_source, "printed or encoded");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    RunConfig cfg;
    try {
      cfg = load_run_config(config_path);
      nlohmann::json overlay = nlohmann::json::object();
      if (seed) overlay["seed"] = *seed;
      if (mat_bound) overlay["materialization_bound"] = *mat_bound;
      if (search_cap) overlay["search_cap"] = *search_cap;
      if (workers) overlay["worker_count"] = *workers;
      if (witnesses) overlay["witnesses"] = *witnesses;
      if (format) overlay["output_format"] = *format;
      cfg.merge(overlay);
    } catch (const PreconditionError& e) {
      throw UsageError(e.what());
    }

    const auto extras = app.remaining();
    if (!check->parsed() && !extras.empty()) throw UsageError("unexpected argument '" + extras.front() + "'");

    Output o{cfg, out, ""};
    if (check->parsed()) {
      o.command = "check";
      code = cmd_check(o, check_id, extras);
    } else if (search->parsed()) {
      o.command = "search";
      emit_search(o, explore::search_divisor_candidates(s_n, parse_natural("lo", s_lo), parse_natural("hi", s_hi),
                                                        cfg.explore()));
    } else if (scan->parsed()) {
      o.command = "scan";
      if (sc_pred != "A" && sc_pred != "B") throw UsageError("--pred must be A or B");
      emit_search(o, explore::antidiagonal_scan(sc_pred == "A" ? explore::Predicate::A : explore::Predicate::B, sc_r,
                                                cfg.explore()));
    } else if (minm->parsed()) {
      o.command = "minm";
      code = cmd_minm(o, mm_count, mm_ceiling);
    } else if (streak->parsed()) {
      o.command = "streak";
      code = cmd_streak(o, parse_natural("m", st_m), st_n, st_len, st_doubling);
    } else if (fermat->parsed()) {
      o.command = "fermat";
      code = cmd_fermat(o, f_n, parse_natural("mod", f_mod));
    } else if (prime->parsed()) {
      o.command = "prime";
      code = cmd_prime(o, parse_natural("p", p_p));
    } else if (encode->parsed()) {
      o.command = "graph encode";
      if (g_rows.has_value() == g_matrix.has_value()) throw UsageError("encode: give exactly one of --rows, --matrix");
      const auto g = g_rows ? graph_from_rows(*g_rows) : graph_from_matrix(*g_matrix);
      std::vector<Natural> terms;
      for (const auto& t : graphseq::phi_encode_all(g)) terms.push_back(t.value());
      emit_terms(o, ojson{{"vertices", g.vertex_count()}}, terms);
    } else if (decode->parsed()) {
      o.command = "graph decode";
      code = cmd_graph_decode(o, g_terms);
    } else if (emit->parsed()) {
      o.command = "graph emit";
      const auto spec = family_spec(g_family, g_r);
      ojson params = spec_json(spec);
      params["count"] = g_count;
      emit_terms(o, params, graphseq::emit_terms(spec, g_count));
    } else if (components->parsed()) {
      o.command = "graph components";
      code = cmd_graph_components(o, c_n, c_upto);
    } else if (verify->parsed()) {
      o.command = "graph verify";
      code = cmd_graph_verify(o, family_spec(v_family, v_r), v_upto);
    } else if (hypercube->parsed()) {
      o.command = "graph hypercube";
      code = cmd_graph_hypercube(o, h_n);
    } else if (hasse->parsed()) {
      o.command = "graph hasse-probe";
      code = cmd_hasse_probe(o, hp_r, hp_source);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedFamily& e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitDataError;
  } catch (const MembershipError& e) {
    err << "not in T: " << e.what() << "\n";
    return kExitDataError;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << "\n";
    return kExitDataError;
  } catch (const DomainError& e) {
    err << "domain: " << e.what() << "\n";
    return kExitDataError;
  } catch (const MaterializationError& e) {
    err << "too large: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 70;
  }
  if (timing) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    err << "runtime_ms " << ms.count() << "\n";
  }
  return code;
}

}  // namespace fermatseq::cli
