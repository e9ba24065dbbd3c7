#include "speclat/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "speclat/analysis.hpp"
#include "speclat/arith.hpp"
#include "speclat/errors.hpp"
#include "speclat/graph.hpp"
#include "speclat/moments.hpp"
#include "speclat/specpoly.hpp"
#include "speclat/verify.hpp"

namespace speclat::cli {

namespace {

std::string str(const BigInt& x) { return x.str(); }

std::string str(const BigRational& x) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

json big_array(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(str(x));
  return a;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

const json& require(const json& block, const char* key, const std::string& command) {
  if (!block.contains(key)) throw InvalidInput(command + ": missing parameter '" + key + "'");
  return block.at(key);
}

template <class T>
T get_or(const json& block, const char* key, T fallback) {
  return block.contains(key) ? block.at(key).get<T>() : fallback;
}

std::int64_t positive(const json& v, const char* what) {
  const auto n = v.get<std::int64_t>();
  if (n < 1) throw InvalidInput(std::string(what) + " must be positive");
  return n;
}

std::vector<std::int64_t> int_list(const json& v) {
  if (v.is_array()) return v.get<std::vector<std::int64_t>>();
  return {v.get<std::int64_t>()};
}

std::complex<double> parse_complex(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_object()) return {get_or<double>(v, "re", 0.0), get_or<double>(v, "im", 0.0)};
  if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
  throw InvalidInput("a complex number is a number, [re, im] or {\"re\":..,\"im\":..}");
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

BigInt parse_big(const json& v) {
  if (v.is_string()) return BigInt(v.get<std::string>());
  return BigInt(v.get<std::int64_t>());
}

LatticeBasis basis_of(const JobConfig& c) {
  return c.basis ? lattice_with_basis(c.points, *c.basis) : difference_lattice(c.points);
}

LaurentPoly w_of(const JobConfig& c) { return build_W(c.points, basis_of(c)); }

ResultRecord make_record(const JobConfig& config, const std::string& command, json payload) {
  ResultRecord r;
  r.command = command;
  r.config_hash = config_hash(config, command);
  r.payload = std::move(payload);
  return r;
}

json points_json(const WeightedPointSet& ps) {
  json pts = json::array();
  for (const auto& p : ps.points()) {
    json a = json::array();
    for (Eigen::Index i = 0; i < p.a.size(); ++i) a.push_back(to_int64(p.a(i)));
    pts.push_back({{"a", a}, {"c", p.c}});
  }
  return pts;
}

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_int64(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json residue_json(const Residue& r) { return json(r); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

void csv_row(std::ostringstream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << csv_field(fields[i]);
  os << "\r\n";
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

json JobConfig::block(const std::string& command) const {
  if (document.contains(command)) {
    const json& b = document.at(command);
    if (!b.is_object()) throw InvalidInput("parameter block '" + command + "' must be an object");
    return b;
  }
  return json::object();
}

JobConfig parse_config(const json& document) {
  try {
    if (!document.is_object()) throw InvalidInput("config must be a JSON object");
    const int n = require(document, "dimension", "config").get<int>();
    if (n < 1) throw InvalidInput("dimension must be at least 1");
    std::vector<WeightedPoint> pts;
    for (const auto& p : require(document, "points", "config")) {
      const auto a = require(p, "a", "point").get<std::vector<std::int64_t>>();
      WeightedPoint wp;
      wp.a = IntVector(static_cast<Eigen::Index>(a.size()));
      for (std::size_t i = 0; i < a.size(); ++i) wp.a(static_cast<Eigen::Index>(i)) = a[i];
      wp.c = get_or<std::int64_t>(p, "c", 1);
      pts.push_back(std::move(wp));
    }
    JobConfig config{WeightedPointSet(n, std::move(pts)), std::nullopt, document};
    if (document.contains("basis")) {
      const auto rows = document.at("basis").get<std::vector<std::vector<std::int64_t>>>();
      IntMatrix m(static_cast<Eigen::Index>(rows.size()), n);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != static_cast<std::size_t>(n)) throw InvalidInput("basis rows must have length n");
        for (int j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
      }
      lattice_with_basis(config.points, m);
      config.basis = m;
    }
    return config;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed config: ") + e.what());
  }
}

JobConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read config file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw InvalidInput("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

JobConfig apply_overrides(JobConfig config, const std::string& command, const Overrides& o) {
  json block = config.block(command);
  if (o.N) block["N"] = *o.N;
  if (o.K) block["K"] = *o.K;
  if (o.p) block["p"] = *o.p;
  if (o.nu) block["nu"] = *o.nu;
  if (o.z) {
    const std::string& s = *o.z;
    const auto comma = s.find(',');
    try {
      if (comma == std::string::npos) {
        std::size_t used = 0;
        const long long as_int = std::stoll(s, &used);
        block["z"] = used == s.size() ? json(as_int) : json(std::stod(s));
      } else {
        block["z"] = json{{"re", std::stod(s.substr(0, comma))}, {"im", std::stod(s.substr(comma + 1))}};
      }
    } catch (const std::logic_error&) {
      throw InvalidInput("cannot parse --z value '" + s + "'");
    }
  }
  config.document[command] = block;
  return config;
}

json ResultRecord::to_json() const {
  return {{"schema", schema}, {"command", command}, {"config_hash", config_hash}, {"payload", payload}};
}

ResultRecord ResultRecord::from_json(const json& j) {
  try {
    if (!j.is_object() || j.value("schema", "") != kResultSchema)
      throw InvalidInput("result record has a missing or unknown schema tag");
    ResultRecord r;
    r.schema = j.at("schema").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.config_hash = j.at("config_hash").get<std::string>();
    r.payload = j.at("payload");
    return r;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed result record: ") + e.what());
  }
}

std::string config_hash(const JobConfig& config, const std::string& command) {
  json canonical = {{"schema", kResultSchema},
                    {"command", command},
                    {"dimension", config.points.dimension()},
                    {"points", points_json(config.points)},
                    {"basis", config.basis ? matrix_json(*config.basis) : json(nullptr)},
                    {"params", config.block(command)}};
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a(canonical.dump());
  return os.str();
}

ResultRecord cmd_bn(const JobConfig& config) {
  const json block = config.block("bn");
  const std::int64_t n = positive(require(block, "N", "bn"), "N");
  SpecPolyOptions opts;
  opts.size_limit = get_or<std::size_t>(block, "size_limit", opts.size_limit);
  const LaurentPoly w = w_of(config);
  const IntPolynomial b = bn_polynomial(w, n, opts);

  json payload = {{"N", n}, {"degree", b.degree()}, {"coefficients", big_array(b.coefficients())}};
  bool ok = true;

  std::vector<BigInt> candidates;
  if (block.contains("roots")) {
    for (const auto& r : block.at("roots")) candidates.push_back(parse_big(r));
  } else {
    // Every root is a value of W on the torus, hence in [0, C^2].
    const BigInt c2 = w.coefficient_sum();
    if (c2 <= 100000)
      for (BigInt r = 0; r <= c2; ++r) candidates.push_back(r);
  }
  json roots = json::array();
  for (const auto& r : candidates) {
    const unsigned m = integer_root_multiplicity(b, r);
    if (m > 0 || block.contains("roots")) roots.push_back({{"root", str(r)}, {"multiplicity", m}});
  }
  payload["integer_roots"] = roots;

  if (get_or<bool>(block, "divisors", false)) {
    json divs = json::array();
    for (std::int64_t d = 1; d < n; ++d) {
      if (n % d) continue;
      const bool holds = divides(bn_polynomial(w, d, opts), b);
      ok = ok && holds;
      divs.push_back({{"divisor", d}, {"divides", holds}});
    }
    payload["divisibility"] = divs;
  }
  if (block.contains("evaluate")) {
    json values = json::array();
    for (const auto& z : block.at("evaluate")) {
      const BigInt zz = parse_big(z);
      values.push_back({{"z", str(zz)}, {"value", str(evaluate_at_integer(b, zz))}});
    }
    payload["values"] = values;
  }
  payload["checks_passed"] = ok;
  return make_record(config, "bn", payload);
}

ResultRecord cmd_moments(const JobConfig& config) {
  const json block = config.block("moments");
  const auto K = static_cast<unsigned>(get_or<std::int64_t>(block, "K", 10));
  const LaurentPoly w = w_of(config);
  bool ok = true;

  unsigned needed = K;
  std::vector<unsigned> primes;
  unsigned k_max = 0, alpha_max = 0;
  if (block.contains("congruence")) {
    const json& c = block.at("congruence");
    primes = get_or<std::vector<unsigned>>(c, "primes", {2, 3, 5});
    k_max = get_or<unsigned>(c, "k_max", 4);
    alpha_max = get_or<unsigned>(c, "alpha_max", 1);
    for (unsigned p : primes) {
      if (p < 2) throw InvalidInput("congruence primes must be at least 2");
      unsigned long long top = k_max;
      for (unsigned a = 0; a <= alpha_max + 1; ++a) top *= p;
      top /= p;
      if (top > 100000) throw SizeLimit("congruence check needs moments beyond index 100000");
      needed = std::max<unsigned>(needed, static_cast<unsigned>(top));
    }
  }
  const MomentSequence all = moments(w, needed);
  MomentSequence m = all;
  m.values.resize(K + 1);

  json payload = {{"K", K}, {"moments", big_array(m.values)}};

  if (block.contains("N")) {
    json folded = json::array();
    for (std::int64_t n : int_list(block.at("N"))) {
      if (n < 1) throw InvalidInput("N must be positive");
      folded.push_back({{"N", n}, {"moments", big_array(moments_N(w, K, n).values)}});
    }
    payload["folded"] = folded;
  }
  if (block.contains("congruence")) {
    json rows = json::array();
    for (unsigned p : primes)
      for (unsigned k = 1; k <= k_max; ++k)
        for (unsigned a = 0; a <= alpha_max; ++a) {
          const bool holds = check_congruence(all, p, k, a);
          ok = ok && holds;
          rows.push_back({{"p", p}, {"k", k}, {"alpha", a}, {"holds", holds}});
        }
    payload["congruences"] = rows;
  }
  if (block.contains("recurrence")) {
    const json& r = block.at("recurrence");
    LinearRecurrence rec;
    if (r.is_string()) {
      if (r.get<std::string>() != "honeycomb") throw InvalidInput("unknown named recurrence");
      rec = LinearRecurrence::honeycomb();
    } else {
      for (const auto& t : r) {
        LinearRecurrence::Term term;
        term.shift = require(t, "shift", "recurrence").get<int>();
        for (const auto& c : require(t, "polynomial", "recurrence")) term.polynomial.push_back(parse_big(c));
        rec.terms.push_back(std::move(term));
      }
    }
    const bool holds = verify_recurrence(m, rec);
    ok = ok && holds;
    payload["recurrence_holds"] = holds;
  }
  if (get_or<bool>(block, "series", false)) {
    try {
      payload["A"] = big_array(series_A(m));
      payload["b"] = big_array(product_b(m));
      payload["integral"] = true;
    } catch (const IntegralityViolation& e) {
      ok = false;
      payload["integral"] = false;
      payload["integrality_error"] = e.what();
    }
  }
  payload["checks_passed"] = ok;
  return make_record(config, "moments", payload);
}

ResultRecord cmd_walks(const JobConfig& config) {
  const json block = config.block("walks");
  const std::int64_t n = positive(require(block, "N", "walks"), "N");
  const auto K = static_cast<unsigned>(positive(require(block, "K", "walks"), "K"));
  WalkOptions opts;
  opts.enumeration_cap = get_or<double>(block, "cap", opts.enumeration_cap);
  const TorusBipartiteGraph g = build_graph(config.points, basis_of(config), n);

  json sums = json::array();
  for (unsigned k = 1; k <= K; ++k) {
    const WalkSum s = walk_sum(g, k, opts);
    sums.push_back({{"k", k}, {"based_total", str(s.based_total)}, {"cycle_total", str(s.cycle_total)}});
  }
  json payload = {{"N", n}, {"K", K}, {"sums", sums}};
  bool ok = true;
  if (block.contains("z")) {
    const BigInt z = parse_big(block.at("z"));
    ok = walk_series_check(config.points, n, z, K, opts);
    payload["z"] = str(z);
    payload["series_check"] = ok;
  }
  if (get_or<bool>(block, "export_graph", false)) {
    json black = json::array(), white = json::array(), edges = json::array();
    for (std::size_t v = 0; v < g.black_count(); ++v) black.push_back(residue_json(g.black_label(v)));
    for (std::size_t v = 0; v < g.white_count(); ++v) white.push_back(residue_json(g.white_label(v)));
    for (const auto& e : g.edges())
      edges.push_back({{"black", e.black}, {"white", e.white}, {"type", e.type}, {"weight", e.weight}});
    payload["graph"] = {{"modulus", g.modulus()},
                        {"dimension", g.dimension()},
                        {"black", black},
                        {"white", white},
                        {"edges", edges}};
  }
  payload["checks_passed"] = ok;
  return make_record(config, "walks", payload);
}

ResultRecord cmd_spectrum(const JobConfig& config) {
  const json block = config.block("spectrum");
  const std::int64_t n = positive(require(block, "N", "spectrum"), "N");
  SpectrumOptions opts;
  opts.relative_tolerance = get_or<double>(block, "tolerance", opts.relative_tolerance);
  opts.enumeration_cap = get_or<std::size_t>(block, "cap", opts.enumeration_cap);
  const LaurentPoly w = w_of(config);
  const SpectrumHistogram h = spectrum(w, n, opts);

  json levels = json::array();
  for (const auto& l : h.levels) {
    levels.push_back({{"value", l.value},
                      {"multiplicity", l.multiplicity},
                      {"spread", l.spread},
                      {"integer_level", l.integer_level ? json(*l.integer_level) : json(nullptr)}});
  }
  json payload = {{"N", n},
                  {"count", h.values.size()},
                  {"c_squared", h.c_squared},
                  {"tolerance", h.tolerance},
                  {"levels", levels},
                  {"min_gap", finite_or_null(h.min_gap)},
                  {"ambiguous", h.ambiguous},
                  {"support", json::array({h.support_min, h.support_max})}};
  if (block.contains("grid")) {
    const Grid g = diffraction_field(w, block.at("grid").get<int>());
    payload["grid"] = {{"resolution", g.resolution},
                       {"dimension", g.dimension},
                       {"min", g.min()},
                       {"max", g.max()},
                       {"argmin", g.cell(g.argmin())},
                       {"argmax", g.cell(g.argmax())},
                       {"values", g.values}};
  }
  if (block.contains("cdf")) {
    json cdf = json::array();
    for (const auto& r : block.at("cdf")) {
      const double x = r.get<double>();
      cdf.push_back({{"r", x}, {"value", str(empirical_cdf(h, x))}});
    }
    payload["cdf"] = cdf;
  }
  payload["checks_passed"] = !h.ambiguous;
  return make_record(config, "spectrum", payload);
}

ResultRecord cmd_mahler(const JobConfig& config) {
  const json block = config.block("mahler");
  const json& zs = require(block, "z", "mahler");
  std::vector<std::complex<double>> points;
  if (zs.is_array())
    for (const auto& z : zs) points.push_back(parse_complex(z));
  else
    points.push_back(parse_complex(zs));
  AnalysisOptions opts;
  opts.tolerance = get_or<double>(block, "tolerance", opts.tolerance);
  opts.stabilization = get_or<double>(block, "stabilization", opts.stabilization);
  opts.start_modulus = get_or<std::int64_t>(block, "start_modulus", opts.start_modulus);
  opts.max_evaluations = get_or<std::size_t>(block, "max_evaluations", opts.max_evaluations);
  opts.max_series_terms = get_or<unsigned>(block, "max_series_terms", opts.max_series_terms);

  json rows = json::array();
  for (const auto z : points) {
    json estimates = json::array();
    std::vector<std::pair<std::string, std::complex<double>>> q_values, h_values;
    auto attempt = [&](const std::string& function, const std::string& method, auto&& compute) {
      json e = {{"function", function}, {"method", method}};
      try {
        compute(e);
        e["status"] = "ok";
      } catch (const SpectrumProximity& err) {
        e["status"] = "spectrum_proximity";
        e["message"] = err.what();
      } catch (const SingularLevel& err) {
        e["status"] = "singular";
        e["message"] = err.what();
      } catch (const InvalidInput& err) {
        e["status"] = "not_applicable";
        e["message"] = err.what();
      } catch (const ResourceLimit& err) {
        e["status"] = "resource_limit";
        e["message"] = err.what();
      } catch (const Error& err) {
        e["status"] = "unstable";
        e["message"] = err.what();
      }
      estimates.push_back(e);
    };
    for (MahlerMethod m : {MahlerMethod::Limit, MahlerMethod::MomentSeries, MahlerMethod::TorusQuadrature}) {
      attempt("Q", to_string(m), [&](json& e) {
        const RealEstimate r = mahler_Q(config.points, z, m, opts);
        e["value"] = r.value;
        e["error"] = r.error;
        e["work"] = r.work;
        q_values.emplace_back(to_string(m), r.value);
      });
    }
    for (HilbertMethod m : {HilbertMethod::MomentSeries, HilbertMethod::SpectrumAverage}) {
      attempt("H", to_string(m), [&](json& e) {
        const ComplexEstimate r = hilbert_H(config.points, z, m, opts);
        e["value"] = complex_json(r.value);
        e["error"] = r.error;
        e["work"] = r.work;
        h_values.emplace_back(to_string(m), r.value);
      });
    }
    json deltas = json::array();
    auto pairwise = [&](const std::string& function, const auto& values) {
      for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j)
          deltas.push_back({{"function", function},
                            {"methods", json::array({values[i].first, values[j].first})},
                            {"delta", std::abs(values[i].second - values[j].second)}});
    };
    pairwise("Q", q_values);
    pairwise("H", h_values);
    rows.push_back({{"z", complex_json(z)}, {"estimates", estimates}, {"deltas", deltas}});
  }
  return make_record(config, "mahler", {{"points", rows}, {"checks_passed", true}});
}

ResultRecord cmd_padic(const JobConfig& config) {
  const json block = config.block("padic");
  const auto p = static_cast<std::uint64_t>(positive(require(block, "p", "padic"), "p"));
  const auto nu = static_cast<unsigned>(positive(json(get_or<std::int64_t>(block, "nu", 1)), "nu"));
  if (!is_probable_prime(BigInt(p))) throw InvalidInput("p must be prime");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < nu; ++i) {
    q *= p;
    if (q > (1ULL << 31)) throw SizeLimit("p^nu too large");
  }
  SpecPolyOptions spec;
  spec.size_limit = get_or<std::size_t>(block, "size_limit", spec.size_limit);
  PointCountOptions count;
  count.enumeration_cap = get_or<double>(block, "cap", count.enumeration_cap);
  const LaurentPoly w = w_of(config);
  const IntPolynomial b = bn_polynomial(w, static_cast<std::int64_t>(q - 1), spec);

  std::vector<BigInt> zs;
  if (block.contains("z")) {
    const json& z = block.at("z");
    if (z.is_array())
      for (const auto& v : z) zs.push_back(parse_big(v));
    else
      zs.push_back(parse_big(z));
  } else {
    for (std::uint64_t z = 0; z < p; ++z) zs.push_back(BigInt(z));
  }
  json rows = json::array();
  bool ok = true;
  for (const auto& z : zs) {
    const ValuationCheck v = valuation_inequality_check(b, w, z, p, nu, count);
    ok = ok && v.holds;
    rows.push_back({{"z", str(z)},
                    {"valuation", v.lhs.infinite ? json("inf") : json(v.lhs.value)},
                    {"count", v.rhs},
                    {"holds", v.holds}});
  }
  return make_record(config, "padic",
                     {{"p", p}, {"nu", nu}, {"N", q - 1}, {"rows", rows}, {"checks_passed", ok}});
}

ResultRecord run_command(const std::string& command, const JobConfig& config) {
  if (command == "bn") return cmd_bn(config);
  if (command == "moments") return cmd_moments(config);
  if (command == "walks") return cmd_walks(config);
  if (command == "spectrum") return cmd_spectrum(config);
  if (command == "mahler") return cmd_mahler(config);
  if (command == "padic") return cmd_padic(config);
  throw InvalidInput("unknown command '" + command + "'");
}

std::string to_csv(const ResultRecord& record) {
  std::ostringstream os;
  const json& p = record.payload;
  const std::string& c = record.command;
  if (c == "bn") {
    csv_row(os, {"degree", "coefficient"});
    const auto& coeffs = p.at("coefficients");
    for (std::size_t i = 0; i < coeffs.size(); ++i) csv_row(os, {std::to_string(i), cell(coeffs[i])});
  } else if (c == "moments") {
    std::vector<std::string> header = {"k", "m_k"};
    const json folded = p.value("folded", json::array());
    for (const auto& f : folded) header.push_back("m_k^(" + f.at("N").dump() + ")");
    csv_row(os, header);
    const auto& m = p.at("moments");
    for (std::size_t k = 0; k < m.size(); ++k) {
      std::vector<std::string> row = {std::to_string(k), cell(m[k])};
      for (const auto& f : folded) row.push_back(cell(f.at("moments").at(k)));
      csv_row(os, row);
    }
  } else if (c == "walks") {
    csv_row(os, {"k", "based_total", "cycle_total"});
    for (const auto& s : p.at("sums")) csv_row(os, {cell(s.at("k")), cell(s.at("based_total")), cell(s.at("cycle_total"))});
  } else if (c == "spectrum") {
    if (p.contains("grid")) {
      const json& g = p.at("grid");
      const int dim = g.at("dimension").get<int>();
      const int res = g.at("resolution").get<int>();
      std::vector<std::string> header;
      for (int i = 1; i <= dim; ++i) header.push_back("t" + std::to_string(i));
      header.push_back("value");
      csv_row(os, header);
      Grid grid{dim, res, g.at("values").get<std::vector<double>>()};
      for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<std::string> row;
        for (int x : grid.cell(i)) row.push_back(json(static_cast<double>(x) / res).dump());
        row.push_back(json(grid.values[i]).dump());
        csv_row(os, row);
      }
    } else {
      csv_row(os, {"value", "multiplicity", "spread", "integer_level"});
      for (const auto& l : p.at("levels"))
        csv_row(os, {cell(l.at("value")), cell(l.at("multiplicity")), cell(l.at("spread")), cell(l.at("integer_level"))});
    }
  } else if (c == "mahler") {
    csv_row(os, {"z_re", "z_im", "function", "method", "status", "value_re", "value_im", "error", "work"});
    for (const auto& row : p.at("points"))
      for (const auto& e : row.at("estimates")) {
        std::string re, im;
        if (e.contains("value")) {
          const json& v = e.at("value");
          re = v.is_array() ? v[0].dump() : v.dump();
          im = v.is_array() ? v[1].dump() : "0";
        }
        csv_row(os, {row.at("z")[0].dump(), row.at("z")[1].dump(), cell(e.at("function")), cell(e.at("method")),
                     cell(e.at("status")), re, im, e.contains("error") ? cell(e.at("error")) : "",
                     e.contains("work") ? cell(e.at("work")) : ""});
      }
  } else if (c == "padic") {
    csv_row(os, {"z", "valuation", "count", "holds"});
    for (const auto& r : p.at("rows")) csv_row(os, {cell(r.at("z")), cell(r.at("valuation")), cell(r.at("count")), cell(r.at("holds"))});
  } else {
    throw InvalidInput("no CSV layout for command '" + c + "'");
  }
  return os.str();
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path ResultCache::path_for(const std::string& command, const std::string& hash) const {
  return dir_ / (command + "-" + hash + ".json");
}

std::optional<ResultRecord> ResultCache::load(const std::string& command, const std::string& hash) const {
  std::ifstream in(path_for(command, hash));
  if (!in) return std::nullopt;
  try {
    json j;
    in >> j;
    ResultRecord r = ResultRecord::from_json(j);
    if (r.command != command || r.config_hash != hash) return std::nullopt;
    return r;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void ResultCache::store(const ResultRecord& record) const {
  const auto target = path_for(record.command, record.config_hash);
  auto tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write cache file " + tmp.string());
    out << record.to_json().dump(2) << '\n';
    if (!out.flush()) throw Error("cannot write cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"speclat: spectra, moments and Mahler measures of diffraction polynomials"};
  app.require_subcommand(1);

  std::string config_path, out_path, format = "json", cache_dir;
  Overrides overrides;
  std::vector<std::pair<std::string, CLI::App*>> subs;
  for (const auto& name : commands()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " stage");
    sub->add_option("--config", config_path, "job config JSON")->required();
    sub->add_option("--out", out_path, "output file (default stdout)");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--cache-dir", cache_dir, "content-addressed result cache");
    sub->add_option("--N", overrides.N, "override N");
    sub->add_option("--K", overrides.K, "override K");
    sub->add_option("--z", overrides.z, "override z (x or re,im)");
    sub->add_option("--p", overrides.p, "override p");
    sub->add_option("--nu", overrides.nu, "override nu");
    subs.emplace_back(name, sub);
  }
  std::string example;
  CLI::App* verify = app.add_subcommand("verify", "run the reproduction suite for a built-in example");
  verify->add_option("example", example, "chebyshev, honeycomb or all")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kSuccess : kConfigError;
  }

  try {
    if (verify->parsed()) {
      const auto results = run_acceptance(example);
      print_results(results, out);
      return all_passed(results) ? kSuccess : kVerificationFailure;
    }
    std::string command;
    for (const auto& [name, sub] : subs)
      if (sub->parsed()) command = name;

    const JobConfig config = apply_overrides(load_config(config_path), command, overrides);
    const std::string hash = config_hash(config, command);
    std::optional<ResultRecord> record;
    std::optional<ResultCache> cache;
    if (!cache_dir.empty()) {
      cache.emplace(cache_dir);
      record = cache->load(command, hash);
    }
    if (!record) {
      record = run_command(command, config);
      if (cache) cache->store(*record);
    }
    const std::string text = format == "csv" ? to_csv(*record) : record->to_json().dump(2) + "\n";
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
      if (!f) throw InvalidInput("cannot open output file " + out_path);
      f << text;
    }
    return record->payload.value("checks_passed", true) ? kSuccess : kVerificationFailure;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << '\n';
    return kResourceCap;
  } catch (const InvalidInput& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NotInLattice& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const json::exception& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const SingularLevel& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const SpectrumProximity& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kVerificationFailure;
  }
}

}  // namespace speclat::cli
