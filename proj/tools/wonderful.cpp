#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wonderful/autgroup.hpp"
#include "wonderful/chow.hpp"
#include "wonderful/counting.hpp"
#include "wonderful/valfan.hpp"
#include "wonderful/verify.hpp"

using namespace wonderful;
using nlohmann::ordered_json;
using verify::Format;
using verify::RunConfig;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

// "4", "2^2" or "2**2".
unsigned parse_q(const std::string& s) {
  auto caret = s.find('^');
  std::size_t skip = 1;
  if (caret == std::string::npos) {
    caret = s.find("**");
    skip = 2;
  }
  try {
    if (caret == std::string::npos) return static_cast<unsigned>(std::stoul(s));
    const unsigned long p = std::stoul(s.substr(0, caret));
    const unsigned long a = std::stoul(s.substr(caret + skip));
    unsigned long long q = 1;
    for (unsigned long i = 0; i < a; ++i) {
      q *= p;
      require(q <= 0xffffffffULL, ErrorCode::FieldTooLarge, "q = " + s + " is too large");
    }
    return static_cast<unsigned>(q);
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidArgument, "cannot read q from '" + s + "'");
  }
}

ordered_json matrix_json(const linalg::Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : m.to_rows()) rows.push_back(r);
  return rows;
}

ordered_json subspace_json(const projspace::Subspace& L) {
  return {{"dim", L.dim()}, {"rref", matrix_json(L.forms())}};
}

ordered_json flag_json(const projspace::Flag& F) {
  ordered_json out = ordered_json::array();
  for (const auto& L : F.members()) out.push_back(subspace_json(L));
  return out;
}

ordered_json class_json(const chow::DivisorClass& c) {
  ordered_json ex = ordered_json::array();
  for (const auto& [L, k] : c.exceptional)
    ex.push_back({{"dim", L.dim()}, {"rref", matrix_json(L.forms())}, {"coeff", k}});
  return {{"h", c.h}, {"exceptional", ex}};
}

std::string flat(const linalg::Matrix& m) {
  std::string s;
  for (std::size_t i = 0; i < m.data().size(); ++i) s += (i ? "," : "") + std::to_string(m.data()[i]);
  return s;
}

// Aligned table for text output; columns taken from the first row's keys.
std::string text_table(const ordered_json& rows) {
  if (rows.empty()) return "(empty)\n";
  std::vector<std::string> keys;
  for (const auto& [k, v] : rows[0].items()) keys.push_back(k);
  std::vector<std::size_t> width(keys.size());
  auto cell = [](const ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (std::size_t c = 0; c < keys.size(); ++c) {
    width[c] = keys[c].size();
    for (const auto& r : rows) width[c] = std::max(width[c], cell(r[keys[c]]).size());
  }
  std::ostringstream os;
  for (std::size_t c = 0; c < keys.size(); ++c) os << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << keys[c];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < keys.size(); ++c)
      os << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << cell(r[keys[c]]);
    os << '\n';
  }
  return os.str();
}

std::string csv_table(const ordered_json& rows) {
  if (rows.empty()) return "";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : rows[0].items()) {
    os << (first ? "" : ",") << k;
    first = false;
  }
  os << '\n';
  for (const auto& r : rows) {
    first = true;
    for (const auto& [k, v] : r.items()) {
      os << (first ? "" : ",") << (v.is_string() ? v.get<std::string>() : v.dump());
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

// Renders a document whose interesting part is a flat list of rows.
std::string emit_rows(const ordered_json& doc, const ordered_json& rows, Format format) {
  switch (format) {
    case Format::Json: return doc.dump(2) + "\n";
    case Format::Csv: return csv_table(rows);
    case Format::Text: return text_table(rows);
  }
  return {};
}

struct Output {
  std::string path;
  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      std::cout.flush();
      return;
    }
    std::ofstream f(path, std::ios::binary);
    require(static_cast<bool>(f), ErrorCode::InvalidArgument, "cannot open " + path);
    f << text;
  }
};

int cmd_count(const RunConfig& c, const std::string& table, const Output& out) {
  const counting::BigInt q = c.q;
  ordered_json rows = ordered_json::array();
  if (table == "lambda") {
    for (int t = 0; t <= c.n; ++t)
      rows.push_back({{"t", t}, {"lambda", verify::big_json(counting::lambda(t, q))},
                      {"points", verify::big_json(counting::projective_points(t, q))}});
  } else if (table == "nu") {
    for (int t = 2; t <= c.n; ++t)
      rows.push_back({{"t", t}, {"nu", verify::big_json(counting::nu(t, q))},
                      {"nu_from_recursion", verify::big_json(counting::nu_from_recursion(t, q))},
                      {"lambda_prev", verify::big_json(counting::lambda(t - 1, q))}});
  } else if (table == "rank") {
    for (int d = 0; d <= c.n - 2; ++d)
      rows.push_back({{"d", d}, {"epsilon", counting::epsilon(d, c.n)},
                      {"rank", verify::big_json(counting::rank_ch1_exceptional(d, c.n, q))}});
  } else {
    for (int d = 0; d < c.n; ++d)
      rows.push_back({{"d", d}, {"subspaces", verify::big_json(counting::gaussian_count(c.n, d, q))}});
  }
  ordered_json doc = {{"q", c.q}, {"n", c.n}, {"table", table}, {"rows", rows}};
  out.write(emit_rows(doc, rows, c.format));
  return 0;
}

int cmd_enumerate(const RunConfig& c, int dim, const Output& out) {
  const auto f = gf::Field::of_order(c.q);
  const auto subs = projspace::enumerate_subspaces(c.n, f, dim);
  std::ostringstream os;
  if (c.format == Format::Json) {
    ordered_json arr = ordered_json::array();
    for (const auto& L : subs) arr.push_back(matrix_json(L.forms()));
    os << arr.dump() << '\n';
  } else {
    for (const auto& L : subs) os << (c.format == Format::Csv ? flat(L.forms()) : L.to_string()) << '\n';
  }
  out.write(os.str());
  return 0;
}

int cmd_flags(const RunConfig& c, bool complete, const Output& out) {
  const auto f = gf::Field::of_order(c.q);
  const auto flags =
      projspace::enumerate_flags(c.n, f, complete ? projspace::FlagType::complete() : projspace::FlagType::all());
  std::ostringstream os;
  if (c.format == Format::Json) {
    ordered_json arr = ordered_json::array();
    for (const auto& F : flags) {
      ordered_json members = ordered_json::array();
      for (const auto& L : F.members()) members.push_back(matrix_json(L.forms()));
      arr.push_back(members);
    }
    os << arr.dump() << '\n';
  } else {
    for (const auto& F : flags) {
      bool first = true;
      for (const auto& L : F.members()) {
        if (c.format == Format::Csv)
          os << (first ? "" : ";") << flat(L.forms());
        else
          os << (first ? "" : " < ") << L.to_string();
        first = false;
      }
      os << '\n';
    }
  }
  out.write(os.str());
  return 0;
}

int cmd_chow(const RunConfig& c, const std::string& op, const Output& out) {
  ordered_json doc = {{"q", c.q}, {"n", c.n}, {"op", op}};
  int code = 0;
  if (op == "canonical") {
    doc["class"] = class_json(chow::canonical_class(c.n, gf::Field::of_order(c.q)));
  } else if (op == "swap-check") {
    const auto r = chow::swap_impossibility(c.n, c.q);
    doc["applicable"] = r.applicable;
    doc["lhs"] = verify::big_json(r.lhs);
    doc["rhs"] = verify::big_json(r.rhs);
    doc["arithmetic_mismatch"] = r.arithmetic_mismatch;
    doc["duality_method"] = r.duality_method;
    doc["dual_canonical_mod_gamma"] = verify::big_json(r.dual_canonical_mod_gamma);
    doc["canonical_mod_gamma"] = verify::big_json(r.canonical_mod_gamma);
    doc["duality_mismatch"] = r.duality_mismatch;
    doc["impossible"] = r.impossible();
  } else {
    require(c.n == 2, ErrorCode::InvalidArgument, "the surface pairing needs n = 2");
    const projspace::SubspaceLattice lat(gf::Field::of_order(c.q), 2);
    const auto p = chow::SurfaceClass::from(chow::DivisorClass::exceptional_divisor(lat[0]));
    const auto l = chow::SurfaceClass::from(chow::boundary_class(lat, lat.first_of_dim(1)));
    const auto h = chow::SurfaceClass::from(chow::DivisorClass::hyperplane_pullback(lat.field(), 2));
    const auto k = chow::SurfaceClass::from(chow::canonical_class(lat));
    doc["point"] = subspace_json(lat[0]);
    doc["line"] = subspace_json(lat[lat.first_of_dim(1)]);
    doc["pairing"] = {{"h.h", chow::surface_intersection(h, h)},
                      {"E_p.E_p", chow::surface_intersection(p, p)},
                      {"E_ell.E_ell", chow::surface_intersection(l, l)},
                      {"h.E_ell", chow::surface_intersection(h, l)},
                      {"K.K", chow::surface_intersection(k, k)}};
  }
  if (c.format == Format::Json) {
    out.write(doc.dump(2) + "\n");
  } else {
    ordered_json rows = ordered_json::array();
    std::function<void(const std::string&, const ordered_json&)> walk = [&](const std::string& key,
                                                                           const ordered_json& v) {
      if (v.is_object() && !v.empty()) {
        for (const auto& [k2, v2] : v.items()) walk(key.empty() ? k2 : key + "." + k2, v2);
      } else {
        rows.push_back({{"key", key}, {"value", v.is_string() ? v.get<std::string>() : v.dump()}});
      }
    };
    walk("", doc);
    out.write(emit_rows(doc, rows, c.format));
  }
  return code;
}

int cmd_fan(const RunConfig& c, const Output& out) {
  const projspace::SubspaceLattice lat(gf::Field::of_order(c.q), c.n);
  const auto flags = projspace::enumerate_flags(lat, projspace::FlagType::all());
  const std::uint64_t pairs = static_cast<std::uint64_t>(flags.size()) * (flags.size() - 1);
  require(pairs <= c.budget, ErrorCode::BudgetExceeded,
          std::to_string(pairs) + " flag pairs exceed the budget of " + std::to_string(c.budget));
  ordered_json arr = ordered_json::array();
  ordered_json rows = ordered_json::array();
  bool all = true;
  for (std::size_t a = 0; a < flags.size(); ++a)
    for (std::size_t b = 0; b < flags.size(); ++b) {
      if (a == b) continue;
      const auto cert = valfan::separation_certificate(lat, flags[a], flags[b]);
      const bool pass = valfan::verify_certificate(cert.positive, cert.neutral, cert.v, cert.v_prime);
      all = all && pass;
      const auto ratio = valfan::UnitMonomial::ratio(cert.v, cert.v_prime);
      ordered_json table = ordered_json::array();
      std::set<projspace::Subspace> seen;
      for (const auto* F : {&flags[a], &flags[b]})
        for (const auto& M : F->members())
          if (seen.insert(M).second) {
            auto entry = subspace_json(M);
            entry["in"] = flags[a].contains(M) ? (flags[b].contains(M) ? "both" : "A") : "B";
            entry["ord"] = valfan::ord(M, ratio);
            table.push_back(entry);
          }
      const std::vector<gf::Elem> v(cert.v.coefficients().begin(), cert.v.coefficients().end());
      const std::vector<gf::Elem> vp(cert.v_prime.coefficients().begin(), cert.v_prime.coefficients().end());
      arr.push_back({{"flagA", flag_json(flags[a])},
                     {"flagB", flag_json(flags[b])},
                     {"v", v},
                     {"v'", vp},
                     {"L", subspace_json(cert.L)},
                     {"swapped", cert.swapped},
                     {"ordTable", table},
                     {"pass", pass}});
      rows.push_back({{"a", a}, {"b", b}, {"v", cert.v.to_string()}, {"v'", cert.v_prime.to_string()},
                      {"swapped", cert.swapped}, {"pass", pass}});
    }
  out.write(emit_rows(arr, rows, c.format));
  return all ? 0 : kExitFail;
}

int cmd_chart(const RunConfig& c, const Output& out) {
  const auto census = valfan::chart_census(c.q, c.n, c.m);
  ordered_json bad = ordered_json::array();
  for (const auto& t : census.mismatching) bad.push_back(t);
  ordered_json doc = {{"q", c.q},
                      {"n", c.n},
                      {"m", c.m},
                      {"points", census.points},
                      {"drinfeld_points", valfan::drinfeld_points(c.q, c.n, c.m)},
                      {"mismatches", census.mismatches},
                      {"mismatching", bad}};
  ordered_json rows = ordered_json::array({{{"q", c.q}, {"n", c.n}, {"m", c.m}, {"points", census.points},
                                            {"drinfeld_points", doc["drinfeld_points"]},
                                            {"mismatches", census.mismatches}}});
  out.write(emit_rows(doc, rows, c.format));
  return census.mismatches == 0 ? 0 : kExitFail;
}

int cmd_aut_search(const RunConfig& c, const Output& out) {
  const projspace::SubspaceLattice lat(gf::Field::of_order(c.q), c.n);
  const auto res = autgroup::collineation_search(lat, {c.budget, c.workers});
  ordered_json maps = ordered_json::array();
  ordered_json rows = ordered_json::array();
  for (const auto& m : res.maps) {
    auto sigma = autgroup::restrict_to_points(lat, m.perm);
    maps.push_back(sigma);
    rows.push_back({{"point_map", ordered_json(sigma).dump()}});
  }
  ordered_json doc = {{"q", c.q},
                      {"n", c.n},
                      {"count", res.maps.size()},
                      {"pgl_order", verify::big_json(autgroup::pgl_order(c.n, c.q))},
                      {"pgammal_order", verify::big_json(autgroup::pgammal_order(c.n, c.q))},
                      {"nodes", res.nodes},
                      {"point_maps", maps}};
  out.write(emit_rows(doc, rows, c.format));
  return 0;
}

int cmd_aut_realize(const RunConfig& c, const Output& out) {
  ordered_json in;
  try {
    in = ordered_json::parse(std::cin);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad JSON on standard input: ") + e.what());
  }
  if (in.is_object()) in = in.at("point_map");
  require(in.is_array(), ErrorCode::InvalidArgument, "expected a JSON array of point indices");
  autgroup::PointPermutation sigma;
  for (const auto& x : in) {
    require(x.is_number_unsigned() || (x.is_number_integer() && x.get<long long>() >= 0),
            ErrorCode::InvalidArgument, "point indices must be non-negative integers");
    sigma.push_back(x.get<std::size_t>());
  }
  const projspace::SubspaceLattice lat(gf::Field::of_order(c.q), c.n);
  ordered_json doc = {{"q", c.q}, {"n", c.n}};
  int code = 0;
  try {
    const auto g = autgroup::realize_as_pgl(lat, sigma);
    doc["matrix"] = matrix_json(g.matrix());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotBijective && e.code() != ErrorCode::NotCollinearityPreserving &&
        e.code() != ErrorCode::NotRealizable)
      throw;
    doc["error"] = std::string(to_string(e.code()));
    doc["message"] = e.what();
    code = kExitFail;
  }
  if (c.format == Format::Json) {
    out.write(doc.dump(2) + "\n");
  } else if (doc.contains("matrix")) {
    std::ostringstream os;
    for (const auto& r : doc["matrix"]) {
      bool first = true;
      for (const auto& x : r) {
        os << (first ? "" : (c.format == Format::Csv ? "," : " ")) << x;
        first = false;
      }
      os << '\n';
    }
    out.write(os.str());
  } else {
    out.write(doc["error"].get<std::string>() + ": " + doc["message"].get<std::string>() + "\n");
  }
  return code;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime:
    case ErrorCode::DegreeOutOfRange:
    case ErrorCode::FieldTooLarge:
    case ErrorCode::UnsupportedTower:
    case ErrorCode::InvalidArgument:
      return kExitConfig;
    case ErrorCode::BudgetExceeded:
      return kExitBudget;
    default:
      return kExitFail;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subspace lattices, wonderful blow-ups and their automorphisms over finite fields"};
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig cfg;
  std::string q_text = "2";
  std::string format_text = "json";
  app.add_option("--q", q_text, "field order, as Q or p^a")->capture_default_str();
  app.add_option("--n", cfg.n, "projective dimension")->capture_default_str();
  app.add_option("--ext,--ext-degree", cfg.m, "extension degree m")->capture_default_str();
  app.add_option("--format", format_text, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--budget", cfg.budget, "node cap for searches")->capture_default_str();
  app.add_option("--workers", cfg.workers, "worker threads")->capture_default_str();
  app.add_option("--out", cfg.out, "write to this file instead of standard output");

  std::string table = "lambda";
  auto* count = app.add_subcommand("count", "q-analog counts");
  count->add_option("--table", table)->check(CLI::IsMember({"lambda", "nu", "rank", "gaussian"}));

  int dim = 0;
  auto* enumerate = app.add_subcommand("enumerate", "subspaces of one dimension");
  enumerate->add_option("--dim", dim)->required();

  bool complete = false;
  auto* flags = app.add_subcommand("flags", "flags of the subspace lattice");
  flags->add_flag("--complete", complete);

  std::string op;
  auto* chow_cmd = app.add_subcommand("chow", "divisor classes on the blow-up");
  chow_cmd->add_option("--op", op)->required()->check(CLI::IsMember({"canonical", "swap-check", "surface"}));

  auto* fan = app.add_subcommand("fan", "separation certificates");
  auto* certify = fan->add_subcommand("certify", "certify every ordered pair of distinct flags");
  fan->require_subcommand(1);

  auto* chart = app.add_subcommand("chart", "chart polynomial point test");
  auto* chart_test = chart->add_subcommand("test", "compare both sides over all of K^n");
  chart->require_subcommand(1);

  auto* aut = app.add_subcommand("aut", "collineations");
  auto* search = aut->add_subcommand("search", "all incidence-preserving bijections");
  auto* realize = aut->add_subcommand("realize", "matrix of a point permutation read from standard input");
  aut->require_subcommand(1);

  auto* verify_cmd = app.add_subcommand("verify", "run every applicable check");
  verify_cmd->add_flag("--counting-only", cfg.counting_only);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  const Output out{cfg.out};
  try {
    cfg.q = parse_q(q_text);
    cfg.format = format_text == "csv" ? Format::Csv : format_text == "text" ? Format::Text : Format::Json;
    cfg.validate();
    if (*count) return cmd_count(cfg, table, out);
    if (*enumerate) return cmd_enumerate(cfg, dim, out);
    if (*flags) return cmd_flags(cfg, complete, out);
    if (*chow_cmd) return cmd_chow(cfg, op, out);
    if (*certify) return cmd_fan(cfg, out);
    if (*chart_test) return cmd_chart(cfg, out);
    if (*search) return cmd_aut_search(cfg, out);
    if (*realize) return cmd_aut_realize(cfg, out);
    if (*verify_cmd) {
      const auto report = verify::run_verify(cfg);
      out.write(verify::render(report, cfg.format));
      return report.exit_code();
    }
  } catch (const Error& e) {
    std::cerr << "wonderful: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kExitConfig;
}
