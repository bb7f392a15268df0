#include "wonderful/verify.hpp"

#include <chrono>
#include <set>
#include <sstream>

#include "wonderful/autgroup.hpp"
#include "wonderful/chow.hpp"
#include "wonderful/valfan.hpp"

namespace wonderful::verify {

using counting::BigInt;
using nlohmann::ordered_json;
using projspace::FlagType;
using projspace::SubspaceLattice;

void RunConfig::validate() const {
  gf::prime_power(q);  // NotPrime
  require(q >= 2, ErrorCode::NotPrime, "q must be a prime power >= 2");
  require(n >= 1, ErrorCode::InvalidArgument, "n must be at least 1");
  require(m >= 1, ErrorCode::InvalidArgument, "extension degree must be at least 1");
  require(budget > 0, ErrorCode::InvalidArgument, "budget must be positive");
  require(workers >= 1, ErrorCode::InvalidArgument, "need at least one worker");
}

ordered_json big_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

namespace {

class Recorder {
 public:
  explicit Recorder(ordered_json& records) : records_(records) {}

  void check(const std::string& name, const std::string& anchor, ordered_json inputs, ordered_json expected,
             ordered_json actual, ordered_json detail = nullptr) {
    ordered_json r;
    r["name"] = name;
    r["anchor"] = anchor;
    r["inputs"] = std::move(inputs);
    const bool pass = expected == actual;
    r["expected"] = std::move(expected);
    r["actual"] = std::move(actual);
    r["pass"] = pass;
    r["status"] = pass ? "pass" : "fail";
    if (!detail.is_null()) r["detail"] = std::move(detail);
    records_.push_back(std::move(r));
  }

  void skip(const std::string& name, const std::string& anchor, ordered_json inputs, const std::string& reason) {
    ordered_json r;
    r["name"] = name;
    r["anchor"] = anchor;
    r["inputs"] = std::move(inputs);
    r["expected"] = nullptr;
    r["actual"] = nullptr;
    r["pass"] = nullptr;
    r["status"] = "skipped";
    r["reason"] = reason;
    records_.push_back(std::move(r));
  }

  void budget(const std::string& name, const std::string& anchor, ordered_json inputs, const std::string& what) {
    ordered_json r;
    r["name"] = name;
    r["anchor"] = anchor;
    r["inputs"] = std::move(inputs);
    r["expected"] = nullptr;
    r["actual"] = nullptr;
    r["pass"] = false;
    r["status"] = "budget_exceeded";
    r["reason"] = what;
    records_.push_back(std::move(r));
  }

 private:
  ordered_json& records_;
};

ordered_json qn(const RunConfig& c) { return {{"q", c.q}, {"n", c.n}}; }

ordered_json with(ordered_json base, const std::string& key, ordered_json value) {
  base[key] = std::move(value);
  return base;
}

void counting_suite(const RunConfig& c, Recorder& rec) {
  const BigInt q = c.q;
  const int n = c.n;
  for (int t = 2; t <= n; ++t) {
    const BigInt lhs = counting::lambda(t, q);
    const BigInt rhs = counting::nu(t, q) + counting::lambda(t - 1, q) + counting::projective_points(t - 1, q);
    rec.check("lambda_recursion", "hyperplane recursion for lambda", with(qn(c), "t", t), big_json(lhs),
              big_json(rhs));
  }
  for (int t = 2; t <= n; ++t)
    rec.check("nu_closed_form", "count of subspaces off a hyperplane", with(qn(c), "t", t),
              big_json(counting::nu_from_recursion(t, q)), big_json(counting::nu(t, q)));
  for (int t = 2; t <= n; ++t)
    rec.check("nu_dominates_lambda", "nu(t) >= lambda(t-1)", with(qn(c), "t", t), true,
              counting::nu(t, q) >= counting::lambda(t - 1, q),
              {{"nu", big_json(counting::nu(t, q))}, {"lambda", big_json(counting::lambda(t - 1, q))}});
  for (int d = 0; d < n; ++d)
    rec.check("gaussian_symmetry", "duality of subspace counts", with(qn(c), "d", d),
              big_json(counting::gaussian_count(n, n - 1 - d, q)), big_json(counting::gaussian_count(n, d, q)));

  auto inequality_records = [&](const counting::InequalityReport& r, const std::string& anchor) {
    for (const auto& x : r.records) {
      ordered_json in = qn(c);
      if (x.name == "hyperplane-step") {
        in["t"] = x.d;
      } else {
        in["d"] = x.d;
        in["d_prime"] = x.d_prime;
      }
      rec.check(x.name, anchor, in, true, x.pass, {{"lhs", big_json(x.lhs)}, {"rhs", big_json(x.rhs)}});
    }
  };
  inequality_records(counting::check_inequalities(n, q), "lambda growth inequalities");
  auto mono = counting::check_rank_monotonicity(n, q);
  for (auto& x : mono.records) x.name = "rank_monotonicity";
  inequality_records(mono, "rank of CH^1(E_L) decreases away from the ends");
}

BigInt lattice_size(int n, unsigned q) {
  BigInt s = 0;
  for (int d = 0; d < n; ++d) s += counting::gaussian_count(n, d, q);
  return s;
}

void lattice_suite(const RunConfig& c, const SubspaceLattice& lat, Recorder& rec) {
  const int n = c.n;
  for (int d = 0; d < n; ++d)
    rec.check("lattice_level_count", "number of d-dimensional subspaces", with(qn(c), "d", d),
              big_json(counting::gaussian_count(n, d, c.q)), static_cast<std::uint64_t>(lat.count_of_dim(d)));
  std::uint64_t deep = 0;
  for (int d = 0; d <= n - 2; ++d) deep += lat.count_of_dim(d);
  rec.check("lambda_enumerated", "lambda counts the blown-up centres", qn(c), big_json(counting::lambda(n, c.q)),
            deep);
}

void chow_suite(const RunConfig& c, const SubspaceLattice& lat, Recorder& rec) {
  const int n = c.n;
  const auto K = chow::canonical_class(lat);
  rec.check("canonical_class_h", "canonical class of the blow-up", qn(c), -(n + 1), K.h);
  rec.check("canonical_class_routes_agree", "canonical class of the blow-up", qn(c), true,
            K == chow::canonical_class(n, lat.field()));

  const auto& H = lat[lat.first_of_dim(n - 1)];
  const auto id = projspace::LatticePermutation::identity(lat.size());
  rec.check("identity_pullback_fixes_K", "pullback of the canonical class", qn(c), true,
            chow::pullback(lat, id, K, H) == K);

  if (n == 2) {
    const auto& f = lat.field();
    std::int64_t p_min = 0, p_max = -100, l_min = 0, l_max = -100;
    for (std::size_t p : lat.of_dim(0)) {
      auto s = chow::SurfaceClass::from(chow::DivisorClass::exceptional_divisor(lat[p]));
      const auto v = chow::surface_intersection(s, s);
      p_min = std::min(p_min, v);
      p_max = std::max(p_max, v);
    }
    for (std::size_t l : lat.of_dim(1)) {
      auto s = chow::SurfaceClass::from(chow::boundary_class(lat, l));
      const auto v = chow::surface_intersection(s, s);
      l_min = std::min(l_min, v);
      l_max = std::max(l_max, v);
    }
    const std::int64_t q = c.q;
    rec.check("E_p_self_intersection", "self-intersection of an exceptional curve over a point", qn(c), -1,
              p_min == p_max ? ordered_json(p_min) : ordered_json({p_min, p_max}));
    rec.check("E_ell_self_intersection", "strict transform of a rational line: 1 - #points on it", qn(c), -q,
              l_min == l_max ? ordered_json(l_min) : ordered_json({l_min, l_max}));
    auto h = chow::SurfaceClass::from(chow::DivisorClass::hyperplane_pullback(f, 2));
    rec.check("h_self_intersection", "pullback of a line class", qn(c), 1, chow::surface_intersection(h, h));
    auto k = chow::SurfaceClass::from(K);
    rec.check("canonical_self_intersection", "K^2 of the plane blown up at every rational point", qn(c),
              9 - (q * q + q + 1), chow::surface_intersection(k, k));
  }
}

void swap_suite(const RunConfig& c, Recorder& rec) {
  const auto r = chow::swap_impossibility(c.n, c.q);
  rec.check("swap_arithmetic", "a point-hyperplane swap would equate two canonical counts", qn(c), true,
            r.arithmetic_mismatch, {{"lhs", big_json(r.lhs)}, {"rhs", big_json(r.rhs)}});
  rec.check("swap_duality_pullback", "duality does not fix K modulo the boundary subgroup", qn(c), true,
            r.duality_mismatch,
            {{"method", r.duality_method},
             {"dual_canonical_mod_gamma", big_json(r.dual_canonical_mod_gamma)},
             {"canonical_mod_gamma", big_json(r.canonical_mod_gamma)}});
}

std::size_t total_flags(const SubspaceLattice& lat) {
  // chains through the lattice: f(x) = 1 + sum_{y < x} f(y)
  std::vector<std::size_t> ending(lat.size(), 0);
  std::size_t total = 0;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    ending[i] = 1;
    for (std::size_t b : lat.strictly_below(i)) ending[i] += ending[b];
    total += ending[i];
  }
  return total;
}

void fan_suite(const RunConfig& c, const SubspaceLattice& lat, Recorder& rec) {
  const std::size_t count = total_flags(lat);
  const ordered_json in = with(qn(c), "flags", count);
  if (count > 1000) {
    rec.skip("separation_certificates", "cones of distinct flags are separated", in, "more than 1000 flags");
    rec.skip("cone_matrix_full_rank", "cones are simplicial", in, "more than 1000 flags");
    return;
  }
  const auto flags = projspace::enumerate_flags(lat, FlagType::all());
  if (count * (count - 1) > kVerifyPairLimit) {
    rec.skip("separation_certificates", "cones of distinct flags are separated", in, "too many flag pairs");
  } else {
    std::uint64_t ok = 0;
    for (std::size_t a = 0; a < flags.size(); ++a)
      for (std::size_t b = 0; b < flags.size(); ++b) {
        if (a == b) continue;
        auto cert = valfan::separation_certificate(lat, flags[a], flags[b]);
        ok += valfan::verify_certificate(cert.positive, cert.neutral, cert.v, cert.v_prime) ? 1 : 0;
      }
    rec.check("separation_certificates", "cones of distinct flags are separated", in,
              static_cast<std::uint64_t>(count * (count - 1)), ok);
  }
  std::uint64_t full = 0;
  std::set<std::vector<std::vector<valfan::Rational>>> spans;
  for (const auto& F : flags) {
    const auto m = valfan::cone_matrix(F);
    full += valfan::rational_rank(m) == F.size() ? 1 : 0;
    spans.insert(valfan::column_span(m));
  }
  rec.check("cone_matrix_full_rank", "cones are simplicial", in, static_cast<std::uint64_t>(count), full);
  rec.check("cone_spans_distinct", "distinct flags give distinct cones", in, static_cast<std::uint64_t>(count),
            static_cast<std::uint64_t>(spans.size()));
}

void incomparability_suite(const RunConfig& c, const SubspaceLattice& lat, Recorder& rec) {
  const std::size_t count = total_flags(lat);
  const ordered_json in = with(qn(c), "grid", ordered_json::array({"1/2", "1/3"}));
  if (count > kVerifyGridLimit) {
    rec.skip("incomparable_grid", "distinct cone points are incomparable", in, "grid too large");
    return;
  }
  std::vector<valfan::ConePoint> pts;
  for (const auto& F : projspace::enumerate_flags(lat, FlagType::all())) {
    const std::size_t k = F.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      std::vector<valfan::Rational> r;
      for (std::size_t i = 0; i < k; ++i) r.emplace_back(1, (mask >> i) & 1 ? 3 : 2);
      pts.emplace_back(F, std::move(r));
    }
  }
  if (pts.size() > kVerifyGridLimit) {
    rec.skip("incomparable_grid", "distinct cone points are incomparable", in, "grid too large");
    return;
  }
  std::uint64_t ok = 0, pairs = 0;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      ++pairs;
      try {
        auto w = valfan::incomparable(pts[a], pts[b]);
        ok += (valfan::eval_cone(pts[a], w.f) < valfan::eval_cone(pts[b], w.f) &&
               valfan::eval_cone(pts[a], w.g) > valfan::eval_cone(pts[b], w.g))
                  ? 1
                  : 0;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::WitnessNotFound) throw;
      }
    }
  rec.check("incomparable_grid", "distinct cone points are incomparable", with(in, "points", pts.size()), pairs,
            ok);
}

void chart_suite(const RunConfig& c, Recorder& rec) {
  const ordered_json in = with(qn(c), "m", c.m);
  const BigInt Q = pow(BigInt(c.q), c.m);
  const BigInt tested = pow(Q, static_cast<unsigned>(c.n));
  const BigInt enumerated = counting::projective_points(c.n, Q) * counting::projective_points(c.n, c.q);
  if (tested > kVerifyChartLimit || enumerated > BigInt(50) * kVerifyChartLimit || Q > 65536) {
    rec.skip("chart_point_test", "chart polynomial cuts out the half-space", in, "extension too large");
    return;
  }
  if (gf::prime_power(c.q).second != 1) {
    rec.skip("chart_point_test", "chart polynomial cuts out the half-space", in,
             "the base field must be prime: extensions are built over GF(p) only");
    return;
  }
  const auto census = valfan::chart_census(c.q, c.n, c.m);
  ordered_json bad = ordered_json::array();
  for (const auto& t : census.mismatching) bad.push_back(t);
  rec.check("chart_point_test", "chart polynomial cuts out the half-space", in, 0, census.mismatches,
            {{"mismatching", bad}});
  BigInt closed = 1;
  for (int i = 1; i <= c.n; ++i) closed *= Q - pow(BigInt(c.q), static_cast<unsigned>(i));
  rec.check("drinfeld_points_chart", "points of the half-space over the extension", in,
            static_cast<std::uint64_t>(valfan::drinfeld_points(c.q, c.n, c.m)), census.points);
  rec.check("drinfeld_points_closed_form", "points of the half-space over the extension", in, big_json(closed),
            census.points);
}

void collineation_suite(const RunConfig& c, const SubspaceLattice& lat, Recorder& rec, bool& budget_hit) {
  const ordered_json in = qn(c);
  const BigInt expected = autgroup::pgammal_order(c.n, c.q);
  const BigInt linear = autgroup::pgl_order(c.n, c.q);
  if (expected > kVerifySearchLimit) {
    rec.skip("collineation_count", "incidence automorphisms are semilinear", in, "group too large to list");
    return;
  }
  autgroup::SearchResult res;
  try {
    res = autgroup::collineation_search(lat, {c.budget, c.workers});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    budget_hit = true;
    rec.budget("collineation_count", "incidence automorphisms are semilinear", with(in, "budget", c.budget),
               e.what());
    return;
  }
  rec.check("collineation_count", "incidence automorphisms are semilinear", in, big_json(expected),
            static_cast<std::uint64_t>(res.maps.size()));
  std::uint64_t realized = 0, refused = 0, other = 0;
  for (const auto& m : res.maps) {
    try {
      auto g = autgroup::realize_as_pgl(lat, autgroup::restrict_to_points(lat, m.perm));
      if (autgroup::induced_permutation(lat, g).perm == m.perm)
        ++realized;
      else
        ++other;
    } catch (const Error& e) {
      (e.code() == ErrorCode::NotRealizable ? refused : other) += 1;
    }
  }
  rec.check("collineations_realized", "frame method recovers the matrix", in, big_json(linear), realized);
  rec.check("collineations_refused", "field automorphisms are not projective-linear", in,
            big_json(expected - linear), refused, {{"unexpected_errors", other}});
}

}  // namespace

bool Report::all_pass() const { return doc["summary"]["failed"].get<std::uint64_t>() == 0; }

int Report::exit_code() const {
  if (budget_exceeded) return 3;
  return all_pass() ? 0 : 1;
}

Report run_verify(const RunConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  Report report;
  auto& doc = report.doc;
  doc["tool"] = "wonderful";
  doc["version"] = kToolVersion;
  doc["config"] = {{"q", config.q},           {"n", config.n},          {"ext_degree", config.m},
                   {"budget", config.budget}, {"workers", config.workers}, {"counting_only", config.counting_only}};
  doc["records"] = ordered_json::array();
  Recorder rec(doc["records"]);
  const ordered_json in = qn(config);

  counting_suite(config, rec);

  if (config.n == 1)
    rec.skip("blowup_trivial", "the half-space is settled directly in dimension one", in,
             "n = 1: no subspace has codimension >= 2, so X = P^1 and there is nothing to blow up; every point "
             "bijection preserves incidence, so the collineation argument starts at n = 2");

  const char* enumeration_suites[] = {"lattice", "chow", "swap", "fan", "incomparability", "chart", "collineation"};
  if (config.counting_only) {
    for (const char* s : enumeration_suites) rec.skip(std::string(s) + "_suite", "enumeration", in, "counting-only run");
  } else {
    if (config.n >= 2) swap_suite(config, rec);
    chart_suite(config, rec);
    if (lattice_size(config.n, config.q) > kVerifyLatticeLimit) {
      for (const char* s : {"lattice", "chow", "fan", "incomparability", "collineation"})
        rec.skip(std::string(s) + "_suite", "enumeration", in, "lattice exceeds the enumeration limit");
    } else {
      const SubspaceLattice lat(gf::Field::of_order(config.q), config.n);
      lattice_suite(config, lat, rec);
      if (config.n >= 2) chow_suite(config, lat, rec);
      fan_suite(config, lat, rec);
      incomparability_suite(config, lat, rec);
      if (config.n >= 2) collineation_suite(config, lat, rec, report.budget_exceeded);
    }
  }

  std::uint64_t passed = 0, failed = 0, skipped = 0, budget = 0;
  for (const auto& r : doc["records"]) {
    const auto s = r["status"].get<std::string>();
    if (s == "pass") ++passed;
    else if (s == "fail") ++failed;
    else if (s == "skipped") ++skipped;
    else ++budget;
  }
  doc["summary"] = {{"total", doc["records"].size()},
                    {"passed", passed},
                    {"failed", failed},
                    {"skipped", skipped},
                    {"budget_exceeded", budget}};
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  doc["footer"] = {{"wall_time_ms", ms}};
  return report;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string scalar(const ordered_json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

std::string render_impl(const Report& report, Format format, bool footer) {
  ordered_json doc = report.doc;
  const auto wall = doc["footer"]["wall_time_ms"];
  doc.erase("footer");
  std::ostringstream os;
  switch (format) {
    case Format::Json: {
      if (footer) doc["footer"] = {{"wall_time_ms", wall}};
      os << doc.dump(2) << '\n';
      break;
    }
    case Format::Csv: {
      os << "name,anchor,inputs,expected,actual,status\n";
      for (const auto& r : doc["records"])
        os << csv_field(r["name"].get<std::string>()) << ',' << csv_field(r["anchor"].get<std::string>()) << ','
           << csv_field(r["inputs"].dump()) << ',' << csv_field(scalar(r["expected"])) << ','
           << csv_field(scalar(r["actual"])) << ',' << r["status"].get<std::string>() << '\n';
      const auto& s = doc["summary"];
      os << "# total " << s["total"] << ", passed " << s["passed"] << ", failed " << s["failed"] << ", skipped "
         << s["skipped"] << ", budget_exceeded " << s["budget_exceeded"] << '\n';
      if (footer) os << "# wall_time_ms " << wall << '\n';
      break;
    }
    case Format::Text: {
      os << "wonderful " << doc["version"].get<std::string>() << "  verify q=" << doc["config"]["q"]
         << " n=" << doc["config"]["n"] << " m=" << doc["config"]["ext_degree"] << '\n';
      std::size_t width = 0;
      for (const auto& r : doc["records"]) width = std::max(width, r["name"].get<std::string>().size());
      for (const auto& r : doc["records"]) {
        std::string status = r["status"].get<std::string>();
        for (auto& ch : status) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        const auto name = r["name"].get<std::string>();
        os << status << std::string(16 - std::min<std::size_t>(15, status.size()), ' ') << name
           << std::string(width + 2 - name.size(), ' ') << r["inputs"].dump();
        if (r["status"] == "skipped" || r["status"] == "budget_exceeded")
          os << "  (" << r["reason"].get<std::string>() << ")";
        else
          os << "  expected " << scalar(r["expected"]) << "  actual " << scalar(r["actual"]);
        os << '\n';
      }
      const auto& s = doc["summary"];
      os << "total " << s["total"] << "  passed " << s["passed"] << "  failed " << s["failed"] << "  skipped "
         << s["skipped"] << "  budget_exceeded " << s["budget_exceeded"] << '\n';
      if (footer) os << "wall_time_ms " << wall << '\n';
      break;
    }
  }
  return os.str();
}

}  // namespace

std::string deterministic_part(const Report& report, Format format) { return render_impl(report, format, false); }

std::string render(const Report& report, Format format) { return render_impl(report, format, true); }

}  // namespace wonderful::verify
