#include "knotslope/pipeline.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <thread>

#include "json.hpp"
#include "knotslope/apoly.hpp"
#include "knotslope/newton.hpp"
#include "knotslope/reference.hpp"
#include "knotslope/representation.hpp"

namespace knotslope {

using Json = nlohmann::json;
using C = std::complex<double>;

// ---------------------------------------------------------------- config

void ScanConfig::validate() const {
  if (samples.empty() && count < 1) throw Error(ErrorCode::kUsage, "sample count must be >= 1");
  if (!(tol > 0.0 && tol < 1.0)) throw Error(ErrorCode::kUsage, "tolerance must lie in (0, 1)");
  if (samples.empty() && !(arc.r0 > 0.0 && arc.r0 <= arc.r1 && arc.t0 <= arc.t1))
    throw Error(ErrorCode::kUsage, "arc needs 0 < r0 <= r1 and t0 <= t1");
  for (const C& m : samples)
    if (m == 0.0) throw Error(ErrorCode::kUsage, "M = 0 is not a valid sample");
}

std::vector<C> ScanConfig::resolve_samples() const {
  validate();
  if (!samples.empty()) return samples;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(arc.r0, arc.r1);
  std::uniform_real_distribution<double> angle(arc.t0, arc.t1);
  std::vector<C> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double r = radius(rng);
    const double th = angle(rng);
    out.push_back(std::polar(r, th));
  }
  return out;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kParse:
    case ErrorCode::kUsage:
    case ErrorCode::kInvalidPresentation:
      return 2;
    default:
      return 1;
  }
}

namespace {

// Runs fn(k) for k in [0, n) on a small pool; each k writes only its own slot.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t k = 0; k < n; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < n; k = next++) fn(k);
    });
}

Json cjson(C z) { return Json::array({z.real(), z.imag()}); }

double relative_deviation(const std::optional<C>& a, const std::optional<C>& b) {
  if (!a && !b) return 0.0;
  if (!a || !b) return std::numeric_limits<double>::infinity();
  const double scale = std::max(std::abs(*a), std::abs(*b));
  return scale == 0.0 ? 0.0 : std::abs(*a - *b) / scale;
}

}  // namespace

// ---------------------------------------------------------------- records

std::vector<SlopeRecord> slope_records(std::shared_ptr<const KnotPresentation> pres, C m) {
  std::vector<SlopeRecord> out;
  int branch = 0;
  for (const RileyRoot& root : riley_family(std::move(pres), m)) {
    if (root.reducible) continue;
    SlopeRecord r;
    r.branch = branch++;
    r.m = m;
    r.t = root.t;
    r.relator_residual = root.rep.relator_residual();
    r.x = root.rep.meridian_image().trace();
    try {
      BoundaryData bd = boundary_data(root.rep);
      if (std::abs(bd.meridian_eigenvalue - m) > std::abs(bd.meridian_eigenvalue - 1.0 / m))
        bd = boundary_data(root.rep, kDefaultEigTol, EigenBranch::kSwapped);
      r.longitude_eigenvalue = bd.longitude_eigenvalue;
      r.commutator_residual = bd.commutator_residual;
      const SlopeValue s = slope_of_character(root.rep);
      r.verdict = bd.parabolic ? Verdict::kParabolicPath : Verdict::kAdmissible;
      r.slope = s.reading();
      r.infinite = s.infinite;
      r.coordinate_residual = s.coordinate_residual;
    } catch (const Error& e) {
      r.verdict = Verdict::kDegenerate;
      r.error = e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

ScanResult scan(std::shared_ptr<const KnotPresentation> pres, const ScanConfig& config) {
  const std::vector<C> samples = config.resolve_samples();
  std::vector<std::vector<SlopeRecord>> per_sample(samples.size());
  std::vector<std::string> failures(samples.size());
  parallel_for(samples.size(), config.threads, [&](std::size_t k) {
    try {
      per_sample[k] = slope_records(pres, samples[k]);
      if (per_sample[k].empty()) failures[k] = "no irreducible Riley roots";
    } catch (const Error& e) {
      failures[k] = e.what();
    }
  });

  ScanResult result;
  std::vector<std::pair<int, C>> previous;  // branch id, t
  int next_branch = 0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (!failures[k].empty()) {
      SlopeRecord r;
      r.sample = k;
      r.m = samples[k];
      r.branch = -1;
      r.error = failures[k];
      result.records.push_back(std::move(r));
      continue;
    }
    std::vector<std::pair<int, C>> current;
    std::vector<bool> taken(previous.size(), false);
    for (SlopeRecord& r : per_sample[k]) {
      r.sample = k;
      std::size_t best = previous.size();
      for (std::size_t p = 0; p < previous.size(); ++p) {
        if (taken[p]) continue;
        if (best == previous.size() ||
            std::abs(previous[p].second - r.t) < std::abs(previous[best].second - r.t))
          best = p;
      }
      if (best < previous.size()) {
        taken[best] = true;
        r.branch = previous[best].first;
      } else {
        r.branch = next_branch++;
      }
      current.emplace_back(r.branch, r.t);
    }
    for (std::size_t p = 0; p < previous.size(); ++p)
      if (!taken[p]) current.push_back(previous[p]);
    previous = std::move(current);
    std::sort(per_sample[k].begin(), per_sample[k].end(),
              [](const SlopeRecord& a, const SlopeRecord& b) { return a.branch < b.branch; });
    for (SlopeRecord& r : per_sample[k]) result.records.push_back(std::move(r));
  }

  std::map<int, std::vector<C>> readings;
  for (const SlopeRecord& r : result.records)
    if (r.slope) readings[r.branch].push_back(*r.slope);
  for (const auto& [branch, values] : readings) {
    BranchSummary s;
    s.branch = branch;
    s.count = static_cast<int>(values.size());
    for (const C& v : values) s.mean += v;
    s.mean /= static_cast<double>(values.size());
    s.min_real = s.max_real = values.front().real();
    for (const C& v : values) {
      const double d = std::abs(v - s.mean);
      s.variance += d * d;
      s.max_deviation = std::max(s.max_deviation, d);
      s.min_real = std::min(s.min_real, v.real());
      s.max_real = std::max(s.max_real, v.real());
    }
    s.variance /= static_cast<double>(values.size());
    result.summary.push_back(s);
  }
  return result;
}

// ---------------------------------------------------------------- verify

VerifyResult verify(std::shared_ptr<const KnotPresentation> pres, const ScanConfig& config,
                    const std::optional<BiLaurent>& polynomial) {
  VerifyResult result;
  result.polynomial =
      polynomial ? *polynomial
                 : compute_apoly_twobridge(*pres, {config.with_reducible}).polynomial;
  const std::vector<C> samples = config.resolve_samples();
  const bool figure_eight_input = is_figure_eight(*pres);

  std::vector<std::vector<VerifyRecord>> per_sample(samples.size());
  std::vector<std::array<double, 2>> curve(samples.size(), {0.0, 0.0});
  parallel_for(samples.size(), config.threads, [&](std::size_t k) {
    std::vector<SlopeRecord> recs;
    try {
      recs = slope_records(pres, samples[k]);
    } catch (const Error& e) {
      VerifyRecord v;
      v.sample = k;
      v.m = samples[k];
      v.error = e.what();
      per_sample[k].push_back(std::move(v));
      return;
    }
    if (recs.empty()) {
      VerifyRecord v;
      v.sample = k;
      v.m = samples[k];
      v.error = "no irreducible Riley roots";
      per_sample[k].push_back(std::move(v));
    }
    for (const SlopeRecord& r : recs) {
      VerifyRecord v;
      v.sample = k;
      v.m = r.m;
      v.longitude_eigenvalue = r.longitude_eigenvalue;
      if (!r.error.empty()) {
        v.error = r.error;
      } else {
        v.fox = r.slope;
        const C l = r.longitude_eigenvalue;
        v.apoly_residual = std::abs(result.polynomial.evaluate(l, r.m)) /
                           result.polynomial.magnitude_scale(l, r.m);
        try {
          v.gauss = log_gauss(result.polynomial, l, r.m);
          v.deviation = relative_deviation(v.fox, v.gauss);
        } catch (const Error& e) {
          v.error = e.what();
        }
      }
      per_sample[k].push_back(std::move(v));
    }
    if (figure_eight_input) {
      std::vector<RileyRoot> roots;
      try {
        roots = riley_family(pres, samples[k]);
      } catch (const Error&) {
        // already recorded above
      }
      for (const RileyRoot& root : roots) {
        if (root.reducible) continue;
        const SL2& u = root.rep.image(0);
        const SL2& w = root.rep.image(1);
        const C x = u.trace();
        const C ys[2] = {(u * w).trace(), (u * w.inverse()).trace()};
        for (int c = 0; c < 2; ++c) {
          const C y = ys[c];
          const double scale = 2.0 * std::norm(x) + std::norm(y) +
                               std::norm(x) * std::abs(y) + std::abs(y) + 1.0;
          curve[k][static_cast<std::size_t>(c)] =
              std::max(curve[k][static_cast<std::size_t>(c)],
                       std::abs(figure_eight_curve(x, y)) / scale);
        }
      }
    }
  });

  bool clean = true;
  for (auto& recs : per_sample)
    for (VerifyRecord& v : recs) {
      if (!v.error.empty()) clean = false;
      result.max_deviation = std::max(result.max_deviation, v.deviation);
      result.max_apoly_residual = std::max(result.max_apoly_residual, v.apoly_residual);
      result.records.push_back(std::move(v));
    }
  bool curve_ok = true;
  if (figure_eight_input) {
    double best[2] = {0.0, 0.0};
    for (const auto& c : curve) {
      best[0] = std::max(best[0], c[0]);
      best[1] = std::max(best[1], c[1]);
    }
    if (best[0] <= config.tol) {
      result.curve_coordinate = "tr(uv)";
      result.curve_residual = best[0];
    } else if (best[1] <= config.tol) {
      result.curve_coordinate = "tr(uv^-1)";
      result.curve_residual = best[1];
    } else {
      result.curve_coordinate = "none";
      result.curve_residual = std::min(best[0], best[1]);
      curve_ok = false;
    }
  }
  result.passed = clean && !result.records.empty() && result.max_deviation <= config.tol &&
                  result.max_apoly_residual <= config.tol && curve_ok;
  return result;
}

// ---------------------------------------------------------------- output

namespace {

Json slope_json(const SlopeRecord& r) {
  Json j;
  j["sample"] = r.sample;
  j["branch"] = r.branch;
  j["M"] = cjson(r.m);
  j["t"] = cjson(r.t);
  j["L"] = cjson(r.longitude_eigenvalue);
  j["x"] = cjson(r.x);
  if (r.infinite) {
    j["slope"] = "inf";
  } else if (r.slope) {
    j["slope"] = cjson(*r.slope);
  } else {
    j["slope"] = nullptr;
  }
  j["verdict"] = to_string(r.verdict);
  j["residuals"] = {{"relator", r.relator_residual},
                    {"commutator", r.commutator_residual},
                    {"coordinate", r.coordinate_residual}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

void write_csv_records(const std::vector<SlopeRecord>& records, std::ostream& out) {
  out << "sample,branch,M_re,M_im,t_re,t_im,L_re,L_im,x_re,x_im,slope_re,slope_im,verdict,"
         "relator_residual,commutator_residual,coordinate_residual\n";
  out.precision(17);
  for (const SlopeRecord& r : records) {
    out << r.sample << ',' << r.branch << ',' << r.m.real() << ',' << r.m.imag() << ','
        << r.t.real() << ',' << r.t.imag() << ',' << r.longitude_eigenvalue.real() << ','
        << r.longitude_eigenvalue.imag() << ',' << r.x.real() << ',' << r.x.imag() << ',';
    if (r.infinite) {
      out << "inf,";
    } else if (r.slope) {
      out << r.slope->real() << ',' << r.slope->imag();
    } else {
      out << ',';
    }
    out << ',' << to_string(r.verdict) << ',' << r.relator_residual << ','
        << r.commutator_residual << ',' << r.coordinate_residual << '\n';
  }
}

Json summary_json(const BranchSummary& s) {
  return {{"branch", s.branch},         {"count", s.count},
          {"mean", cjson(s.mean)},      {"variance", s.variance},
          {"max_deviation", s.max_deviation}, {"min_real", s.min_real},
          {"max_real", s.max_real}};
}

Json optional_slope_json(const std::optional<C>& s) {
  if (!s) return "inf";
  return cjson(*s);
}

}  // namespace

int run_slope(std::shared_ptr<const KnotPresentation> pres, const std::vector<C>& ms,
              OutputFormat format, std::ostream& out, std::ostream& err) {
  if (ms.empty()) {
    err << "error: no M value given\n";
    return 2;
  }
  std::vector<SlopeRecord> records;
  try {
    for (std::size_t k = 0; k < ms.size(); ++k) {
      if (ms[k] == 0.0) throw Error(ErrorCode::kUsage, "M = 0 is not a valid sample");
      for (SlopeRecord& r : slope_records(pres, ms[k])) {
        r.sample = k;
        records.push_back(std::move(r));
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  if (records.empty()) err << "warning: no irreducible Riley roots\n";
  if (format == OutputFormat::kCsv) {
    write_csv_records(records, out);
  } else {
    Json j = Json::array();
    for (const auto& r : records) j.push_back(slope_json(r));
    out << Json{{"records", j}}.dump(2) << '\n';
  }
  return 0;
}

int run_scan(std::shared_ptr<const KnotPresentation> pres, const ScanConfig& config,
             std::ostream& out, std::ostream& err) {
  ScanResult result;
  try {
    result = scan(std::move(pres), config);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  for (const auto& r : result.records)
    if (!r.error.empty()) err << "sample " << r.sample << ": " << r.error << '\n';
  if (config.format == OutputFormat::kCsv) {
    write_csv_records(result.records, out);
    for (const auto& s : result.summary)
      out << "# branch " << s.branch << " count " << s.count << " mean " << s.mean.real()
          << (s.mean.imag() < 0 ? "" : "+") << s.mean.imag() << "i variance " << s.variance
          << " max_deviation " << s.max_deviation << '\n';
  } else {
    Json records = Json::array();
    for (const auto& r : result.records) records.push_back(slope_json(r));
    Json summary = Json::array();
    for (const auto& s : result.summary) summary.push_back(summary_json(s));
    out << Json{{"records", records}, {"summary", summary}}.dump(2) << '\n';
  }
  return 0;
}

int run_apoly(const KnotPresentation& pres, const ScanConfig& config, std::ostream& out,
              std::ostream& err) {
  ApolyResult a;
  IdealSlopeReport ideal;
  NewtonPolygon polygon;
  try {
    a = compute_apoly_twobridge(pres, {config.with_reducible});
    polygon = newton_polygon(a.polynomial);
    ideal = ideal_point_slopes(a.polynomial);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  const std::string text = format_bilaurent(a.polynomial);
  if (config.format == OutputFormat::kCsv) {
    out << "# A = " << text << '\n';
    out << "from_i,from_j,to_i,to_j,side_slope,ideal_slope,v_L,v_M\n";
    for (const auto& e : ideal.entries)
      out << e.side.from.first << ',' << e.side.from.second << ',' << e.side.to.first << ','
          << e.side.to.second << ',' << e.side_slope.to_string() << ','
          << e.ideal_slope.to_string() << ',' << e.valuations.first << ','
          << e.valuations.second << '\n';
    return 0;
  }
  Json j;
  j["polynomial"] = text;
  j["terms"] = Json::parse(bilaurent_to_json(a.polynomial))["terms"];
  j["repeated_part"] = format_bilaurent(a.repeated_part);
  j["reducible_factor_appended"] = a.reducible_factor_appended;
  j["newton_polygon"] = Json::parse(newton_polygon_to_json(polygon));
  Json sides = Json::array();
  for (const auto& s : side_slopes(polygon)) sides.push_back(s.to_string());
  j["side_slopes"] = sides;
  Json entries = Json::array();
  for (const auto& e : ideal.entries)
    entries.push_back({{"from", {e.side.from.first, e.side.from.second}},
                       {"to", {e.side.to.first, e.side.to.second}},
                       {"side_slope", e.side_slope.to_string()},
                       {"ideal_slope", e.ideal_slope.to_string()},
                       {"valuations", {e.valuations.first, e.valuations.second}}});
  j["ideal_slopes"] = entries;
  Json distinct = Json::array();
  for (const auto& s : ideal.distinct()) distinct.push_back(s.to_string());
  j["distinct_ideal_slopes"] = distinct;
  out << j.dump(2) << '\n';
  return 0;
}

int run_verify(std::shared_ptr<const KnotPresentation> pres, const ScanConfig& config,
               const std::optional<BiLaurent>& polynomial, std::ostream& out,
               std::ostream& err) {
  VerifyResult v;
  try {
    v = verify(std::move(pres), config, polynomial);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  if (config.format == OutputFormat::kCsv) {
    out << "sample,M_re,M_im,L_re,L_im,fox_re,fox_im,gauss_re,gauss_im,deviation,apoly_residual,"
           "error\n";
    out.precision(17);
    for (const auto& r : v.records) {
      out << r.sample << ',' << r.m.real() << ',' << r.m.imag() << ','
          << r.longitude_eigenvalue.real() << ',' << r.longitude_eigenvalue.imag() << ',';
      for (const auto& s : {r.fox, r.gauss}) {
        if (s) {
          out << s->real() << ',' << s->imag() << ',';
        } else {
          out << "inf,,";
        }
      }
      out << r.deviation << ',' << r.apoly_residual << ',' << r.error << '\n';
    }
  } else {
    Json records = Json::array();
    for (const auto& r : v.records) {
      Json j = {{"sample", r.sample},
                {"M", cjson(r.m)},
                {"L", cjson(r.longitude_eigenvalue)},
                {"fox", optional_slope_json(r.fox)},
                {"log_gauss", optional_slope_json(r.gauss)},
                {"deviation", r.deviation},
                {"apoly_residual", r.apoly_residual}};
      if (!r.error.empty()) j["error"] = r.error;
      records.push_back(j);
    }
    Json j = {{"polynomial", format_bilaurent(v.polynomial)},
              {"records", records},
              {"max_deviation", v.max_deviation},
              {"max_apoly_residual", v.max_apoly_residual},
              {"tolerance", config.tol},
              {"result", v.passed ? "PASS" : "FAIL"}};
    if (v.curve_coordinate)
      j["curve"] = {{"coordinate", *v.curve_coordinate}, {"max_residual", v.curve_residual}};
    out << j.dump(2) << '\n';
  }
  err << (v.passed ? "PASS" : "FAIL") << " max deviation " << v.max_deviation
      << ", max |A(L,M)| " << v.max_apoly_residual << '\n';
  return v.passed ? 0 : 1;
}

int run_presentation_check(const KnotPresentation& pres, std::ostream& out,
                           std::ostream& err) {
  Json j;
  j["generators"] = pres.generators();
  j["relations"] = pres.relations().size();
  j["meridian"] = pres.format_word(pres.meridian());
  j["longitude"] = pres.format_word(pres.longitude());
  j["longitude_exponent_sum"] = total_exponent_sum(pres.longitude());
  j["normalized"] = format_presentation(pres);
  bool ok = true;
  if (pres.num_generators() == 2 && pres.meridian_generator()) {
    try {
      const double res = boundary_commutator_residual(
          std::make_shared<const KnotPresentation>(pres), C(1.3, 0.4));
      j["commutator_residual"] = res;
      ok = res <= 1e-8;
      if (!ok) err << "error: longitude does not commute with the meridian\n";
    } catch (const Error& e) {
      j["commutator_residual"] = nullptr;
      err << "warning: " << e.what() << '\n';
    }
  }
  out << j.dump(2) << '\n';
  return ok ? 0 : 1;
}

}  // namespace knotslope
