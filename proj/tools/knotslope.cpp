// knotslope: slopes of SL(2,C) representations of knot groups.
//
//   knotslope slope FILE --m 2,0
//   knotslope scan FILE --samples 25 --seed 1 --arc 1.1,2,0.1,1
//   knotslope apoly FILE [--with-reducible]
//   knotslope verify FILE [--polynomial "..."]
//   knotslope presentation check FILE
//
// FILE may be @trefoil or @figure-eight for the bundled presentations.

#include <complex>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "knotslope/bilaurent.hpp"
#include "knotslope/error.hpp"
#include "knotslope/pipeline.hpp"
#include "knotslope/presentation.hpp"
#include "knotslope/reference.hpp"

namespace {

using knotslope::Error;
using knotslope::ErrorCode;

std::shared_ptr<const knotslope::KnotPresentation> load(const std::string& path) {
  if (path == "@trefoil") return knotslope::trefoil();
  if (path == "@figure-eight") return knotslope::figure_eight();
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kUsage, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return std::make_shared<const knotslope::KnotPresentation>(
      knotslope::parse_presentation(buf.str()));
}

std::vector<double> split_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
      throw Error(ErrorCode::kUsage, "not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::complex<double> parse_complex(const std::string& text) {
  const std::vector<double> v = split_numbers(text);
  if (v.size() == 1) return {v[0], 0.0};
  if (v.size() == 2) return {v[0], v[1]};
  throw Error(ErrorCode::kUsage, "expected re or re,im: '" + text + "'");
}

knotslope::Arc parse_arc(const std::string& text) {
  const std::vector<double> v = split_numbers(text);
  if (v.size() != 4) throw Error(ErrorCode::kUsage, "--arc expects r0,r1,t0,t1");
  return {v[0], v[1], v[2], v[3]};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slopes of knot group representations, by Fox calculus and by A-polynomials"};
  app.require_subcommand(1);

  std::string file;
  std::vector<std::string> m_values;
  std::string format = "json";
  double tol = 1e-6;
  bool with_reducible = false;
  std::uint64_t seed = 1;
  int samples = -1;
  std::string arc;
  std::string polynomial;
  unsigned threads = 0;

  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_sampling = [&](CLI::App* c) {
    c->add_option("--samples", samples, "number of M samples drawn from the arc");
    c->add_option("--seed", seed, "seed for the M sampler");
    c->add_option("--arc", arc, "r0,r1,t0,t1 with M = r e^{i t}");
    c->add_option("--m", m_values, "explicit M sample re[,im]; repeatable");
    c->add_option("--threads", threads, "worker threads (0: all cores)");
  };

  CLI::App* slope = app.add_subcommand("slope", "slope at each Riley root over M");
  slope->add_option("file", file, "presentation file")->required();
  slope->add_option("--m", m_values, "M as re[,im]; repeatable")->required();
  add_format(slope);

  CLI::App* scan = app.add_subcommand("scan", "slope records and per-branch statistics");
  scan->add_option("file", file, "presentation file")->required();
  add_sampling(scan);
  add_format(scan);

  CLI::App* apoly = app.add_subcommand("apoly", "A-polynomial, Newton polygon, ideal slopes");
  apoly->add_option("file", file, "presentation file")->required();
  apoly->add_flag("--with-reducible", with_reducible, "include the factor L - 1");
  add_format(apoly);

  CLI::App* verify = app.add_subcommand("verify", "compare Fox-calculus and log-Gauss slopes");
  verify->add_option("file", file, "presentation file")->required();
  verify->add_option("--tol", tol, "relative tolerance");
  verify->add_option("--polynomial", polynomial, "use this polynomial instead of computing A");
  verify->add_flag("--with-reducible", with_reducible, "include the factor L - 1");
  add_sampling(verify);
  add_format(verify);

  CLI::App* pres_cmd = app.add_subcommand("presentation", "presentation utilities");
  pres_cmd->require_subcommand(1);
  CLI::App* check = pres_cmd->add_subcommand("check", "parse and validate a presentation");
  check->add_option("file", file, "presentation file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto pres = load(file);
    knotslope::ScanConfig config;
    config.format = format == "csv" ? knotslope::OutputFormat::kCsv
                                    : knotslope::OutputFormat::kJson;
    config.tol = tol;
    config.with_reducible = with_reducible;
    config.seed = seed;
    config.threads = threads;
    if (!arc.empty()) config.arc = parse_arc(arc);
    for (const auto& m : m_values) config.samples.push_back(parse_complex(m));
    if (samples >= 0) {
      config.count = samples;
    } else if (verify->parsed()) {
      config.count = 20;
    }
    if (samples == 0 && config.samples.empty())
      throw Error(ErrorCode::kUsage, "sample count must be >= 1");

    if (slope->parsed())
      return knotslope::run_slope(pres, config.samples, config.format, std::cout, std::cerr);
    if (scan->parsed()) return knotslope::run_scan(pres, config, std::cout, std::cerr);
    if (apoly->parsed()) return knotslope::run_apoly(*pres, config, std::cout, std::cerr);
    if (verify->parsed()) {
      std::optional<knotslope::BiLaurent> given;
      if (!polynomial.empty()) given = knotslope::parse_bilaurent(polynomial);
      return knotslope::run_verify(pres, config, given, std::cout, std::cerr);
    }
    return knotslope::run_presentation_check(*pres, std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return knotslope::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
