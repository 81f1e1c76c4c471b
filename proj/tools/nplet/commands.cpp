#include "nplet/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nplet/certificate.hpp"
#include "nplet/errors.hpp"
#include "nplet/heights.hpp"
#include "nplet/lattice.hpp"
#include "nplet/oracle.hpp"
#include "nplet/ranktest.hpp"

namespace nplet::cli {

using nlohmann::json;

namespace {

std::string tuple_text(const std::vector<std::int64_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::string complex_text(std::complex<double> z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%+.12f%+.12fi", z.real(), z.imag());
  return buf;
}

}  // namespace

CommandResult cmd_test(const std::vector<std::int64_t>& exponents, Format format) {
  const auto normalized = ExponentTuple::normalize(exponents);
  const RankCertificate cert = decide(normalized.tuple);
  CommandResult result;
  result.exit_code = cert.anomalous ? kExitDiscovery : kExitClean;
  std::ostringstream out;
  if (format == Format::records) {
    if (normalized.divisor != 1) {
      out << json{{"record", "note"},
                  {"input", exponents},
                  {"divisor", normalized.divisor},
                  {"exponents", std::vector<std::int64_t>(normalized.tuple.exponents().begin(),
                                                          normalized.tuple.exponents().end())}}
                 .dump()
          << "\n";
    }
    out << to_record(cert) << "\n";
    result.report = out.str();
    return result;
  }
  out << "tuple            " << normalized.tuple.to_string() << "\n";
  if (normalized.divisor != 1) {
    out << "normalized from  " << tuple_text(exponents) << " (gcd " << normalized.divisor
        << "); a rank drop at z for the input is one at z^" << normalized.divisor
        << " for the normalized tuple\n";
  }
  out << "minor degrees    ";
  for (std::size_t i = 0; i < cert.minor_degrees.size(); ++i) out << (i ? " " : "") << cert.minor_degrees[i];
  out << "\n";
  out << "gcd              " << to_text(cert.gcd) << "\n";
  out << "(z-1) power      " << cert.one_multiplicity << "\n";
  out << "residual         " << to_text(cert.residual) << "\n";
  out << "anomalous        " << (cert.anomalous ? "yes" : "no") << "\n";
  out << "classification   " << to_string(cert.classification) << "\n";
  if (!cert.root_moduli.empty()) {
    out << "root moduli     ";
    for (double m : cert.root_moduli) out << " " << m;
    out << "\n";
  }
  result.report = out.str();
  return result;
}

CommandResult cmd_bounds(const std::vector<std::int64_t>& ds, bool solve, Format format) {
  if (ds.empty() && !solve) throw InvalidInput("bounds: give --d N or --solve");
  std::ostringstream out;
  if (format == Format::human && !ds.empty()) {
    out << std::left << std::setw(16) << "d" << std::setw(22) << "height bound (nat)"
        << std::setw(14) << "degree bound" << std::setw(18) << "lhs (nat)" << std::setw(18)
        << "rhs (nat)" << "verdict\n";
  }
  for (const std::int64_t d : ds) {
    if (d < 2) throw InvalidInput("bounds: d must be at least 2");
    const auto dd = static_cast<double>(d);
    const double h = step1_bound(dd);
    const std::int64_t cap = degree_bound(d);
    const ThresholdSides s = threshold_sides(dd);
    if (format == Format::records) {
      out << json{{"record", "bound"}, {"d", d}, {"height_bound", h}, {"degree_bound", cap},
                  {"lhs", s.lhs}, {"rhs", s.rhs}, {"admissible", s.holds}}
                 .dump()
          << "\n";
    } else {
      out << std::left << std::setw(16) << d << std::setw(22) << std::setprecision(6) << h
          << std::setw(14) << cap << std::setw(18) << s.lhs << std::setw(18) << s.rhs
          << (s.holds ? "not excluded" : "excluded") << "\n";
    }
  }
  if (solve) {
    const ThresholdSolution t = final_threshold();
    const ThresholdSides lo = threshold_sides(1e12);
    const ThresholdSides hi = threshold_sides(1e13);
    if (format == Format::records) {
      auto sides = [](const ThresholdSides& s) {
        return json{{"d", s.d}, {"lhs", s.lhs}, {"rhs", s.rhs}, {"holds", s.holds}};
      };
      out << json{{"record", "threshold"},
                  {"d_star", t.d_star},
                  {"below", sides(t.below)},
                  {"above", sides(t.above)},
                  {"at_1e12", sides(lo)},
                  {"at_1e13", sides(hi)},
                  {"iterations", t.iterations}}
                 .dump()
          << "\n";
    } else {
      out << std::setprecision(10) << "d* = " << t.d_star << "\n" << std::setprecision(6);
      out << "  at d = 1e12: lhs " << lo.lhs << " <= rhs " << lo.rhs << " (nat)\n";
      out << "  at d = 1e13: lhs " << hi.lhs << " > rhs " << hi.rhs << " (nat)\n";
      out << "every anomalous quadruple has d <= d*\n";
    }
  }
  return {kExitClean, out.str()};
}

CommandResult cmd_search(const SearchConfig& config, Format format) {
  const SearchSummary s = run(config);
  CommandResult result;
  result.exit_code = s.anomalous_found > 0 ? kExitDiscovery : kExitClean;
  std::ostringstream out;
  if (format == Format::records) {
    json j = json::parse(s.to_json());
    j["record"] = "summary";
    out << j.dump() << "\n";
  } else {
    out << "tuples examined  " << s.tuples_examined << "\n";
    out << "anomalous        " << s.anomalous_found << "\n";
    out << "oracle checks    " << s.oracle_checks << "\n";
    out << "elapsed          " << std::fixed << std::setprecision(2) << s.elapsed_seconds << " s\n";
    out << "(z-1) powers    ";
    for (const auto& [k, v] : s.one_multiplicity_histogram) out << " " << k << ":" << v;
    out << "\n";
    if (s.cursor) out << "cursor           " << tuple_text(*s.cursor) << "\n";
    out << "store            " << config.output << (s.completed ? "" : " (halted)") << "\n";
  }
  result.report = out.str();
  return result;
}

CommandResult cmd_verify(const std::string& path, Format format) {
  const VerifyReport r = verify(path);
  std::ostringstream out;
  if (format == Format::records) {
    json issues = json::array();
    for (const auto& i : r.issues) issues.push_back({{"line", i.line}, {"tuple", i.tuple}, {"reason", i.reason}});
    out << json{{"record", "verify"}, {"ok", r.ok}, {"records", r.records}, {"issues", issues}}.dump()
        << "\n";
  } else {
    out << (r.ok ? "ok" : "FAILED") << ": " << r.records << " certificates checked\n";
    for (const auto& i : r.issues) {
      out << "  line " << i.line << " " << (i.tuple.empty() ? "-" : i.tuple) << ": " << i.reason << "\n";
    }
  }
  return {r.ok ? kExitClean : kExitInconsistent, out.str()};
}

CommandResult cmd_oracle(const std::vector<std::int64_t>& exponents, std::complex<double> basepoint,
                         Format format) {
  ScanOptions options;
  options.basepoint = basepoint;
  const IncidenceScan scan = root_scan(exponents, options);
  std::optional<double> deviation;
  if (basepoint != std::complex<double>{1.0, 0.0}) deviation = basepoint_invariance(exponents, basepoint);

  CommandResult result;
  result.exit_code = scan.candidates.empty() ? kExitClean : kExitDiscovery;
  std::ostringstream out;
  if (format == Format::records) {
    json c = json::array();
    for (const auto& k : scan.candidates) {
      c.push_back({{"re", k.z.real()}, {"im", k.z.imag()}, {"sigma_min", k.min_singular_value},
                   {"residual", k.residual}});
    }
    json j{{"record", "scan"},
           {"exponents", exponents},
           {"basepoint", {basepoint.real(), basepoint.imag()}},
           {"candidates", c},
           {"excluded_at_one", scan.excluded_at_one},
           {"warnings", scan.warnings}};
    if (deviation) j["basepoint_deviation"] = *deviation;
    out << j.dump() << "\n";
  } else {
    out << "exponents " << tuple_text(exponents) << ", basepoint " << complex_text(basepoint) << "\n";
    out << "roots excluded as z = 1: " << scan.excluded_at_one << "\n";
    if (scan.candidates.empty()) {
      out << "no candidates\n";
    } else {
      out << std::left << std::setw(40) << "z" << std::setw(16) << "sigma_min" << "residual\n";
      for (const auto& k : scan.candidates) {
        std::ostringstream sv, res;
        sv << std::scientific << std::setprecision(3) << k.min_singular_value;
        res << std::scientific << std::setprecision(3) << k.residual;
        out << std::setw(40) << complex_text(k.z) << std::setw(16) << sv.str() << res.str() << "\n";
      }
    }
    for (const auto& w : scan.warnings) out << "warning: " << w << "\n";
    if (deviation) out << "basepoint deviation " << std::scientific << *deviation << "\n";
  }
  result.report = out.str();
  return result;
}

namespace {

std::complex<double> parse_basepoint(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    const double re = std::stod(text.substr(0, comma), &used);
    if (used != (comma == std::string::npos ? text.size() : comma)) throw std::invalid_argument("");
    double im = 0.0;
    if (comma != std::string::npos) {
      const std::string tail = text.substr(comma + 1);
      im = std::stod(tail, &used);
      if (used != tail.size()) throw std::invalid_argument("");
    }
    return {re, im};
  } catch (const std::exception&) {
    throw InvalidInput("basepoint must look like re or re,im");
  }
}

}  // namespace

CommandResult run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Rank-drop certificates for exponent tuples", "nplet"};
  app.require_subcommand(1);

  const std::map<std::string, Format> formats{{"human", Format::human}, {"records", Format::records}};
  Format format = Format::human;
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "human or records")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };

  std::vector<std::int64_t> exponents;
  auto* test = app.add_subcommand("test", "Decide a single tuple");
  test->add_option("exponents", exponents, "a1 a2 ... an")->required()->expected(1, -1);
  add_format(test);

  std::vector<std::int64_t> ds;
  bool solve = false;
  auto* bounds = app.add_subcommand("bounds", "Height and degree bounds, and the final threshold");
  bounds->add_option("--d", ds, "largest exponent (repeatable)");
  bounds->add_flag("--solve", solve, "solve for the threshold d*");
  add_format(bounds);

  SearchConfig config;
  config.workers = default_workers();
  std::uint64_t halt_after = 0;
  auto* search = app.add_subcommand("search", "Exhaustive sharded search");
  search->add_option("--n", config.n, "tuple length")->required();
  search->add_option("--max-d", config.max_last_exponent, "largest last exponent")->required();
  search->add_option("--shards", config.shard_count, "number of shards");
  search->add_option("--shard", config.shard_index, "shard index");
  search->add_option("--out", config.output, "certificate store")->required();
  search->add_flag("--resume", config.resume, "continue from the checkpoint");
  search->add_option("--oracle-rate", config.oracle_rate, "fraction of tuples cross-checked");
  search->add_option("--workers", config.workers, std::string("worker threads (default $") + kWorkersEnv + ")");
  search->add_option("--batch", config.batch_size, "tuples per checkpoint");
  search->add_option("--halt-after", halt_after, "stop abruptly after this many tuples (testing)");
  add_format(search);

  std::string store_path;
  auto* ver = app.add_subcommand("verify", "Re-check a certificate store");
  ver->add_option("path", store_path, "store")->required();
  add_format(ver);

  std::string basepoint_text = "1";
  auto* oracle = app.add_subcommand("oracle", "Numeric incidence scan");
  oracle->add_option("exponents", exponents, "a1 a2 ... an")->required()->expected(1, -1);
  oracle->add_option("--basepoint", basepoint_text, "re[,im]");
  add_format(oracle);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {kExitClean, app.help()};
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    out << e.get_name() << ": " << e.what() << "\n\n" << app.help();
    return {kExitUsage, out.str()};
  }

  try {
    if (*test) return cmd_test(exponents, format);
    if (*bounds) return cmd_bounds(ds, solve, format);
    if (*search) {
      if (halt_after > 0) config.halt_after = halt_after;
      return cmd_search(config, format);
    }
    if (*ver) return cmd_verify(store_path, format);
    if (*oracle) return cmd_oracle(exponents, parse_basepoint(basepoint_text), format);
  } catch (const InvalidInput& e) {
    return {kExitUsage, std::string("usage error: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {kExitInconsistent, std::string("internal inconsistency: ") + e.what() + "\n"};
  }
  return {kExitUsage, app.help()};
}

}  // namespace nplet::cli
