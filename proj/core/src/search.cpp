#include "nplet/search.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "nplet/certificate.hpp"
#include "nplet/cyclotomic.hpp"
#include "nplet/errors.hpp"
#include "nplet/heights.hpp"
#include "nplet/lattice.hpp"
#include "nplet/oracle.hpp"

namespace nplet {

using nlohmann::json;
namespace fs = std::filesystem;

unsigned default_workers() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void validate(const SearchConfig& config) {
  if (config.n < 3) throw InvalidInput("search: n must be at least 3");
  if (config.max_last_exponent < static_cast<std::int64_t>(config.n)) {
    throw InvalidInput("search: max-d must be at least n");
  }
  if (config.shard_count == 0 || config.shard_index >= config.shard_count) {
    throw InvalidInput("search: need 0 <= shard < shards");
  }
  if (!(config.oracle_rate >= 0.0 && config.oracle_rate <= 1.0)) {
    throw InvalidInput("search: oracle rate must lie in [0, 1]");
  }
  if (config.batch_size == 0) throw InvalidInput("search: batch size must be positive");
  if (config.output.empty()) throw InvalidInput("search: output path required");
}

std::string SearchSummary::to_json() const {
  json j;
  j["tuples_examined"] = tuples_examined;
  j["anomalous_found"] = anomalous_found;
  j["oracle_checks"] = oracle_checks;
  j["elapsed_seconds"] = elapsed_seconds;
  json hist = json::object();
  for (const auto& [k, v] : one_multiplicity_histogram) hist[std::to_string(k)] = v;
  j["one_multiplicity_histogram"] = hist;
  j["cursor"] = cursor ? json(*cursor) : json(nullptr);
  j["completed"] = completed;
  return j.dump();
}

// ---------------------------------------------------------------------------
// Enumeration

TupleEnumerator::TupleEnumerator(std::size_t n, std::int64_t max_last) : n_(n), max_last_(max_last) {
  if (n < 3) throw InvalidInput("TupleEnumerator: n must be at least 3");
}

// Next strictly increasing tuple (coprime or not): colex over the first
// n - 1 entries below a_n, then a_n + 1.
bool TupleEnumerator::step() {
  if (!started_) {
    started_ = true;
    current_.resize(n_);
    std::iota(current_.begin(), current_.end(), 1);
    return current_.back() <= max_last_;
  }
  const std::size_t k = n_ - 1;
  for (std::size_t j = 0; j < k; ++j) {
    if (current_[j] + 1 < current_[j + 1]) {
      ++current_[j];
      for (std::size_t i = 0; i < j; ++i) current_[i] = static_cast<std::int64_t>(i) + 1;
      return true;
    }
  }
  const std::int64_t last = current_.back() + 1;
  if (last > max_last_) return false;
  std::iota(current_.begin(), current_.end() - 1, 1);
  current_.back() = last;
  return true;
}

bool TupleEnumerator::next() {
  while (step()) {
    std::int64_t g = 0;
    for (auto v : current_) g = std::gcd(g, v);
    if (g != 1) continue;
    index_ = emitted_++;
    return true;
  }
  return false;
}

std::vector<ExponentTuple> enumerate(std::size_t n, std::int64_t max_last, std::uint64_t shard_count,
                                     std::uint64_t shard_index) {
  if (shard_count == 0 || shard_index >= shard_count) {
    throw InvalidInput("enumerate: need 0 <= shard < shards");
  }
  std::vector<ExponentTuple> out;
  TupleEnumerator it(n, max_last);
  while (it.next()) {
    if (it.index() % shard_count == shard_index) out.push_back(ExponentTuple::make(it.current()));
  }
  return out;
}

bool sampled_for_oracle(std::uint64_t canonical_index, double rate) {
  if (rate <= 0.0) return false;
  if (rate >= 1.0) return true;
  // splitmix64 finaliser
  std::uint64_t z = canonical_index + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53 < rate;
}

// ---------------------------------------------------------------------------
// Re-checking

std::string check_certificate(const RankCertificate& cert) {
  const auto minors = build_minors_by_elimination(cert.tuple.exponents());
  if (cert.minor_degrees.size() != minors.size()) return "wrong number of minor degrees";
  for (std::size_t i = 0; i < minors.size(); ++i) {
    if (cert.minor_degrees[i] != minors[i].degree()) {
      return "minor " + std::to_string(i) + " has degree " + std::to_string(minors[i].degree()) +
             ", record says " + std::to_string(cert.minor_degrees[i]);
    }
  }
  if (cert.gcd.is_zero()) return "gcd is zero";
  std::vector<DensePolynomial> dense;
  for (const auto& m : minors) dense.push_back(m.to_dense());
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (!divides(cert.gcd, dense[i])) return "gcd does not divide minor " + std::to_string(i);
  }
  DensePolynomial g = dense.front();
  for (std::size_t i = 1; i < dense.size(); ++i) g = gcd(g, dense[i]);
  if (primitive_part(g) != primitive_part(cert.gcd)) return "gcd is not the greatest common divisor";
  if (cert.one_multiplicity < 0) return "negative multiplicity";
  const auto k = static_cast<std::size_t>(cert.one_multiplicity);
  if (DensePolynomial::z_minus_one_power(k) * cert.residual != cert.gcd) {
    return "gcd != (z-1)^k * residual";
  }
  if (cert.residual.evaluate(Integer(1)) == 0) return "residual vanishes at 1";
  if (cert.anomalous == cert.residual.is_constant()) return "anomalous flag contradicts residual";
  if (!cert.anomalous) {
    if (cert.classification != Classification::trivial) return "classification should be trivial";
    return {};
  }
  if (cert.classification == Classification::trivial) return "anomalous but classified trivial";
  if (cert.classification != Classification::inconclusive) {
    try {
      const bool cyclo = classify_cyclotomic(cert.residual).is_product_of_cyclotomics;
      if (cyclo != (cert.classification == Classification::root_of_unity)) {
        return "classification contradicts the residual";
      }
    } catch (const Inconclusive&) {
      return "classification cannot be re-derived";
    }
  }
  return {};
}

VerifyReport verify_records(std::string_view contents) {
  VerifyReport report;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < contents.size()) {
    std::size_t end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    const std::string_view line = contents.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception&) {
      report.issues.push_back({line_no, "", "unparseable line"});
      continue;
    }
    if (j.value("record", "") == "header") {
      if (line_no != 1) report.issues.push_back({line_no, "", "header after the first line"});
      if (j.value("format", "") != kStoreFormatName || j.value("version", 0) != kStoreFormatVersion) {
        report.issues.push_back({line_no, "", "unknown store format"});
      }
      continue;
    }
    // Command output may interleave informational records with certificates.
    const std::string kind = j.value("record", "");
    if (kind == "note" || kind == "summary") continue;
    std::string label;
    if (j.contains("exponents") && j["exponents"].is_array()) {
      std::ostringstream os;
      os << "(";
      for (std::size_t i = 0; i < j["exponents"].size(); ++i) os << (i ? "," : "") << j["exponents"][i].dump();
      os << ")";
      label = os.str();
    }
    ++report.records;
    try {
      const RankCertificate cert = from_record(line);
      const std::string reason = check_certificate(cert);
      if (!reason.empty()) report.issues.push_back({line_no, label, reason});
    } catch (const std::exception& e) {
      report.issues.push_back({line_no, label, e.what()});
    }
  }
  report.ok = report.issues.empty();
  return report;
}

VerifyReport verify(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open store " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return verify_records(buf.str());
}

// ---------------------------------------------------------------------------
// Driver

namespace {

json config_json(const SearchConfig& c) {
  return {{"n", c.n},
          {"max_d", c.max_last_exponent},
          {"shards", c.shard_count},
          {"shard", c.shard_index},
          {"oracle_rate", c.oracle_rate}};
}

struct Item {
  std::vector<std::int64_t> exponents;
  std::uint64_t index = 0;
};

struct Outcome {
  std::string record;
  bool anomalous = false;
  std::int64_t one_multiplicity = 0;
  bool oracle_checked = false;
  std::optional<json> disagreement;
};

json scan_json(const IncidenceScan& scan) {
  json c = json::array();
  for (const auto& k : scan.candidates) {
    c.push_back({{"re", k.z.real()}, {"im", k.z.imag()}, {"sigma_min", k.min_singular_value},
                 {"residual", k.residual}});
  }
  return {{"candidates", c}, {"warnings", scan.warnings}, {"excluded_at_one", scan.excluded_at_one}};
}

Outcome process(const Item& item, double oracle_rate) {
  const ExponentTuple tuple = ExponentTuple::make(item.exponents);
  RankCertificate cert = decide(tuple);
  Outcome out;
  out.anomalous = cert.anomalous;
  out.one_multiplicity = cert.one_multiplicity;

  if (cert.anomalous) {
    json v;
    v["recheck"] = check_certificate(cert);
    std::optional<std::int64_t> cap;
    if (tuple.n() == 4) {
      cap = degree_bound(tuple);
      const LatticeBasis basis = orthogonal_lattice(tuple);
      v["lattice"] = to_text(basis);
      v["minkowski_margin"] = minkowski_check(basis).margin;
    }
    v["consistency"] = json::parse(solution_consistency(cert, cap).to_json());
    cert.validation = v.dump();
  }

  if (cert.anomalous || sampled_for_oracle(item.index, oracle_rate)) {
    out.oracle_checked = true;
    ScanOptions options;
    options.one_multiplicity = cert.one_multiplicity;
    const IncidenceScan scan = root_scan(tuple, options);
    bool agree = scan.candidates.empty() == cert.residual.is_constant();
    const auto coeffs = cert.residual.to_complex();
    for (const auto& c : scan.candidates) {
      double scale = 0.0;
      Complex p = 1.0;
      for (const auto& a : coeffs) {
        scale += std::abs(a) * std::abs(p);
        p *= c.z;
      }
      if (std::abs(evaluate(coeffs, c.z)) > 1e-6 * scale) agree = false;
    }
    if (!agree) {
      out.disagreement = json{{"certificate", json::parse(to_record(cert))}, {"scan", scan_json(scan)}};
    }
  }
  out.record = to_record(cert);
  return out;
}

struct Checkpoint {
  std::uint64_t next_index = 0;
  std::uint64_t store_offset = 0;
  SearchSummary summary;
};

void write_checkpoint(const std::string& path, const SearchConfig& config, const Checkpoint& ck) {
  json j;
  j["config"] = config_json(config);
  j["next_index"] = ck.next_index;
  j["store_offset"] = ck.store_offset;
  j["summary"] = json::parse(ck.summary.to_json());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << j.dump() << "\n";
    out.flush();
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
  }
  fs::rename(tmp, path);
}

Checkpoint read_checkpoint(const std::string& path, const SearchConfig& config) {
  std::ifstream in(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidInput("unreadable checkpoint " + path);
  }
  if (j.at("config") != config_json(config)) {
    throw InvalidInput("checkpoint " + path + " was written for a different configuration");
  }
  Checkpoint ck;
  ck.next_index = j.at("next_index").get<std::uint64_t>();
  ck.store_offset = j.at("store_offset").get<std::uint64_t>();
  const json& s = j.at("summary");
  ck.summary.tuples_examined = s.at("tuples_examined").get<std::uint64_t>();
  ck.summary.anomalous_found = s.at("anomalous_found").get<std::uint64_t>();
  ck.summary.oracle_checks = s.at("oracle_checks").get<std::uint64_t>();
  ck.summary.elapsed_seconds = s.at("elapsed_seconds").get<double>();
  for (const auto& [k, v] : s.at("one_multiplicity_histogram").items()) {
    ck.summary.one_multiplicity_histogram[std::stoll(k)] = v.get<std::uint64_t>();
  }
  if (!s.at("cursor").is_null()) ck.summary.cursor = s.at("cursor").get<std::vector<std::int64_t>>();
  return ck;
}

std::vector<Outcome> process_batch(const std::vector<Item>& batch, const SearchConfig& config) {
  std::vector<Outcome> out(batch.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < batch.size(); i = next++) {
      try {
        out[i] = process(batch[i], config.oracle_rate);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(config.workers, batch.size()));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace

SearchSummary run(const SearchConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const std::string ckpt_path = config.output + ".ckpt";

  Checkpoint ck;
  const bool resuming = config.resume && fs::exists(ckpt_path) && fs::exists(config.output);
  if (resuming) {
    ck = read_checkpoint(ckpt_path, config);
    // Drop anything appended after the last completed batch.
    if (fs::file_size(config.output) < ck.store_offset) {
      throw InvalidInput("store " + config.output + " is shorter than its checkpoint");
    }
    fs::resize_file(config.output, ck.store_offset);
  } else {
    std::ofstream out(config.output, std::ios::trunc | std::ios::binary);
    if (!out) throw InvalidInput("cannot write store " + config.output);
    json header = {{"record", "header"},
                   {"format", kStoreFormatName},
                   {"version", kStoreFormatVersion},
                   {"config", config_json(config)}};
    out << header.dump() << "\n";
    out.flush();
    ck.store_offset = static_cast<std::uint64_t>(out.tellp());
    write_checkpoint(ckpt_path, config, ck);
  }

  std::ofstream store(config.output, std::ios::app | std::ios::binary);
  if (!store) throw InvalidInput("cannot append to store " + config.output);
  SearchSummary summary = ck.summary;
  const double prior_seconds = summary.elapsed_seconds;
  std::uint64_t examined_here = 0;

  TupleEnumerator it(config.n, config.max_last_exponent);
  bool exhausted = false;
  while (!exhausted) {
    std::vector<Item> batch;
    std::uint64_t batch_end_index = ck.next_index;
    while (batch.size() < config.batch_size) {
      if (!it.next()) {
        exhausted = true;
        break;
      }
      if (it.index() < ck.next_index) continue;
      batch_end_index = it.index() + 1;
      if (it.index() % config.shard_count != config.shard_index) continue;
      batch.push_back({it.current(), it.index()});
    }
    bool halting = false;
    if (config.halt_after && examined_here + batch.size() >= *config.halt_after) {
      batch.resize(static_cast<std::size_t>(*config.halt_after - examined_here));
      halting = true;
    }

    std::vector<Outcome> outcomes = process_batch(batch, config);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      const Outcome& o = outcomes[i];
      if (o.disagreement) {
        const std::string dump = config.output + ".disagreement.json";
        std::ofstream(dump) << o.disagreement->dump(2) << "\n";
        throw TheoremViolation("oracle disagrees with the exact verdict for " +
                               ExponentTuple::make(batch[i].exponents).to_string() + "; see " + dump);
      }
      store << o.record << "\n";
      ++summary.tuples_examined;
      ++examined_here;
      if (o.anomalous) ++summary.anomalous_found;
      if (o.oracle_checked) ++summary.oracle_checks;
      ++summary.one_multiplicity_histogram[o.one_multiplicity];
      summary.cursor = batch[i].exponents;
    }
    store.flush();
    if (!store) throw std::runtime_error("write to store " + config.output + " failed");
    if (halting) {
      // Simulated kill: the records are on disk but the checkpoint is not.
      summary.elapsed_seconds =
          prior_seconds + std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      summary.completed = false;
      return summary;
    }
    ck.next_index = batch_end_index;
    ck.store_offset = fs::file_size(config.output);
    summary.elapsed_seconds =
        prior_seconds + std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ck.summary = summary;
    write_checkpoint(ckpt_path, config, ck);
  }
  summary.completed = true;
  return summary;
}

}  // namespace nplet
