#include "nplet/certificate.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "json.hpp"
#include "nplet/errors.hpp"

namespace nplet {

using nlohmann::json;

namespace {

DensePolynomial poly_field(const json& j, const char* key) {
  return parse_polynomial(j.at(key).get<std::string>()).to_dense();
}

}  // namespace

std::string to_record(const RankCertificate& cert) {
  json j;
  j["record"] = "certificate";
  j["n"] = cert.tuple.n();
  j["exponents"] = std::vector<std::int64_t>(cert.tuple.exponents().begin(),
                                             cert.tuple.exponents().end());
  j["minor_degrees"] = cert.minor_degrees;
  j["gcd"] = to_text(cert.gcd);
  j["one_multiplicity"] = cert.one_multiplicity;
  j["residual"] = to_text(cert.residual);
  j["anomalous"] = cert.anomalous;
  j["classification"] = to_string(cert.classification);
  if (cert.witness_minpoly) j["witness_minpoly"] = to_text(*cert.witness_minpoly);
  if (!cert.cyclotomic_orders.empty()) j["cyclotomic_orders"] = cert.cyclotomic_orders;
  if (!cert.root_moduli.empty()) j["root_moduli"] = cert.root_moduli;
  if (!cert.validation.empty()) j["validation"] = json::parse(cert.validation);
  j[std::string(kTimingField)] = cert.elapsed_ms;
  return j.dump();
}

RankCertificate from_record(std::string_view line) {
  try {
    const json j = json::parse(line);
    if (j.value("record", "") != "certificate") throw InvalidInput("not a certificate record");
    auto exps = j.at("exponents").get<std::vector<std::int64_t>>();
    if (j.at("n").get<std::size_t>() != exps.size()) throw InvalidInput("n does not match exponents");
    RankCertificate cert{.tuple = ExponentTuple::make(std::move(exps))};
    cert.minor_degrees = j.at("minor_degrees").get<std::vector<std::int64_t>>();
    cert.gcd = poly_field(j, "gcd");
    cert.one_multiplicity = j.at("one_multiplicity").get<std::int64_t>();
    cert.residual = poly_field(j, "residual");
    cert.anomalous = j.at("anomalous").get<bool>();
    cert.classification = classification_from_string(j.at("classification").get<std::string>());
    if (j.contains("witness_minpoly")) cert.witness_minpoly = poly_field(j, "witness_minpoly");
    if (j.contains("cyclotomic_orders")) {
      cert.cyclotomic_orders = j.at("cyclotomic_orders").get<std::vector<std::uint64_t>>();
    }
    if (j.contains("root_moduli")) cert.root_moduli = j.at("root_moduli").get<std::vector<double>>();
    if (j.contains("validation")) cert.validation = j.at("validation").dump();
    cert.elapsed_ms = j.value(std::string(kTimingField), 0.0);
    return cert;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed certificate record: ") + e.what());
  }
}

std::string canonical_record(std::string_view line) {
  json j = json::parse(line);
  j.erase(std::string(kTimingField));
  return j.dump();
}

std::string canonical_hash(std::string_view store_contents) {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::size_t pos = 0;
  while (pos < store_contents.size()) {
    std::size_t end = store_contents.find('\n', pos);
    if (end == std::string_view::npos) end = store_contents.size();
    const std::string_view line = store_contents.substr(pos, end - pos);
    if (!line.empty()) {
      const std::string canon = canonical_record(line) + "\n";
      EVP_DigestUpdate(ctx, canon.data(), canon.size());
    }
    pos = end + 1;
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

std::string canonical_file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open store " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return canonical_hash(buf.str());
}

}  // namespace nplet
