#include <gtest/gtest.h>

#include "json.hpp"
#include "nplet/certificate.hpp"
#include "nplet/errors.hpp"

using namespace nplet;

TEST(Record, RoundTrip) {
  RankCertificate c = decide(ExponentTuple::make({1, 2, 3, 5}));
  c.validation = R"({"note":"x"})";
  const auto back = from_record(to_record(c));
  EXPECT_EQ(back.tuple, c.tuple);
  EXPECT_EQ(back.gcd, c.gcd);
  EXPECT_EQ(back.residual, c.residual);
  EXPECT_EQ(back.one_multiplicity, c.one_multiplicity);
  EXPECT_EQ(back.minor_degrees, c.minor_degrees);
  EXPECT_EQ(back.anomalous, c.anomalous);
  EXPECT_EQ(back.classification, c.classification);
  EXPECT_EQ(nlohmann::json::parse(back.validation), nlohmann::json::parse(c.validation));
  EXPECT_EQ(to_record(back), to_record(c));
}

TEST(Record, AnomalousFieldsSurvive) {
  RankCertificate c{.tuple = ExponentTuple::make({1, 2, 3})};
  c.minor_degrees = {3, 3, 3, 2};
  c.gcd = DensePolynomial{1, 1};
  c.residual = DensePolynomial{1, 1};
  c.anomalous = true;
  c.classification = Classification::root_of_unity;
  c.witness_minpoly = DensePolynomial{1, 1};
  c.cyclotomic_orders = {2};
  c.root_moduli = {1.0};
  const auto back = from_record(to_record(c));
  EXPECT_EQ(back.witness_minpoly, c.witness_minpoly);
  EXPECT_EQ(back.cyclotomic_orders, c.cyclotomic_orders);
  EXPECT_EQ(back.root_moduli, c.root_moduli);
}

TEST(Record, MalformedRejected) {
  EXPECT_THROW(from_record("{}"), InvalidInput);
  EXPECT_THROW(from_record("not json"), InvalidInput);
  EXPECT_THROW(from_record(R"({"record":"header"})"), InvalidInput);
  auto j = nlohmann::json::parse(to_record(decide(ExponentTuple::make({1, 2, 3}))));
  j["n"] = 4;
  EXPECT_THROW(from_record(j.dump()), InvalidInput);
  j["n"] = 3;
  j["gcd"] = "1 + z";
  EXPECT_THROW(from_record(j.dump()), InvalidInput);
}

TEST(Canonical, TimingFieldDropped) {
  const auto a = canonical_record(R"({"b":[2,3],"elapsed_ms":1.5,"a":1})");
  const auto b = canonical_record(R"({"a":1,"elapsed_ms":99,"b":[2,3]})");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, R"({"a":1,"b":[2,3]})");
}

TEST(Canonical, HashMatchesReferenceDigest) {
  // sha256 of the canonical line plus newline, from an external tool.
  EXPECT_EQ(canonical_hash("{\"b\":[2,3],\"a\":1,\"elapsed_ms\":7}\n"),
            "06d1ac940bec12987f319657ce46130daa57ab2d831421ddb892eba6a4509692");
  EXPECT_EQ(canonical_hash(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Canonical, HashIgnoresTimingButNotContent) {
  const std::string a = to_record(decide(ExponentTuple::make({1, 2, 3}))) + "\n";
  auto j = nlohmann::json::parse(a);
  j["elapsed_ms"] = 12345.0;
  EXPECT_EQ(canonical_hash(a), canonical_hash(j.dump() + "\n"));
  j["one_multiplicity"] = 3;
  EXPECT_NE(canonical_hash(a), canonical_hash(j.dump() + "\n"));
}

TEST(Canonical, MissingFileRejected) {
  EXPECT_THROW(canonical_file_hash("/nonexistent/store.jsonl"), InvalidInput);
}
