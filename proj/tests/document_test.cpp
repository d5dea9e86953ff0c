#include <gtest/gtest.h>

#include "evidfuse/document.hpp"

namespace evidfuse::io {
namespace {

using nlohmann::json;

TEST(Document, ParsesCompositeKeysInAnyOrder) {
  const auto doc = parse_document(json::parse(R"({
    "frame": ["A", "B", "C"],
    "ordinals": [0, 1, 5],
    "bpas": [{"C,A": 0.4, "B": 0.6}]
  })"));
  const auto es = doc.to_evidence_set();
  EXPECT_EQ(es.frame().ordinal(2), 5.0);
  EXPECT_DOUBLE_EQ(es[0].mass("A,C"), 0.4);
}

TEST(Document, Rejections) {
  EXPECT_THROW(parse_document(json::parse("[1, 2]")), ValidationError);
  EXPECT_THROW(parse_document(json::parse(R"({"bpas": []})")), ValidationError);
  EXPECT_THROW(parse_document(json::parse(R"({"frame": "A"})")), ValidationError);
  EXPECT_THROW(parse_document(json::parse(R"({"frame": ["A", "A"]})")), ValidationError);
  EXPECT_THROW(parse_document(json::parse(R"({"frame": ["A"], "bpas": [{"A": "x"}]})")),
               ValidationError);
  EXPECT_THROW(parse_document(json::parse(R"({"frame": ["A", "B"], "bpas": []})")).to_evidence_set(),
               ValidationError);
  EXPECT_THROW(
      parse_document(json::parse(R"({"frame": ["A", "B"], "bpas": [{"A": 0.5}]})")).to_evidence_set(),
      ValidationError);
  EXPECT_THROW(
      parse_document(json::parse(R"({"frame": ["A", "B"], "bpas": [{"A,B": 0.5, "B,A": 0.5}]})"))
          .to_evidence_set(),
      ValidationError);
  EXPECT_THROW(load_document("/nonexistent/evidence.json"), ValidationError);
}

TEST(Document, LoadsShippedCorpus) {
  const auto es = load_document(std::string(EVIDFUSE_DATA_DIR) + "/example3.json").to_evidence_set();
  EXPECT_EQ(es.size(), 5u);
  EXPECT_EQ(es.frame().labels(), (std::vector<std::string>{"A", "B", "C"}));
}

TEST(Document, JsonRoundTrip) {
  const auto doc = load_document(std::string(EVIDFUSE_DATA_DIR) + "/example2.json");
  const auto again = parse_document(to_json(doc));
  EXPECT_EQ(again.to_evidence_set().bpas().size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(again.to_evidence_set()[i], doc.to_evidence_set()[i]);
  }
}

TEST(Report, JsonRoundTripForEveryRule) {
  const auto es = load_document(std::string(EVIDFUSE_DATA_DIR) + "/example3.json").to_evidence_set();
  for (auto name : kAllRules) {
    const auto report = fuse(es, RuleKind::of(name, MatrixKind::hausdorff, 2.0));
    const auto text = report_to_json(report).dump();
    EXPECT_EQ(report_from_json(es.frame(), json::parse(text)), report) << to_string(name);
  }
}

TEST(Report, FieldNames) {
  const auto es = load_document(std::string(EVIDFUSE_DATA_DIR) + "/example3.json").to_evidence_set();
  const auto j = report_to_json(fuse(es, RuleKind::dempster()));
  EXPECT_TRUE(j.at("weights").is_null());
  EXPECT_TRUE(j.at("averaged").is_null());
  EXPECT_EQ(j.at("rule").at("name"), "dempster");
  EXPECT_EQ(j.at("trace").size(), 4u);
  EXPECT_EQ(j.at("trace").at(0).at("prefix"), 2);
}

}  // namespace
}  // namespace evidfuse::io
