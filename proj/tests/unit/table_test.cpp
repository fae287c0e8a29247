#include "qdrive/table.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "qdrive/errors.hpp"

namespace qdrive {
namespace {

Table sample() {
  Table t({"mean_n", "gt", "region"});
  t.add_row({1.0, 0.1, std::string("white")});
  t.add_row({100.0, 1.0 / 3.0, std::string("grey")});
  t.add_row({std::numeric_limits<double>::quiet_NaN(), -2.5e-300,
             std::string("invalid")});
  return t;
}

TEST(FormatNumber, ShortestAndExact) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(0.1, true), "0.10000000000000001");
  EXPECT_EQ(format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
}

TEST(Csv, Layout) {
  EXPECT_EQ(to_csv(sample()),
            "mean_n,gt,region\n"
            "1,0.1,white\n"
            "100,0.3333333333333333,grey\n"
            "nan,-2.5e-300,invalid\n");
}

TEST(Csv, ReemitIsByteIdentical) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  Table t({"a", "b", "label"});
  for (int i = 0; i < 500; ++i) {
    t.add_row({u(rng), std::ldexp(u(rng), i % 200 - 100),
               std::string(i % 3 ? "black" : "needs, quoting")});
  }
  for (bool exact : {false, true}) {
    const std::string first = to_csv(t, exact);
    const std::string second = to_csv(parse_csv(first), exact);
    EXPECT_EQ(first, second);
  }
}

TEST(Csv, ParseErrors) {
  EXPECT_THROW(parse_csv(""), UsageError);
  EXPECT_THROW(parse_csv("a,b\n1\n"), UsageError);
  EXPECT_THROW(parse_csv("a\n\"open\n"), UsageError);
}

TEST(Json, Layout) {
  Table t({"x", "tag"});
  t.add_row({0.5, std::string("a\"b")});
  t.add_row({std::numeric_limits<double>::quiet_NaN(), std::string("c")});
  t.summary().push_back({"min", 0.25});
  t.add_failed_cells(1);
  EXPECT_EQ(to_json(t),
            "{\"columns\":[\"x\",\"tag\"],\"rows\":[\n"
            "[0.5,\"a\\\"b\"],\n"
            "[null,\"c\"]],\n"
            "\"summary\":{\"min\":0.25},\"failed_cells\":1}\n");
}

TEST(TableFormat, Parse) {
  EXPECT_EQ(parse_table_format("csv"), TableFormat::Csv);
  EXPECT_EQ(parse_table_format("json"), TableFormat::Json);
  EXPECT_THROW(parse_table_format("xml"), UsageError);
}

TEST(Table, RowWidthChecked) {
  Table t({"a", "b"});
  EXPECT_THROW(t.add_row({1.0}), DomainError);
  EXPECT_EQ(t.column_index("b"), 1u);
  EXPECT_THROW(t.column_index("z"), DomainError);
}

TEST(Files, UnwritablePathIsIoError) {
  EXPECT_THROW(write_text_file("/nonexistent-dir/x.csv", "a"), IoError);
  EXPECT_THROW(read_text_file("/nonexistent-dir/x.csv"), IoError);
}

}  // namespace
}  // namespace qdrive
