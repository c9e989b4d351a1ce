#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "samo/csv.hpp"
#include "samo/errors.hpp"

namespace samo {
namespace {

TEST(Csv, FormatRoundTripsExactly) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::nextafter(1.0, 2.0)}) {
    EXPECT_EQ(csv::to_double(csv::format(v)), v);
  }
}

TEST(Csv, WriteReadRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "samo_csv_roundtrip.csv";
  csv::Table t{{"a", "b"}, {{"1", csv::format(0.1)}, {"2", csv::format(-3.5)}}};
  csv::write(path, t);
  const auto r = csv::read(path);
  EXPECT_EQ(r.header, t.header);
  EXPECT_EQ(r.rows, t.rows);
  EXPECT_EQ(r.column("b"), 1u);
  EXPECT_THROW(r.column("c"), IoError);
  std::filesystem::remove(path);
}

TEST(Csv, RejectsMalformedNumbers) {
  EXPECT_THROW(csv::to_double("1.5x"), IoError);
  EXPECT_THROW(csv::to_double(""), IoError);
}

}  // namespace
}  // namespace samo
