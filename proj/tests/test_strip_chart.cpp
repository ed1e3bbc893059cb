#include <gtest/gtest.h>

#include "molekul/strip_chart.hpp"
#include "oracles.hpp"

using namespace molekul;

TEST(StripChart, ClassificationMatchesOracle) {
  for (std::vector<std::int64_t> gens : {std::vector<std::int64_t>{2, 21}, {6, 9, 20}, {5, 6, 7, 8, 9}, {2, 3}}) {
    auto row = classify_strip(NumericalSemigroup::from_generators(gens), 50);
    ASSERT_EQ(row.points.size(), 50u);
    for (std::int64_t x = 1; x <= 50; ++x) {
      auto zs = oracle::factorizations(gens, x).size();
      bool atom = std::find(gens.begin(), gens.end(), x) != gens.end();
      PointClass expected = zs == 0 ? PointClass::gap
                            : atom  ? PointClass::atom
                            : zs == 1 ? PointClass::molecule_non_atom
                                      : PointClass::non_molecule;
      EXPECT_EQ(row.points[static_cast<std::size_t>(x - 1)], expected) << row.label << " " << x;
    }
  }
}

TEST(StripChart, Naturals) {
  auto row = classify_strip(NumericalSemigroup::from_generators({1}), 5);
  EXPECT_EQ(row.points[0], PointClass::atom);
  for (std::size_t i = 1; i < 5; ++i) EXPECT_EQ(row.points[i], PointClass::molecule_non_atom);
}

TEST(StripChart, SvgIsDeterministic) {
  std::vector<StripRow> rows{classify_strip(NumericalSemigroup::from_generators({2, 3}), 10)};
  auto a = strip_svg(rows);
  EXPECT_EQ(a, strip_svg(rows));
  EXPECT_NE(a.find("<svg"), std::string::npos);
  EXPECT_NE(a.find("&lt;2,3&gt;"), std::string::npos);
  EXPECT_NE(a.find("class=\"gap\" cx=\"126\""), std::string::npos);
  EXPECT_NE(a.find("class=\"atom\" cx=\"138\""), std::string::npos);
  StripColors colors;
  colors.atom = "#00ff00";
  EXPECT_NE(strip_svg(rows, colors).find("#00ff00"), std::string::npos);
}

TEST(StripChart, EmptyChart) {
  auto svg = strip_svg({});
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_THROW(classify_strip(NumericalSemigroup::from_generators({2, 3}), 0), Error);
  EXPECT_THROW(write_strip_svg({}, "/nonexistent-dir/x.svg"), Error);
}
