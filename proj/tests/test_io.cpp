#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "conebounds/io.hpp"
#include "support.hpp"

using namespace conebounds;
using namespace conebounds::io;
using namespace testsupport;

TEST(SectionJson, PolygonRoundTrip) {
  const Section s = section_from_json(parse_text(R"({"polygon": [[0,0],[1,0],[0,1]]})"));
  const auto& p = std::get<Polygon>(s);
  EXPECT_EQ(p.size(), 3u);
  EXPECT_EQ(section_to_json(s), parse_text(R"({"polygon": [[0.0,0.0],[1.0,0.0],[0.0,1.0]]})"));
  const Section back = section_from_json(section_to_json(s));
  EXPECT_DOUBLE_EQ(moments(back).M1, moments(s).M1);
}

TEST(SectionJson, DiscRoundTrip) {
  const Section s = load_section(R"(  {"disc": {"center": [0.5, -1], "radius": 2}})");
  const auto& d = std::get<Disc>(s);
  EXPECT_EQ(d.center, (Vec2{0.5, -1}));
  EXPECT_DOUBLE_EQ(d.radius, 2.0);
  EXPECT_EQ(std::get<Disc>(section_from_json(section_to_json(s))).radius, 2.0);
}

TEST(SectionJson, ParseErrors) {
  EXPECT_THROW(parse_text("{\"polygon\": [[0,0],"), ParseError);
  EXPECT_THROW(section_from_json(parse_text("[1, 2]")), ParseError);
  EXPECT_THROW(section_from_json(parse_text(R"({"polygon": [[0,0],[1],[0,1]]})")), ParseError);
  EXPECT_THROW(section_from_json(parse_text(R"({"polygon": [[0,0],[1,"a"],[0,1]]})")), ParseError);
  EXPECT_THROW(section_from_json(parse_text(R"({"disc": {"center": [0,0]}})")), ParseError);
  EXPECT_THROW(section_from_json(parse_text(R"({})")), ParseError);
  EXPECT_THROW(section_from_json(parse_text(R"({"polygon": [], "disc": {}})")), ParseError);
  EXPECT_THROW(load_section("/nonexistent/section.json"), ParseError);
}

TEST(SectionJson, GeometryErrorsPassThrough) {
  EXPECT_THROW(section_from_json(parse_text(R"({"polygon": [[0,0],[1,1],[1,0],[0,1]]})")), GeometryError);
  EXPECT_THROW(section_from_json(parse_text(R"({"disc": {"center": [0,0], "radius": -1}})")), GeometryError);
}

TEST(Format, SeventeenDigitsRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, std::numbers::pi, -2.5e-300, 1e22}) {
    const std::string s = format_number(v);
    EXPECT_EQ(std::stod(s), v);
  }
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
}

TEST(Lists, Parsing) {
  EXPECT_EQ(parse_list("1,0.5,2e-1", "--eps"), (std::vector<double>{1, 0.5, 0.2}));
  EXPECT_THROW(parse_list("1,x", "--eps"), ParseError);
  EXPECT_THROW(parse_list("1,2abc", "--eps"), ParseError);
  EXPECT_THROW(parse_list("", "--eps"), ParseError);
  const auto B = parse_field("0,-1,2.5");
  EXPECT_EQ(B.B2, -1.0);
  EXPECT_EQ(B.B3, 2.5);
  EXPECT_THROW(parse_field("1,2"), ParseError);
  EXPECT_EQ(parse_point("0.1,0.2", "--axis"), (Vec2{0.1, 0.2}));
  EXPECT_THROW(parse_point("0.1", "--axis"), ParseError);
}

TEST(RunConfig, RoundTrip) {
  RunConfig c;
  c.command = "sweep";
  c.subcommand = "bound";
  c.sectionInline = R"({"disc": {"center": [0,0], "radius": 1}})";
  c.field = MagneticField{0.1, 1.0 / 3.0, -2.0};
  c.eps = {1.0, 0.5, 0.1};
  c.axis = Vec2{0.25, -0.125};
  c.xMax = 7.0;
  c.nPoints = 300;
  c.strict = true;
  c.seed = 7;
  const RunConfig back = run_config_from_json(parse_text(to_json(c).dump()));
  EXPECT_TRUE(back == c);
  RunConfig d = back;
  d.n = 4;
  EXPECT_FALSE(d == c);
}

TEST(RunConfig, ValidationAndErrors) {
  RunConfig c;
  c.command = "bound";
  EXPECT_FALSE(c.has_section());
  EXPECT_THROW(c.section(), UsageError);
  c.sectionFile = "a.json";
  c.sectionInline = "{}";
  EXPECT_THROW(c.validate(), UsageError);
  c.sectionFile.reset();
  c.eps = {0.1, -1};
  EXPECT_THROW(c.validate(), UsageError);
  c.eps.clear();
  c.format = "xml";
  EXPECT_THROW(c.validate(), UsageError);
  EXPECT_THROW(run_config_from_json(parse_text(R"({"n": 3})")), ParseError);
  EXPECT_THROW(run_config_from_json(parse_text(R"({"command": "bound", "field": [1, 2]})")), ParseError);
}

TEST(PlotData, Examples) {
  const json report = parse_text(R"({"parameter": "eps", "rows": [
      {"eps": 1.0, "e": 0.5, "bound1": 1.5},
      {"eps": 0.5, "e": 0.25, "bound1": 0.75}]})");
  EXPECT_EQ(emit_plot_data(report, "e"), "eps,e\n1,0.5\n0.5,0.25\n");
  EXPECT_EQ(sweep_csv(report), "eps,bound1,e\n1,1.5,0.5\n0.5,0.75,0.25\n");
  EXPECT_THROW(emit_plot_data(report, "nope"), UsageError);
  EXPECT_THROW(emit_plot_data(parse_text(R"({"parameter": "eps", "rows": []})"), "e"), UsageError);
  EXPECT_THROW(sweep_csv(parse_text("{}")), UsageError);
}

TEST(ResultJson, BoundShape) {
  const auto r = rayleigh_upper_bounds({0, 0, 1}, moments(Section{unit_disc()}), 2);
  const json j = to_json(r);
  EXPECT_DOUBLE_EQ(j.at("e").get<double>(), r.eConstant);
  EXPECT_EQ(j.at("bounds").size(), 2u);
  EXPECT_EQ(j.at("bounds")[1][0].get<int>(), 2);
  EXPECT_EQ(j.at("gauge").size(), 2u);
}
