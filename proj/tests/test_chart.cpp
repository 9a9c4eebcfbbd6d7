#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "reskernel/chart.hpp"
#include "reskernel/parser.hpp"
#include "support/test_util.hpp"

using namespace resk;

namespace {
const VarList XY{"x", "y"};

Polynomial P(const std::string& text, const VarList& vars) {
  return parse_polynomial(text, vars);
}

Ideal I(const std::vector<std::string>& texts, const VarList& vars) {
  std::vector<Polynomial> gens;
  for (const auto& t : texts) gens.push_back(P(t, vars));
  return Ideal(vars, std::move(gens));
}

const Chart& chart_named(const std::vector<Chart>& charts, const std::string& id_suffix) {
  for (const auto& c : charts)
    if (c.id.size() >= id_suffix.size() &&
        c.id.compare(c.id.size() - id_suffix.size(), id_suffix.size(), id_suffix) == 0)
      return c;
  throw std::runtime_error("no chart with id suffix " + id_suffix);
}
}  // namespace

TEST_CASE("fresh names avoid everything already used") {
  CHECK(fresh_name({"x", "y"}) == "z");
  CHECK(fresh_name({"x", "y", "z"}) == "w");
  CHECK(fresh_name({"x", "y", "z", "w", "v"}) == "u");
  // Exhausting the single letters rolls over to numbered names.
  std::vector<std::string> all;
  for (char c = 'a'; c <= 'z'; ++c) all.emplace_back(1, c);
  CHECK(fresh_name(all) == "z1");
}

TEST_CASE("origin blow-up of the plane produces the two standard patches") {
  Chart root = make_root_chart(XY);
  std::vector<Chart> charts = blow_up_charts(root, Center{{"x", "y"}});
  REQUIRE(charts.size() == 2);

  const Chart& xc = chart_named(charts, "/x-chart");
  CHECK(xc.id == "root/x-chart");
  CHECK(xc.variables == VarList{"x", "z"});
  CHECK(xc.birth_variable == "x");
  CHECK(xc.depth == 1);
  REQUIRE(xc.exceptional.size() == 1);
  CHECK(xc.exceptional[0] == std::pair<std::string, int>("x", 1));
  // The map is (x, y) -> (x, x*z): y is rewritten, x is kept.
  std::vector<Polynomial> images = substitution_images(root, xc);
  REQUIRE(images.size() == 2);
  CHECK(images[0] == P("x", xc.variables));
  CHECK(images[1] == P("x*z", xc.variables));

  // The sibling patch has the mirrored structure x -> y * (fresh).
  const Chart& yc = chart_named(charts, "/y-chart");
  CHECK(yc.birth_variable == "y");
  REQUIRE(yc.birth_substitutions.size() == 1);
  CHECK(yc.birth_substitutions[0].replaced == "x");
  std::string fresh = yc.birth_substitutions[0].fresh;
  CHECK(fresh != "x");
  CHECK(fresh != "y");
  std::vector<Polynomial> yimages = substitution_images(root, yc);
  CHECK(yimages[0] == Polynomial::variable(yc.variables, fresh) *
                          Polynomial::variable(yc.variables, std::string("y")));
  CHECK(yimages[1] == Polynomial::variable(yc.variables, std::string("y")));

  // Exceptional variables are chart variables in every patch.
  for (const auto& c : charts)
    for (const auto& e : c.exceptional)
      CHECK(std::find(c.variables.begin(), c.variables.end(), e.first) != c.variables.end());
}

TEST_CASE("codimension-one centers change nothing but the divisor record") {
  Chart root = make_root_chart(XY);
  std::vector<Chart> charts = blow_up_charts(root, Center{{"x"}});
  REQUIRE(charts.size() == 1);
  const Chart& c = charts[0];
  CHECK(c.variables == XY);
  CHECK(c.birth_substitutions.empty());
  REQUIRE(c.exceptional.size() == 1);
  CHECK(c.exceptional[0].first == "x");
  CHECK(c.id == "root/x-chart");
  // The pullback is the identity.
  Ideal ideal = I({"x^2 - y"}, XY);
  CHECK(equal_ideals(total_transform(ideal, root, c), ideal));
}

TEST_CASE("fresh names skip letters already taken by chart variables") {
  Chart root = make_root_chart(VarList{"x", "z"});
  std::vector<Chart> charts = blow_up_charts(root, Center{{"x", "z"}});
  const Chart& xc = chart_named(charts, "/x-chart");
  // z is taken, so the replacement for z must be the next pool name.
  CHECK(xc.variables == VarList{"x", "w"});
}

TEST_CASE("exceptional divisors persist through later blow-ups with their birth stage") {
  Chart root = make_root_chart(XY);
  Chart first = blow_up_charts(root, Center{{"x", "y"}})[0];  // x-chart, vars (x, z)
  REQUIRE(first.variables == VarList{"x", "z"});
  std::vector<Chart> second = blow_up_charts(first, Center{{"x", "z"}});

  // In the z-chart, x is rewritten as z * w; the stage-1 divisor {x = 0}
  // continues as {w = 0} with its original birth stage.
  const Chart& zc = chart_named(second, "/z-chart");
  CHECK(zc.id == "root/x-chart/z-chart");
  CHECK(zc.variables == VarList{"w", "z"});
  REQUIRE(zc.exceptional.size() == 2);
  CHECK(zc.exceptional[0] == std::pair<std::string, int>("w", 1));
  CHECK(zc.exceptional[1] == std::pair<std::string, int>("z", 2));

  // In the x-chart, z is rewritten to a fresh non-exceptional variable; the
  // new exceptional divisor coincides with the persisting {x = 0} hyperplane,
  // so the record keeps the single entry with its original birth stage.
  const Chart& xc = chart_named(second, "/x-chart");
  CHECK(xc.variables == VarList{"x", "w"});
  REQUIRE(xc.exceptional.size() == 1);
  CHECK(xc.exceptional[0] == std::pair<std::string, int>("x", 1));
}

TEST_CASE("total transform pulls the ideal back through the chart map") {
  Chart root = make_root_chart(XY);
  Chart xc = chart_named(blow_up_charts(root, Center{{"x", "y"}}), "/x-chart");
  Ideal cusp = I({"y^2 - x^3"}, XY);
  Ideal total = total_transform(cusp, root, xc);
  CHECK(equal_ideals(total, I({"z^2*x^2 - x^3"}, xc.variables)));
  CHECK(total_transform(Ideal::unit(XY), root, xc).is_unit_ideal());

  // The crossing-curve stage: z^3*w^2*(z - w) pulled into the w-chart of the
  // center {z, w} becomes w^6*v^3*(v - 1).
  Chart zw_root = make_root_chart(VarList{"z", "w"});
  Chart wc = chart_named(blow_up_charts(zw_root, Center{{"z", "w"}}), "/w-chart");
  CHECK(wc.variables == VarList{"v", "w"});
  Ideal stage = I({"z^3*w^2*(z - w)"}, VarList{"z", "w"});
  CHECK(equal_ideals(total_transform(stage, zw_root, wc),
                     I({"v^3*w^6*(v - 1)"}, wc.variables)));
}

TEST_CASE("controlled transform divides by the full exceptional power") {
  Chart root = make_root_chart(XY);
  Chart xc = chart_named(blow_up_charts(root, Center{{"x", "y"}}), "/x-chart");

  MarkedIdeal cusp{I({"y^2 - x^3"}, XY), 2, {}};
  CHECK(equal_ideals(controlled_transform(cusp, root, xc), I({"z^2 - x"}, xc.variables)));

  MarkedIdeal cross{I({"x*y"}, XY), 2, {}};
  CHECK(equal_ideals(controlled_transform(cross, root, xc), I({"z"}, xc.variables)));

  // Codimension-one: the principal exceptional case leaves the unit ideal.
  Chart hyper = blow_up_charts(root, Center{{"x"}})[0];
  MarkedIdeal line{I({"x"}, XY), 1, {}};
  CHECK(controlled_transform(line, root, hyper).is_unit_ideal());

  // Inadmissible center: (x*y) does not vanish to order 2 along {x = 0}.
  CHECK_THROWS_AS(controlled_transform(cross, root, hyper), InadmissibleCenter);
}

TEST_CASE("strict transform saturates away the exceptional divisor") {
  Chart root = make_root_chart(XY);
  Chart xc = chart_named(blow_up_charts(root, Center{{"x", "y"}}), "/x-chart");

  CHECK(equal_ideals(strict_transform(I({"y^2 - x^3"}, XY), root, xc),
                     I({"z^2 - x"}, xc.variables)));
  // An ideal missing the center passes through unchanged.
  CHECK(equal_ideals(strict_transform(I({"x - 1"}, XY), root, xc),
                     I({"x - 1"}, xc.variables)));
  // (x^2*y) pulls back to x^3*z; saturation leaves the strict curve (z).
  CHECK(equal_ideals(strict_transform(I({"x^2*y"}, XY), root, xc), I({"z"}, xc.variables)));
}

TEST_CASE("transform inclusions and the exceptional-power identity") {
  Chart root = make_root_chart(XY);
  Chart xc = chart_named(blow_up_charts(root, Center{{"x", "y"}}), "/x-chart");
  std::vector<MarkedIdeal> cases{
      MarkedIdeal{I({"y^2 - x^3"}, XY), 2, {}},
      MarkedIdeal{I({"x*y"}, XY), 2, {}},
      MarkedIdeal{I({"x^2", "y^2"}, XY), 2, {}},
      MarkedIdeal{I({"x", "y"}, XY), 1, {}},
  };
  for (const auto& marked : cases) {
    REQUIRE(is_admissible_center(marked, Center{{"x", "y"}}));
    Ideal total = total_transform(marked.ideal, root, xc);
    Ideal controlled = controlled_transform(marked, root, xc);
    Ideal strict = strict_transform(marked.ideal, root, xc);

    // total = e^mark * controlled, generator by generator.
    Polynomial power =
        Polynomial::variable(xc.variables, std::string("x")).pow(marked.mark);
    REQUIRE(total.generators().size() == controlled.generators().size());
    for (std::size_t i = 0; i < total.generators().size(); ++i)
      CHECK(total.generators()[i] == power * controlled.generators()[i]);

    // Ideal inclusions total subset controlled subset strict.
    for (const auto& g : total.generators()) CHECK(controlled.contains(g));
    for (const auto& g : controlled.generators()) CHECK(strict.contains(g));
  }
}

TEST_CASE("admissibility requires the center to sit in the full-order locus") {
  MarkedIdeal cross{I({"x*y"}, XY), 2, {}};
  CHECK(is_admissible_center(cross, Center{{"x", "y"}}));
  CHECK(!is_admissible_center(cross, Center{{"x"}}));
  MarkedIdeal cusp{I({"y^2 - x^3"}, XY), 2, {}};
  CHECK(is_admissible_center(cusp, Center{{"x", "y"}}));
  CHECK(!is_admissible_center(cusp, Center{{"y"}}));  // locus needs x^2 too
}

TEST_CASE("coordinate changes rewrite the chart in place") {
  // Build the fourth-stage situation: chart (v, w) with both exceptional,
  // and translate v = u + 1 to move the residual point to the origin.
  Chart c;
  c.id = "root/x-chart/z-chart/w-chart";
  c.variables = VarList{"v", "w"};
  c.exceptional = {{"v", 3}, {"w", 2}};
  c.used_names = {"x", "y", "z", "w", "v"};
  c.depth = 3;

  SubstitutionRecord rec;
  rec.kind = SubstitutionRecord::Kind::Translation;
  rec.replaced = "v";
  rec.fresh = "u";
  rec.image = P("u + 1", VarList{"u", "w"});

  // Without permission the divisor record blocks the change.
  CHECK_THROWS_AS(apply_coordinate_change(c, rec), std::invalid_argument);

  ChangeResult out = apply_coordinate_change(c, rec, /*drop_exceptional_status=*/true);
  CHECK(out.chart.variables == VarList{"u", "w"});
  REQUIRE(out.chart.exceptional.size() == 1);
  CHECK(out.chart.exceptional[0].first == "w");
  REQUIRE(out.chart.coordinate_change_log.size() == 1);
  CHECK(out.chart.coordinate_change_log[0].replaced == "v");

  // v^3*w^6*(v - 1) becomes (u+1)^3 * w^6 * u.
  Ideal stage = I({"v^3*w^6*(v - 1)"}, c.variables);
  std::vector<Polynomial> gens;
  for (const auto& g : stage.generators()) gens.push_back(g.substitute(out.images));
  Ideal moved(out.chart.variables, gens);
  CHECK(equal_ideals(moved, I({"(u + 1)^3*w^6*u"}, out.chart.variables)));

  // A non-invertible image shape is rejected.
  SubstitutionRecord bad = rec;
  bad.fresh = "t";
  bad.image = P("t^2", VarList{"t", "w"});
  CHECK_THROWS_AS(apply_coordinate_change(c, bad, true), std::invalid_argument);
}
