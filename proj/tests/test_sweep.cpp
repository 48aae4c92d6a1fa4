#include <doctest.h>

#include <cmath>

#include "quditdecay/errors.hpp"
#include "quditdecay/sweep.hpp"

using namespace qd;

namespace {

bool cells_identical(const SweepTable& a, const SweepTable& b) {
  if (a.columns != b.columns || a.rows.size() != b.rows.size()) return false;
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    if (a.rows[r].size() != b.rows[r].size()) return false;
    for (std::size_t c = 0; c < a.rows[r].size(); ++c) {
      const Cell& x = a.rows[r][c];
      const Cell& y = b.rows[r][c];
      if (x.type != y.type || x.text != y.text) return false;
      if (x.type == Cell::Type::Number &&
          std::memcmp(&x.num, &y.num, sizeof(double)) != 0) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("balanced sweep") {
  SweepRequest req;
  req.d_values = {2, 3, 4};
  req.N_values = {4, 6};
  req.quantity = Quantity::PBalanced;
  const SweepTable table = run_sweep(req);

  CHECK(table.columns ==
        std::vector<std::string>{"d", "N", "value", "method", "warning"});
  REQUIRE(table.rows.size() == 6);
  CHECK(table.provenance.find("quditdecay") != std::string::npos);

  // lexicographic (d, N) order
  CHECK(table.rows[0][0].num == 2);
  CHECK(table.rows[0][1].num == 4);
  CHECK(table.rows[1][1].num == 6);
  CHECK(table.rows[2][0].num == 3);

  for (const auto& row : table.rows) {
    CHECK(row[3].text == "closed-form");
    CHECK(row[4].text.empty());
  }
  // grows with N at fixed d and with d at fixed N
  CHECK(table.rows[1][2].num > table.rows[0][2].num);
  CHECK(table.rows[2][2].num > table.rows[0][2].num);

  SUBCASE("bit-identical rerun") {
    CHECK(cells_identical(table, run_sweep(req)));
  }

  SUBCASE("unordered grids are normalized to lexicographic order") {
    SweepRequest shuffled = req;
    shuffled.d_values = {4, 2, 3, 2};
    shuffled.N_values = {6, 4};
    CHECK(cells_identical(table, run_sweep(shuffled)));
  }

  SUBCASE("odd N degrades to a row warning") {
    SweepRequest odd = req;
    odd.N_values = {4, 5};
    const SweepTable t = run_sweep(odd);
    REQUIRE(t.rows.size() == 6);
    CHECK(t.rows[1][2].type == Cell::Type::Empty);
    CHECK(t.rows[1][4].text.find("even") != std::string::npos);
    CHECK(t.rows[0][2].type == Cell::Type::Number);
  }
}

TEST_CASE("least-balanced and epsilon sweeps") {
  SweepRequest req;
  req.d_values = {2, 3};
  req.N_values = {4, 6};

  SUBCASE("least balanced uses bisection and follows the trends") {
    req.quantity = Quantity::PLeastBalanced;
    const SweepTable t = run_sweep(req);
    REQUIRE(t.rows.size() == 4);
    for (const auto& row : t.rows) CHECK(row[3].text == "bisection");
    CHECK(t.rows[1][2].num < t.rows[0][2].num);  // decreases with N
    CHECK(t.rows[2][2].num > t.rows[0][2].num);  // grows with d
  }

  SUBCASE("epsilon threshold trends") {
    req.quantity = Quantity::PEpsilon;
    req.epsilon = 0.01;
    const SweepTable t = run_sweep(req);
    REQUIRE(t.rows.size() == 4);
    CHECK(t.rows[1][2].num < t.rows[0][2].num);
    CHECK(t.rows[2][2].num > t.rows[0][2].num);
  }

  SUBCASE("epsilon validation") {
    req.quantity = Quantity::PEpsilon;
    req.epsilon = 1.5;
    CHECK_THROWS_AS(run_sweep(req), Error);
  }

  SUBCASE("empty grids are rejected") {
    SweepRequest empty;
    empty.quantity = Quantity::PBalanced;
    CHECK_THROWS_AS(run_sweep(empty), Error);
  }
}

TEST_CASE("negativity curve sweep") {
  SweepRequest req;
  req.d_values = {3};
  req.N_values = {4};
  req.quantity = Quantity::NegativityCurve;
  req.p_grid = {0.0, 0.25, 0.5};
  const SweepTable t = run_sweep(req);

  CHECK(t.columns == std::vector<std::string>{"d", "N", "p", "n", "value",
                                              "method", "warning"});
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[0][3].num == 2);  // default n = N/2
  CHECK(t.rows[0][4].num == doctest::Approx(1.0).epsilon(1e-14));
  const auto expected =
      negativity(GhzState::equal(3, 4), ChannelKind::Depolarizing, 0.25, 2);
  CHECK(t.rows[1][4].num == expected.value(2));

  SUBCASE("p grid required and validated") {
    req.p_grid.clear();
    CHECK_THROWS_AS(run_sweep(req), Error);
    req.p_grid = {1.2};
    CHECK_THROWS_AS(run_sweep(req), Error);
  }
}

TEST_CASE("explicit amplitudes and product-state rows") {
  SweepRequest req;
  req.d_values = {2};
  req.N_values = {4};
  req.quantity = Quantity::PBalanced;
  req.policy = AmplitudePolicy::Explicit;
  req.explicit_alphas[2] = {Cx{1.0, 0.0}, Cx{0.0, 0.0}};
  const SweepTable t = run_sweep(req);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0][2].type == Cell::Type::Empty);
  CHECK(t.rows[0][4].text.find("product state") != std::string::npos);
}

TEST_CASE("verification harness") {
  SUBCASE("small default-style suite passes") {
    VerifyRequest req;
    req.d_values = {2};
    req.N_values = {2, 3};
    req.random_vectors = 2;
    req.p_grid = {0.0, 0.3, 1.0};
    const VerifyReport report = verify(req);
    CHECK(report.all_pass);
    CHECK(report.max_deviation <= kVerifyTol);
    // 2 N values x 2 kinds x (1 equal + 2 random)
    REQUIRE(report.table.rows.size() == 12);
    for (const auto& row : report.table.rows) {
      CHECK(row[7].text == "pass");
      CHECK(row[5].num == kVerifyTol);
    }
  }

  SUBCASE("over-cap instances are skipped, not failed") {
    VerifyRequest req;
    req.d_values = {2};
    req.N_values = {13};
    req.random_vectors = 0;
    req.p_grid = {0.5};
    const VerifyReport report = verify(req);
    CHECK(report.all_pass);
    REQUIRE(report.table.rows.size() == 2);
    for (const auto& row : report.table.rows) {
      CHECK(row[7].text == "skipped");
      CHECK(row[8].text.find("cap") != std::string::npos);
    }
  }

  SUBCASE("seeded instances are reproducible") {
    VerifyRequest req;
    req.d_values = {3};
    req.N_values = {2};
    req.random_vectors = 3;
    req.p_grid = {0.2};
    const VerifyReport a = verify(req);
    const VerifyReport b = verify(req);
    REQUIRE(a.table.rows.size() == b.table.rows.size());
    for (std::size_t r = 0; r < a.table.rows.size(); ++r) {
      CHECK(a.table.rows[r][4].num == b.table.rows[r][4].num);
    }
  }
}

TEST_CASE("asymptote report") {
  const SweepTable t = asymptote_report({2}, {4, 64}, 0.01);
  REQUIRE(t.rows.size() == 2);
  REQUIRE(t.columns.size() == 11);
  // balanced deviation shrinks as N grows
  CHECK(t.rows[1][4].num < t.rows[0][4].num);
  // scaling estimate column matches the formula
  CHECK(t.rows[0][6].num ==
        doctest::Approx(epsilon_scaling_estimate(4, 0.01)).epsilon(1e-15));
  for (const auto& row : t.rows) CHECK(row[10].text.empty());

  CHECK_THROWS_AS(asymptote_report({}, {4}, 0.01), Error);
  CHECK_THROWS_AS(asymptote_report({2}, {4}, 0.0), Error);
}
