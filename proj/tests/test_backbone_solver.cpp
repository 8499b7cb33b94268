#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "dsirrep/backbone_solver.hpp"
#include "dsirrep/io.hpp"

using namespace dsirrep;

namespace {

BackboneGraph fixture(const std::string &name) {
  return io::backbone_document_from_json(io::read_json_file(std::string(DSIRREP_FIXTURE_DIR) + "/" + name + ".json"))
      .graph;
}

std::size_t index_of(const BackboneGraph &g, const std::string &name) {
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.name(i) == name) return i;
  FAIL("no block named " << name);
  return 0;
}

std::multiset<std::string> labels(const std::vector<Component> &cs) {
  std::multiset<std::string> out;
  for (const auto &c : cs) out.insert(c.label());
  return out;
}

BackboneGraph mirrored(BackboneGraph g) {
  for (auto &b : g.blocks) b = b.mirrored();
  return g;
}

BackboneGraph permuted(const BackboneGraph &g, std::mt19937 &rng) {
  std::vector<std::size_t> perm(g.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  BackboneGraph out;
  out.blocks.resize(g.size());
  out.names.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    out.blocks[perm[i]] = g.blocks[i];
    out.names[perm[i]] = g.name(i);
  }
  for (const auto &e : g.edges) out.edges.push_back({perm[e.q], perm[e.p]});
  return out;
}

const char *kFixtures[] = {"canonical_a3", "canonical_b4", "diagonal_chain", "figure5a", "figure5b", "figure7",
                           "figure8",      "figure9",      "figure10",       "figure12", "figure13", "one_block"};

} // namespace

TEST_CASE("structural witnesses", "[solver]") {
  CHECK(structural_checks(fixture("one_block"))->kind == WitnessKind::OneBlock);
  CHECK(structural_checks(BackboneGraph{})->kind == WitnessKind::OneBlock);
  const auto f7 = structural_checks(fixture("figure7"));
  REQUIRE(f7);
  CHECK(f7->kind == WitnessKind::BoundaryViolation);
  CHECK(f7->blocks == std::vector<std::size_t>{index_of(fixture("figure7"), "1")});
  CHECK_FALSE(structural_checks(canonical_backbone({Family::TypeA, 3})));
  CHECK_FALSE(structural_checks(canonical_backbone({Family::TypeB, 6})));

  BackboneGraph far{{BlockLabel::from_twice(2, 2), BlockLabel::from_twice(0, 0)}, {{0, 1}}, {}};
  CHECK(structural_checks(far)->kind == WitnessKind::IncompatibleEdge);
  BackboneGraph lonely{{BlockLabel::from_twice(1, 1), BlockLabel::from_twice(0, 0), BlockLabel::from_twice(4, 0)},
                       {{0, 1}},
                       {}};
  CHECK(structural_checks(lonely)->kind == WitnessKind::IsolatedBlock);
  // (1,1/2) - (1/2,0): nothing reaches A = 0.
  CHECK(structural_checks(fixture("diagonal_chain"))->kind == WitnessKind::BoundaryViolation);
  // (1,1/2) - (1/2,0) - (0,1/2): the end block needs 4x = -1 and 2x = -1 at once.
  BackboneGraph dangling{{BlockLabel::from_twice(2, 1), BlockLabel::from_twice(1, 0), BlockLabel::from_twice(0, 1)},
                         {{0, 1}, {1, 2}},
                         {}};
  const auto w = structural_checks(dangling);
  REQUIRE(w);
  CHECK(w->kind == WitnessKind::DanglingEnd);
  CHECK(w->blocks.front() == 0);
}

TEST_CASE("unique non-monotonic paths", "[solver]") {
  const auto f3 = fixture("figure3");
  const auto paths = unique_nonmonotonic_paths(f3);
  const PathTriple p521{index_of(f3, "5"), index_of(f3, "2"), index_of(f3, "1")};
  CHECK(std::find(paths.begin(), paths.end(), p521) != paths.end());
  CHECK(unique_nonmonotonic_paths(canonical_backbone({Family::TypeB, 4})).empty());
  CHECK(unique_nonmonotonic_paths(canonical_backbone({Family::TypeA, 5})).empty());
  CHECK(unique_nonmonotonic_paths(fixture("figure6")).empty());
  const auto f8 = fixture("figure8");
  const auto p8 = unique_nonmonotonic_paths(f8);
  const PathTriple p621{index_of(f8, "6"), index_of(f8, "2"), index_of(f8, "1")};
  CHECK(std::find(p8.begin(), p8.end(), p621) != p8.end());
}

TEST_CASE("on-BD system", "[solver]") {
  const auto a2 = build_onbd_system(canonical_backbone({Family::TypeA, 2}));
  CHECK(a2.equations() == 4);
  CHECK(a2.unknowns() == 1);
  CHECK(a2.required_sign[0] == -1);
  const auto sa = solve_rational_linear(a2.a, a2.b);
  REQUIRE(std::holds_alternative<UniqueSolution>(sa));
  CHECK(std::get<UniqueSolution>(sa).x[0] == Rat(-1, 2));

  const auto b2 = build_onbd_system(canonical_backbone({Family::TypeB, 2}));
  CHECK(b2.required_sign[0] == 1);
  const auto sb = solve_rational_linear(b2.a, b2.b);
  REQUIRE(std::holds_alternative<UniqueSolution>(sb));
  CHECK(std::get<UniqueSolution>(sb).x[0] == Rat(1, 4));

  // (1/2,1/2) sees (1,1) only through a -- edge: -6x = -1 there, but 4x = -1 at (1,1).
  BackboneGraph g{{BlockLabel::from_twice(1, 1), BlockLabel::from_twice(2, 2)}, {{0, 1}}, {}};
  const auto s = build_onbd_system(g);
  CHECK(std::holds_alternative<Inconsistent>(solve_rational_linear(s.a, s.b)));
}

TEST_CASE("canonical chains solve to the closed-form products", "[solver][property]") {
  for (auto family : {Family::TypeA, Family::TypeB})
    for (int n = 2; n <= 8; ++n) {
      const CanonicalSpec spec{family, n};
      const auto out = solve_and_verify(canonical_backbone(spec));
      INFO("Type" << family_name(family) << " N=" << n);
      REQUIRE(out.verdict == Verdict::Valid);
      REQUIRE(out.x_values);
      for (int e = 1; e < n; ++e) {
        const Rat expect = (family == Family::TypeA ? -1 : 1) * canonical_t_squared(spec, e);
        CHECK((*out.x_values)[std::size_t(e - 1)] == expect);
        const auto [f, b] = canonical_t(spec, e);
        CHECK(std::abs((*out.t_values)[std::size_t(e - 1)].t_pq - f) < 1e-12);
        CHECK(std::abs((*out.t_values)[std::size_t(e - 1)].t_qp - b) < 1e-12);
      }
      REQUIRE(out.components.size() == 1);
      CHECK(out.components[0].spec->family == family);
      CHECK(out.components[0].spec->n == n);
      CHECK(out.max_cr_residual < 1e-10);
      CHECK(out.max_hermiticity_residual < 1e-10);
    }
}

TEST_CASE("TypeA N=3 t values", "[solver]") {
  const auto out = solve_and_verify(canonical_backbone({Family::TypeA, 3}));
  REQUIRE(out.verdict == Verdict::Valid);
  CHECK(std::abs((*out.t_values)[0].t_pq - 0.5) < 1e-12);
  CHECK(std::abs((*out.t_values)[1].t_pq - std::sqrt(5.0) / 2) < 1e-12);
}

TEST_CASE("figure fixtures", "[solver]") {
  SECTION("figure9 fixture is a reducible sum") {
    const auto out = solve_and_verify(fixture("figure9"));
    REQUIRE(out.verdict == Verdict::Valid);
    CHECK(labels(out.components) == std::multiset<std::string>{"TypeA N=3", "TypeB N=5"});
    CHECK(out.multiplicities.at(BlockLabel::from_twice(2, 2)) == 2);
  }
  SECTION("figure13 fixture has three components") {
    const auto out = solve_and_verify(fixture("figure13"));
    REQUIRE(out.verdict == Verdict::Valid);
    CHECK(labels(out.components) == std::multiset<std::string>{"TypeA N=3", "TypeB N=3", "TypeB N=5"});
  }
  SECTION("figures 5a and 5b") {
    const auto a = solve_and_verify(fixture("figure5a"));
    CHECK(a.verdict == Verdict::Valid);
    CHECK(labels(a.components) == std::multiset<std::string>{"TypeA N=2", "TypeB N=5"});
    const auto b = solve_and_verify(fixture("figure5b"));
    CHECK(b.verdict == Verdict::Valid);
    CHECK(labels(b.components) == std::multiset<std::string>{"TypeB N=4", "TypeB N=6"});
  }
  SECTION("invalid figures carry witnesses") {
    for (const char *name : {"figure7", "figure8", "figure10", "figure12", "one_block", "diagonal_chain"}) {
      INFO(name);
      const auto out = solve_and_verify(fixture(name));
      CHECK(out.verdict == Verdict::Invalid);
      CHECK(out.witness);
      CHECK_FALSE(out.t_values);
    }
    CHECK(solve_and_verify(fixture("figure8")).witness->kind == WitnessKind::UniqueNonmonotonicPath);
    CHECK(solve_and_verify(fixture("figure10")).witness->kind == WitnessKind::BoundaryViolation);
  }
}

TEST_CASE("two incompatible blocks", "[solver]") {
  BackboneGraph g{{BlockLabel::from_twice(1, 0), BlockLabel::from_twice(0, 0)}, {{0, 1}}, {}};
  const auto out = solve_and_verify(g);
  CHECK(out.verdict == Verdict::Invalid);
  CHECK(out.witness->kind == WitnessKind::IncompatibleEdge);
}

TEST_CASE("decompose partitions the blocks", "[solver][property]") {
  for (const char *name : kFixtures) {
    const auto g = fixture(name);
    std::vector<int> seen(g.size(), 0);
    for (const auto &c : decompose(g))
      for (auto i : c.blocks) ++seen[i];
    INFO(name);
    CHECK(std::all_of(seen.begin(), seen.end(), [](int k) { return k == 1; }));
  }
  CHECK(decompose(canonical_backbone({Family::TypeB, 3})).size() == 1);
  CHECK(decompose(fixture("figure10"))[0].label() == "non-canonical");
}

TEST_CASE("verdicts ignore block order and survive mirroring", "[solver][property]") {
  std::mt19937 rng(3);
  for (const char *name : kFixtures) {
    const auto g = fixture(name);
    const auto base = solve_and_verify(g);
    INFO(name);
    for (int k = 0; k < 3; ++k) {
      const auto p = solve_and_verify(permuted(g, rng));
      CHECK(p.verdict == base.verdict);
      CHECK(labels(p.components) == labels(base.components));
    }
    const auto m = solve_and_verify(mirrored(g));
    CHECK(m.verdict == base.verdict);
  }
}

// A duplicate-free cycle that is not a canonical chain still closes: the four
// couplings cancel around the loop and the result is a 16-dimensional irrep.
TEST_CASE("square of spinor blocks is a valid non-canonical backbone", "[solver]") {
  const BackboneGraph g{{BlockLabel::from_twice(0, 1), BlockLabel::from_twice(1, 0), BlockLabel::from_twice(1, 2),
                         BlockLabel::from_twice(2, 1)},
                        {{0, 1}, {0, 2}, {1, 3}, {2, 3}},
                        {}};
  const auto o = solve_and_verify(g);
  REQUIRE(o.verdict == Verdict::Valid);
  REQUIRE(o.x_values);
  CHECK(*o.x_values == std::vector<Rat>{Rat(9, 16), Rat(-5, 16), Rat(-5, 16), Rat(1, 16)});
  REQUIRE(o.components.size() == 1);
  CHECK(o.components[0].label() == "non-canonical");

  const auto gen = assemble(g, *o.t_values);
  const auto r = verify(gen);
  CHECK(r.ok());
  REQUIRE(r.casimir1_scalar);
  REQUIRE(r.casimir2_scalar);
  CHECK(r.casimir1_scalar->real() == Catch::Approx(-7.5));
  CHECK(r.casimir2_scalar->real() == Catch::Approx(-6.5625));
}
