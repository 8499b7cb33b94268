#include <catch_amalgamated.hpp>

#include <algorithm>

#include "dsirrep/coupling.hpp"
#include "dsirrep/representation.hpp"
#include "dsirrep/verifier.hpp"

using namespace dsirrep;

namespace {

// Relations with exactly one V factor hold for any t; the ones with two do not.
double single_v_residual(const GeneratorSet &g) {
  double w = 0.0;
  for (const auto &r : check_all_crs(g))
    if (std::count(r.name.begin(), r.name.end(), 'V') == 1) w = std::max(w, r.residual);
  return w;
}

BlockLabel shifted(const BlockLabel &base, PairCase c) {
  return BlockLabel::from_twice(base.A.twice() + c.sa, base.B.twice() + c.sb);
}

} // namespace

TEST_CASE("compatibility needs a half step in both labels", "[coupling]") {
  const auto c = compatibility(BlockLabel::from_twice(1, 0), BlockLabel::from_twice(0, 1));
  REQUIRE(c);
  CHECK(c->name() == "+-");
  CHECK(c->slope() == -1);
  CHECK(c->reversed().name() == "-+");
  CHECK(compatibility(BlockLabel::from_twice(1, 1), BlockLabel::from_twice(0, 0))->name() == "++");
  CHECK_FALSE(compatibility(BlockLabel::from_twice(2, 0), BlockLabel::from_twice(0, 0)));
  CHECK_FALSE(compatibility(BlockLabel::from_twice(1, 1), BlockLabel::from_twice(1, 1)));
  CHECK_FALSE(compatibility(BlockLabel::from_twice(3, 0), BlockLabel::from_twice(0, 1)));
  CHECK_THROWS_AS(u_blocks(BlockLabel::from_twice(2, 2), BlockLabel::from_twice(0, 0)), DomainError);
}

TEST_CASE("sign rule between t_PQ and t_QP", "[coupling]") {
  CHECK(t_sign_relation({1, 1}) == -1);
  CHECK(t_sign_relation({-1, -1}) == -1);
  CHECK(t_sign_relation({1, -1}) == 1);
  CHECK(t_sign_relation({-1, 1}) == 1);
}

TEST_CASE("coupling blocks have the right shapes and swap consistently", "[coupling]") {
  const BlockLabel p = BlockLabel::from_twice(3, 1), q = BlockLabel::from_twice(2, 2);
  const auto u = u_blocks(p, q);
  CHECK(u.u_plus_pq.rows() == 8);
  CHECK(u.u_plus_pq.cols() == 9);
  CHECK(u.w_minus_qp.rows() == 9);
  const auto v = u_blocks(q, p);
  const auto s = u.swapped();
  CHECK(max_abs(v.u_plus_pq - s.u_plus_pq) < 1e-15);
  CHECK(max_abs(v.w_minus_qp - s.w_minus_qp) < 1e-15);
  CHECK(max_abs(v.u_minus_qp - s.u_minus_qp) < 1e-15);
}

TEST_CASE("single-V relations hold on every compatible pair for arbitrary t", "[coupling][property]") {
  for (int a2 = 0; a2 <= 3; ++a2)
    for (int b2 = 0; b2 <= 3; ++b2)
      for (const auto c : kAllCases) {
        const BlockLabel q = BlockLabel::from_twice(a2, b2);
        if (a2 + c.sa < 0 || b2 + c.sb < 0) continue;
        const BlockLabel p = shifted(q, c);
        BackboneGraph g{{p, q}, {{0, 1}}, {}};
        for (const auto t : {EdgeCoupling{0.7, -1.3}, EdgeCoupling{2.0, 0.25}}) {
          INFO(p.to_string() << " " << q.to_string());
          CHECK(single_v_residual(assemble(g, {t}, Algebra::dS, SignPolicy::Allow)) < 1e-12);
        }
      }
}

TEST_CASE("diagonal contribution of one neighbour matches the linear Z form", "[coupling][property]") {
  for (int a2 = 0; a2 <= 3; ++a2)
    for (int b2 = 0; b2 <= 3; ++b2)
      for (const auto c : kAllCases) {
        const BlockLabel j = BlockLabel::from_twice(a2, b2);
        if (a2 + c.sa < 0 || b2 + c.sb < 0) continue;
        const BlockLabel i = shifted(j, c); // c is the case of I relative to J
        const double tij = 0.8, tji = t_sign_relation(c) * tij;
        const auto g = assemble(BackboneGraph{{i, j}, {{0, 1}}, {}}, {{tij, tji}}, Algebra::dS, SignPolicy::Allow);
        const CMatrix vxy = kI * commutator(g.v[0], g.v[1]);
        const CMatrix vtz = commutator(g.vt, g.v[2]);
        const auto z = z_linear(c, i.A, i.B);
        const IndexMap map(i);
        for (int k = 0; k < map.size(); ++k) {
          const auto [a, b] = map.weights(k);
          const double x = tij * tji;
          const double expect_xy = x * to_double(z.coef_b * b.to_rat() + z.coef_a * a.to_rat());
          const double expect_tz = x * to_double(z.coef_b * b.to_rat() - z.coef_a * a.to_rat());
          INFO(c.name() << " I=" << i.to_string() << " (a,b)=(" << a << "," << b << ")");
          CHECK(std::abs(vxy(k, k) - expect_xy) < 1e-12);
          CHECK(std::abs(vtz(k, k) - expect_tz) < 1e-12);
        }
      }
}

TEST_CASE("linear Z values for the four cases", "[coupling]") {
  const HalfInt A = half(3), B = half(1);
  CHECK(z_linear({1, 1}, A, B) == ZLinear{Rat(2), Rat(6)});
  CHECK(z_linear({-1, -1}, A, B) == ZLinear{Rat(-6), Rat(-10)});
  CHECK(z_linear({1, -1}, A, B) == ZLinear{Rat(-6), Rat(6)});
  CHECK(z_linear({-1, 1}, A, B) == ZLinear{Rat(2), Rat(-10)});
}

TEST_CASE("three-block path entries match the exact table", "[coupling][property]") {
  for (const auto first : kAllCases)
    for (const auto second : kAllCases)
      for (int a2 = 0; a2 <= 3; ++a2)
        for (int b2 = 0; b2 <= 3; ++b2) {
          const BlockLabel i = BlockLabel::from_twice(a2, b2);
          const int ka = a2 - first.sa, kb = b2 - first.sb;
          const int ja = ka - second.sa, jb = kb - second.sb;
          if (ka < 0 || kb < 0 || ja < 0 || jb < 0) continue;
          const BlockLabel k = BlockLabel::from_twice(ka, kb), j = BlockLabel::from_twice(ja, jb);
          const auto g = assemble(BackboneGraph{{i, k, j}, {{0, 1}, {1, 2}}, {}}, {{1.0, 1.0}, {1.0, 1.0}},
                                  Algebra::dS, SignPolicy::Allow);
          const CMatrix full = kI * commutator(g.v[0], g.v[1]);
          const int di = block_dim(i), dk = block_dim(k), dj = block_dim(j);
          const CMatrix blk = full.block(0, di + dk, di, dj);
          const IndexMap map(i);
          for (int r = 0; r < di; ++r) {
            const auto [a, b] = map.weights(r);
            const Complex sum = blk.row(r).sum();
            const double expect = z_path(first, second, i.A, i.B, a, b).value();
            INFO(first.name() << second.name() << " I=" << i.to_string() << " row " << r);
            CHECK(std::abs(sum - expect) < 1e-11);
          }
          if (path_is_monotonic(first, second)) CHECK(max_abs(blk) < 1e-11);
        }
}

TEST_CASE("path monotonicity and exact vanishing", "[coupling]") {
  CHECK(path_is_monotonic({1, 1}, {1, 1}));
  CHECK_FALSE(path_is_monotonic({1, 1}, {-1, -1}));
  CHECK_FALSE(path_is_monotonic({1, -1}, {1, 1}));
  // -- then ++ at I = (0,0) is non-monotonic yet the entry -4((A+1)b + (B+1)a) is 0 there.
  CHECK(z_path_vanishes_on({-1, -1}, {1, 1}, BlockLabel::from_twice(0, 0)));
  CHECK_FALSE(z_path_vanishes_on({-1, -1}, {1, 1}, BlockLabel::from_twice(1, 1)));
  CHECK(z_path_vanishes_on({1, -1}, {1, -1}, BlockLabel::from_twice(2, 1)));
  const Surd s = z_path({1, 1}, {1, -1}, HalfInt::integer(1), HalfInt::integer(1), HalfInt::integer(0), HalfInt::integer(0));
  CHECK(s.coefficient == Rat(-4));
  CHECK(s.radicand == Rat(1));
}
