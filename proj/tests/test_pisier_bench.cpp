#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pisier_lab/lower_bound.hpp"
#include "pisier_lab/pisier_bench.hpp"
#include "pisier_lab/random_function.hpp"

using namespace pisier_lab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const AuditCheck& find_check(const PisierAudit& a, const std::string& name) {
  for (const auto& c : a.checks)
    if (c.name == name) return c;
  FAIL("missing check " << name);
  return a.checks.front();
}

}  // namespace

TEST_CASE("choose_ell", "[ell]") {
  CHECK(choose_ell(1) == 1);
  CHECK(choose_ell(2) == 1);
  CHECK(choose_ell(3) == 1);
  CHECK(choose_ell(4) == 3);
  CHECK(choose_ell(63) == 3);
  CHECK(choose_ell(64) == 5);
  CHECK(choose_ell(16) == 3);
  CHECK(choose_ell(8) == 3);
  for (std::size_t m = 1; m <= 5000; m += 7) {
    const int ell = choose_ell(m);
    CHECK(ell % 2 == 1);
    CHECK(ell > 0.5 * std::log2(static_cast<double>(m)));
    if (ell > 1) CHECK(ell - 2 <= 0.5 * std::log2(static_cast<double>(m)));
  }
  CHECK_THROWS_AS(choose_ell(0), InvalidInput);
}

TEST_CASE("pisier ratio examples", "[ratio]") {
  SECTION("constant f") {
    const auto r = pisier_ratio(VectorFunction::constant(5, std::vector<double>{1.0, -3.0}), Norm::linf());
    CHECK(r.params["ratio"] == 0.0);
  }
  SECTION("zero f") {
    const auto r = pisier_ratio(VectorFunction::constant(3, std::vector<double>{0.0}), Norm::l2());
    CHECK(r.params["ratio"] == 0.0);
  }
  SECTION("purely linear f under l2") {
    std::vector<CubeFunction> coords;
    for (int i = 0; i < 3; ++i) {
      std::vector<double> spec(cube_size(6), 0.0);
      for (int j = 0; j < 6; ++j) spec[Mask{1} << j] = std::sin(1.0 + i + 3 * j);
      coords.push_back(CubeFunction::from_spectrum(6, spec));
    }
    const auto r = pisier_ratio(VectorFunction(coords), Norm::l2());
    CHECK_THAT(r.params["ratio"].get<double>(), WithinRel(1.0, 1e-12));
  }
  SECTION("lower-bound instance at n = 9") {
    const auto inst = lower_bound_instance(9, WitnessVariant::kTruncated);
    double sup = 0.0;
    for (Mask x = 0; x < 512; ++x) sup = std::max(sup, std::abs(oracle::h_at(9, x)));
    const auto r = pisier_ratio(inst.f, inst.norm);
    CHECK_THAT(r.lhs, WithinRel(3.0, 1e-12));
    CHECK_THAT(r.rhs, WithinRel(sup, 1e-12));
    CHECK_THAT(r.params["ratio"].get<double>(), WithinRel(3.0 / sup, 1e-12));
    CHECK(r.params["ratio"].get<double>() >= 1.0);
  }
  CHECK_THROWS_AS(pisier_ratio(random_vector_function(17, 1, 0), Norm::l2()), ResourceError);
}

TEST_CASE("Euclidean ratio never exceeds one", "[ratio][property]") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const auto f = random_vector_function(n, 1 + rng() % 6, rng());
    CHECK(pisier_ratio(f, Norm::l2()).params["ratio"].get<double>() <= 1.0 + 1e-12);
  }
}

TEST_CASE("decomposition audit", "[audit]") {
  SECTION("linf, n = 8, m = 4") {
    const auto f = random_vector_function(8, 4, 7);
    const auto norm = Norm::linf();
    const auto a = decomposition_audit(f, norm, SandwichTransform::for_norm(norm, 4));
    CHECK(a.ell == 3);
    CHECK(a.all_hold());
    CHECK_THAT(a.derived_constant, WithinRel(8.0 * 3 * (1.0 + 2.0 / 8.0), 1e-15));
    CHECK(a.lhs <= a.derived_constant * a.rhs_raw + 1e-9);
    CHECK(a.term_proxy <= 24.0 * a.rhs_raw + 1e-9);
    CHECK(a.term_remainder <= 24.0 * 2.0 / 8.0 * a.rhs_raw + 1e-9);
  }
  SECTION("l2 with Identity, d = 1") {
    const auto f = random_vector_function(8, 4, 8);
    const auto a = decomposition_audit(f, Norm::l2(), SandwichTransform::for_lp(2.0, 4));
    CHECK(a.distortion == 1.0);
    CHECK(a.term_remainder <= 8.0 * a.ell / std::ldexp(1.0, a.ell) * a.rhs_raw + 1e-9);
    CHECK(a.ratio() <= 1.0 + 1e-12);
    CHECK(a.all_hold());
  }
  SECTION("levels 2..ell only: lin f and f*P vanish") {
    const int n = 8;
    std::mt19937_64 rng(12);
    std::normal_distribution<double> gauss;
    std::vector<CubeFunction> coords;
    for (int i = 0; i < 4; ++i) {
      std::vector<double> spec(cube_size(n), 0.0);
      for (Mask s = 0; s < spec.size(); ++s)
        if (std::popcount(s) >= 2 && std::popcount(s) <= 3) spec[s] = gauss(rng);
      coords.push_back(CubeFunction::from_spectrum(n, spec));
    }
    const VectorFunction f(coords);
    const auto norm = Norm::linf();
    const auto a = decomposition_audit(f, norm, SandwichTransform::for_norm(norm, 4));
    REQUIRE(a.ell == 3);
    CHECK_THAT(a.lhs, WithinAbs(0.0, 1e-10));
    CHECK_THAT(a.term_proxy, WithinAbs(0.0, 1e-10));
    CHECK(a.all_hold());
  }
  SECTION("ell override recomputes the constant") {
    const auto f = random_vector_function(6, 4, 3);
    const auto norm = Norm::l1();
    for (int ell : {1, 5, 7}) {
      const auto a = decomposition_audit(f, norm, SandwichTransform::for_norm(norm, 4), ell);
      CHECK(a.ell == ell);
      CHECK_THAT(a.derived_constant, WithinRel(derived_constant(ell, 2.0), 1e-15));
      CHECK(a.all_hold());
    }
  }
}

TEST_CASE("audit invariants on random instances", "[audit][property]") {
  std::mt19937_64 rng(21);
  const std::vector<Norm> norms = {Norm::l1(), Norm::l2(), Norm::linf(), Norm::lp(4.0), Norm::lp(1.5)};
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 9);
    const std::size_t m = 1 + rng() % 9;
    const Norm& norm = norms[trial % norms.size()];
    const auto f = random_vector_function(n, m, rng());
    const auto a = decomposition_audit(f, norm, SandwichTransform::for_norm(norm, m));
    INFO("n=" << n << " m=" << m << " norm=" << norm.description());
    CHECK(a.lhs <= derived_constant(a.ell, a.distortion) * a.rhs_raw + 1e-9);
    CHECK(a.lhs <= a.term_proxy + a.term_remainder + 1e-9);
    CHECK(find_check(a, "parseval_step").holds);
    CHECK(a.all_hold());
  }
}

TEST_CASE("audit preconditions", "[audit][errors]") {
  const auto f = random_vector_function(4, 3, 1);
  // claims l1 is within distortion 1.1 of Euclidean on R^3
  const SandwichTransform bad(Eigen::MatrixXd::Identity(3, 3), 1.1);
  CHECK_THROWS_AS(decomposition_audit(f, Norm::l1(), bad), InvalidInput);
  CHECK_THROWS_AS(decomposition_audit(f, Norm::l1(), SandwichTransform::for_lp(1.0, 4)), InvalidInput);
  CHECK_THROWS_AS(decomposition_audit(random_vector_function(17, 2, 0), Norm::l2(),
                                      SandwichTransform::for_lp(2.0, 2)),
                  ResourceError);
}

TEST_CASE("audit serialization", "[audit]") {
  const auto f = random_vector_function(5, 2, 4);
  const auto norm = Norm::linf();
  const auto a = decomposition_audit(f, norm, SandwichTransform::for_norm(norm, 2));
  const auto j = to_json(a);
  CHECK(j["claim"] == "pisier_decomposition");
  CHECK(j["ell"] == 1);
  CHECK(j["checks"].size() == a.checks.size());
  const auto row = audit_csv_row(a);
  CHECK(std::count(row.begin(), row.end(), ',') == 7);
  CHECK(audit_csv_header() == "n,m,ell,lhs,rhs_raw,ratio,derived_constant,slack");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_double(a.lhs)) == a.lhs);
}
