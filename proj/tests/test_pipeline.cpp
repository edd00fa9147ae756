#include <cmath>
#include <sstream>

#include "doctest.h"
#include "freeorder/analysis.hpp"
#include "freeorder/pipeline.hpp"
#include "freeorder/rng.hpp"

using namespace freeorder;

TEST_CASE("build_pipeline onesec end to end" * doctest::timeout(300)) {
  PipelineSpec spec;
  spec.problem = Problem::onesec;
  spec.n = 256;
  spec.k = 3;
  spec.ell_dim = 8;
  spec.delta = Rat(1, 8);
  BuildArtifacts art = build_pipeline(spec);

  CHECK(art.q == 11);
  CHECK(art.n_adjusted == 11 * (256 / 11));
  CHECK(!art.events.empty());
  CHECK(art.entropy_lifted <= art.entropy_bound + 1e-9);
  CHECK(art.lifted.entries.size() == art.construction.support.entries.size() * 11);
  for (const auto& pi : art.lifted.entries) CHECK(pi.n() == art.n_adjusted);

  // frequency guarantee on the low-dimensional support, exact counts
  auto rows = verify_coverage(art.construction.support, art.events, art.bucketing_low,
                              spec.delta);
  for (const auto& row : rows) CHECK(row.ok);

  // the guarantee survives a serialization round trip
  std::stringstream ss;
  write_permset(ss, art.construction.support);
  PermutationMultiset reloaded = read_permset(ss);
  auto rows2 = verify_coverage(reloaded, art.events, art.bucketing_low, spec.delta);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows2[i].count == rows[i].count);
}

TEST_CASE("build_pipeline ksec end to end at a small dimension" * doctest::timeout(300)) {
  PipelineSpec spec;
  spec.problem = Problem::ksec;
  spec.n = 13 * 8;
  spec.k = 2;
  spec.ell_dim = 13;
  spec.delta = Rat(1, 4);
  BuildArtifacts art = build_pipeline(spec);
  CHECK(art.q == 13);
  auto rows = verify_coverage(art.construction.support, art.events, art.bucketing_low,
                              spec.delta);
  for (const auto& row : rows) CHECK(row.ok);
  CHECK(art.entropy_lifted <= art.entropy_bound + 1e-9);
}

TEST_CASE("build_pipeline rejects invalid parameters") {
  PipelineSpec spec;
  spec.problem = Problem::onesec;
  spec.n = 256;
  spec.k = 8;
  spec.ell_dim = 8;  // must exceed k
  CHECK_THROWS_AS(build_pipeline(spec), std::invalid_argument);
}

TEST_CASE("evaluate: point distribution has no variance") {
  PermutationMultiset única{6, {Permutation::identity(6)}};
  auto metric = [](const ValueAssignment& va, const Permutation& pi) {
    return classic_secretary(va, pi).success ? 1.0 : 0.0;
  };
  auto gen = [&](std::uint64_t) { return descending_values(6); };
  EvalReport rep = evaluate(única, metric, gen, 2000, 9, 1);
  CHECK((rep.mean == 0.0 || rep.mean == 1.0));
  CHECK(rep.half_width == 0.0);
  CHECK(rep.entropy_bits == 0.0);
}

TEST_CASE("evaluate is reproducible and thread-count independent" * doctest::timeout(120)) {
  PermutationMultiset orders{12, {}};
  for (int i = 0; i < 200; ++i) orders.entries.push_back(sequential_draw(12, 40 + i));
  auto metric = [](const ValueAssignment& va, const Permutation& pi) {
    return multi_threshold_ksec(va, pi, 3).ratio;
  };
  auto gen = [](std::uint64_t sd) {
    SplitMix64 rng(sd);
    ValueAssignment va;
    va.n = 12;
    va.values.resize(12);
    for (auto& v : va.values) v = static_cast<double>(rng.bounded(1 << 20));
    return va;
  };
  EvalReport one = evaluate(orders, metric, gen, 20000, 7, 1);
  EvalReport two = evaluate(orders, metric, gen, 20000, 7, 2);
  EvalReport three = evaluate(orders, metric, gen, 20000, 7, 0);
  CHECK(one.to_json() == two.to_json());
  CHECK(one.to_json() == three.to_json());
}

TEST_CASE("evaluate against the uniform order matches the classic formula" * doctest::timeout(120)) {
  const int n = 20;
  // uniform order via a large sample of sequential draws
  PermutationMultiset orders{n, {}};
  for (int i = 0; i < 4000; ++i) orders.entries.push_back(sequential_draw(n, 7000 + i));
  auto metric = [](const ValueAssignment& va, const Permutation& pi) {
    return classic_secretary(va, pi).success ? 1.0 : 0.0;
  };
  auto gen = [&](std::uint64_t) { return descending_values(n); };
  EvalReport rep = evaluate(orders, metric, gen, 100000, 3, 0);
  double f = f_exact(20, 7).to_double();
  CHECK(std::abs(rep.mean - f) <= rep.half_width + 0.02);
}

TEST_CASE("EvalReport JSON carries 17 significant digits") {
  EvalReport rep;
  rep.trials = 10;
  rep.seed = 4;
  rep.mean = 1.0 / 3.0;
  rep.half_width = 0.25;
  rep.entropy_bits = 2.0;
  rep.bounds["x"] = 0.1;
  std::string js = rep.to_json();
  CHECK(js.find("\"schema\":\"EVAL-1\"") != std::string::npos);
  CHECK(js.find("0.33333333333333331") != std::string::npos);
  CHECK(js.find("\"x\":0.1") != std::string::npos);
}
