#include <doctest.h>

#include <cmath>
#include <random>

#include "formicode/coding.hpp"
#include "oracles.hpp"

using namespace formicode;
using namespace formicode::oracles;

namespace {

Route random_route(std::mt19937_64& rng, std::size_t length) {
  std::string turns;
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < length; ++i) {
    turns.push_back(coin(rng) ? 'R' : 'L');
  }
  return Route(std::move(turns));
}

}  // namespace

TEST_CASE("unitary coding: length equals the branch index") {
  CHECK(unitary_encode(1).length == 1.0);
  CHECK(unitary_encode(10).length == 10.0);
  CHECK(unitary_encode(40).length == 40.0);
  for (int i = 1; i <= 60; ++i) {
    const CodeWord word = unitary_encode(i);
    CHECK(word.length == double(i));
    CHECK(word.description.size() == std::size_t(i));
  }
  CHECK_THROWS_AS(unitary_encode(0), std::invalid_argument);
}

TEST_CASE("unitary words under the Vert.1 time model land near the recorded "
          "contact durations") {
  const TimeModel vert1(7.3, -28.9);
  CHECK(transmission_time(unitary_encode(10), vert1) ==
        doctest::Approx(44.1).epsilon(1e-12));  // observed 40-45 s
  CHECK(transmission_time(unitary_encode(40), vert1) ==
        doctest::Approx(263.1).epsilon(1e-12));  // observed 280-300 s
}

TEST_CASE("compress_route reproduces the worked examples") {
  const CodeWord w8l = compress_route(Route("LLLLLLLL"));
  CHECK(w8l.joined() == "8L");
  CHECK(w8l.length == 2.0);

  const CodeWord w4lr = compress_route(Route("LRLRLRLR"));
  CHECK(w4lr.joined() == "4LR");
  CHECK(w4lr.length == 3.0);

  const CodeWord raw = compress_route(Route("LRRLRL"));
  CHECK(raw.joined() == "LRRLRL");
  CHECK(raw.length == 6.0);

  CHECK_THROWS_AS(compress_route(Route("")), std::invalid_argument);
}

TEST_CASE("compression proxy properties over random routes") {
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t length = 1 + rng() % 40;
    const Route route = random_route(rng, length);
    const CodeWord word = compress_route(route);

    CHECK(word.length <= double(length) + 1.0);
    CHECK(expand_route(word) == route);

    const bool stayed_raw = word.length == double(length) &&
                            word.joined() == route.turns();
    CHECK(stayed_raw == !oracle_has_proper_period(route.turns()));
  }
}

TEST_CASE("complexity classes order runs below alternations below aperiodic "
          "routes") {
  CHECK(complexity_class(Route("LLLLLL")) == 2.0);
  CHECK(complexity_class(Route("LRLRLR")) == 3.0);
  CHECK(complexity_class(Route("RRLRRR")) == 6.0);
  CHECK(complexity_class(Route("")) == 0.0);

  std::mt19937_64 rng(99);
  for (std::size_t length = 4; length <= 12; length += 2) {
    const double constant =
        complexity_class(Route(std::string(length, 'L')));
    std::string alt;
    for (std::size_t i = 0; i < length; ++i) alt.push_back(i % 2 ? 'R' : 'L');
    const double alternating = complexity_class(Route(alt));

    CHECK(constant == 2.0);
    CHECK(alternating == 3.0);

    int seen = 0;
    while (seen < 20) {
      const Route route = random_route(rng, length);
      if (oracle_has_proper_period(route.turns())) continue;
      ++seen;
      const double aperiodic = complexity_class(route);
      CHECK(constant < alternating);
      CHECK(alternating < aperiodic);
      CHECK(aperiodic == double(length));
    }
  }
}

TEST_CASE("anchor coding: nearest anchor, ties to the smaller index") {
  const AnchorScheme scheme({10, 20});

  SUBCASE("worked examples") {
    CHECK(select_anchor(26, scheme) == 20);
    CHECK(anchor_encode(26, scheme).length == 7.0);

    CHECK(select_anchor(20, scheme) == 20);
    const CodeWord at_anchor = anchor_encode(20, scheme);
    CHECK(at_anchor.length == 1.0);
    CHECK(at_anchor.description.size() == 1);  // just the name

    CHECK(select_anchor(15, scheme) == 10);  // equidistant, smaller wins
    CHECK(anchor_encode(15, scheme).length == 6.0);
  }

  SUBCASE("length is name length plus distance to the nearest anchor") {
    for (int i = 1; i <= 30; ++i) {
      const int expected =
          std::min(std::abs(i - 10), std::abs(i - 20));
      CHECK(anchor_encode(i, scheme).length == 1.0 + expected);
    }
  }

  SUBCASE("name length is configurable") {
    const AnchorScheme wide({10, 20}, 2.5);
    CHECK(anchor_encode(26, wide).length == 8.5);
  }

  SUBCASE("scheme validation") {
    CHECK_THROWS_AS(AnchorScheme({}), std::invalid_argument);
    CHECK_THROWS_AS(AnchorScheme({20, 10}), std::invalid_argument);
    CHECK_THROWS_AS(AnchorScheme({10, 10}), std::invalid_argument);
    CHECK_THROWS_AS(AnchorScheme({0, 10}), std::invalid_argument);
  }
}

TEST_CASE("message distributions validate their probabilities") {
  CHECK_THROWS_AS(MessageDistribution({{1, 0.5}, {2, 0.4}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(MessageDistribution({{1, 1.5}, {2, -0.5}}),
                  std::invalid_argument);
  const MessageDistribution uniform = MessageDistribution::uniform(1, 30);
  CHECK(uniform.prob(7) == doctest::Approx(1.0 / 30));
  CHECK(uniform.prob(31) == 0.0);
  CHECK(uniform.support().size() == 30);
}

TEST_CASE("huffman lengths for simple distributions") {
  const PrefixCode uniform2 =
      optimal_prefix_lengths(MessageDistribution::uniform(1, 2));
  CHECK_FALSE(uniform2.degenerate);
  CHECK(uniform2.lengths.at(1) == 1);
  CHECK(uniform2.lengths.at(2) == 1);

  const PrefixCode dyadic = optimal_prefix_lengths(
      MessageDistribution({{1, 0.5}, {2, 0.25}, {3, 0.25}}));
  CHECK(dyadic.lengths.at(1) == 1);
  CHECK(dyadic.lengths.at(2) == 2);
  CHECK(dyadic.lengths.at(3) == 2);

  const PrefixCode single =
      optimal_prefix_lengths(MessageDistribution({{5, 1.0}}));
  CHECK(single.degenerate);
  CHECK(single.lengths.at(5) == 0);

  CHECK_THROWS_AS(
      optimal_prefix_lengths(MessageDistribution({{1, 1.0}, {2, 0.0}})),
      std::invalid_argument);
}

namespace {

// The two-anchor second-stage distribution: two messages at 1/3, the other
// 28 at 1/84 each.
MessageDistribution anchored_stage2() {
  std::map<int, double> probs;
  for (int i = 1; i <= 30; ++i) probs[i] = 1.0 / 84.0;
  probs[10] = probs[20] = 1.0 / 3.0;
  return MessageDistribution(std::move(probs));
}

double kraft_sum(const PrefixCode& code) {
  double sum = 0.0;
  for (const auto& [index, length] : code.lengths) {
    sum += std::ldexp(1.0, -length);
  }
  return sum;
}

}  // namespace

TEST_CASE("huffman code for the anchored distribution meets the entropy "
          "bound") {
  const MessageDistribution dist = anchored_stage2();
  const PrefixCode code = optimal_prefix_lengths(dist);
  const CodeStats stats = code_stats(code.lengths, dist);

  // H = (2/3) log2 3 + (1/3) log2 84, computed independently.
  const double entropy = 3.1874141414070242;
  CHECK(stats.entropy_bits == doctest::Approx(entropy).epsilon(1e-12));
  CHECK(stats.expected_length_bits >= stats.entropy_bits);
  CHECK(stats.expected_length_bits < stats.entropy_bits + 1.0);
  CHECK(kraft_sum(code) <= 1.0 + 1e-12);
}

TEST_CASE("kraft inequality and entropy bound hold over random distributions") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 300; ++trial) {
    const int support = 2 + int(rng() % 39);
    std::map<int, double> probs;
    double total = 0.0;
    for (int i = 1; i <= support; ++i) {
      const double w =
          std::uniform_real_distribution<double>(1e-3, 1.0)(rng);
      probs[i] = w;
      total += w;
    }
    for (auto& [index, p] : probs) p /= total;

    const MessageDistribution dist(std::move(probs));
    const PrefixCode code = optimal_prefix_lengths(dist);
    const CodeStats stats = code_stats(code.lengths, dist);

    CHECK(kraft_sum(code) <= 1.0 + 1e-12);
    CHECK(stats.expected_length_bits >= stats.entropy_bits - 1e-12);
    CHECK(stats.expected_length_bits < stats.entropy_bits + 1.0);
  }
}

TEST_CASE("code_stats closed forms") {
  SUBCASE("uniform over 30 with unitary lengths") {
    std::map<int, double> lengths;
    for (int i = 1; i <= 30; ++i) lengths[i] = i;
    const CodeStats stats =
        code_stats(lengths, MessageDistribution::uniform(1, 30));
    CHECK(stats.entropy_bits ==
          doctest::Approx(4.9068905956085187).epsilon(1e-12));
    CHECK(stats.expected_length_bits == doctest::Approx(15.5).epsilon(1e-12));
  }

  SUBCASE("dyadic distribution meets the bound with equality") {
    const MessageDistribution dist({{1, 0.5}, {2, 0.25}, {3, 0.25}});
    const CodeStats stats =
        code_stats(optimal_prefix_lengths(dist).lengths, dist);
    CHECK(stats.entropy_bits == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(stats.expected_length_bits == doctest::Approx(1.5).epsilon(1e-12));
  }

  SUBCASE("a certain message carries no information") {
    const MessageDistribution dist({{4, 1.0}});
    const CodeStats stats = code_stats(std::map<int, double>{{4, 0.0}}, dist);
    CHECK(stats.entropy_bits == 0.0);
  }

  SUBCASE("zero-probability entries are skipped, not logged") {
    const MessageDistribution dist({{1, 0.5}, {2, 0.5}, {3, 0.0}});
    const CodeStats stats =
        code_stats(std::map<int, double>{{1, 1.0}, {2, 1.0}}, dist);
    CHECK(stats.entropy_bits == doctest::Approx(1.0));
  }

  SUBCASE("missing length for a supported message is an error") {
    CHECK_THROWS_AS(code_stats(std::map<int, double>{{1, 1.0}},
                               MessageDistribution({{1, 0.5}, {2, 0.5}})),
                    std::invalid_argument);
  }
}

TEST_CASE("time model validation and prediction") {
  CHECK_THROWS_AS(TimeModel(0.0, 5.0), std::invalid_argument);
  CHECK_THROWS_AS(TimeModel(-1.0, 5.0), std::invalid_argument);
  CHECK_THROWS_AS(TimeModel(1.0, 0.0, -1.0), std::invalid_argument);

  const TimeModel vert1(7.3, -28.9);
  CHECK(vert1.nonnegative_over(4.0, 40.0));
  CHECK_FALSE(vert1.nonnegative_over(1.0, 40.0));
}

TEST_CASE("transmission time is affine without noise") {
  const TimeModel model(5.0, 20.0);
  CHECK(transmission_time(CodeWord{{}, 0.0}, model) == 20.0);

  const TimeModel vert2(5.88, -17.11);
  CHECK(transmission_time(CodeWord{{}, 60.0}, vert2) ==
        doctest::Approx(335.69).epsilon(1e-12));

  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const double l1 = std::uniform_real_distribution<double>(0, 100)(rng);
    const double l2 = std::uniform_real_distribution<double>(0, 100)(rng);
    const double d1 = transmission_time(CodeWord{{}, l1}, model);
    const double d2 = transmission_time(CodeWord{{}, l2}, model);
    CHECK(d1 - d2 == doctest::Approx(model.seconds_per_symbol * (l1 - l2))
                         .epsilon(1e-12));
  }
}

TEST_CASE("noisy transmission never reports a contact under one second") {
  const TimeModel model(1.0, -100.0, 5.0);
  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    CHECK(transmission_time(CodeWord{{}, 1.0}, model, &rng) >= 1.0);
  }

  // Zero noise with an engine still floors at 1 s.
  const TimeModel quiet(1.0, -100.0, 0.0);
  CHECK(transmission_time(CodeWord{{}, 1.0}, quiet, &rng) == 1.0);
}
