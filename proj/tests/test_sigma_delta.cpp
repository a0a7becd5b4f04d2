#include <doctest.h>

#include <cstdlib>
#include <random>

#include "stdenoise/errors.hpp"
#include "stdenoise/sigma_delta.hpp"
#include "stdenoise/synth.hpp"

using namespace stdenoise;

namespace {

Frame level_frame(std::size_t w, std::size_t h, int level) {
  return Frame(w, h, static_cast<double>(level) / 255.0);
}

}  // namespace

TEST_CASE("sd_init quantizes the first frame") {
  SigmaDeltaParams p;
  const SigmaDeltaState a(Frame(3, 2, 0.5), p);
  CHECK(a.mean() == std::vector<std::uint8_t>(6, 128));
  CHECK(a.variance() == std::vector<std::uint8_t>(6, 2));

  const SigmaDeltaState b(Frame(3, 2, 0.0), p);
  CHECK(b.mean() == std::vector<std::uint8_t>(6, 0));

  p.v_min = 2;
  const SigmaDeltaState c(Frame(1, 1, 1.0), p);
  CHECK(c.mean() == std::vector<std::uint8_t>{255});
  CHECK(c.variance() == std::vector<std::uint8_t>{2});
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((SigmaDeltaParams{0, 2, 255}.validate()), ParameterError);
  CHECK_THROWS_AS((SigmaDeltaParams{2, 0, 255}.validate()), ParameterError);
  CHECK_THROWS_AS((SigmaDeltaParams{2, 10, 5}.validate()), ParameterError);
  CHECK_THROWS_AS((SigmaDeltaParams{2, 2, 256}.validate()), ParameterError);
  CHECK_NOTHROW((SigmaDeltaParams{1, 1, 1}.validate()));
}

TEST_CASE("constant input equal to the background is static") {
  SigmaDeltaState s(level_frame(4, 4, 90), {});
  const auto v0 = s.variance();
  const MotionFrame m = s.update(level_frame(4, 4, 90));
  CHECK(s.mean() == std::vector<std::uint8_t>(16, 90));
  CHECK(s.variance() == v0);
  CHECK(m.difference == std::vector<std::uint8_t>(16, 0));
  CHECK(m.label == std::vector<std::uint8_t>(16, 0));
}

TEST_CASE("step from level 100 to 110") {
  SigmaDeltaState s(level_frame(1, 1, 100), {2, 2, 255});
  const Frame step = level_frame(1, 1, 110);
  MotionFrame m = s.update(step);
  CHECK(s.mean()[0] == 101);
  CHECK(m.difference[0] == 9);
  CHECK(s.variance()[0] == 3);
  CHECK(m.label[0] == 1);
  for (int i = 0; i < 10; ++i) m = s.update(step);
  CHECK(s.mean()[0] == 110);
  CHECK(m.difference[0] == 0);
  CHECK(m.label[0] == 0);
}

TEST_CASE("dimension mismatch") {
  SigmaDeltaState s(Frame(2, 2), {});
  CHECK_THROWS_AS(s.update(Frame(2, 3)), DimensionError);
}

TEST_CASE("sd_run conventions") {
  SUBCASE("static sequence never fires") {
    const Sequence seq({Frame(5, 5, 0.3), Frame(5, 5, 0.3), Frame(5, 5, 0.3)});
    for (const auto& m : sd_run(seq, {})) CHECK(m.label == std::vector<std::uint8_t>(25, 0));
  }
  SUBCASE("single frame gives a single zero output") {
    const auto out = sd_run(Sequence({Frame(3, 3, 0.7)}), {});
    REQUIRE(out.size() == 1);
    CHECK(out[0] == MotionFrame::zeros(3, 3));
  }
  SUBCASE("moving object fires along its path only") {
    SceneSpec spec;
    spec.width = 32;
    spec.height = 32;
    spec.frames = 8;
    spec.object_size = 6;
    spec.start_x = 3;
    spec.start_y = 10;
    const Sequence seq = generate(spec);
    const auto out = sd_run(seq, {});
    bool any_motion = false;
    for (std::size_t t = 1; t < out.size(); ++t) {
      for (std::size_t y = 0; y < 32; ++y) {
        for (std::size_t x = 0; x < 32; ++x) {
          const bool on_path = y >= 10 && y < 16 && x >= 3 && x < 3 + 6 + 8;
          if (!on_path) CHECK(out[t].label[y * 32 + x] == 0);
          any_motion = any_motion || out[t].label[y * 32 + x] == 1;
        }
      }
    }
    CHECK(any_motion);
  }
}

TEST_CASE("Sigma-delta invariants on random input") {
  std::mt19937 rng(1234);
  std::uniform_int_distribution<int> level(0, 255);
  std::uniform_int_distribution<int> amp(1, 4);
  for (int trial = 0; trial < 20; ++trial) {
    SigmaDeltaParams p{amp(rng), 1 + trial % 5, 200 + trial};
    auto random_frame = [&] {
      std::vector<double> d(36);
      for (auto& v : d) v = level(rng) / 255.0;
      return Frame(6, 6, d);
    };
    SigmaDeltaState s(random_frame(), p);
    SigmaDeltaState twin = s;
    for (int t = 0; t < 40; ++t) {
      const auto m_prev = s.mean();
      const auto v_prev = s.variance();
      const Frame f = random_frame();
      const MotionFrame m = s.update(f);
      CHECK(twin.update(f) == m);  // deterministic
      for (std::size_t i = 0; i < 36; ++i) {
        CHECK(std::abs(int(s.mean()[i]) - int(m_prev[i])) <= 1);
        CHECK(s.variance()[i] >= p.v_min);
        CHECK(s.variance()[i] <= p.v_max);
        if (m.difference[i] == 0) CHECK(s.variance()[i] == v_prev[i]);
        CHECK(m.label[i] <= 1);
        CHECK((m.label[i] == 1) == (m.difference[i] >= s.variance()[i]));
      }
    }
  }
}

TEST_CASE("constant input reaches a fixed point within 255 steps") {
  for (int start : {0, 37, 255}) {
    for (int target : {0, 128, 255}) {
      SigmaDeltaState s(level_frame(1, 1, start), {});
      MotionFrame m;
      for (int t = 0; t < 255; ++t) m = s.update(level_frame(1, 1, target));
      CHECK(s.mean()[0] == target);
      CHECK(m.difference[0] == 0);
      CHECK(m.label[0] == 0);
    }
  }
}

TEST_CASE("motion_mask scales labels") {
  MotionFrame m = MotionFrame::zeros(2, 1);
  m.label[1] = 1;
  const Frame f = motion_mask(m);
  CHECK(f.at(0, 0) == 0.0);
  CHECK(f.at(1, 0) == 1.0);
}
