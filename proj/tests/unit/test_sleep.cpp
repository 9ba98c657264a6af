#include <doctest.h>

#include <cmath>

#include "setsim/errors.hpp"
#include "setsim/rng.hpp"
#include "setsim/sleep.hpp"

using namespace setsim;

namespace {

SetParams tight_params() {
  SetParams p;
  p.a = 0.5;
  p.e_min_j = 2.0;
  p.e_max_j = 4.0;
  p.t_min_ms = 2.0;
  p.t_max_ms = 8.0;
  p.tti_ms = 1.0;
  return p;
}

SetControllerState fresh_state(double battery_j) {
  SetControllerState s;
  s.e_total_j = battery_j;
  s.e_remained_j = battery_j;
  return s;
}

}  // namespace

TEST_CASE("initial-sleep energy target anchors") {
  CHECK(iec(100.0, 100.0, 20.0) == 0.0);
  CHECK(iec(100.0, 0.0, 20.0) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(iec(100.0, 25.0, 20.0) == doctest::Approx(15.0).epsilon(1e-9));
  // overfull battery clamps at zero rather than going negative
  CHECK(iec(100.0, 120.0, 20.0) == 0.0);
  CHECK_THROWS_AS(iec(0.0, 0.0, 20.0), DomainError);
  CHECK_THROWS_AS(iec(-5.0, 0.0, 20.0), DomainError);
  CHECK_THROWS_AS(iec(100.0, 50.0, -1.0), DomainError);
}

TEST_CASE("initial-sleep target falls as charge rises and stays in range") {
  double prev = iec(100.0, 0.0, 20.0);
  for (double rem = 5.0; rem <= 100.0; rem += 5.0) {
    const double cur = iec(100.0, rem, 20.0);
    CHECK(cur <= prev);
    CHECK(cur >= 0.0);
    CHECK(cur <= 20.0);
    prev = cur;
  }
}

TEST_CASE("final-sleep energy target anchors") {
  CHECK(fec(1.0, 20.0, 2.0) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(fec(0.0, 20.0, 2.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fec(0.5, 20.0, 2.0) == doctest::Approx(11.0).epsilon(1e-9));
  CHECK_THROWS_AS(fec(1.3, 20.0, 2.0), DomainError);
  CHECK_THROWS_AS(fec(-0.1, 20.0, 2.0), DomainError);
}

TEST_CASE("final-sleep target interpolates monotonically in the weight") {
  double prev = fec(0.0, 20.0, 2.0);
  for (double a = 0.05; a <= 1.0; a += 0.05) {
    const double cur = fec(a, 20.0, 2.0);
    CHECK(cur >= prev);
    CHECK(cur >= 2.0);
    CHECK(cur <= 20.0);
    prev = cur;
  }
}

TEST_CASE("energy maps onto the window range") {
  CHECK(window_from_energy(1.0, 1.0, 10.0, 2.0, 64.0, 1.0) == 2.0);
  CHECK(window_from_energy(10.0, 1.0, 10.0, 2.0, 64.0, 1.0) == 64.0);
  CHECK(window_from_energy(5.5, 1.0, 10.0, 2.0, 64.0, 1.0) == 33.0);
  // out-of-range energies clamp to the endpoints
  CHECK(window_from_energy(0.0, 1.0, 10.0, 2.0, 64.0, 1.0) == 2.0);
  CHECK(window_from_energy(25.0, 1.0, 10.0, 2.0, 64.0, 1.0) == 64.0);
  CHECK_THROWS_AS(window_from_energy(5.0, 10.0, 10.0, 2.0, 64.0, 1.0), DomainError);
  CHECK_THROWS_AS(window_from_energy(5.0, 1.0, 10.0, 64.0, 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(window_from_energy(5.0, 1.0, 10.0, 2.0, 64.0, 0.0), DomainError);
}

TEST_CASE("windows round up to whole TTIs") {
  // linear value 33.888... rounds up to the next whole millisecond
  const double w = window_from_energy(5.628, 1.0, 10.0, 2.0, 64.0, 1.0);
  CHECK(w == std::ceil(w));
  CHECK(w >= 33.0);
  // a 2 ms TTI forces even windows
  CHECK(std::fmod(window_from_energy(5.5, 1.0, 10.0, 2.0, 64.0, 2.0), 2.0) == 0.0);
}

TEST_CASE("awake controller gates transmission on processing time") {
  const SetParams p = tight_params();
  SetControllerState s = fresh_state(1000.0);

  auto first = set_step(s, SleepEvent::PacketAvailable, p);
  CHECK(first.action == SleepAction::Listen);
  CHECK(first.state.mode == SleepMode::Awake);
  CHECK(first.state.ppt_ms == doctest::Approx(1.0));

  auto second = set_step(first.state, SleepEvent::PacketAvailable, p);
  CHECK(second.action == SleepAction::Transmit);
  CHECK(second.state.mode == SleepMode::Awake);
  // the gate is not reset by transmitting, only by entering a sleep
  auto third = set_step(second.state, SleepEvent::PacketAvailable, p);
  CHECK(third.action == SleepAction::Transmit);
}

TEST_CASE("idle awake controller enters the initial sleep with a fresh window") {
  const SetParams p = tight_params();
  SetControllerState s = fresh_state(1000.0);
  s.ppt_ms = 1.0;

  auto step = set_step(s, SleepEvent::NoPacket, p);
  CHECK(step.action == SleepAction::Sleep);
  CHECK(step.state.mode == SleepMode::InitialSleep);
  CHECK(step.state.ppt_ms == 0.0);
  // full battery puts the initial target at zero, so the window floors out
  CHECK(step.state.remaining_window_ms == p.t_min_ms);
  CHECK(step.state.window_initial_ms == p.t_min_ms);
}

TEST_CASE("listening controller without traffic enters the final sleep") {
  const SetParams p = tight_params();
  SetControllerState s = fresh_state(1000.0);
  s.mode = SleepMode::Listening;

  auto step = set_step(s, SleepEvent::NoPacket, p);
  CHECK(step.action == SleepAction::Sleep);
  CHECK(step.state.mode == SleepMode::FinalSleep);
  // a = 0.5 blends the extremes to 3 J, the midpoint of [2,4] maps to 5 ms
  CHECK(step.state.fec_j == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(step.state.remaining_window_ms == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("sleep windows count down and expire into listening") {
  const SetParams p = tight_params();
  SetControllerState s = fresh_state(1000.0);
  s.mode = SleepMode::InitialSleep;
  s.remaining_window_ms = 2.0;

  auto tick = set_step(s, SleepEvent::NoPacket, p);
  CHECK(tick.action == SleepAction::Sleep);
  CHECK(tick.state.remaining_window_ms == doctest::Approx(1.0));

  auto expire = set_step(tick.state, SleepEvent::WindowExpired, p);
  CHECK(expire.action == SleepAction::Listen);
  CHECK(expire.state.mode == SleepMode::Listening);
  CHECK(expire.state.remaining_window_ms == 0.0);
}

TEST_CASE("listening packet wakes the controller through the same gate") {
  const SetParams p = tight_params();
  SetControllerState s = fresh_state(1000.0);
  s.mode = SleepMode::Listening;

  auto woke = set_step(s, SleepEvent::PacketAvailable, p);
  CHECK(woke.state.mode == SleepMode::Awake);
  CHECK(woke.action == SleepAction::Listen);  // gate not yet satisfied
  auto tx = set_step(woke.state, SleepEvent::PacketAvailable, p);
  CHECK(tx.action == SleepAction::Transmit);
}

TEST_CASE("sleeping controllers never see packets") {
  const SetParams p = tight_params();
  for (SleepMode m : {SleepMode::InitialSleep, SleepMode::FinalSleep}) {
    SetControllerState s = fresh_state(1000.0);
    s.mode = m;
    s.remaining_window_ms = 4.0;
    CHECK_THROWS_AS(set_step(s, SleepEvent::PacketAvailable, p), IllegalTransition);
  }
  SetControllerState awake = fresh_state(1000.0);
  CHECK_THROWS_AS(set_step(awake, SleepEvent::WindowExpired, p), IllegalTransition);
}

TEST_CASE("termination absorbs every later event") {
  const SetParams p = tight_params();
  SetControllerState s = fresh_state(1000.0);
  auto done = set_step(s, SleepEvent::TerminationRequest, p);
  CHECK(done.state.mode == SleepMode::Terminated);
  CHECK(done.action == SleepAction::Terminate);
  for (SleepEvent ev : {SleepEvent::PacketAvailable, SleepEvent::NoPacket,
                        SleepEvent::WindowExpired, SleepEvent::TerminationRequest}) {
    auto after = set_step(done.state, ev, p);
    CHECK(after.state.mode == SleepMode::Terminated);
    CHECK(after.action == SleepAction::Terminate);
  }
}

TEST_CASE("drained batteries stretch the initial window to its cap") {
  const SetParams p = tight_params();
  SetControllerState s = fresh_state(100.0);
  s.e_remained_j = 0.0;  // fully drained: target tops out at e_max
  auto step = set_step(s, SleepEvent::NoPacket, p);
  CHECK(step.state.window_initial_ms == p.t_max_ms);
}

TEST_CASE("the controller never transmits before the gate is met") {
  const SetParams p = tight_params();
  SplitRng rng(77);
  SetControllerState s = fresh_state(500.0);
  for (int i = 0; i < 2000; ++i) {
    SleepEvent ev;
    if (is_sleeping(s.mode)) {
      ev = (s.remaining_window_ms <= p.tti_ms) ? SleepEvent::WindowExpired : SleepEvent::NoPacket;
    } else {
      ev = rng.uniform01() < 0.5 ? SleepEvent::PacketAvailable : SleepEvent::NoPacket;
    }
    const double ppt_before = s.ppt_ms;
    auto step = set_step(s, ev, p);
    if (step.action == SleepAction::Transmit) CHECK(ppt_before >= p.ppt_threshold_ms);
    if (!is_sleeping(s.mode)) {
      CHECK(s.iec_j >= 0.0);
      CHECK(s.iec_j <= p.e_max_j);
    }
    s = step.state;
    CHECK(s.mode != SleepMode::Terminated);
  }
}

TEST_CASE("baseline stays awake under continuous traffic") {
  DrxParams p;
  DrxControllerState s;
  s.inactivity_remaining_ms = p.inactivity_ms;
  for (int i = 0; i < 100; ++i) {
    auto step = drx_step(s, SleepEvent::PacketAvailable, p);
    CHECK(step.state.mode == SleepMode::Awake);
    CHECK(step.action == SleepAction::Transmit);
    s = step.state;
  }
}

TEST_CASE("baseline inactivity expiry starts the short-cycle phase") {
  DrxParams p;
  p.on_duration_ms = 2.0;
  p.inactivity_ms = 3.0;
  p.short_cycle_ms = 6.0;
  p.short_cycle_count = 2;
  p.long_cycle_ms = 12.0;
  DrxControllerState s;
  s.inactivity_remaining_ms = p.inactivity_ms;

  auto a = drx_step(s, SleepEvent::NoPacket, p);
  CHECK(a.state.mode == SleepMode::Awake);
  auto b = drx_step(a.state, SleepEvent::NoPacket, p);
  CHECK(b.state.mode == SleepMode::Awake);
  auto c = drx_step(b.state, SleepEvent::NoPacket, p);
  CHECK(c.state.mode == SleepMode::InitialSleep);
  CHECK(c.state.remaining_window_ms == doctest::Approx(4.0));  // short cycle minus on-duration
  CHECK(c.state.short_cycles_used == 0);
}

TEST_CASE("baseline exhausts short cycles then sleeps long") {
  DrxParams p;
  p.on_duration_ms = 2.0;
  p.inactivity_ms = 3.0;
  p.short_cycle_ms = 6.0;
  p.short_cycle_count = 1;
  p.long_cycle_ms = 12.0;
  DrxControllerState s;
  s.mode = SleepMode::Listening;
  s.on_remaining_ms = 1.0;  // expiring now

  auto first = drx_step(s, SleepEvent::NoPacket, p);
  CHECK(first.state.mode == SleepMode::InitialSleep);
  CHECK(first.state.short_cycles_used == 1);

  DrxControllerState again;
  again.mode = SleepMode::Listening;
  again.on_remaining_ms = 1.0;
  again.short_cycles_used = 1;
  auto second = drx_step(again, SleepEvent::NoPacket, p);
  CHECK(second.state.mode == SleepMode::FinalSleep);
  CHECK(second.state.remaining_window_ms == doctest::Approx(10.0));  // long cycle minus on
}

TEST_CASE("baseline zero short count goes straight to long sleeps") {
  DrxParams p;
  p.on_duration_ms = 2.0;
  p.inactivity_ms = 1.0;
  p.short_cycle_ms = 6.0;
  p.short_cycle_count = 0;
  p.long_cycle_ms = 12.0;
  DrxControllerState s;
  s.inactivity_remaining_ms = p.inactivity_ms;
  auto step = drx_step(s, SleepEvent::NoPacket, p);
  CHECK(step.state.mode == SleepMode::FinalSleep);
}

TEST_CASE("baseline window expiry opens the on-duration") {
  DrxParams p;
  p.on_duration_ms = 4.0;
  DrxControllerState s;
  s.mode = SleepMode::InitialSleep;
  s.remaining_window_ms = 1.0;
  auto step = drx_step(s, SleepEvent::WindowExpired, p);
  CHECK(step.state.mode == SleepMode::Listening);
  CHECK(step.state.on_remaining_ms == doctest::Approx(4.0));
  CHECK(step.action == SleepAction::Listen);
}

TEST_CASE("baseline packet during the on-duration re-arms inactivity") {
  DrxParams p;
  DrxControllerState s;
  s.mode = SleepMode::Listening;
  s.on_remaining_ms = 2.0;
  s.short_cycles_used = 3;
  auto step = drx_step(s, SleepEvent::PacketAvailable, p);
  CHECK(step.state.mode == SleepMode::Awake);
  CHECK(step.action == SleepAction::Transmit);
  CHECK(step.state.inactivity_remaining_ms == doctest::Approx(p.inactivity_ms));
  // the short-cycle budget is not refilled by mid-cycle traffic
  CHECK(step.state.short_cycles_used == 3);
}

TEST_CASE("baseline sleeping states reject packets and absorb termination") {
  DrxParams p;
  DrxControllerState s;
  s.mode = SleepMode::FinalSleep;
  s.remaining_window_ms = 5.0;
  CHECK_THROWS_AS(drx_step(s, SleepEvent::PacketAvailable, p), IllegalTransition);

  auto done = drx_step(s, SleepEvent::TerminationRequest, p);
  CHECK(done.state.mode == SleepMode::Terminated);
  auto after = drx_step(done.state, SleepEvent::NoPacket, p);
  CHECK(after.state.mode == SleepMode::Terminated);
}

TEST_CASE("mode letters are stable") {
  CHECK(mode_letter(SleepMode::Awake) == 'A');
  CHECK(mode_letter(SleepMode::Listening) == 'L');
  CHECK(mode_letter(SleepMode::InitialSleep) == 'I');
  CHECK(mode_letter(SleepMode::FinalSleep) == 'F');
  CHECK(mode_letter(SleepMode::Terminated) == 'T');
  CHECK(to_string(SleepMode::Awake) == "awake");
  CHECK(to_string(SleepAction::Transmit) == "transmit");
}
