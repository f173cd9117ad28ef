#include <gtest/gtest.h>

#include <map>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tempnet/errors.hpp"
#include "tempnet/event_extraction.hpp"

using namespace tempnet;
using tempnet::testkit::NamedEvent;

namespace {

SessionSet set_of(std::vector<Session> sessions) {
  SessionSet s;
  s.sessions = std::move(sessions);
  std::sort(s.sessions.begin(), s.sessions.end(), session_less);
  return s;
}

}  // namespace

TEST(ExtractEvents, OverlapOfTwoSessions) {
  const auto ev = extract_events(set_of({{"u1", "a", 0, 100}, {"u2", "a", 50, 150}}));
  EXPECT_EQ(testkit::named(ev), (std::vector<NamedEvent>{{"a", {"u1", "u2"}, 50, 100}}));
}

TEST(ExtractEvents, SoloPresenceIsNoEvent) {
  const auto ev = extract_events(set_of({{"u1", "a", 0, 100}}));
  EXPECT_TRUE(ev.empty());
  EXPECT_EQ(ev.population(), 1u);
}

TEST(ExtractEvents, MembershipChangesSplitTheInterval) {
  const auto ev = extract_events(
      set_of({{"u1", "a", 0, 100}, {"u2", "a", 0, 100}, {"u3", "a", 40, 60}}));
  EXPECT_EQ(testkit::named(ev), (std::vector<NamedEvent>{{"a", {"u1", "u2"}, 0, 40},
                                                         {"a", {"u1", "u2"}, 60, 100},
                                                         {"a", {"u1", "u2", "u3"}, 40, 60}}));
  ASSERT_EQ(ev.size(), 3u);
  EXPECT_EQ(ev[0].t_begin, 0);
  EXPECT_EQ(ev[1].t_begin, 40);
  EXPECT_EQ(ev[2].t_begin, 60);
  for (EventId id = 0; id < ev.size(); ++id) EXPECT_EQ(ev[id].id, id);

  // Active time with two or more users, from the raw intervals: [0,100).
  double total = 0;
  for (const auto& e : ev) total += event_duration(e);
  EXPECT_DOUBLE_EQ(total, 100.0 / 60.0);
}

TEST(ExtractEvents, SameMembersAfterGapAreDistinctEvents) {
  const auto ev = extract_events(set_of(
      {{"u1", "a", 0, 40}, {"u1", "a", 50, 100}, {"u2", "a", 0, 100}}));
  EXPECT_EQ(testkit::named(ev), (std::vector<NamedEvent>{{"a", {"u1", "u2"}, 0, 40},
                                                         {"a", {"u1", "u2"}, 50, 100}}));
}

TEST(ExtractEvents, ReconnectWithoutGapKeepsOneEvent) {
  const auto ev = extract_events(set_of(
      {{"u1", "a", 0, 50}, {"u1", "a", 50, 100}, {"u2", "a", 0, 100}}));
  EXPECT_EQ(testkit::named(ev), (std::vector<NamedEvent>{{"a", {"u1", "u2"}, 0, 100}}));
}

TEST(ExtractEvents, DictionaryKeepsEveryUserSorted) {
  const auto ev = extract_events(set_of({{"zed", "a", 0, 10}, {"amy", "a", 5, 10}, {"bob", "b", 0, 9}}));
  EXPECT_EQ(ev.users(), (std::vector<UserId>{"amy", "bob", "zed"}));
  EXPECT_EQ(ev.find_user("bob"), UserIndex{1});
  EXPECT_FALSE(ev.find_user("nobody").has_value());
}

TEST(ExtractEvents, TwoPathFixture) {
  EXPECT_EQ(extract_events(testkit::two_path_sessions()), testkit::two_path_events());
}

TEST(ExtractEvents, FiveEventFixture) {
  EXPECT_EQ(testkit::named(extract_events(testkit::five_event_sessions())),
            testkit::named(testkit::five_event_events()));
}

TEST(EventMeasures, SizeAndDuration) {
  const auto ev = testkit::events_of({{"a", {"u1", "u2"}, 0, 3600}, {"a", {"u1", "u2", "u3"}, 3600, 3690}});
  EXPECT_EQ(event_size(ev[0]), 2u);
  EXPECT_EQ(event_size(ev[1]), 3u);
  EXPECT_DOUBLE_EQ(event_duration(ev[0]), 60.0);
  EXPECT_DOUBLE_EQ(event_duration(ev[1]), 1.5);
}

TEST(EventSetInvariants, RejectsMalformedEvents) {
  const std::vector<UserId> users{"a", "b"};
  EXPECT_THROW(EventSet(users, {{0, "x", {0}, 0, 10}}), InvariantError);
  EXPECT_THROW(EventSet(users, {{0, "x", {0, 1}, 10, 10}}), InvariantError);
  EXPECT_THROW(EventSet(users, {{0, "x", {0, 0}, 0, 10}}), InvariantError);
  EXPECT_THROW(EventSet(users, {{0, "x", {0, 7}, 0, 10}}), InvariantError);
}

TEST(EventSetInvariants, NormalizesOrderAndIds) {
  const std::vector<UserId> users{"b", "a"};
  const EventSet set(users, {{9, "x", {1, 0}, 20, 30}, {4, "y", {0, 1}, 5, 8}});
  EXPECT_EQ(set.users(), (std::vector<UserId>{"a", "b"}));
  EXPECT_EQ(set[0].t_begin, 5);
  EXPECT_EQ(set[0].id, 0u);
  EXPECT_EQ(set[1].id, 1u);
  EXPECT_EQ(set[1].members, (std::vector<UserIndex>{0, 1}));
}

TEST(EventsByUser, ListsInvolvedEvents) {
  const auto ev = testkit::five_event_events();
  const auto gamma = ev.events_by_user();
  EXPECT_EQ(gamma[*ev.find_user("A")], (std::vector<EventId>{0, 1, 2, 3}));
  EXPECT_EQ(gamma[*ev.find_user("E")], (std::vector<EventId>{4}));
}

TEST(RestrictToWindow, KeepsBeginTimesInHalfOpenWindow) {
  const auto ev = testkit::five_event_events();
  const auto sub = restrict_to_window(ev, {0, 70 * 60});
  ASSERT_EQ(sub.size(), 2u);
  EXPECT_EQ(sub[0].t_begin, 60 * 60);
  EXPECT_EQ(sub[1].t_begin, 70 * 60);
  EXPECT_EQ(sub.population(), ev.population());
}

TEST(EventCsv, RoundTrip) {
  const auto ev = extract_events(testkit::five_event_sessions());
  std::ostringstream out;
  write_events_csv(out, ev);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "event_id,ap,t_begin,t_end,size,members");
  std::istringstream in("# note\n" + out.str());
  EXPECT_EQ(read_events_csv(in), ev);
}

TEST(EventCsv, MalformedRowsThrow) {
  std::istringstream missing_header("0,a,0,10,2,u1;u2\n");
  EXPECT_THROW(read_events_csv(missing_header), InputError);
  std::istringstream size_mismatch("event_id,ap,t_begin,t_end,size,members\n0,a,0,10,3,u1;u2\n");
  EXPECT_THROW(read_events_csv(size_mismatch), InputError);
}

TEST(ExtractEventsProperty, MatchesPerSecondMembership) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const auto sessions = testkit::random_sessions(rng, 5, 2, 40);
    const auto ev = extract_events(sessions);
    ASSERT_EQ(testkit::named(ev), testkit::per_second_events(sessions)) << "trial " << trial;
  }
}

TEST(ExtractEventsProperty, PartitionStructure) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const auto ev = extract_events(testkit::random_sessions(rng, 6, 3, 60));
    std::map<ApId, const EventInteraction*> last_at;
    for (const auto& e : ev) {
      ASSERT_GE(event_size(e), 2u);
      ASSERT_LT(e.t_begin, e.t_end);
      auto& prev = last_at[e.ap];
      if (prev) {
        ASSERT_LE(prev->t_end, e.t_begin);
        if (prev->t_end == e.t_begin) ASSERT_NE(prev->members, e.members);
      }
      prev = &e;
    }
    // No user in two events at one instant.
    for (const auto& x : ev) {
      for (const auto& y : ev) {
        if (x.id >= y.id || x.t_end <= y.t_begin || y.t_end <= x.t_begin) continue;
        for (auto u : x.members) ASSERT_FALSE(y.contains(u));
      }
    }
  }
}
