#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tempora/errors.hpp"
#include "tempora/signal.hpp"

using namespace tempora;

namespace {

const TimeAxis kAxis{Rational(1), 4, AxisKind::Internal};
const ValueSpace kLetters = ValueSpace::alphabet({"a", "b", "c", "d"});

Signal letters(std::vector<std::string> symbols) {
    std::vector<Value> values(symbols.begin(), symbols.end());
    return Signal::dense(kAxis, kLetters, std::move(values));
}

}  // namespace

TEST_CASE("value space membership") {
    CHECK(kLetters.contains(Value("a")));
    CHECK_FALSE(kLetters.contains(Value("z")));
    auto interval = ValueSpace::interval(Rational(0), Rational(40));
    CHECK(interval.contains(Value(Rational(21, 2))));
    CHECK_FALSE(interval.contains(Value(Rational(41))));
    auto pair = ValueSpace::product({kLetters, interval});
    CHECK(pair.contains(Value({Value("a"), Value(Rational(3))})));
    CHECK_FALSE(pair.contains(Value({Value("a")})));
    CHECK_THROWS(ValueSpace::alphabet({}));
    CHECK_THROWS(ValueSpace::alphabet({"a", "a"}));
    CHECK_THROWS(ValueSpace::interval(Rational(2), Rational(1)));
}

TEST_CASE("signals reject off-grid and off-space values") {
    Signal s(kAxis, kLetters);
    CHECK_THROWS_AS(s.set(5, Value("a")), OutOfRangeError);
    CHECK_THROWS_AS(s.set(0, Value("z")), PreconditionError);
    s.set(2, Value("b"));
    CHECK(s.at(2) == Value("b"));
    CHECK_FALSE(s.at(1).has_value());
    CHECK(s.last_defined() == 2);
    CHECK(Signal(kAxis, kLetters).last_defined() == -1);
}

TEST_CASE("self-concatenation is the identity") {
    Signal w = letters({"a", "b", "c", "d", "a"});
    for (Tick t = 0; t <= 4; ++t) CHECK(concat_signal(w, t, t, w) == w);
}

TEST_CASE("two-case concatenation formula") {
    // w1 = [a,a,b,b,b], w2 = [c,c,c,d,d], t1 = 1, t2 = 3:
    // ticks >= 1 read w2 at t+2, which leaves the grid from t = 3 on.
    Signal w1 = letters({"a", "a", "b", "b", "b"});
    Signal w2 = letters({"c", "c", "c", "d", "d"});
    Signal w3 = concat_signal(w1, 1, 3, w2);
    CHECK(w3.at(0) == Value("a"));
    CHECK(w3.at(1) == Value("d"));
    CHECK(w3.at(2) == Value("d"));
    CHECK_FALSE(w3.at(3).has_value());
    CHECK_FALSE(w3.at(4).has_value());
}

TEST_CASE("concatenation rejects mismatched axes or spaces") {
    Signal w1 = letters({"a", "a", "a", "a", "a"});
    Signal other(TimeAxis(Rational(1), 6), kLetters);
    CHECK_THROWS_AS(concat_signal(w1, 0, 0, other), IncompatibleSignalsError);
}

TEST_CASE("projection") {
    auto uy = ValueSpace::product({ValueSpace::alphabet({"u0", "u1"}),
                                   ValueSpace::alphabet({"y0", "y1"})});
    Signal s(kAxis, uy);
    s.set(0, Value({Value("u0"), Value("y1")}));
    s.set(2, Value({Value("u1"), Value("y0")}));
    Signal y = project(s, 1);
    CHECK(y.at(0) == Value("y1"));
    CHECK(y.at(2) == Value("y0"));
    CHECK_FALSE(y.at(1).has_value());

    // Empty-domain signals project to empty-domain signals.
    CHECK(project(Signal(kAxis, uy), 0).empty_domain());

    // A contiguous range yields a pair signal (the <u,y> of a <u,y,d> triple).
    auto uyd = ValueSpace::product({ValueSpace::alphabet({"u"}),
                                    ValueSpace::alphabet({"y"}),
                                    ValueSpace::alphabet({"d"})});
    Signal triple(kAxis, uyd);
    triple.set(1, Value({Value("u"), Value("y"), Value("d")}));
    Signal pair = project_range(triple, 0, 1);
    CHECK(pair.at(1) == Value({Value("u"), Value("y")}));

    CHECK_THROWS_AS(project(letters({"a"}), 0), PreconditionError);
    CHECK_THROWS_AS(project(s, 2), OutOfRangeError);
}

TEST_CASE("restriction") {
    Signal w = letters({"a", "b", "c", "d", "a"});
    CHECK(restrict(w, 4) == w);
    CHECK(restrict(w, 0, true).empty_domain());
    Signal head = restrict(w, 1);
    CHECK(head.at(0) == Value("a"));
    CHECK(head.at(1) == Value("b"));
    CHECK_FALSE(head.at(2).has_value());
}

TEST_CASE("concatenation associativity at matched cut points") {
    std::mt19937_64 rng(90125);
    const std::vector<std::string> alphabet = {"a", "b", "c", "d"};
    for (int trial = 0; trial < 300; ++trial) {
        auto random_signal = [&] {
            Signal s(kAxis, kLetters);
            for (Tick t = 0; t <= 4; ++t)
                if (rng() % 4) s.set(t, Value(alphabet[rng() % alphabet.size()]));
            return s;
        };
        Signal w1 = random_signal(), w2 = random_signal(), w3 = random_signal();
        // t2 <= t1 keeps every intermediate read on the grid; t3 >= t1 keeps
        // the outer cut inside the already-concatenated suffix.
        Tick t1 = static_cast<Tick>(rng() % 5);
        Tick t2 = static_cast<Tick>(rng() % (t1 + 1));
        Tick t4 = static_cast<Tick>(rng() % 5);
        Tick t3 = t1 + static_cast<Tick>(rng() % (5 - t1));
        Signal lhs = concat_signal(concat_signal(w1, t1, t2, w2), t3, t4, w3);
        Signal rhs = concat_signal(w1, t1, t2, concat_signal(w2, t3 - t1 + t2, t4, w3));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("the strict past is preserved by concatenation") {
    std::mt19937_64 rng(555);
    const std::vector<std::string> alphabet = {"a", "b", "c", "d"};
    for (int trial = 0; trial < 300; ++trial) {
        Signal w1(kAxis, kLetters), w2(kAxis, kLetters);
        for (Tick t = 0; t <= 4; ++t) {
            if (rng() % 3) w1.set(t, Value(alphabet[rng() % alphabet.size()]));
            if (rng() % 3) w2.set(t, Value(alphabet[rng() % alphabet.size()]));
        }
        Tick t1 = static_cast<Tick>(rng() % 5);
        Tick t2 = static_cast<Tick>(rng() % 5);
        Signal joined = concat_signal(w1, t1, t2, w2);
        CHECK(restrict(joined, t1, true) == restrict(w1, t1, true));
        for (const auto& [t, v] : joined.values) {
            CHECK(joined.axis.contains(t));
            CHECK(joined.space.contains(v));
        }
    }
}
