from __future__ import annotations

import random

import pytest

from core.analysis import (
    EmptyMultiCurveError,
    ExponentVector,
    LiftError,
    MultiCurve,
    NotReachable,
    SubstitutionCycleError,
    cycle_section_product,
    exponent_vector,
    find_level_odometer,
    iterate_lift,
    levy_necessary_condition,
    odometer_check,
    order_profile,
    schreier_graph,
    schreier_path,
)
from core.budget import BudgetExceeded
from core.calculus import act
from core.catalog import WITTNER_A3_SUBSTITUTION, WITTNER_BASIS, get
from core.config import Settings
from core.decision import EqualityMode, equal, level_permutation
from core.dsl import parse, parse_word
from core.errors import LengthMismatchError
from core.specs import GroupWord
from core.tree import level_words

WITTNER_LOOP = "b2*b1*b0"


class TestOdometer:
    def test_adding_machine(self) -> None:
        """Test that the binary adding machine passes on levels 1..8."""
        report = odometer_check(get("adding_machine_2").system, parse_word("g"), 8)
        assert report.passed
        assert report.lines()[-1] == "verdict: acts as a d^n-cycle on levels 1..8"

    def test_wittner_loop(self) -> None:
        """Test the Wittner loop b2.b1.b0 as an odometer."""
        report = odometer_check(get("wittner").system, parse_word(WITTNER_LOOP), 8)
        assert report.passed

    def test_basilica_a_fails_at_level_two(self) -> None:
        """Test the report of a word that stops being a full cycle."""
        report = odometer_check(get("basilica").system, parse_word("a"), 2)
        assert report.levels == ((1, True), (2, False))
        assert report.first_failure == 2
        assert report.lines() == [
            "level 1: full cycle",
            "level 2: not a full cycle",
            "verdict: fails at level 2",
        ]

    def test_budget(self) -> None:
        """Test that odometer checks honor the work cap."""
        with pytest.raises(BudgetExceeded):
            odometer_check(
                get("adding_machine_2").system,
                parse_word("g"),
                6,
                Settings(work_unit_cap=100),
            )


class TestExponents:
    def test_wittner_loop(self) -> None:
        """Test exponent sums of the Wittner loop."""
        vector = exponent_vector(get("wittner").system, parse_word(WITTNER_LOOP))
        assert vector.as_dict() == {"b0": 1, "b1": 1, "b2": 1}
        assert vector["a0"] == 0

    def test_a3_substitution(self) -> None:
        """Test eliminating a3 in terms of the basis."""
        vector = exponent_vector(get("wittner").system, parse_word("a3"), WITTNER_A3_SUBSTITUTION)
        assert vector.as_dict() == {symbol: -1 for symbol in WITTNER_BASIS}

    def test_empty_word(self) -> None:
        """Test the zero vector."""
        vector = exponent_vector(get("wittner").system, GroupWord())
        assert vector.is_zero()
        assert vector == ExponentVector()

    def test_cyclic_substitution(self) -> None:
        """Test that substitutions referring to each other are rejected."""
        system = get("basilica").system
        substitutions = {"a": parse_word("b"), "b": parse_word("a^-1")}
        with pytest.raises(SubstitutionCycleError):
            exponent_vector(system, parse_word("a"), substitutions)

    def test_chained_substitution(self) -> None:
        """Test substitutions that refer to other substituted generators."""
        system = get("hanoi").system
        substitutions = {"a": parse_word("b^2"), "b": parse_word("c^-1")}
        assert exponent_vector(system, parse_word("a*c"), substitutions).as_dict() == {"c": -1}

    def test_additivity_and_conjugation(self) -> None:
        """Test additivity and conjugation invariance on random Wittner words."""
        system = get("wittner").system
        rng = random.Random(424242)
        symbols = system.symbols
        for _ in range(1000):
            u, v, c = (
                GroupWord(
                    tuple(
                        (rng.choice(symbols), rng.choice((1, -1)))
                        for _ in range(rng.randint(0, 8))
                    )
                )
                for _ in range(3)
            )
            substitutions = WITTNER_A3_SUBSTITUTION if rng.random() < 0.5 else None
            left = exponent_vector(system, u * v, substitutions)
            right = exponent_vector(system, u, substitutions) + exponent_vector(
                system, v, substitutions
            )
            assert left == right
            conjugate = c * u * c.inverse()
            assert exponent_vector(system, conjugate, substitutions) == exponent_vector(
                system, u, substitutions
            )


class TestLifts:
    def test_wittner_single_lift(self) -> None:
        """Test one renormalization lift of the Wittner loop."""
        lifted = cycle_section_product(get("wittner").system, parse_word(WITTNER_LOOP), 0)
        assert lifted == parse_word("a3^-1*b1*b0*a3*b2")

    def test_adding_machine(self) -> None:
        """Test that adding machines lift to themselves."""
        for degree in (2, 3, 4):
            system = get(f"adding_machine_{degree}").system
            assert cycle_section_product(system, parse_word("g"), 0) == parse_word("g")

    def test_basilica(self) -> None:
        """Test that the Basilica a lifts to b."""
        assert cycle_section_product(get("basilica").system, parse_word("a"), 0) == parse_word(
            "b"
        )

    @pytest.mark.parametrize(
        "k,expected",
        [
            (1, "a3^-1*b1*b0*a3*b2"),
            (2, "a3^-1*a2*b1*a2^-1*b0*a3*b2"),
            (5, "a3^-1*b2*b1*b0*a3"),
        ],
    )
    def test_wittner_chain(self, k: int, expected: str) -> None:
        system = get("wittner").system
        lifted = iterate_lift(system, parse_word(WITTNER_LOOP), 0, k)
        verdict = equal(system, lifted, parse_word(expected), EqualityMode.up_to_level(10))
        assert verdict.value is True

    def test_wittner_second_lift_is_exact(self) -> None:
        """Test the second Wittner lift word for word."""
        lifted = iterate_lift(get("wittner").system, parse_word(WITTNER_LOOP), 0, 2)
        assert lifted == parse_word("a3^-1*a2*b1*a2^-1*b0*a3*b2")

    def test_zero_iterations(self) -> None:
        """Test that zero iterations return the word unchanged."""
        word = parse_word(WITTNER_LOOP)
        assert iterate_lift(get("wittner").system, word, 0, 0) == word

    def test_lift_requires_full_cycle(self) -> None:
        """Test that a word without a full root cycle cannot be lifted."""
        with pytest.raises(LiftError) as excinfo:
            iterate_lift(get("basilica").system, parse_word("b"), 0, 1)
        assert excinfo.value.step == 1

    def test_lift_reports_failing_step(self) -> None:
        """Test that the error names the iteration that failed."""
        # a lifts to b, which fixes the root
        with pytest.raises(LiftError) as excinfo:
            iterate_lift(get("basilica").system, parse_word("a"), 0, 3)
        assert excinfo.value.step == 2

    def test_lift_orders(self) -> None:
        """Test that a lift acting as a full cycle on level n makes the word one on level n+1."""
        for name, text in [("adding_machine_2", "g"), ("wittner", WITTNER_LOOP)]:
            system = get(name).system
            word = parse_word(text)
            lifted = cycle_section_product(system, word, 0)
            for n in range(1, 6):
                below = level_permutation(system, lifted, n)
                if below.is_full_cycle():
                    above = level_permutation(system, word, n + 1)
                    assert above.order() == system.degree * below.order()


class TestLevy:
    def test_toy_fixed_section(self) -> None:
        """Test a curve whose fixed section is itself."""
        report = levy_necessary_condition(get("levy_toy").system, [parse_word("c")], 6)
        assert report.holds
        assert report.checks[0].matching_letters[0] == 0
        assert "necessary condition only" in report.verdict

    def test_basilica_b(self) -> None:
        """Test the Basilica curve b, which has no matching letter."""
        report = levy_necessary_condition(get("basilica").system, [parse_word("b")], 6)
        assert not report.holds
        assert report.checks[0].fixed_letters == (0, 1)
        assert report.verdict == (
            "no Levy cycle of this multicurve representable by these exact words"
        )

    def test_basilica_a_has_no_fixed_letter(self) -> None:
        """Test a curve moving every letter."""
        report = levy_necessary_condition(get("basilica").system, [parse_word("a")], 6)
        assert report.checks[0].fixed_letters == ()
        assert not report.holds
        assert report.lines()[0] == "curve 1: letters []"

    def test_empty_multicurve(self) -> None:
        """Test that empty multicurves are rejected."""
        with pytest.raises(EmptyMultiCurveError):
            levy_necessary_condition(get("basilica").system, [], 6)
        with pytest.raises(EmptyMultiCurveError):
            MultiCurve(())

    def test_two_curve_cycle(self) -> None:
        """Test a two-curve multicurve where only the first curve matches."""
        # g^2 = [g, g] matches g at both letters; g itself fixes no letter
        system = get("adding_machine_2").system
        curves = MultiCurve((parse_word("g^2"), parse_word("g")))
        report = levy_necessary_condition(system, curves, 4)
        assert report.checks[0].matching_letters == (0, 1)
        assert report.checks[1].fixed_letters == ()
        assert not report.holds

    def test_budget(self) -> None:
        """Test that section comparisons share one work cap."""
        # x = [x^2, x^2]: the compared section x doubles in length at each depth
        system = parse("degree 2\ngen x = [x^2, x^2]")
        curves = [parse_word("x")]
        with pytest.raises(BudgetExceeded):
            levy_necessary_condition(system, curves, 22, Settings(work_unit_cap=1000))
        assert levy_necessary_condition(system, curves, 4).holds


class TestSchreier:
    def test_single_move(self) -> None:
        """Test a one-move Hanoi solution."""
        system = get("hanoi").system
        gens = [parse_word(s) for s in "abc"]
        assert schreier_path(system, gens, (0,), (1,)) == parse_word("b")

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_hanoi_extreme_positions(self, n: int) -> None:
        system = get("hanoi").system
        gens = [parse_word(s) for s in "abc"]
        path = schreier_path(system, gens, (0,) * n, (1,) * n)
        assert isinstance(path, GroupWord)
        assert len(path) == 2**n - 1
        assert act(system, path, (0,) * n) == (1,) * n

    def test_same_vertex(self) -> None:
        """Test that a vertex reaches itself by the empty word."""
        gens = [parse_word("a")]
        assert schreier_path(get("hanoi").system, gens, (0, 2), (0, 2)).is_identity()

    def test_not_reachable(self) -> None:
        """Test a target outside the orbit."""
        system = get("hanoi").system
        result = schreier_path(system, [parse_word("a")], (0, 0), (1, 1))
        assert isinstance(result, NotReachable)
        assert str(result) == "not reachable"

    def test_length_mismatch(self) -> None:
        """Test that source and target must be on one level."""
        with pytest.raises(LengthMismatchError):
            schreier_path(get("hanoi").system, [parse_word("a")], (0,), (0, 1))

    def test_vertex_budget(self) -> None:
        """Test the vertex cap on Schreier searches."""
        with pytest.raises(BudgetExceeded):
            schreier_path(
                get("hanoi").system,
                [parse_word("a")],
                (0, 0, 0),
                (1, 1, 1),
                Settings(max_schreier_vertices=10),
            )

    @pytest.mark.parametrize("name,gen_names", [("hanoi", "abc"), ("basilica", "ab")])
    def test_paths_are_shortest(self, name: str, gen_names: str) -> None:
        system = get(name).system
        gens = [parse_word(s) for s in gen_names]
        labels = gens + [g.inverse() for g in gens]
        for n in (1, 2, 3):
            start = (0,) * n
            # breadth-first radii computed directly with act
            distance = {start: 0}
            frontier = [start]
            while frontier:
                following = []
                for vertex in frontier:
                    for label in labels:
                        image = act(system, label, vertex)
                        if image not in distance:
                            distance[image] = distance[vertex] + 1
                            following.append(image)
                frontier = following
            for target in level_words(n, system.degree):
                path = schreier_path(system, gens, start, target)
                if target in distance:
                    assert isinstance(path, GroupWord)
                    assert len(path) == distance[target]
                    assert act(system, path, start) == target
                else:
                    assert isinstance(path, NotReachable)

    def test_graph_edges(self) -> None:
        """Test that every edge of the level-2 Hanoi graph is a generator move."""
        system = get("hanoi").system
        edges = schreier_graph(system, [parse_word("a"), parse_word("b")], 2)
        assert len(edges) == 2 * 9
        assert all(act(system, parse_word(e.label), e.source) == e.target for e in edges)


class TestLevelInvariants:
    def test_order_profiles(self) -> None:
        """Test the order profile of short words in the Chebyshev C2 system."""
        profile = order_profile(
            get("chebyshev2_C2").system, [parse_word("a"), parse_word("b")], 2, 3
        )
        assert profile == {1: 5, 2: 4, 8: 8}
        assert sum(profile.values()) == 17

    def test_level_odometer_found(self) -> None:
        """Test that the adding machine finds itself."""
        system = get("adding_machine_2").system
        search = find_level_odometer(system, [parse_word("g")], 4)
        assert search.status == "found"
        assert search.word == parse_word("g")

    def test_level_odometer_in_basilica(self) -> None:
        """Test that the Basilica group contains a level-4 odometer."""
        system = get("basilica").system
        search = find_level_odometer(system, [parse_word("a"), parse_word("b")], 4)
        assert search.status == "found"
        assert search.word is not None
        assert level_permutation(system, search.word, 4).is_full_cycle()

    def test_level_odometer_obstructed(self) -> None:
        """Test a group too small to contain a full cycle."""
        system = get("rational_R").system
        search = find_level_odometer(system, [parse_word("ap")], 2)
        assert search.status == "obstructed"
        assert search.group_order == 2
        assert search.lines()[-1] == "verdict: not a formal mating"

    def test_level_odometer_budget(self) -> None:
        """Test that the element cap makes the search inconclusive."""
        system = get("hanoi").system
        gens = [parse_word(s) for s in "abc"]
        search = find_level_odometer(system, gens, 3, max_elements=3)
        assert search.status == "inconclusive"
        assert search.explored == 3
