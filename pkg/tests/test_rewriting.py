"""Unit tests for the string rewriting engine."""

import pytest
from hypothesis import given, settings, strategies as st

from sdskit.rewriting import (
    Alphabet,
    LEFTMOST,
    RIGHTMOST,
    RewriteStep,
    RewritingSystem,
    Rule,
    apply_step,
    check_local_confluence,
    classify,
    congruence_classes,
    critical_branchings,
    enumerate_steps,
    format_word,
    is_normal_form,
    knuth_bendix_pass,
    normalize,
    parse_word,
    replay,
    system_from_json,
    system_to_json,
    termination_certificate,
    words_up_to,
)

AB = Alphabet(("a", "b"))
ABC = Alphabet(("a", "b", "c"))


def make(alphabet, pairs):
    return RewritingSystem.from_pairs(alphabet, pairs)


def brute_force_steps(system, word):
    # independent oracle: scan every position against every rule lhs
    found = []
    for i in range(len(word)):
        for rule in system.rules:
            if word[i:i + len(rule.lhs)] == rule.lhs:
                found.append(RewriteStep(rule.rule_id, i))
    return sorted(found, key=lambda s: (s.position, s.rule_id))


def test_apply_step_replaces_at_position():
    rs = make(ABC, [((0, 1), (2,))])  # ab -> c
    assert apply_step(rs, (0, 0, 1, 1), RewriteStep(0, 1)) == (0, 2, 1)


def test_apply_step_rejects_mismatch():
    rs = make(AB, [((0, 1), (1, 0))])
    with pytest.raises(ValueError):
        apply_step(rs, (1, 1), RewriteStep(0, 0))


def test_rule_with_equal_sides_rejected():
    with pytest.raises(ValueError):
        Rule(0, (1, 2), (1, 2))


def test_empty_lhs_rejected():
    with pytest.raises(ValueError):
        Rule(0, (), (1,))


def test_duplicate_rule_rejected():
    with pytest.raises(ValueError):
        make(AB, [((0, 1), (1, 0)), ((0, 1), (1, 0))])


def test_enumerate_steps_ordering_and_oracle():
    # zzx with the rank-3 Knuth rules, z=3 > x=1
    from sdskit.young import knuth_srs
    rs = knuth_srs(3)
    for word in [(2, 2, 0), (2, 0, 1), (1, 2, 0, 2), (0, 0, 0)]:
        steps = enumerate_steps(rs, word)
        assert steps == brute_force_steps(rs, word)
        positions = [s.position for s in steps]
        assert positions == sorted(positions)


def test_enumerate_steps_on_normal_form_is_empty():
    rs = make(AB, [((0, 1), (1, 0))])
    assert enumerate_steps(rs, (1, 1, 0)) == []


def test_enumerate_steps_two_positions():
    rs = make(AB, [((0,), (1,))])  # a -> b
    steps = enumerate_steps(rs, (0, 0))
    assert [(s.rule_id, s.position) for s in steps] == [(0, 0), (0, 1)]


def test_normalize_trivial_on_normal_form():
    rs = make(AB, [((0, 1), (1, 0))])
    res = normalize(rs, (1, 1))
    assert res.reached_normal_form and res.path.steps == ()


def test_normalize_leftmost_hand_simulation():
    # aba with ab -> ba reduces in one step to baa
    rs = make(AB, [((0, 1), (1, 0))])
    res = normalize(rs, (0, 1, 0), LEFTMOST)
    assert res.reached_normal_form
    assert res.target == (1, 0, 0)
    assert len(res.path.steps) == 1


def test_normalize_budget_exhaustion_flagged():
    rs = make(AB, [((0,), (0, 0))])  # a -> aa never terminates
    res = normalize(rs, (0,), budget=7)
    assert not res.reached_normal_form
    assert len(res.path.steps) == 7


def test_normalize_rightmost_differs_from_leftmost_in_steps():
    rs = make(AB, [((0, 1), (1, 0))])
    word = (0, 1, 0, 1)
    left = normalize(rs, word, LEFTMOST)
    right = normalize(rs, word, RIGHTMOST)
    assert left.target == right.target == (1, 1, 0, 0)
    assert left.path.steps[0].position == 0
    assert right.path.steps[0].position == 2


def test_normalize_column_presentation_golden():
    from sdskit.young import column_presentation, read_tableau
    pres = column_presentation(6)
    idx = {read_tableau(c): i for i, c in enumerate(pres.generators)}
    word = tuple(idx[(x,)] for x in (4, 5, 3, 1, 2, 6))
    res = normalize(pres.system, word, LEFTMOST)
    assert res.reached_normal_form
    labels = [pres.system.alphabet.name(i) for i in res.target]
    assert labels == ["c_431", "c_52", "c_6"]


def test_replay_checks_target():
    rs = make(AB, [((0, 1), (1, 0))])
    res = normalize(rs, (0, 1))
    assert replay(rs, res.path) == (1, 0)


def test_critical_branchings_disjoint_alphabets_empty():
    rs = make(Alphabet(("a", "b", "c", "d")), [((0, 1), (0,)), ((2, 3), (2,))])
    assert critical_branchings(rs) == []


def test_critical_branchings_self_overlap():
    rs = make(AB, [((0, 0), (1,))])  # aa -> b overlaps itself on aaa
    branchings = critical_branchings(rs)
    assert len(branchings) == 1
    assert branchings[0].source == (0, 0, 0)
    assert branchings[0].kind == "critical"


def test_critical_branchings_inclusion():
    rs = make(ABC, [((0, 1, 0), (2,)), ((1,), (2,))])
    sources = {b.source for b in critical_branchings(rs)}
    assert (0, 1, 0) in sources


def test_semi_quadratic_sources_have_length_three():
    from sdskit.chinese import completed_presentation
    system = completed_presentation(3).system
    assert classify(system).semi_quadratic
    branchings = critical_branchings(system)
    assert all(len(b.source) == 3 for b in branchings)
    # branching count equals the number of generator triples with both
    # overlapping pairs reducible (brute-force oracle)
    lhs = {r.lhs for r in system.rules}
    k = len(system.alphabet)
    count = sum(1 for u in range(k) for v in range(k) for t in range(k)
                if (u, v) in lhs and (v, t) in lhs)
    assert len(branchings) == count


def test_local_confluence_empty_system_vacuous():
    rs = make(AB, [])
    assert check_local_confluence(rs).confluent


def test_local_confluence_detects_failure():
    # ba -> x, ab -> y join nothing on bab
    rs = make(Alphabet(("a", "b", "x", "y")), [((1, 0), (2,)), ((0, 1), (3,))])
    report = check_local_confluence(rs)
    assert not report.confluent


def test_precolumn_has_the_expected_nonconfluent_branchings():
    from sdskit.chinese import precolumn_presentation
    report = check_local_confluence(precolumn_presentation(3).system)
    assert not report.confluent
    assert len(report.failures) > 0


def test_congruence_classes_chinese_321():
    from sdskit.chinese import chinese_relations
    part = congruence_classes(chinese_relations(3), 4)
    assert part.exact
    block = part.class_of((2, 1, 0))  # the word 3 2 1
    assert block == frozenset({(2, 1, 0), (2, 0, 1), (1, 2, 0)})


def test_congruence_classes_empty_system_singletons():
    part = congruence_classes(make(AB, []), 3)
    assert all(len(c) == 1 for c in part.classes())


def test_congruence_classes_knuth_matches_fibers():
    from sdskit.young import knuth_srs, young_right
    part = congruence_classes(knuth_srs(3), 4)
    structure = young_right(3)
    for block in part.classes():
        images = {structure.read(structure.constructor(tuple(x + 1 for x in w)))
                  for w in block}
        assert len(images) == 1


@given(st.integers(min_value=1, max_value=3))
@settings(max_examples=10, deadline=None)
def test_congruence_refinement_monotone(max_len):
    from sdskit.chinese import chinese_relations
    rs = chinese_relations(3)
    small = congruence_classes(rs, max_len)
    large = congruence_classes(rs, max_len + 1)
    for block in small.classes():
        reps = {large.representative[w] for w in block}
        assert len(reps) == 1


def test_knuth_bendix_pass_confluent_input_unchanged():
    from sdskit.chinese import completed_presentation, completed_order_less
    system = completed_presentation(3).system
    result = knuth_bendix_pass(system, completed_order_less(3))
    assert result.added == ()
    assert result.system.pairs == system.pairs


def test_knuth_bendix_pass_keeps_input_rules():
    from sdskit.chinese import precolumn_presentation, completed_order_less
    pre = precolumn_presentation(3)
    result = knuth_bendix_pass(pre.system, completed_order_less(3))
    assert pre.system.pairs <= result.system.pairs


def test_knuth_bendix_unorientable_reported():
    # a -> b and a -> c cannot be joined under an order where b, c tie
    rs = make(ABC, [((0,), (1,)), ((0,), (2,))])
    result = knuth_bendix_pass(rs, lambda u, v: False)
    assert result.unorientable


def test_classify_shapes():
    from sdskit.young import knuth_srs
    assert not classify(knuth_srs(3)).semi_quadratic
    from sdskit.chinese import commutation_rule_pairs, qn_generators, gen_label
    gens = qn_generators(3)
    idx = {g: i for i, g in enumerate(gens)}
    alphabet = Alphabet(tuple(gen_label(g) for g in gens))
    pairs = [(tuple(idx[g] for g in l), tuple(idx[g] for g in r))
             for l, r in sorted(commutation_rule_pairs(3))]
    flags = classify(make(alphabet, pairs))
    assert flags.quadratic and flags.semi_quadratic


def test_classify_reduced():
    reducible = make(AB, [((0, 1), (1,)), ((0, 1, 1), (0,))])
    assert not classify(reducible).reduced


def test_termination_certificate_rejects_growth():
    rs = make(AB, [((0,), (0, 0))])
    cert = termination_certificate(rs, len, lambda a, b: False)
    assert not cert.passes and cert.witness is rs.rules[0]


def test_termination_certificate_ties_need_letter_drop():
    rs = make(AB, [((1, 0), (0, 1))])
    assert termination_certificate(rs, len, lambda a, b: a < b).passes
    assert not termination_certificate(rs, len, lambda a, b: a > b).passes


def test_json_round_trip():
    from sdskit.young import knuth_srs
    rs = knuth_srs(2)
    data = system_to_json(rs)
    assert data["alphabet"] == ["1", "2"]
    assert {(tuple(r["lhs"]), tuple(r["rhs"])) for r in data["rules"]} == \
        {((1, 0, 0), (0, 1, 0)), ((1, 1, 0), (1, 0, 1))}
    back = system_from_json(data)
    assert back.pairs == rs.pairs


def test_word_text_format():
    assert parse_word(ABC, "a c b") == (0, 2, 1)
    assert parse_word(ABC, "") == ()
    assert format_word(ABC, (2, 0)) == "c a"


def test_words_up_to_order():
    words = words_up_to(2, 2)
    assert words == [(), (0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1)]


@st.composite
def random_system_and_word(draw):
    n_letters = draw(st.integers(2, 3))
    n_rules = draw(st.integers(1, 3))
    pairs = []
    seen = set()
    for _ in range(n_rules):
        lhs = tuple(draw(st.lists(st.integers(0, n_letters - 1), min_size=1, max_size=3)))
        rhs = tuple(draw(st.lists(st.integers(0, n_letters - 1), min_size=0, max_size=3)))
        if lhs != rhs and (lhs, rhs) not in seen:
            seen.add((lhs, rhs))
            pairs.append((lhs, rhs))
    alphabet = Alphabet(tuple("abcdef"[:n_letters]))
    word = tuple(draw(st.lists(st.integers(0, n_letters - 1), max_size=6)))
    return RewritingSystem.from_pairs(alphabet, pairs), word


@given(random_system_and_word())
@settings(max_examples=60, deadline=None)
def test_normalize_path_replays(data):
    system, word = data
    res = normalize(system, word, budget=20)
    assert replay(system, res.path) == res.target
    if res.reached_normal_form:
        assert is_normal_form(system, res.target)


@given(random_system_and_word())
@settings(max_examples=60, deadline=None)
def test_enumerate_steps_matches_brute_force(data):
    system, word = data
    assert enumerate_steps(system, word) == brute_force_steps(system, word)
