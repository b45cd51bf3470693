import pytest

from ellisub.errors import ParseError, ResourceLimitError, ValidationError
from ellisub.perms import compose, identity
from ellisub.substitution import (allowed_two_words, columns,
                                  compose_substitutions, fixed_point_block,
                                  fixed_points, is_aperiodic, is_bijective,
                                  is_primitive, is_simplified, junction_map,
                                  letter_at, parse_any, parse_substitution,
                                  simplify, substitution_from_json,
                                  substitution_power, substitution_to_json,
                                  substitution_to_text, word_complexity)
from conftest import make_substitution

THUE_MORSE = "a -> abba\nb -> baab\n"
PERIODIC = "a -> aba\nb -> bab\n"


# --- parsing ---------------------------------------------------------------

def test_parse_thue_morse():
    sub = parse_substitution(THUE_MORSE)
    assert sub.size == 2 and sub.length == 4
    assert sub.rule_word("a") == "abba"


def test_parse_comments_and_blanks():
    sub = parse_substitution("# comment\n\na -> ab  # trailing\nb -> ba\n")
    assert sub.rule_word("b") == "ba"


def test_parse_rejects_length_one():
    with pytest.raises(ValidationError, match="length-1"):
        parse_substitution("a -> a\nb -> b\n")


def test_parse_rejects_duplicate_rule():
    with pytest.raises(ParseError, match="duplicate"):
        parse_substitution("a -> ab\nb -> ba\nb -> ab\n")


def test_parse_rejects_unknown_letter():
    with pytest.raises(ParseError, match="unknown letter"):
        parse_substitution("a -> ac\nb -> ba\n")
    with pytest.raises(ParseError) as err:
        parse_substitution("a -> ab\nb -> bc\n")
    assert err.value.line == 2


def test_parse_rejects_unequal_lengths():
    with pytest.raises(ParseError, match="unequal"):
        parse_substitution("a -> ab\nb -> bab\n")


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as err:
        parse_substitution("a -> ab\nnonsense line\n")
    assert err.value.line == 2


def test_json_roundtrip():
    sub = parse_substitution(THUE_MORSE)
    again = substitution_from_json(substitution_to_json(sub))
    assert again == sub
    assert parse_substitution(substitution_to_text(sub)) == sub


def test_parse_any_dispatches():
    assert parse_any(THUE_MORSE).length == 4
    assert parse_any('{"alphabet": ["a", "b"], "rules": {"a": "abba", "b": "baab"}}').length == 4


def test_json_missing_rule():
    with pytest.raises(ParseError, match="missing rule"):
        substitution_from_json({"alphabet": ["a", "b"], "rules": {"a": "ab"}})


# --- columns and powers ----------------------------------------------------

def test_columns_thue_morse():
    sub = parse_substitution(THUE_MORSE)
    ident, swap = identity(2), (1, 0)
    assert columns(sub) == (ident, swap, swap, ident)


def test_columns_mixed_transpositions():
    sub = make_substitution(["abaa", "bacb", "ccbc"])
    cols = columns(sub)
    assert cols[0] == cols[3] == identity(3)
    assert cols[1] == (1, 0, 2)  # swaps the first two letters
    assert cols[2] == (0, 2, 1)  # swaps the last two


def test_constant_columns_are_not_bijective():
    sub = make_substitution(["ab", "ab"])
    assert not is_bijective(sub)
    assert is_bijective(parse_substitution(THUE_MORSE))


def test_power_one_is_identity_operation():
    sub = parse_substitution(THUE_MORSE)
    assert substitution_power(sub, 1) == sub


def test_thue_morse_square_rules_and_columns():
    sub = parse_substitution(THUE_MORSE)
    square = substitution_power(sub, 2)
    assert square.rule_word("a") == "abbabaabbaababba"
    cols, square_cols = columns(sub), columns(square)
    for k in range(4):
        for j in range(4):
            assert square_cols[k * 4 + j] == compose(cols[j], cols[k])


def test_composition_column_law_on_random_pairs():
    import random
    rng = random.Random(7)
    for _ in range(10):
        size = rng.choice((2, 3))
        def rand_sub(length):
            words = []
            for a in range(size):
                words.append("".join("abc"[rng.randrange(size)] for _ in range(length)))
            try:
                return make_substitution(words)
            except ValidationError:
                return None
        outer, inner = rand_sub(rng.choice((2, 3))), rand_sub(rng.choice((2, 3)))
        if outer is None or inner is None:
            continue
        comp = compose_substitutions(outer, inner)
        oc, ic, cc = columns(outer), columns(inner), columns(comp)
        for k in range(inner.length):
            for j in range(outer.length):
                assert cc[k * outer.length + j] == tuple(
                    oc[j][ic[k][a]] for a in range(size))


def test_power_columns_match_iterated_products(golden_simplified):
    # columns of sub^n agree with the letterwise products, for n = 2 and 3
    for name, sub in golden_simplified.items():
        base = columns(sub)
        for n in (2, 3):
            power_cols = columns(substitution_power(sub, n))
            prev = columns(substitution_power(sub, n - 1)) if n > 2 else base
            for k in range(len(prev)):
                for j in range(sub.length):
                    assert power_cols[k * sub.length + j] == compose(base[j], prev[k])


def test_alphabet_mismatch_rejected():
    a = parse_substitution(THUE_MORSE)
    b = make_substitution(["aba", "bab", "cca"])
    with pytest.raises(ValidationError, match="different alphabets"):
        compose_substitutions(a, b)


def test_power_letter_guard():
    sub = parse_substitution(THUE_MORSE)
    with pytest.raises(ResourceLimitError):
        substitution_power(sub, 13)  # 4^13 > 10^7


# --- primitivity -----------------------------------------------------------

def test_primitive_cases():
    assert is_primitive(parse_substitution(THUE_MORSE))
    assert is_primitive(make_substitution(["abaa", "bacb", "ccbc"]))


def test_unreachable_letter_is_not_primitive():
    sub = make_substitution(["ab", "ba", "cc"])
    assert not is_primitive(sub)


def test_cyclic_occurrence_graph_is_not_primitive():
    sub = make_substitution(["bb", "aa"])
    assert not is_primitive(sub)


# --- two-letter words ------------------------------------------------------

def test_two_words_mixed_transpositions():
    fiber = allowed_two_words(make_substitution(["abaa", "bacb", "ccbc"]))
    assert fiber.size == 7
    labels = fiber.labels(make_substitution(["abaa", "bacb", "ccbc"]).alphabet)
    assert labels == ("aa", "ab", "ac", "ba", "bc", "cb", "cc")


def test_two_words_thue_morse():
    assert allowed_two_words(parse_substitution(THUE_MORSE)).size == 4


def test_two_words_periodic():
    fiber = allowed_two_words(parse_substitution(PERIODIC))
    assert fiber.size == 2


def test_junction_closure_is_stable():
    for words in (["abba", "baab"], ["abaa", "bacb", "ccbc"], ["abc", "bca", "cab"]):
        sub = make_substitution(words)
        fiber = allowed_two_words(sub)
        assert {junction_map(sub, p) for p in fiber.pairs} <= set(fiber.pairs)


# --- complexity and aperiodicity -------------------------------------------

def test_word_complexity_small():
    tm = parse_substitution(THUE_MORSE)
    assert word_complexity(tm, 1) == 2
    assert word_complexity(tm, 2) == 4
    assert word_complexity(make_substitution(["abaa", "bacb", "ccbc"]), 2) == 7


def test_word_complexity_nondecreasing():
    tm = parse_substitution(THUE_MORSE)
    values = [word_complexity(tm, n) for n in range(1, 12)]
    assert values == sorted(values)


def test_periodic_verdict():
    verdict = is_aperiodic(parse_substitution(PERIODIC))
    assert verdict.kind == "periodic"
    assert verdict.period_evidence == 2


def test_periodic_verdict_matches_explicit_period():
    # the subshift of aba/bab is the two-point orbit of ...ababab...
    sub = parse_substitution(PERIODIC)
    word = substitution_power(sub, 3).rules[0]
    assert all(word[i] == word[i % 2] for i in range(len(word)))


def test_aperiodic_verdicts():
    assert is_aperiodic(parse_substitution(THUE_MORSE)).is_aperiodic
    assert is_aperiodic(make_substitution(["abaa", "bacb", "ccbc"])).is_aperiodic


def test_low_bound_is_inconclusive():
    verdict = is_aperiodic(parse_substitution(THUE_MORSE), bound=3)
    assert verdict.kind == "inconclusive"
    assert verdict.bound == 3


# --- simplification ---------------------------------------------------------

def test_thue_morse_already_simplified():
    sub = parse_substitution(THUE_MORSE)
    result, exponent = simplify(sub)
    assert exponent == 1 and result == sub
    assert is_simplified(sub)


def test_cyclic_rotation_needs_cube():
    sub = make_substitution(["abc", "bca", "cab"])
    assert not is_simplified(sub)
    result, exponent = simplify(sub)
    assert exponent == 3
    assert result.length == 27
    assert is_simplified(result)


def test_all_letters_condition_forces_square():
    # junction map is trivial but one rule misses a letter, so the power jumps
    sub = make_substitution(["abaa", "bacb", "ccbc"])
    result, exponent = simplify(sub)
    assert exponent == 2
    assert is_simplified(result)
    assert allowed_two_words(result).size == 7  # language is power-invariant


def test_simplify_output_conditions(random_corpus):
    for sub in random_corpus[:5]:
        result, exponent = simplify(sub)
        assert exponent == 1  # generator emits simplified substitutions
        cols = columns(result)
        assert cols[0] == cols[-1] == identity(result.size)
        assert all(len(set(w)) == result.size for w in result.rules)
        fiber = allowed_two_words(result)
        assert all(junction_map(result, p) == p for p in fiber.pairs)


def test_simplify_rejects_bad_input():
    with pytest.raises(ValidationError, match="bijective"):
        simplify(make_substitution(["ab", "ab"]))
    with pytest.raises(ValidationError, match="primitive"):
        simplify(make_substitution(["ab", "ba", "cc"]))


# --- fixed points -----------------------------------------------------------

def test_fixed_points_match_two_words():
    tm = parse_substitution(THUE_MORSE)
    assert fixed_points(tm) == allowed_two_words(tm)
    with pytest.raises(ValidationError, match="simplified"):
        fixed_points(make_substitution(["abc", "bca", "cab"]))


def test_fixed_points_exceed_alphabet(golden_subs, random_corpus):
    from ellisub import simplify as simp
    for sub in list(golden_subs.values()) + random_corpus[:5]:
        result, _ = simp(sub)
        assert fixed_points(result).size > result.size


def test_fixed_point_block_levels():
    tm = parse_substitution(THUE_MORSE)
    assert fixed_point_block(tm, 0, 0) == "a"
    assert fixed_point_block(tm, 0, 1, side="right") == "abba"
    assert fixed_point_block(tm, 0, 2) == "abbabaabbaababba"  # theta(abba) letterwise
    assert fixed_point_block(tm, 0, 1, side="left") == "abba"


def test_fixed_point_block_prefix_coherence():
    tm = parse_substitution(THUE_MORSE)
    for level in range(4):
        longer = fixed_point_block(tm, 1, level + 1)
        assert longer.startswith(fixed_point_block(tm, 1, level))


def test_fixed_point_block_starts_with_its_letter(golden_reports):
    for report in golden_reports.values():
        sub = report.substitution
        for a in range(sub.size):
            assert fixed_point_block(sub, a, 1)[0] == sub.alphabet.letters[a]


def test_letter_at_agrees_with_blocks():
    tm = parse_substitution(THUE_MORSE)
    block = fixed_point_block(tm, 0, 3)
    index = {c: i for i, c in enumerate(tm.alphabet.letters)}
    for p in range(len(block)):
        assert letter_at(tm, (1, 0), p) == index[block[p]]
    # left side of the fixed point b.a is the block of b read backwards from 0
    left = fixed_point_block(tm, 1, 3)
    for k in range(1, len(left) + 1):
        assert letter_at(tm, (1, 0), -k) == index[left[-k]]
