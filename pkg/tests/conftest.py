import random

import pytest

from ellisub import (AnalysisConfig, analyze_substitution, is_aperiodic,
                     parse_substitution)
from ellisub.golden import CASES
from ellisub.substitution import Alphabet, Substitution


def make_substitution(rule_words: list[str]) -> Substitution:
    letters = "abcdefghij"[: len(rule_words)]
    return parse_substitution(
        "\n".join(f"{letters[i]} -> {word}" for i, word in enumerate(rule_words)))


def random_simplified_aperiodic(rng: random.Random, size: int, length: int) -> Substitution | None:
    """One attempt: identity boundary columns, random interior columns; both
    simplified conditions hold by construction once every rule sees every
    letter, so only aperiodicity needs filtering."""
    base = list(range(size))
    cols = [tuple(base)]
    for _ in range(length - 2):
        perm = base[:]
        rng.shuffle(perm)
        cols.append(tuple(perm))
    cols.append(tuple(base))
    rules = tuple(tuple(col[a] for col in cols) for a in range(size))
    if any(len(set(word)) != size for word in rules):
        return None
    alphabet = Alphabet(tuple("abcdefghij"[:size]))
    sub = Substitution(alphabet, rules)
    if not is_aperiodic(sub).is_aperiodic:
        return None
    return sub


def build_random_corpus(count: int = 20, seed: int = 20240817) -> list[Substitution]:
    rng = random.Random(seed)
    shapes = [(2, 4), (3, 4), (2, 5), (3, 5), (4, 5), (2, 6), (3, 6), (4, 6)]
    found: list[Substitution] = []
    k = 0
    while len(found) < count:
        size, length = shapes[k % len(shapes)]
        k += 1
        sub = random_simplified_aperiodic(rng, size, length)
        if sub is not None:
            found.append(sub)
    return found


@pytest.fixture(scope="session")
def golden_subs() -> dict:
    return {name: parse_substitution(source) for name, source in CASES.items()}


@pytest.fixture(scope="session")
def golden_simplified(golden_subs) -> dict:
    from ellisub import simplify
    return {name: simplify(sub)[0] for name, sub in golden_subs.items()}


@pytest.fixture(scope="session")
def golden_reports(golden_subs) -> dict:
    return {name: analyze_substitution(sub, AnalysisConfig(verify=True))
            for name, sub in golden_subs.items()}


@pytest.fixture(scope="session")
def random_corpus() -> list[Substitution]:
    return build_random_corpus()


@pytest.fixture(scope="session")
def random_reports(random_corpus) -> list:
    from ellisub import global_description
    return [global_description(sub) for sub in random_corpus]


@pytest.fixture(scope="session")
def random_oracle(random_corpus) -> list:
    from ellisub import oracle_equivalence
    return [oracle_equivalence(sub) for sub in random_corpus]
