"""Constant-length substitutions: parsing, validation, powers, simplification,
allowed words, fixed points and word complexity.

A substitution maps each letter of a finite alphabet to a word of one fixed
length.  Letters are canonicalized to indices 0..s-1 internally; the original
symbols survive only for I/O.  Reading a rule column-wise gives the column
maps: column j sends a letter to letter j of its rule word.  The substitution
is *bijective* when every column map is a permutation.

A bijective substitution is *simplified* when (1) every periodic point of the
substitution acting on its shift space is already a fixed point (forcing the
first and last column maps to be the identity) and (2) every rule word
contains every letter.  Both conditions hold for a suitable power, computed by
:func:`simplify`.  For simplified substitutions the fixed points correspond
one-to-one to the allowed two-letter words; that finite set is the singular
fiber on which all later semigroup computation happens.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import lcm

from .errors import ParseError, ResourceLimitError, ValidationError
from .perms import identity, is_perm

LETTER_LIMIT = 10**7  # refuse to materialize words longer than this


@dataclass(frozen=True)
class Alphabet:
    """Ordered list of distinct single-character symbols, size >= 2."""

    letters: tuple[str, ...]

    def __post_init__(self):
        if len(self.letters) < 2:
            raise ValidationError("alphabet needs at least 2 letters")
        if len(set(self.letters)) != len(self.letters):
            raise ValidationError("alphabet has duplicate letters")
        for sym in self.letters:
            if len(sym) != 1 or not sym.isalnum():
                raise ValidationError(f"letter {sym!r} is not a single alphanumeric symbol")

    @property
    def size(self) -> int:
        return len(self.letters)

    def index(self, sym: str) -> int:
        try:
            return self.letters.index(sym)
        except ValueError:
            raise ValidationError(f"unknown letter {sym!r}") from None


@dataclass(frozen=True)
class Substitution:
    """One rule word per letter, all of the same length >= 2.

    ``rules[a][j]`` is the letter index at position j of the image of letter a.
    """

    alphabet: Alphabet
    rules: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        s = self.alphabet.size
        if len(self.rules) != s:
            raise ValidationError(f"expected {s} rules, got {len(self.rules)}")
        length = len(self.rules[0])
        if length < 2:
            raise ValidationError("rule length must be >= 2; a length-1 substitution is a single permutation")
        for a, word in enumerate(self.rules):
            if len(word) != length:
                raise ValidationError(
                    f"rule for {self.alphabet.letters[a]!r} has length {len(word)}, expected {length}")
            for x in word:
                if not 0 <= x < s:
                    raise ValidationError(f"rule for {self.alphabet.letters[a]!r} uses an out-of-range letter")

    @property
    def size(self) -> int:
        return self.alphabet.size

    @property
    def length(self) -> int:
        return len(self.rules[0])

    def rule_word(self, sym: str) -> str:
        word = self.rules[self.alphabet.index(sym)]
        return "".join(self.alphabet.letters[x] for x in word)


# ---------------------------------------------------------------------------
# parsing and serialization

def parse_substitution(source: str) -> Substitution:
    """Parse the text grammar: one ``<letter> -> <word>`` per line.

    ``#`` starts a comment, blank lines are ignored.  The alphabet is the set
    of left-hand letters in order of first appearance.
    """
    entries: list[tuple[str, str, int]] = []  # (letter, word, line number)
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise ParseError("expected '<letter> -> <word>'", line=lineno, column=1)
        left, right = line.split("->", 1)
        letter, word = left.strip(), right.strip()
        if len(letter) != 1 or not letter.isalnum():
            raise ParseError(f"left-hand side {letter!r} is not a single alphanumeric letter",
                             line=lineno, column=1)
        if not word:
            raise ParseError("empty rule word", line=lineno, column=raw.index("->") + 3)
        entries.append((letter, word, lineno))
    if not entries:
        raise ParseError("no rules found", line=1)
    seen: dict[str, int] = {}
    for letter, _, lineno in entries:
        if letter in seen:
            raise ParseError(f"duplicate rule for {letter!r}", line=lineno)
        seen[letter] = lineno
    letters = tuple(e[0] for e in entries)
    alphabet = Alphabet(letters)
    index = {sym: i for i, sym in enumerate(letters)}
    rules = []
    for letter, word, lineno in entries:
        row = []
        for col, sym in enumerate(word):
            if sym not in index:
                raise ParseError(f"unknown letter {sym!r} in rule for {letter!r}",
                                 line=lineno, column=col + 1)
            row.append(index[sym])
        rules.append(tuple(row))
    lengths = {len(r) for r in rules}
    if len(lengths) > 1:
        raise ParseError(f"rule words have unequal lengths {sorted(lengths)}")
    return Substitution(alphabet, tuple(rules))


def substitution_from_json(obj: dict | str) -> Substitution:
    """Parse the JSON form {"alphabet": [...], "rules": {letter: word}}."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or "alphabet" not in obj or "rules" not in obj:
        raise ParseError("JSON form needs 'alphabet' and 'rules' keys")
    alphabet = Alphabet(tuple(obj["alphabet"]))
    rules_obj = obj["rules"]
    for sym in rules_obj:
        if sym not in alphabet.letters:
            raise ParseError(f"rule for {sym!r} which is not in the alphabet")
    rules = []
    for sym in alphabet.letters:
        if sym not in rules_obj:
            raise ParseError(f"missing rule for {sym!r}")
        word = rules_obj[sym]
        rules.append(tuple(alphabet.index(c) for c in word))
    lengths = {len(r) for r in rules}
    if len(lengths) > 1:
        raise ParseError(f"rule words have unequal lengths {sorted(lengths)}")
    return Substitution(alphabet, tuple(rules))


def substitution_to_text(sub: Substitution) -> str:
    return "\n".join(f"{sym} -> {sub.rule_word(sym)}" for sym in sub.alphabet.letters) + "\n"


def substitution_to_json(sub: Substitution) -> dict:
    return {
        "alphabet": list(sub.alphabet.letters),
        "rules": {sym: sub.rule_word(sym) for sym in sub.alphabet.letters},
    }


def parse_any(source: str) -> Substitution:
    """Accept either the text grammar or the JSON form."""
    stripped = source.lstrip()
    if stripped.startswith("{"):
        return substitution_from_json(source)
    return parse_substitution(source)


# ---------------------------------------------------------------------------
# columns, composition, powers

def columns(sub: Substitution) -> tuple[tuple[int, ...], ...]:
    """Column maps: column j sends letter a to rules[a][j]."""
    return tuple(tuple(sub.rules[a][j] for a in range(sub.size))
                 for j in range(sub.length))


def is_bijective(sub: Substitution) -> bool:
    return all(is_perm(col) for col in columns(sub))


def compose_substitutions(outer: Substitution, inner: Substitution,
                          letter_limit: int = LETTER_LIMIT) -> Substitution:
    """The substitution a -> outer(inner(a)); its length is the product.

    Column k*l_outer + j of the result is column_j(outer) after column_k(inner).
    """
    if outer.alphabet != inner.alphabet:
        raise ValidationError("substitutions are over different alphabets")
    if outer.length * inner.length > letter_limit:
        raise ResourceLimitError(
            f"composition would have rule words of {outer.length * inner.length} letters "
            f"(cap {letter_limit})")
    rules = []
    for a in range(inner.size):
        word: list[int] = []
        for k in inner.rules[a]:
            word.extend(outer.rules[k])
        rules.append(tuple(word))
    return Substitution(outer.alphabet, tuple(rules))


def substitution_power(sub: Substitution, n: int, letter_limit: int = LETTER_LIMIT) -> Substitution:
    if n < 1:
        raise ValidationError("power exponent must be >= 1")
    if sub.length**n > letter_limit:
        raise ResourceLimitError(
            f"power {n} would have rule words of {sub.length**n} letters (cap {letter_limit})")
    result = sub
    for _ in range(n - 1):
        result = compose_substitutions(sub, result, letter_limit)
    return result


# ---------------------------------------------------------------------------
# primitivity

def is_primitive(sub: Substitution) -> bool:
    """True iff some power k makes every rule word of the power contain every
    letter.  Checked by boolean powers of the letter-occurrence matrix up to
    the Wielandt bound (s-1)^2 + 1."""
    s = sub.size
    occurs = [[False] * s for _ in range(s)]
    for a in range(s):
        for x in sub.rules[a]:
            occurs[a][x] = True
    reach = [row[:] for row in occurs]
    bound = (s - 1) ** 2 + 1
    for _ in range(bound):
        if all(all(row) for row in reach):
            return True
        reach = [[any(reach[a][k] and occurs[k][b] for k in range(s)) for b in range(s)]
                 for a in range(s)]
    return all(all(row) for row in reach)


def _all_letters_exponent(sub: Substitution) -> int:
    """Minimal k such that every rule word of sub^k contains every letter."""
    s = sub.size
    occurs = [frozenset(word) for word in sub.rules]
    reach = list(occurs)
    bound = (s - 1) ** 2 + 1
    for k in range(1, bound + 1):
        if all(len(r) == s for r in reach):
            return k
        reach = [frozenset().union(*(occurs[x] for x in r)) for r in reach]
    raise ValidationError("substitution is not primitive")


# ---------------------------------------------------------------------------
# two-letter words and the junction map

@dataclass(frozen=True)
class TwoWordFiber:
    """The allowed two-letter words (a, b), sorted; for simplified
    substitutions these index the fixed points a.b of the singular fiber."""

    pairs: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.pairs)

    def index(self, pair: tuple[int, int]) -> int:
        return self.pairs.index(pair)

    def labels(self, alphabet: Alphabet) -> tuple[str, ...]:
        return tuple(alphabet.letters[a] + alphabet.letters[b] for a, b in self.pairs)


def junction_map(sub: Substitution, pair: tuple[int, int]) -> tuple[int, int]:
    """(a, b) -> (last column(a), first column(b)): how the two-letter word at
    a substitution-word boundary evolves under one application of the rules."""
    a, b = pair
    return (sub.rules[a][-1], sub.rules[b][0])


def allowed_two_words(sub: Substitution) -> TwoWordFiber:
    """All two-letter factors of the subshift: interior pairs of the rule
    words, closed under junction propagation."""
    if not is_primitive(sub):
        raise ValidationError("allowed_two_words needs a primitive substitution")
    pairs: set[tuple[int, int]] = set()
    for word in sub.rules:
        for j in range(len(word) - 1):
            pairs.add((word[j], word[j + 1]))
    frontier = list(pairs)
    while frontier:
        p = junction_map(sub, frontier.pop())
        if p not in pairs:
            pairs.add(p)
            frontier.append(p)
    # every letter of a primitive substitution has a successor
    if not sub.size <= len(pairs) <= sub.size**2:
        raise ValidationError(f"two-word count {len(pairs)} escapes [s, s^2]")
    return TwoWordFiber(tuple(sorted(pairs)))


# ---------------------------------------------------------------------------
# word complexity and aperiodicity

def _string_rules(sub: Substitution) -> list[str]:
    return [sub.rule_word(sym) for sym in sub.alphabet.letters]


def _power_word(sub: Substitution, letter: int, level: int,
                letter_limit: int = LETTER_LIMIT) -> str:
    if sub.length**level > letter_limit:
        raise ResourceLimitError(
            f"level {level} block has {sub.length**level} letters (cap {letter_limit})")
    rules = _string_rules(sub)
    index = {sym: i for i, sym in enumerate(sub.alphabet.letters)}
    word = sub.alphabet.letters[letter]
    for _ in range(level):
        word = "".join(rules[index[c]] for c in word)
    return word


def word_complexity(sub: Substitution, n: int) -> int:
    """Number of allowed factors of length n.

    Every length-n factor of the subshift occurs inside the image of an
    allowed two-letter word under a power with block length >= n, so the
    count below is exact (no stabilization heuristics needed).
    """
    if n < 1:
        raise ValidationError("word_complexity needs n >= 1")
    fiber = allowed_two_words(sub)
    if n == 1:
        return len({x for p in fiber.pairs for x in p})
    level = 0
    block = 1
    while block < n:
        level += 1
        block *= sub.length
    blocks = {a: _power_word(sub, a, level) for a in {x for p in fiber.pairs for x in p}}
    factors: set[str] = set()
    for a, b in fiber.pairs:
        w = blocks[a] + blocks[b]
        for i in range(len(w) - n + 1):
            factors.add(w[i : i + n])
    return len(factors)


@dataclass(frozen=True)
class AperiodicityVerdict:
    """Outcome of the Morse-Hedlund complexity scan.

    kind is "aperiodic", "periodic" or "inconclusive"; ``period_evidence`` is
    the n with p(n) <= n for periodic verdicts.  The bound actually scanned is
    recorded so callers can rerun with a larger one.
    """

    kind: str
    bound: int
    period_evidence: int | None = None

    @property
    def is_aperiodic(self) -> bool:
        return self.kind == "aperiodic"


def default_aperiodicity_bound(sub: Substitution) -> int:
    return sub.size**2 * sub.length**2


def is_aperiodic(sub: Substitution, bound: int | None = None) -> AperiodicityVerdict:
    """Morse-Hedlund scan: periodic iff p(n) <= n for some n.

    For a factor-closed, extendable language, p(n+1) = p(n) at any n forces
    the language to be eventually periodic, so p is strictly increasing on
    aperiodic shifts.  Strictness between checkpoints n1 < n2 is equivalent to
    p(n2) >= p(n1) + (n2 - n1), which lets the scan double instead of walking
    every n.  A verdict of "aperiodic" is reported only when the scanned bound
    reaches the default threshold.
    """
    if not is_primitive(sub):
        raise ValidationError("aperiodicity scan needs a primitive substitution")
    default = default_aperiodicity_bound(sub)
    if bound is None:
        bound = default
    if bound < 1:
        raise ValidationError("aperiodicity bound must be >= 1")

    def periodic_from(n: int, p_n: int) -> AperiodicityVerdict:
        # Complexity is constant from a plateau on; walk until p(n) <= n.
        while p_n > n:
            n += 1
            p_n = word_complexity(sub, n)
        return AperiodicityVerdict("periodic", bound, period_evidence=n)

    checkpoints = [1]
    while checkpoints[-1] < bound:
        checkpoints.append(min(2 * checkpoints[-1], bound))
    prev_n, prev_p = 1, word_complexity(sub, 1)
    if prev_p <= 1:
        return periodic_from(1, prev_p)
    for n in checkpoints[1:]:
        p = word_complexity(sub, n)
        if p >= prev_p + (n - prev_n):
            prev_n, prev_p = n, p
            continue
        # strictness failed somewhere in (prev_n, n]: locate the plateau
        m, pm = prev_n, prev_p
        while m < n:
            m += 1
            q = word_complexity(sub, m)
            if q == pm or q <= m:
                return periodic_from(m, q)
            pm = q
        prev_n, prev_p = n, p
    if bound >= default:
        return AperiodicityVerdict("aperiodic", bound)
    return AperiodicityVerdict("inconclusive", bound)


# ---------------------------------------------------------------------------
# simplification

def is_simplified(sub: Substitution) -> bool:
    """Both simplified conditions: boundary columns are the identity, every
    junction orbit is a fixed point, and every rule word contains every letter."""
    if not is_bijective(sub):
        return False
    cols = columns(sub)
    ident = identity(sub.size)
    if cols[0] != ident or cols[-1] != ident:
        return False
    if any(len(set(word)) != sub.size for word in sub.rules):
        return False
    fiber = allowed_two_words(sub)
    return all(junction_map(sub, p) == p for p in fiber.pairs)


def _junction_cycle_lcm(sub: Substitution) -> int:
    fiber = allowed_two_words(sub)
    seen: set[tuple[int, int]] = set()
    result = 1
    for start in fiber.pairs:
        if start in seen:
            continue
        n = 0
        p = start
        while True:
            seen.add(p)
            p = junction_map(sub, p)
            n += 1
            if p == start:
                break
        result = lcm(result, n)
    return result


def simplify(sub: Substitution, letter_limit: int = LETTER_LIMIT) -> tuple[Substitution, int]:
    """Return (sub^n, n) with n minimal such that sub^n is simplified.

    n = M*m where M is the lcm of the junction-map cycle lengths on the
    allowed two-letter words (condition: all periodic points become fixed) and
    m is minimal so that every rule word of sub^(M*m) contains every letter.
    """
    if not is_bijective(sub):
        raise ValidationError("simplify needs a bijective substitution")
    if not is_primitive(sub):
        raise ValidationError("simplify needs a primitive substitution")
    cycle_lcm = _junction_cycle_lcm(sub)
    letters_exp = _all_letters_exponent(sub)
    m = -(-letters_exp // cycle_lcm)  # ceil division
    n = cycle_lcm * m
    result = substitution_power(sub, n, letter_limit)
    cols = columns(result)
    ident = identity(sub.size)
    if cols[0] != ident or cols[-1] != ident:
        raise ValidationError(
            "simplification failed: boundary columns of the computed power are not the identity "
            "(is the input really bijective and primitive?)")
    if not is_simplified(result):
        raise ValidationError("simplification failed: computed power does not satisfy both conditions")
    return result, n


# ---------------------------------------------------------------------------
# fixed points

def fixed_points(sub: Substitution) -> TwoWordFiber:
    """The fixed points a.b of a simplified substitution, one per allowed
    two-letter word."""
    if not is_simplified(sub):
        raise ValidationError("fixed_points needs a simplified substitution")
    return allowed_two_words(sub)


def fixed_point_block(sub: Substitution, letter: int, level: int, side: str = "right",
                      letter_limit: int = LETTER_LIMIT) -> str:
    """The level-n image of a letter as a string of symbols.

    side="right": the block occupies positions [0, l^n) of the fixed point
    letter.letter; side="left": positions [-l^n, 0).  The word itself is the
    same either way.
    """
    if side not in ("left", "right"):
        raise ValidationError("side must be 'left' or 'right'")
    if level < 0:
        raise ValidationError("level must be >= 0")
    return _power_word(sub, letter, level, letter_limit)


def letter_at(sub: Substitution, pair: tuple[int, int], position: int) -> int:
    """Letter of the fixed point a.b at an arbitrary position.

    The fixed point satisfies x[p] = rule(x[p // l])[p mod l] with x[0] = b
    and x[-1] = a, so a position is resolved by walking its base-l digits;
    no window is materialized.
    """
    a, b = pair
    length = sub.length
    digits = []
    p = position
    if p >= 0:
        while p > 0:
            digits.append(p % length)
            p //= length
        x = b
    else:
        while p != -1:
            digits.append(p % length)
            p //= length  # Python floor division keeps us on the left side
        x = a
    for d in reversed(digits):
        x = sub.rules[x][d]
    return x
