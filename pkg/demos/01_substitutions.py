#!/usr/bin/env python3
"""Substitution basics: parsing, column maps, validation, simplification.

A constant-length substitution replaces every letter by a word of one fixed
length.  Reading the rule words column by column turns the substitution into
a finite sequence of alphabet self-maps; when all of them are permutations
the substitution is bijective and everything downstream applies.
"""

from ellisub import (columns, cycle_string, is_aperiodic, is_bijective,
                     is_primitive, is_simplified, parse_substitution,
                     simplify, word_complexity)

THUE_MORSE = """
# the classic two-letter example, already in simplified form
a -> abba
b -> baab
"""

ROTATION = """
a -> abc
b -> bca
c -> cab
"""

print("== parsing and columns")
tm = parse_substitution(THUE_MORSE)
print(f"alphabet {tm.alphabet.letters}, length {tm.length}")
for j, col in enumerate(columns(tm)):
    print(f"  column {j}: {cycle_string(col, tm.alphabet.letters)}")

print("\n== validation gates")
print("bijective:", is_bijective(tm))
print("primitive:", is_primitive(tm))
verdict = is_aperiodic(tm)
print(f"aperiodicity: {verdict.kind} (complexity scanned up to n = {verdict.bound})")
print("complexity p(1..6):", [word_complexity(tm, n) for n in range(1, 7)])

print("\n== a periodic impostor is rejected by the complexity scan")
periodic = parse_substitution("a -> aba\nb -> bab")
print("verdict:", is_aperiodic(periodic))

print("\n== simplification may need a power")
rot = parse_substitution(ROTATION)
print("rotation simplified as given:", is_simplified(rot))
simplified, exponent = simplify(rot)
print(f"power {exponent} is simplified: length {simplified.length}, "
      f"first rule {simplified.rule_word('a')[:12]}...")
print("boundary columns:",
      cycle_string(columns(simplified)[0], simplified.alphabet.letters),
      cycle_string(columns(simplified)[-1], simplified.alphabet.letters))
