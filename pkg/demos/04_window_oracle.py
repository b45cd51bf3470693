#!/usr/bin/env python3
"""The finite-window oracle: algebra recomputed from raw dynamics.

Letters of the two-sided fixed points are read off by digit walks, so shift
powers sigma^(nu * l^k) can be evaluated on the whole singular fiber without
materializing windows.  Tracking those maps across levels until they repeat,
then closing under composition, rebuilds the structural semigroup with no
reference to column quotients or groups -- and the result is compared
map-for-map against the algebraic pipeline.
"""

from ellisub import (fixed_point_block, letter_at, limit_maps,
                     oracle_equivalence, parse_substitution,
                     proximality_classes, shift_two_word, simplify)

sub, _ = simplify(parse_substitution("a -> abba\nb -> baab"))
letters = sub.alphabet.letters

print("== reading a fixed point window")
print("block of a at level 3:", fixed_point_block(sub, 0, 3))
window = "".join(letters[letter_at(sub, (1, 0), p)] for p in range(-8, 8))
print("window [-8, 8) of b.a:", window[:8], ".", window[8:])

print("\n== induced two-words")
for nu in (1, 2, 3, -1):
    a, b = shift_two_word(sub, (0, 0), nu, 1)
    print(f"  sigma^{nu} of a.a sits over the two-word {letters[a]}{letters[b]}")

print("\n== stabilized limit maps")
result = limit_maps(sub)
print(f"{len(result.maps)} seed maps, all stabilized at level",
      set(result.stabilization_by_nu().values()))
print("closure size:", result.semigroup.size)

print("\n== equivalence with the algebraic semigroup")
comparison = oracle_equivalence(sub)
print("equal:", comparison.equal)

print("\n== a level ceiling that is too low is reported, never guessed")
low = oracle_equivalence(sub, max_level=2, escalate=False)
print("equal:", low.equal)
for line in low.discrepancies[:2]:
    print("  ", line)

print("\n== proximality structure of the fiber")
data = proximality_classes(sub)
labels = data.fiber.labels(sub.alphabet)
print("forward classes (shared right letter): ",
      [[labels[i] for i in c] for c in data.forward])
print("backward classes (shared left letter):",
      [[labels[i] for i in c] for c in data.backward])
