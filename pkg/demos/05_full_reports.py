#!/usr/bin/env python3
"""End-to-end analysis: one call from rule text to the full report.

The report carries the R-set, all three groups, heights, the sandwich matrix,
Green structure, the degree grading, automorphism data and the symbolic
global description; with verify=True the window oracle countersigns the
semigroup.  The same data renders as text or versioned JSON, and the bundled
golden suite replays six reference substitutions against frozen expectations.
"""

import json

from ellisub import AnalysisConfig, analyze_substitution, parse_substitution
from ellisub.golden import load_expectations, run_golden
from ellisub.report import render_text, report_to_json

HEIGHT_TWO = "a -> abacaaa\nb -> babbbcb\nc -> cccacbc"

print("== text report (with oracle verification)")
report = analyze_substitution(parse_substitution(HEIGHT_TWO),
                              AnalysisConfig(verify=True))
print(render_text(report))

print("== selected JSON fields")
payload = report_to_json(report)
for key in ("height", "classical_height", "unresolved_extension", "global_strings"):
    print(f"  {key}: {json.dumps(payload[key])}")

print("\n== golden suite")
for result in run_golden(load_expectations()):
    print(("PASS" if result.ok else "FAIL"), result.name)
