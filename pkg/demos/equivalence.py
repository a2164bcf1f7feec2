"""Different application orders, same statechart."""
from collections import Counter

from pn2sc import canonical_statechart, transform
from pn2sc.equivalence import canonical_net
from pn2sc.suite import CASES

for case in CASES:
    forms = Counter()
    for seed in range(20):
        outcome = transform(case.build(), policy="random", seed=seed)
        form = canonical_statechart(outcome.statechart) if outcome.ok else canonical_net(outcome.net)
        forms[form.text] += 1
    verdict = "success" if case.reducible else "stuck"
    print(f"{case.name:30} {verdict:8} distinct outputs over 20 orders: {len(forms)}")

print()
print(canonical_statechart(transform(CASES[0].build()).statechart))
