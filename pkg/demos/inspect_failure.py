"""What a stuck reduction leaves behind, and how to read it back."""
from pn2sc import transform, write_statechart
from pn2sc.documents import read_failure_dump
from pn2sc.equivalence import canonical_net, state_encodings
from pn2sc.suite import tc03_patient

outcome = transform(tc03_patient())
print("ok:", outcome.ok, " rule applications:", outcome.rule_applications)

# each residual place still stands for one OR state of the partial forest
enc = state_encodings(outcome.statechart)
for root in outcome.roots:
    print("  root", enc[root])

print("\nresidual net:")
for p in outcome.net.places.values():
    print(f"  place {p.name!r:12} in={sorted(outcome.net.transitions[t].name for t in p.pret)}"
          f" out={sorted(outcome.net.transitions[t].name for t in p.postt)}")

# the dump bundles both; reading it back gives the same models
data = write_statechart(outcome)
sc, residual = read_failure_dump(data)
print("\ndump size:", len(data), "bytes")
print("residual round-trips:", canonical_net(residual) == canonical_net(outcome.net))
