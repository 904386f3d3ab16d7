#!/usr/bin/env python3
"""How two bilinguals' competencies turn into a social status.

A conversation can only use vocabulary both speakers command, so each
language contributes its pairwise minimum, and the bilingual status is
the status-weighted blend of those minima.
"""

from langcomp import CompetencyProfile, NoCommunicationError, bilingual_status, mutuality

speaker_1 = CompetencyProfile(c_m1=0.80, c_m2=0.50)
speaker_2 = CompetencyProfile(c_m1=0.60, c_m2=0.70)

m = mutuality(speaker_1, speaker_2)
print(f"speaker 1 commands 80% of M1 and 50% of M2")
print(f"speaker 2 commands 60% of M1 and 70% of M2")
print(f"together they can use {m.x_m1:.0%} of M1 and {m.x_m2:.0%} of M2")

s_b = bilingual_status(m, s_m1=0.3, s_m2=0.7)
print(f"with statuses 0.3 / 0.7 their bilingual status is {s_b:.2f}")

perfect = mutuality(CompetencyProfile(1, 1), CompetencyProfile(1, 1))
print(f"a perfect pair reaches {bilingual_status(perfect, 0.3, 0.7):.1f},"
      " more than either monolingual group alone")

try:
    bilingual_status(mutuality(CompetencyProfile(1, 0), CompetencyProfile(0, 1)),
                     0.3, 0.7)
except NoCommunicationError as exc:
    print(f"disjoint vocabularies: {exc}")
