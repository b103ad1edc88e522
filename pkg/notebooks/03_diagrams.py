# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # Diagrams and HOMFLY-PT classification
#
# A diagram adds a crossing state per vertex and an orientation per
# component.  Diagrams related by a shadow automorphism are the same, so the
# classes are orbits; the polynomial (unknot = 1,
# `a P(L+) - a^-1 P(L-) = z P(L0)`) names the knot type.

# %%
from collections import Counter

from knotshadows.diagrams import (
    Diagram,
    build_knot_table,
    burnside_count,
    classify,
    enumerate_diagrams,
)
from knotshadows.pipelines import enumerate_shadows
from knotshadows.shadows import filter_knot_shadows, summand_count

table = build_knot_table(6)

# %% [markdown]
# ## Orbit counts
#
# Orbit enumeration and the Burnside average agree shadow by shadow.

# %%
for n in range(3, 6):
    shadows = filter_knot_shadows(enumerate_shadows(n)).sorted_codes()
    total = sum(len(enumerate_diagrams(c)) for c in shadows)
    burnside = sum(burnside_count(c) for c in shadows)
    print(n, len(shadows), total, burnside)

# %% [markdown]
# ## The figure-eight shadow
#
# The unique prime 4-crossing knot shadow carries 16 state assignments.  Two
# give the figure-eight knot and two give trefoils (one twist region reversed),
# so 12 of the 16 are unknots.

# %%
shadows4 = filter_knot_shadows(enumerate_shadows(4)).sorted_codes()
(fig8,) = [c for c in shadows4 if summand_count(c) == 1]
print(Counter(classify(Diagram.decode(fig8, x), table).name for x in range(16)))

# %% [markdown]
# ## Knot types over 5-crossing shadows

# %%
shadows5 = filter_knot_shadows(enumerate_shadows(5)).sorted_codes()
types = Counter(classify(d, table).name for c in shadows5 for d in enumerate_diagrams(c))
print(types.most_common())
