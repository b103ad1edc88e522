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
# # Link shadows
#
# A shadow is stored as a pd-code: one quadruple of signed edge labels per
# crossing, slots counterclockwise, `+i` where edge `i` arrives and `-i` where
# it leaves.  This notebook walks through faces, isomorphism classes and the
# two enumeration routes.

# %%
from collections import Counter

from knotshadows.isomorphism import Pdstor, map_automorphisms
from knotshadows.pdcode import components, faces, parse, serialize
from knotshadows.pipelines import enumerate_shadows
from knotshadows.shadows import connect_sum, filter_knot_shadows, is_prime, prime_decompose, twist

# %% [markdown]
# ## One shadow
#
# The standard trefoil shadow: three crossings, one component and faces of
# degrees 2, 2, 2, 3, 3 (two triangles and three bigons).

# %%
trefoil = parse("3: (1,-5,-2,4) (2,5,-3,-6) (-1,-4,6,3)")
print(serialize(trefoil))
print("components:", len(components(trefoil)))
print("face degrees:", sorted(f.degree for f in faces(trefoil)))
print("automorphisms:", len(map_automorphisms(trefoil)))

# %% [markdown]
# ## Connect sums
#
# Gluing a twist into an edge adds one crossing and one prime summand.

# %%
kinked = connect_sum(trefoil, 1, twist(), 1)
print(kinked.n, [p.n for p in prime_decompose(kinked)])

# %% [markdown]
# ## Enumeration
#
# Both routes should find the same isomorphism classes.  The connect-sum route
# glues bundled prime shadows; the expansion route grows simple planar graphs
# back into 4-regular maps.

# %%
for n in range(1, 6):
    a = enumerate_shadows(n, "connect-sum")
    b = enumerate_shadows(n, "expansion")
    knots = filter_knot_shadows(a)
    print(n, len(a), len(knots), sum(is_prime(c) for c in a), a.keys() == b.keys())

# %% [markdown]
# ## Stores
#
# A `Pdstor` keeps one code per class, keyed by the canonical form.

# %%
store = Pdstor(enumerate_shadows(4, "connect-sum"))
again = Pdstor.from_text(store.to_text())
print(len(store), again.keys() == store.keys())
print(Counter(len(components(c)) for c in store))
