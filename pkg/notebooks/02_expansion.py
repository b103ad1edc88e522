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
# # Shadows from simple planar graphs
#
# Deleting loops and merging parallel edges turns any shadow into a simple
# plane graph.  Going back means solving a small 0/1 system per graph: every
# vertex must regain degree 4, and pair insertions inside a face may not
# interleave.

# %%
from knotshadows.expansion import (
    build_constraints,
    expand_seed,
    graph_from_rotation,
    prepare_graph,
    reduce_to_simple,
    simple_planar_seeds,
    solve_branch_and_bound,
)
from knotshadows.pipelines import enumerate_shadows

# %% [markdown]
# ## Reduction
#
# The moves applied are recorded; the resulting graph does not depend on
# their order.

# %%
for code in list(enumerate_shadows(4, "connect-sum"))[:5]:
    g, trace = reduce_to_simple(code)
    print(code.n, [m.kind for m in trace], "->", g.n, "vertices,", len(g.edges()), "edges")

# %% [markdown]
# ## The constraint system of a 4-cycle
#
# Six vertex pairs share a face with each other; the two diagonals inside the
# same face interleave and cannot both be chosen.

# %%
square = graph_from_rotation([[1, 3], [2, 0], [3, 1], [0, 2]])
cs = build_constraints(prepare_graph(square))
print([v.kind for v in cs.variables])
print({i: sorted(js) for i, js in cs.conflicts.items()})
sols = solve_branch_and_bound(cs)
print(len(sols), "solutions,", len(expand_seed(square)), "distinct 4-crossing shadows")

# %% [markdown]
# ## Seeds per crossing number

# %%
for n in range(1, 7):
    seeds = simple_planar_seeds(n)
    productive = sum(1 for s in seeds if len(expand_seed(s)))
    print(n, len(seeds), productive)
