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
# # Census
#
# Per crossing number: shadow counts, automorphisms, monogons and bigons,
# prime summands, knot types, and a comparison with the published tables.

# %%
from knotshadows.census import (
    census,
    rank_frequency_csv,
    stats_shadows,
    treelike_stats,
    unknot_report,
    verify_reference_tables,
)
from knotshadows.pipelines import enumerate_shadows
from knotshadows.shadows import filter_knot_shadows, is_prime

# %%
records = {}
for n in range(3, 7):
    store = enumerate_shadows(n)
    records[n] = census(
        n,
        filter_knot_shadows(store).sorted_codes(),
        link_shadows=len(store),
        prime_shadows=sum(is_prime(c) for c in store),
    )

# %% [markdown]
# ## Shadow statistics

# %%
for n, rec in records.items():
    st = stats_shadows(rec)
    tl = treelike_stats(rec)
    print(n, st.mean_automorphisms, st.mean_monogons, st.monogon_fraction, tl.histogram)

# %% [markdown]
# ## Unknots
#
# The predicted bound weights tree-like shadows by 1 and almost tree-like ones
# by 3/4 and 7/8; the measured bound uses 3/4 for both, the true share of the
# figure-eight shadow.

# %%
for n, rec in records.items():
    rep = unknot_report(rec)
    print(n, rep.unknot_fraction, float(rep.unknot_fraction),
          float(rep.predicted_lower_bound), float(rep.measured_lower_bound))

# %%
print(rank_frequency_csv(records[6]))

# %% [markdown]
# ## Comparison with the published values

# %%
lines = verify_reference_tables(records)
print(sum(l.ok for l in lines), "of", len(lines), "values reproduced")
for l in lines[:8]:
    print(l)
