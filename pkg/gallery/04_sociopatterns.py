"""
Face-to-face contact datasets
=============================

Mines the SocioPatterns contact lists fetched by scripts/fetch_datasets.py
(five of the seven: the 2011 high school and the DTU Bluetooth data are not
redistributed there) at a 300 s gap, then prints

* the three motifs whose share varies most across datasets (k = 2), and
* the motif-based distance matrix (k = 4) with all shared motifs and with the
  three highest-variance ones.

Takes about two minutes on one core.
"""

# %%
import os
import time

import numpy as np

from egomotif import load_edges
from egomotif.distance import distance_matrix, top_variance_motifs
from egomotif.miner import MiningParams, mine, null_seeds

DATA = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data")
names = [n for n in ("InVS13", "LH10", "HS11", "HS12", "HS13", "PS", "DTU")
         if os.path.exists(os.path.join(DATA, f"{n}.txt"))]
if not names:
    raise SystemExit("no datasets in data/; run scripts/fetch_datasets.py first")
graphs = {n: load_edges(os.path.join(DATA, f"{n}.txt")) for n in names}
for n, g in graphs.items():
    print(f"{n:7s} {g.n_nodes:4d} nodes {g.n_edges:6d} contacts "
          f"{(g.t_max - g.t_min) / 86400:.1f} days")

# %%
params = MiningParams(seed=0)
t0 = time.perf_counter()
mined = {n: mine(graphs[n], 300, 2, params, seed=s) for n, s in zip(names, null_seeds(0, len(names)))}
print(f"mined k=2 in {time.perf_counter() - t0:.0f}s")
tables = [mined[n].report.motif_table() for n in names]
print("motif     " + " ".join(f"{n:>7s}" for n in names))
for s in top_variance_motifs(tables, 3):
    print(f"{s:9s} " + " ".join(f"{t.get(s):7d}" for t in tables))
for n in names:
    print(f"{n}: {len(mined[n].report.motifs)} motifs among {len(mined[n].table)} signatures")

# %%
np.set_printoptions(precision=2, suppress=True)
for mode in ("all", "top:3"):
    t0 = time.perf_counter()
    dm = distance_matrix(list(graphs.values()), 300, 4, params, motif_mode=mode, labels=names)
    print(f"\nETM distance, k=4, motifs={mode} ({time.perf_counter() - t0:.0f}s)")
    print("        " + " ".join(f"{n:>7s}" for n in names))
    for n, row in zip(names, dm.values):
        print(f"{n:7s} " + " ".join(f"{x:7.2f}" for x in row))
    for d in dm.diagnostics:
        print("  note:", d)
