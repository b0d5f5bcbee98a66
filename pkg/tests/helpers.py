"""Shared strategies and brute-force oracles for the tests."""

import itertools
import random

from hypothesis import strategies as st

from quiverhom.quiver import Quiver


@st.composite
def quivers(draw, max_vertices=5, max_arrows=6, min_arrows=0):
    n = draw(st.integers(1, max_vertices))
    m = draw(st.integers(min_arrows, max_arrows))
    arrows = [(f"a{i}", draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1)))
              for i in range(m)]
    return Quiver.from_edges(range(n), arrows)


def rngs():
    return st.integers(0, 2**32 - 1).map(random.Random)


def simple_cycles(q):
    """Every simple undirected cycle as a list of (arrow, direction), by subset search."""
    out = []
    arrows = list(q.arrows)
    for r in range(1, len(arrows) + 1):
        for sub in itertools.combinations(arrows, r):
            deg = {}
            for a in sub:
                deg[a.src] = deg.get(a.src, 0) + 1
                deg[a.tgt] = deg.get(a.tgt, 0) + 1
            if any(d != 2 for d in deg.values()):
                continue
            # walk it; a subset that is a union of several cycles fails to close up in one pass
            unused = list(sub[1:])
            walk = [(sub[0], 1)]
            cur = sub[0].tgt
            start = sub[0].src
            while unused:
                nxt = next((a for a in unused if cur in (a.src, a.tgt)), None)
                if nxt is None:
                    break
                unused.remove(nxt)
                if nxt.src == cur:
                    walk.append((nxt, 1))
                    cur = nxt.tgt
                else:
                    walk.append((nxt, -1))
                    cur = nxt.src
            if not unused and cur == start:
                out.append(walk)
    return out


def brute_all_symmetric(q) -> bool:
    return all(sum(d for _, d in c) == 0 for c in simple_cycles(q))
