"""When does a quiver admit an arrow positive function?

Exactly when every cycle of the underlying graph runs as often with the
arrows as against them.  This prints the verdict, the function or a
witness cycle, for a few small quivers.

    python demos/gradings.py
"""

from quiverhom.quiver import Quiver, arrow_positive_function, find_nonsymmetric_cycle

EXAMPLES = {
    "A3 line": Quiver.from_edges([1, 2, 3], [("a", 1, 2), ("b", 2, 3)]),
    "diamond": Quiver.from_edges([1, 2, 3, 4], [("a", 1, 2), ("b", 3, 2), ("c", 3, 4),
                                                ("d", 1, 4)]),
    "Kronecker": Quiver.from_edges([1, 2], [("a", 1, 2), ("b", 1, 2)]),
    "oriented 3-cycle": Quiver.from_edges([1, 2, 3], [("a", 1, 2), ("b", 2, 3), ("c", 3, 1)]),
    "square with a shortcut": Quiver.from_edges([1, 2, 3, 4], [("a", 1, 2), ("b", 2, 3),
                                                               ("c", 3, 4), ("d", 1, 4)]),
}

for name, q in EXAMPLES.items():
    F = arrow_positive_function(q)
    if F is not None:
        print(f"{name:24s} graded: {F.values}")
    else:
        c = find_nonsymmetric_cycle(q)
        print(f"{name:24s} no grading: cycle {list(c.arrows)} "
              f"goes {c.clockwise} forward, {c.anticlockwise} backward")
