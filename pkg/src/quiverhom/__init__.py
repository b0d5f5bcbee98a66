"""
Invariants of quiver representations by spaces, over exact integer arithmetic.

Modules:

* ``quiver``: quivers, the path semigroup, cycles and arrow functions.
* ``setrep``: representations by finite sets and their path-semigroup systems.
* ``intalg``: integer matrices, HNF/SNF, abelian groups and limits of diagrams of them.
* ``simplicial``: simplicial complexes, chain complexes, simplicial representations.
* ``chainrep``: limit complexes, homology, homotopies, relative homology, excision.
* ``atspace``: attachment spaces and the map from limit chains to their chains.
* ``cli``: the ``quiverhom`` command.
"""

__version__ = "0.1.0"
