"""Jet schemes, contact loci and generating series of Newton non-degenerate plane curves.

Modules: ``lattice`` (staircase walks), ``poly`` (sparse polynomials and jet
expansion), ``polygon`` (Newton polygon, tropical rays, validation),
``jetgraph`` (components and the leveled graph), ``series`` (rational
generating series and poles), ``topo`` (embedded topological type),
``render`` and ``cli``.
"""

__version__ = "0.1.0"
