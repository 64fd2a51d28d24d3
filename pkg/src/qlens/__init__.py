"""Spectral geometry of quantum lens spaces L_q(p, r) over SU_q(2).

Subpackages:

- ``qarith``    exact Laurent-polynomial arithmetic in the deformation q
- ``ncalgebra`` normal-ordered coordinate algebra of SU_q(2)
- ``hilbert``   truncated equivariant Hilbert space, Dirac and reality operators
- ``lens``      Z/p congruence subspaces, Dirac spectra, lattice diagrams
- ``bundle``    strong connections, graded partitions of unity, teardrops
- ``cli``       command-line front end (``qlens``)
"""

__version__ = "0.1.0"
