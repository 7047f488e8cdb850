"""Numerical verification lab for the linearized Kapustin-Witten equations.

Everything here runs at desk scale: closed-form model solutions on
(0,inf) x R^2 x S^1, the 8-component linearized operator in its three
equivalent forms, 1D spectral reductions on the hemisphere, and the
Chern-Simons gradient flow on a flat 3-torus.
"""

__version__ = "0.1.0"
