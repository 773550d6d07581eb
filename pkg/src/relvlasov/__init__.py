"""relvlasov: massless relativistic Vlasov-Poisson toolkit.

Exact verification of the commutation vector-field algebra, a radial
Poisson solver, characteristics with tangent (variational) flow, a
self-consistent spherically symmetric particle simulation, and a
numerical harness for weighted decay inequalities.
"""

__version__ = "0.1.0"
