"""Exact Magnus representation of the Torelli group over Z[H].

Modules: ``groupring`` (Laurent polynomials), ``freegroup`` (words, Fox
calculus), ``chains`` (the chain module and lifts), ``covermodel`` (cover
combinatorics and intersection counts), ``pairing`` (higher intersection
forms), ``magnusrep`` (twist matrices), ``analysis`` (trace and kernel
criteria), ``parsing`` and ``cli``.
"""

__version__ = "0.1.0"
