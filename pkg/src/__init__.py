"""
nilg2 - exact computations for a G2 nilmanifold, its involution quotient
and the resolution of that quotient.

Subpackages: ``core`` (field, exterior algebra, linear algebra, reports),
``algebra`` (notation, CDGAs, cohomology), ``geometry`` (G2 forms, nilpotent
group), ``topology`` (resolution ring), ``verification`` and ``cli``.
"""

__version__ = "1.0.0"
__author__ = "nilg2 developers"
