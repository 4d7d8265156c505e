"""Double cosets of Levi-identifying subgroups in products of reductive groups.

Combinatorial layer (root systems, Weyl groups, partial isometries, coset
parameters, dimension bookkeeping) plus a brute-force oracle over small
finite matrix groups and Yang-Baxter map verification.
"""

from doublecoset.rootsys import RootSystem, build_root_system
from doublecoset.weyl import WeylElement, WeylGroup, generate

__all__ = ["RootSystem", "build_root_system", "WeylElement", "WeylGroup", "generate"]
__version__ = "0.1.0"
