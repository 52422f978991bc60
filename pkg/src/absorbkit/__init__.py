"""Finite commutative rings, modules and the classical 1-absorbing prime hierarchy."""

from .bits import TooLargeError
from .finring import (FiniteRing, Ideal, make_zmod, make_ring, ring_product, ring_validate,
                      ideal_generated, all_ideals, is_local)
from .finmod import (FiniteModule, Submodule, ModuleHom, make_module, ring_as_module,
                     module_validate, submodule_generated, all_submodules, proper_submodules)
from .classify import classify, ClassReport

__version__ = "0.1.0"
