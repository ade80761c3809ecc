# src/hecke/__init__.py
from .algebra import Basis, HeckeAlgebra, HeckeElement
from .cache import KLCache
from .kl_table import KLTable, build_kl_table, configure_tables, get_kl_table
